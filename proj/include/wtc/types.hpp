#ifndef WTC_TYPES_HPP
#define WTC_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wtc {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Relative tolerance for Hermitian symmetry checks.
inline constexpr double kHermTol = 1e-9;
// Relative tolerance for PSD checks (lambda_min >= -kPsdTol * max(1, ||A||_F)).
inline constexpr double kPsdTol = 1e-9;
// Eigenvalue floor for K = [[I,Kbar],[Kbar^H,I]]; values below indicate a
// violated NoiseCorrelation contract rather than something to regularize.
inline constexpr double kNoiseEigFloor = 1e-12;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& msg) : Error(msg) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

class NullSpaceEmpty : public Error {
 public:
  explicit NullSpaceEmpty(const std::string& msg) : Error(msg) {}
};

enum class SolveStatus { Converged, MaxIterations, Infeasible };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

struct IterationRecord {
  int index = 0;
  double objective = 0.0;
  double feasibility_violation = 0.0;
  std::map<std::string, double> extras;
};

// Per-iteration record of a solver run. best_objective tracks the extremal
// objective over feasible iterates (max for ascent solvers, min for PBRA's
// descending saddle value).
struct SolverTrace {
  std::vector<IterationRecord> iterations;
  SolveStatus status = SolveStatus::MaxIterations;
  double best_objective = std::numeric_limits<double>::quiet_NaN();
  int elapsed_iterations = 0;

  IterationRecord& push(int index, double objective, double violation) {
    iterations.push_back(IterationRecord{index, objective, violation, {}});
    elapsed_iterations = static_cast<int>(iterations.size());
    return iterations.back();
  }
};

}  // namespace wtc

#endif  // WTC_TYPES_HPP
