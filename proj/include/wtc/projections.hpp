#ifndef WTC_PROJECTIONS_HPP
#define WTC_PROJECTIONS_HPP

#include "wtc/types.hpp"

namespace wtc {

struct SimplexProjection {
  RVec value;
  double tau;  // 0 when the clamped input already fits the budget
};

// Euclidean projection onto {t >= 0, sum t_i <= budget}. Negative entries
// clamp to zero; when the clamped sum exceeds the budget, tau is the unique
// shift with sum_i max(v_i - tau, 0) = budget, found by sort-then-scan.
SimplexProjection project_simplex_detail(const RVec& v, double budget);
RVec project_simplex(const RVec& v, double budget);

// Euclidean projection onto the spectrahedron {X >= 0, tr X <= budget}:
// eigendecompose, project the spectrum onto the simplex, reassemble.
CMat project_spectrahedron(const CMat& xbar, double budget);

}  // namespace wtc

#endif  // WTC_PROJECTIONS_HPP
