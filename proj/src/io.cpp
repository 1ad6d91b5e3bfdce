#include "wtc/io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>

namespace wtc {

using nlohmann::json;

json matrix_to_json(const CMat& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(m.size()));
  im.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j;
}

CMat matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re"))
    throw InvariantError(where + ": expected {rows, cols, re[, im]}");
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  if (rows <= 0 || cols <= 0) throw InvariantError(where + ".rows/cols: must be positive");
  const auto re = j.at("re").get<std::vector<double>>();
  std::vector<double> im;
  if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
  const std::size_t n = static_cast<std::size_t>(rows * cols);
  if (re.size() != n) throw InvariantError(where + ".re: expected " + std::to_string(n) + " entries");
  if (!im.empty() && im.size() != n)
    throw InvariantError(where + ".im: expected " + std::to_string(n) + " entries");
  CMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) {
      const std::size_t idx = static_cast<std::size_t>(i * cols + k);
      m(i, k) = Complex(re[idx], im.empty() ? 0.0 : im[idx]);
    }
  if (!m.allFinite()) throw InvariantError(where + ": non-finite entries");
  return m;
}

json channel_to_json(const WiretapChannel& ch) {
  json j;
  j["hb"] = matrix_to_json(ch.hb);
  j["he"] = matrix_to_json(ch.he);
  json prim = json::array();
  for (const auto& p : ch.primaries) prim.push_back(matrix_to_json(p));
  j["primaries"] = prim;
  return j;
}

WiretapChannel channel_from_json(const json& j) {
  WiretapChannel ch;
  if (!j.contains("hb") || !j.contains("he")) throw InvariantError("channel: expected hb and he");
  ch.hb = matrix_from_json(j.at("hb"), "hb");
  ch.he = matrix_from_json(j.at("he"), "he");
  if (j.contains("primaries")) {
    std::size_t idx = 0;
    for (const auto& p : j.at("primaries"))
      ch.primaries.push_back(matrix_from_json(p, "primaries[" + std::to_string(idx++) + "]"));
  }
  ch.validate();
  return ch;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void save_channel(const WiretapChannel& ch, const std::string& path) {
  save_json_file(channel_to_json(ch), path);
}

WiretapChannel load_channel(const std::string& path) { return channel_from_json(load_json_file(path)); }

void write_trace_csv(const SolverTrace& trace, const std::vector<std::string>& extra_cols,
                     std::ostream& os) {
  os << "iter,objective,violation";
  for (const auto& c : extra_cols) os << "," << c;
  os << "\n";
  os.precision(12);
  for (const auto& r : trace.iterations) {
    os << r.index << "," << r.objective << "," << r.feasibility_violation;
    for (const auto& c : extra_cols) {
      os << ",";
      auto it = r.extras.find(c);
      if (it != r.extras.end()) os << it->second;
    }
    os << "\n";
  }
}

void save_trace_csv(const SolverTrace& trace, const std::vector<std::string>& extra_cols,
                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_trace_csv(trace, extra_cols, out);
}

}  // namespace wtc
