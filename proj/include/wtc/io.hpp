#ifndef WTC_IO_HPP
#define WTC_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wtc/model.hpp"
#include "wtc/types.hpp"

namespace wtc {

// Matrix wire format: {"rows": r, "cols": c, "re": [...], "im": [...]},
// row-major flattening. "im" may be omitted for real matrices.
nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j, const std::string& where);

// Channel file: {"hb": {...}, "he": {...}, "primaries": [{...}]}
nlohmann::json channel_to_json(const WiretapChannel& ch);
WiretapChannel channel_from_json(const nlohmann::json& j);
void save_channel(const WiretapChannel& ch, const std::string& path);
WiretapChannel load_channel(const std::string& path);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const nlohmann::json& j, const std::string& path);

// Trace CSV: header "iter,objective,violation[,extras...]"; extras columns in
// the order given, missing keys written empty.
void write_trace_csv(const SolverTrace& trace, const std::vector<std::string>& extra_cols, std::ostream& os);
void save_trace_csv(const SolverTrace& trace, const std::vector<std::string>& extra_cols,
                    const std::string& path);

}  // namespace wtc

#endif  // WTC_IO_HPP
