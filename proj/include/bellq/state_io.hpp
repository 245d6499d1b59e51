#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bellq/detection.hpp"
#include "bellq/montecarlo.hpp"
#include "bellq/weyl.hpp"

namespace bellq {

/// A state on disk: either JSON {"d": n, "c": [[...], ...], "label": "..."}
/// or a whitespace/comma separated d x d grid preceded by a "# d=<n>" line.
struct StateFile {
  CoefficientMatrix coefficients;
  std::optional<std::string> label;
};

StateFile parse_state_file(std::string_view text);
StateFile load_state_file(const std::filesystem::path& path);

/// Round to 12 significant digits, the precision of all emitted numbers.
double round12(double x);

/// Coefficients are echoed exactly (shortest round-trip form), not rounded.
nlohmann::json coefficients_to_json(const CoefficientMatrix& c);

/// Flat record object. When `state` is given, its "d"/"c" fields make the
/// output itself a valid StateFile.
nlohmann::json record_to_json(const ClassificationRecord& rec,
                              const CoefficientMatrix* state = nullptr);
ClassificationRecord record_from_json(const nlohmann::json& j);

nlohmann::json share_report_to_json(const ShareReport& rep);
std::string share_report_csv_header();
std::string share_report_csv_row(const ShareReport& rep);

}  // namespace bellq
