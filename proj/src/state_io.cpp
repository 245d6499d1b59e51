#include "bellq/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "bellq/error.hpp"

namespace bellq {

namespace {

StateFile parse_json_state(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::Parse, "state file must be a JSON object");
  if (!j.contains("d") || !j["d"].is_number_integer()) {
    throw Error(ErrorCode::Parse, "field \"d\" must be an integer");
  }
  const auto d_signed = j["d"].get<long long>();
  if (d_signed < 2) throw Error(ErrorCode::DimensionTooSmall, "\"d\" must be >= 2");
  const auto d = static_cast<std::size_t>(d_signed);
  if (!j.contains("c") || !j["c"].is_array() || j["c"].size() != d) {
    throw Error(ErrorCode::Parse, "field \"c\" must be a d x d array of numbers");
  }
  std::vector<double> c;
  c.reserve(d * d);
  for (const auto& row : j["c"]) {
    if (!row.is_array() || row.size() != d) {
      throw Error(ErrorCode::Parse, "field \"c\" must be a d x d array of numbers");
    }
    for (const auto& v : row) {
      if (!v.is_number()) throw Error(ErrorCode::Parse, "coefficient is not a number");
      c.push_back(v.get<double>());
    }
  }
  std::optional<std::string> label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw Error(ErrorCode::Parse, "\"label\" must be a string");
    label = j["label"].get<std::string>();
  }
  return {CoefficientMatrix(d, std::move(c)), std::move(label)};
}

StateFile parse_csv_state(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> d;
  std::vector<double> c;
  std::size_t rows = 0;
  static const std::regex header(R"(^\s*#\s*d\s*=\s*(\d+)\s*$)");
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_match(line, m, header)) {
      d = std::stoul(m[1].str());
      continue;
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!d) throw Error(ErrorCode::Parse, "CSV state needs a '# d=<n>' header before the grid");
    for (char& ch : line)
      if (ch == ',' || ch == ';') ch = ' ';
    std::istringstream row(line);
    std::size_t count = 0;
    std::string tok;
    while (row >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw Error(ErrorCode::Parse, "not a number: '" + tok + "'");
      c.push_back(v);
      ++count;
    }
    if (count != *d) {
      throw Error(ErrorCode::Parse, "CSV row " + std::to_string(rows) + " has " +
                                        std::to_string(count) + " entries, expected d");
    }
    ++rows;
  }
  if (!d) throw Error(ErrorCode::Parse, "CSV state needs a '# d=<n>' header");
  if (rows != *d) throw Error(ErrorCode::Parse, "CSV grid must have d rows");
  return {CoefficientMatrix(*d, std::move(c)), std::nullopt};
}

}  // namespace

StateFile parse_state_file(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json_state(text);
  return parse_csv_state(text);
}

StateFile load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_file(buf.str());
}

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

nlohmann::json coefficients_to_json(const CoefficientMatrix& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < c.dim(); ++k) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t l = 0; l < c.dim(); ++l) row.push_back(c(k, l));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json record_to_json(const ClassificationRecord& rec, const CoefficientMatrix* state) {
  nlohmann::json j;
  j["d"] = rec.d;
  if (state) j["c"] = coefficients_to_json(*state);
  j["realignment_value"] = round12(rec.realignment_value);
  j["realignment_normalized"] = round12(rec.realignment_normalized);
  j["realignment_detected"] = rec.realignment_detected;
  j["ppt_value"] = rec.ppt_value ? nlohmann::json(round12(*rec.ppt_value)) : nlohmann::json();
  j["ppt_min_eigenvalue"] =
      rec.ppt_min_eigenvalue ? nlohmann::json(round12(*rec.ppt_min_eigenvalue)) : nlohmann::json();
  j["is_ppt"] = rec.is_ppt;
  j["label"] = label_name(rec.label);
  return j;
}

ClassificationRecord record_from_json(const nlohmann::json& j) {
  try {
    ClassificationRecord rec;
    rec.d = j.at("d").get<std::size_t>();
    rec.realignment_value = j.at("realignment_value").get<double>();
    rec.realignment_normalized = j.at("realignment_normalized").get<double>();
    rec.realignment_detected = j.at("realignment_detected").get<bool>();
    if (j.contains("ppt_value") && !j["ppt_value"].is_null())
      rec.ppt_value = j["ppt_value"].get<double>();
    if (j.contains("ppt_min_eigenvalue") && !j["ppt_min_eigenvalue"].is_null())
      rec.ppt_min_eigenvalue = j["ppt_min_eigenvalue"].get<double>();
    rec.is_ppt = j.at("is_ppt").get<bool>();
    const auto label = label_from_name(j.at("label").get<std::string>());
    if (!label) throw Error(ErrorCode::Parse, "unknown label");
    rec.label = *label;
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("classification record: ") + e.what());
  }
}

nlohmann::json share_report_to_json(const ShareReport& rep) {
  return {
      {"d", rep.d},
      {"n", rep.n_samples},
      {"seed", rep.seed},
      {"npt_share", round12(rep.npt_share)},
      {"realignment_share", round12(rep.realignment_share)},
      {"ppt_ent_share", round12(rep.ppt_ent_share)},
      {"undetected_share", round12(rep.undetected_share)},
      {"counts",
       {{"npt", rep.n_npt},
        {"realignment", rep.n_realignment},
        {"ppt_ent", rep.n_ppt_ent_detected},
        {"undetected", rep.n_undetected}}},
      {"wall_time", round12(rep.wall_time)},
      {"rng", rep.rng},
  };
}

std::string share_report_csv_header() {
  return "d,n,seed,npt_share,realignment_share,ppt_ent_share,undetected_share";
}

std::string share_report_csv_row(const ShareReport& rep) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%zu,%llu,%.12g,%.12g,%.12g,%.12g", rep.d, rep.n_samples,
                static_cast<unsigned long long>(rep.seed), rep.npt_share, rep.realignment_share,
                rep.ppt_ent_share, rep.undetected_share);
  return buf;
}

}  // namespace bellq
