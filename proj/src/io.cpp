#include "bellkit/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bellkit {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

[[noreturn]] void fail_line(const std::string& path, std::size_t line_no,
                            const std::string& what) {
  throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": " +
                              what);
}

double parse_double(const std::string& field, const std::string& path,
                    std::size_t line_no) {
  if (field.empty()) fail_line(path, line_no, "empty numeric field");
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size()) {
    fail_line(path, line_no, "malformed number '" + field + "'");
  }
  return v;
}

long parse_long(const std::string& field, const std::string& path,
                std::size_t line_no) {
  if (field.empty()) fail_line(path, line_no, "empty integer field");
  char* end = nullptr;
  const long v = std::strtol(field.c_str(), &end, 10);
  if (end != field.c_str() + field.size()) {
    fail_line(path, line_no, "malformed integer '" + field + "'");
  }
  return v;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Numbers in JSON output pass through the same %.12g rounding as the CSV
// writers so every emitted format agrees on its digits.
double g12_round(double v) {
  return std::strtod(format_g12(v).c_str(), nullptr);
}

}  // namespace

std::string format_g12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::vector<TableSample> read_table_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty() || trim(lines[0]) != "theta_radians,correlation") {
    throw std::invalid_argument(path +
                                ": expected header 'theta_radians,correlation'");
  }
  std::vector<TableSample> samples;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string line = trim(lines[i]);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 2) fail_line(path, i + 1, "expected 2 fields");
    samples.push_back({parse_double(fields[0], path, i + 1),
                       parse_double(fields[1], path, i + 1)});
  }
  return samples;
}

std::string write_table_csv(std::span<const TableSample> samples) {
  std::string out = "theta_radians,correlation\n";
  for (const TableSample& s : samples) {
    out += format_g12(s.theta_radians);
    out += ',';
    out += format_g12(s.value);
    out += '\n';
  }
  return out;
}

std::vector<LhvStrategy> read_lhv_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty() ||
      trim(lines[0]) != "weight,alice_sign,bob_sign,offset_radians") {
    throw std::invalid_argument(
        path + ": expected header 'weight,alice_sign,bob_sign,offset_radians'");
  }
  std::vector<LhvStrategy> strategies;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string line = trim(lines[i]);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 4) fail_line(path, i + 1, "expected 4 fields");
    LhvStrategy s;
    s.weight = parse_double(fields[0], path, i + 1);
    s.alice_sign = static_cast<int>(parse_long(fields[1], path, i + 1));
    s.bob_sign = static_cast<int>(parse_long(fields[2], path, i + 1));
    s.offset_radians = parse_double(fields[3], path, i + 1);
    strategies.push_back(s);
  }
  return strategies;
}

CorrelationModel parse_model_spec(const std::string& spec) {
  if (spec == "singlet") return CorrelationModel::singlet();
  if (spec == "flipped") return CorrelationModel::flipped_singlet();
  if (spec.rfind("pr:", 0) == 0) {
    const std::string profile = spec.substr(3);
    if (profile == "linear") return CorrelationModel::pr_box(PrRamp::Linear);
    if (profile == "cosine") {
      return CorrelationModel::pr_box(PrRamp::CosineSmooth);
    }
    if (profile == "cubic") {
      return CorrelationModel::pr_box(PrRamp::CubicSmooth);
    }
    throw std::invalid_argument("unknown PR profile '" + profile +
                                "' (expected linear, cosine, or cubic)");
  }
  if (spec.rfind("lhv:", 0) == 0) {
    return CorrelationModel::lhv_mixture(read_lhv_csv(spec.substr(4)));
  }
  if (spec.rfind("table:", 0) == 0) {
    return tabulated_from_samples(read_table_csv(spec.substr(6)), 1e-9);
  }
  throw std::invalid_argument(
      "unknown model spec '" + spec +
      "' (expected singlet | flipped | pr:<profile> | lhv:<path> | "
      "table:<path>)");
}

std::string write_scan_csv(std::span<const ChshRecord> records) {
  std::string out = "family,theta_radians,value,quantum_reference\n";
  for (const ChshRecord& r : records) {
    out += to_string(r.family);
    out += ',';
    out += r.theta ? format_g12(*r.theta) : "";
    out += ',';
    out += format_g12(r.value);
    out += ',';
    out += format_g12(r.quantum_reference);
    out += '\n';
  }
  return out;
}

std::string write_estimate_csv(const ExperimentEstimate& estimate) {
  std::string out = "theta_radians,n,correlation,std_error\n";
  for (const BinEstimate& bin : estimate.bins) {
    out += format_g12(bin.theta);
    out += ',';
    out += std::to_string(bin.n);
    out += ',';
    out += format_g12(bin.correlation);
    out += ',';
    out += bin.std_error_defined ? format_g12(bin.std_error) : "nan";
    out += '\n';
  }
  return out;
}

std::string verdict_to_json(const DominationVerdict& verdict, bool verbose) {
  nlohmann::ordered_json j;
  j["outcome"] = to_string(verdict.outcome);
  if (verdict.family) j["family"] = to_string(*verdict.family);
  if (verdict.theta) j["theta"] = g12_round(*verdict.theta);
  if (verdict.candidate_value) {
    j["candidate_value"] = g12_round(*verdict.candidate_value);
  }
  if (verdict.quantum_value) {
    j["quantum_value"] = g12_round(*verdict.quantum_value);
  }
  if (verdict.max_deviation) {
    j["max_deviation"] = g12_round(*verdict.max_deviation);
  }
  if (verbose && verdict.certificate) {
    const ContractionCertificate& c = *verdict.certificate;
    nlohmann::ordered_json cj;
    cj["theta1"] = g12_round(c.theta1);
    cj["delta"] = g12_round(c.delta);
    cj["n_star"] = c.n_star;
    cj["witness_angle"] = g12_round(c.witness_angle);
    cj["below_native_resolution"] = c.below_native_resolution;
    j["certificate"] = cj;
  }
  return j.dump(2) + "\n";
}

std::map<std::string, std::string> read_config_kv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  std::map<std::string, std::string> kv;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail_line(path, i + 1, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail_line(path, i + 1, "empty key");
    if (kv.count(key)) fail_line(path, i + 1, "duplicate key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

}  // namespace bellkit
