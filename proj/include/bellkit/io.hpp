#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bellkit/chsh.hpp"
#include "bellkit/correlation.hpp"
#include "bellkit/domination.hpp"
#include "bellkit/montecarlo.hpp"

namespace bellkit {

// Shortest fixed formatting used by every text output: printf "%.12g".
std::string format_g12(double value);

// CSV with exact header "theta_radians,correlation". CR is stripped on
// input; output always uses LF. Parse errors carry the 1-based line number.
std::vector<TableSample> read_table_csv(const std::string& path);
std::string write_table_csv(std::span<const TableSample> samples);

// CSV with exact header "weight,alice_sign,bob_sign,offset_radians".
std::vector<LhvStrategy> read_lhv_csv(const std::string& path);

// Grammar: singlet | flipped | pr:<linear|cosine|cubic> | lhv:<path> |
// table:<path>. Table files are tabulated with declared tolerance 1e-9.
CorrelationModel parse_model_spec(const std::string& spec);

// Rows "family,theta_radians,value,quantum_reference".
std::string write_scan_csv(std::span<const ChshRecord> records);

// Rows "theta_radians,n,correlation,std_error"; undefined errors as "nan".
std::string write_estimate_csv(const ExperimentEstimate& estimate);

// JSON text for a domination verdict. Keys: outcome, and when present
// family, theta, candidate_value, quantum_value, max_deviation. verbose
// adds the contraction "certificate" object when one backs the witness.
std::string verdict_to_json(const DominationVerdict& verdict,
                            bool verbose = false);

// "key = value" pairs, one per line, '#' comments and blank lines ignored.
std::map<std::string, std::string> read_config_kv(const std::string& path);

}  // namespace bellkit
