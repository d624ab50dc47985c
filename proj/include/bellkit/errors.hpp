#pragma once

#include <stdexcept>
#include <string>

namespace bellkit {

// A correlation model broke one of its own invariants (e.g. |C| > 1) while
// being evaluated inside an analysis routine. Distinct from invalid_argument,
// which covers malformed caller input.
class model_integrity_error : public std::runtime_error {
public:
  explicit model_integrity_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Unusable run configuration: evaluation budgets below the documented
// minimum, unknown enum values smuggled through casts, trial-count overflow.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bellkit
