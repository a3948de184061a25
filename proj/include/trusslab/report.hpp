#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace trusslab {

// Malformed input: wrong table dimensions, out-of-range entries, unknown JSON
// kinds. Distinct from axiom failures, which are reported, not thrown.
struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation was called outside its contract (shape mismatch, non-exact
// row, element not in the image, violated theorem hypothesis).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration would exceed the configured budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A fact the theory guarantees failed to verify at runtime. Either the
// implementation is wrong or a proposition has been falsified; both are
// alarms, never silently absorbed.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

// Outcome of a law scan. `witness` holds the first violating tuple in
// lexicographic order, in the law's quantifier order.
struct ValidationReport {
  bool ok = true;
  std::string law;
  std::vector<int> witness;
  std::string detail;

  static ValidationReport pass() { return {}; }
  static ValidationReport fail(std::string law_, std::vector<int> witness_,
                               std::string detail_) {
    ValidationReport r;
    r.ok = false;
    r.law = std::move(law_);
    r.witness = std::move(witness_);
    r.detail = std::move(detail_);
    return r;
  }
};

}  // namespace trusslab
