#pragma once

#include <string>
#include <vector>

#include "trusslab/corpus.hpp"
#include "trusslab/json_io.hpp"

namespace trusslab {

struct SuiteCheck {
  std::string name;
  bool passed = false;
  std::string detail;  // witness / counterexample / error text when failed
};

struct SuiteReport {
  std::string suite;
  CorpusConfig cfg;
  std::vector<SuiteCheck> checks;

  int passed() const;
  int failed() const;
};

// name: axioms | section2 | snake | nine | five | split | hom | abs | all.
// Instances are evaluated in parallel; check order is stable by instance
// index regardless of thread count.
SuiteReport run_suite(const std::string& name, const CorpusConfig& cfg);

bool known_suite(const std::string& name);
std::vector<std::string> suite_names();

// with_timing adds a wall-clock field; reports without it are byte-identical
// for identical (seed, cfg, suite).
json suite_report_json(const SuiteReport& r, bool with_timing = false,
                       double elapsed_ms = 0.0);

}  // namespace trusslab
