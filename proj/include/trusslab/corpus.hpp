#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "trusslab/exact.hpp"
#include "trusslab/module.hpp"

namespace trusslab {

struct CorpusConfig {
  std::vector<int> base_ns{2, 3, 4};  // rings Z/n feeding the diagram corpus
  int max_size = 12;                  // global carrier budget
  std::uint64_t seed = 0;
  int count = 0;  // 0 = per-shape defaults
  std::uint64_t hom_budget = kDefaultHomBudget;
};

// mt19937_64 stream with a bounded draw that does not depend on the standard
// library's distribution internals, so corpora are stable across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  int below(int n) {
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do { v = eng_(); } while (v >= limit);
    return static_cast<int>(v % span);
  }

 private:
  std::mt19937_64 eng_;
};

FiniteGroup cyclic_group(int n);
FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup symmetric3();
FiniteRing cyclic_ring(int n);
FiniteRing product_ring(const FiniteRing& a, const FiniteRing& b);
// Upper-triangular 2x2 matrices over F2: the smallest handy noncommutative
// ring, indexed by (a,b,d) -> 4a+2b+d for (a b; 0 d).
FiniteRing upper_triangular_f2();

std::vector<FiniteGroup> corpus_groups(const CorpusConfig& cfg);
std::vector<FiniteRing> corpus_rings(const CorpusConfig& cfg);

// Named modules over T(Z/n): the self-module, quotient modules Z/m for m|n,
// identity-action modules, the singleton, small products, and seeded
// induced-action twists. Every module is pre-validated.
struct TrussContext {
  int n = 0;
  FiniteRing ring;
  std::shared_ptr<const FiniteTruss> truss;
  std::vector<FiniteModule> modules;
  std::vector<std::string> names;
};

TrussContext truss_context(int n, const CorpusConfig& cfg);

struct SesInstance {
  std::string name;
  ModuleMorphism f, g;
  bool expect_exact = false;
};

std::vector<SesInstance> corpus_sequences(const CorpusConfig& cfg);

struct NamedSnake {
  std::string name;
  SnakeDiagram d;
};
std::vector<NamedSnake> corpus_snakes(const CorpusConfig& cfg);

struct NamedNine {
  std::string name;
  NineDiagram d;
};
std::vector<NamedNine> corpus_nines(const CorpusConfig& cfg);

struct NamedFive {
  std::string name;
  FiveDiagram d;
};
std::vector<NamedFive> corpus_fives(const CorpusConfig& cfg);

struct SplitInstance {
  std::string name;
  ModuleMorphism f, g;
  int e2 = -1;
};
std::vector<SplitInstance> corpus_splits(const CorpusConfig& cfg);

struct NamedRingModule {
  std::string name;
  FiniteRingModule mod;
};
std::vector<NamedRingModule> corpus_ring_modules(const CorpusConfig& cfg,
                                                 std::shared_ptr<const FiniteRing> ring);

struct NamedRingSes {
  std::string name;
  RingSes ses;
};
std::vector<NamedRingSes> corpus_ring_ses(const CorpusConfig& cfg);

// All R-linear maps between two R-modules (pruned backtracking).
std::vector<std::vector<int>> enumerate_ring_linear(const FiniteRingModule& a,
                                                    const FiniteRingModule& b);

}  // namespace trusslab
