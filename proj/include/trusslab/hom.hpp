#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "trusslab/module.hpp"

namespace trusslab {

// Default enumeration cap on |cod|^|dom| candidates (6^6).
inline constexpr std::uint64_t kDefaultHomBudget = 46656;

// The complete set Hom_T(M,N), map tables in lexicographic order.
struct HomSet {
  FiniteModule dom, cod;
  std::vector<std::vector<int>> maps;

  std::optional<int> index_of(const std::vector<int>& map) const;
  ModuleMorphism morphism(int i) const;
  int count() const { return static_cast<int>(maps.size()); }
};

// Exhaustive backtracking enumeration with early pruning, parallelized over
// the image of element 0. Throws BudgetError when |cod|^|dom| exceeds the
// budget.
HomSet enumerate_hom(const FiniteModule& m, const FiniteModule& n,
                     std::uint64_t budget = kDefaultHomBudget);

// Pointwise heap on the morphism list; closure in the HomSet is asserted.
FiniteHeap hom_heap(const HomSet& h);

struct HomModule {
  FiniteModule mod;  // valid only when !closure_failure
  // (t, morphism index) whose pointwise composite is not T-linear.
  std::optional<std::pair<int, int>> closure_failure;
};

// (t.f)(m) = t.f(m). Closure is checked, not assumed; a failure is reported
// with its witness rather than thrown.
HomModule hom_module(const HomSet& h);

// The R-module G(M/Abs(M); Abs(M)) of a T(R)-module.
struct AbsImage {
  FiniteRingModule mod;
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
  int base_class = 0;  // the class that is Abs(M) itself
};

AbsImage abs_object(const FiniteModule& m, const FiniteRing& r);

// Class-level map of phi; well-definedness and R-linearity are asserted.
std::vector<int> abs_morphism(const AbsImage& dom, const AbsImage& cod,
                              const ModuleMorphism& phi);

}  // namespace trusslab
