#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "trusslab/heap.hpp"
#include "trusslab/report.hpp"

namespace trusslab {

// Abelian heap with an associative multiplication distributing over the
// ternary operation on both sides.
struct FiniteTruss {
  FiniteHeap heap;
  std::vector<int> mul;  // flattened size^2
  std::optional<int> one;

  int size() const { return heap.size; }
  int mul_at(int a, int b) const {
    return mul[static_cast<std::size_t>(a) * heap.size + b];
  }
};

struct FiniteRing {
  int size = 0;
  std::vector<int> add, mul;  // flattened size^2
  int zero = 0;
  std::optional<int> one;

  int add_at(int a, int b) const {
    return add[static_cast<std::size_t>(a) * size + b];
  }
  int mul_at(int a, int b) const {
    return mul[static_cast<std::size_t>(a) * size + b];
  }
  int neg_of(int a) const;  // additive inverse, by scan
};

struct TrussMorphism {
  FiniteTruss dom, cod;
  std::vector<int> map;
};

FiniteTruss make_truss(FiniteHeap heap, std::vector<int> mul,
                       std::optional<int> one = std::nullopt);
FiniteRing make_ring(int size, std::vector<int> add, std::vector<int> mul,
                     int zero, std::optional<int> one = std::nullopt);

// Heap sublaws are re-checked first (reported as "heap/<law>", plus
// "heap/abelian" which is mandatory for a truss), then multiplication
// associativity, left and right distributivity, and the declared unit law.
ValidationReport validate_truss(const FiniteTruss& t);
ValidationReport validate_ring(const FiniteRing& r);

// T(R) = (H(R,+), ·).
FiniteTruss truss_of_ring(const FiniteRing& r);

ValidationReport validate_truss_morphism(const TrussMorphism& f);

bool mul_commutative(const FiniteTruss& t);
bool mul_commutative(const FiniteRing& r);

bool same_tables(const FiniteHeap& a, const FiniteHeap& b);
bool same_tables(const FiniteTruss& a, const FiniteTruss& b);

}  // namespace trusslab
