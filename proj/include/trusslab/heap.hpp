#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "trusslab/report.hpp"

namespace trusslab {

// Finite heap on carrier {0..size-1}: a ternary operation table subject to
// associativity and the Mal'cev identities [a,b,b] = a = [b,b,a].
struct FiniteHeap {
  int size = 0;
  std::vector<int> op;  // flattened size^3, row-major [a][b][c]
  bool declared_abelian = false;

  int at(int a, int b, int c) const {
    return op[(static_cast<std::size_t>(a) * size + b) * size + c];
  }
};

struct FiniteGroup {
  int size = 0;
  std::vector<int> mul;  // flattened size^2
  int id = 0;
  std::vector<int> inv;

  int mul_at(int a, int b) const {
    return mul[static_cast<std::size_t>(a) * size + b];
  }
};

struct HeapMorphism {
  FiniteHeap dom, cod;
  std::vector<int> map;  // total on dom carrier
};

struct SubHeap {
  FiniteHeap parent;
  std::vector<int> elems;  // sorted ascending, non-empty
};

struct QuotientHeap {
  FiniteHeap heap;                        // classes labeled by smallest member
  std::vector<std::vector<int>> classes;  // ascending by smallest member
  std::vector<int> class_of;              // parent element -> class index
  HeapMorphism projection;
};

// Shape-checks the flattened table (throws StructureError) without touching
// the axioms.
FiniteHeap make_heap(int size, std::vector<int> op, bool declared_abelian = false);
FiniteGroup make_group(int size, std::vector<int> mul, int id,
                       std::vector<int> inv = {});

// Law scans. Laws are checked in a fixed order (Mal'cev, associativity, then
// the abelian law when declared) and the first violating tuple in
// lexicographic order is reported.
ValidationReport validate_heap(const FiniteHeap& h);
ValidationReport validate_group(const FiniteGroup& g);

bool is_abelian(const FiniteHeap& h);
std::optional<std::array<int, 3>> abelian_witness(const FiniteHeap& h);

// H(G): [a,b,c] = a b^{-1} c.
FiniteHeap heap_of_group(const FiniteGroup& g);
// G(H;e): a*b = [a,e,b], a^{-1} = [e,a,e].
FiniteGroup group_of_heap(const FiniteHeap& h, int e);

// Solves [x,y,z] = w in an abelian heap for the single missing argument.
// Uniqueness is asserted by scan; a non-unique solution means the table is
// not a heap and raises ConsistencyError.
int solve_fourth(const FiniteHeap& h, std::optional<int> x,
                 std::optional<int> y, std::optional<int> z,
                 std::optional<int> w);

bool is_subheap(const FiniteHeap& h, const std::vector<int>& elems);
SubHeap subheap_closure(const FiniteHeap& h, const std::vector<int>& seed);

// Quotient of an abelian heap by a non-empty sub-heap via the congruence
// a ~ b iff [a,b,s] in S. Representative independence and the
// one-vs-every-s agreement are asserted during construction.
QuotientHeap quotient_heap(const FiniteHeap& h, const std::vector<int>& sub);

ValidationReport validate_heap_morphism(const HeapMorphism& f);

std::vector<int> image_of(const std::vector<int>& map);
std::vector<int> fiber_of(const std::vector<int>& map, int e);
// Fibers of the map, each sorted, ordered by smallest member.
std::vector<std::vector<int>> fiber_partition(const std::vector<int>& map);

SubHeap kernel_subheap(const HeapMorphism& f, int e);

// Classes of the sub-heap congruence ~_S on an abelian heap.
std::vector<std::vector<int>> congruence_classes(const FiniteHeap& h,
                                                 const std::vector<int>& sub);

}  // namespace trusslab
