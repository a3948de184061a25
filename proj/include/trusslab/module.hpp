#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "trusslab/report.hpp"
#include "trusslab/truss.hpp"

namespace trusslab {

// Left T-module: abelian heap carrier plus an action table act[t][x].
struct FiniteModule {
  std::shared_ptr<const FiniteTruss> truss;
  FiniteHeap heap;
  std::vector<int> act;  // flattened |T| x size
  bool unital = false;

  int size() const { return heap.size; }
  int tsize() const { return truss->size(); }
  int act_at(int t, int x) const {
    return act[static_cast<std::size_t>(t) * heap.size + x];
  }
};

struct ModuleMorphism {
  FiniteModule dom, cod;
  std::vector<int> map;
};

struct QuotientModule {
  FiniteModule mod;
  std::vector<std::vector<int>> classes;  // ordered by smallest member
  std::vector<int> class_of;
  ModuleMorphism projection;
};

// Fiber of a module morphism over a base point; submodule status is a
// computed flag, never an assumption.
struct KernelFiber {
  std::vector<int> elems;
  bool action_closed = false;
};

struct FirstIso {
  QuotientModule quotient;            // dom / kernel relation
  FiniteModule image;                 // restricted codomain structure
  std::vector<int> image_elements;    // embedding into cod carrier
  ModuleMorphism iso;                 // quotient.mod -> image, bijective
  bool induced_structure_needed = false;
};

struct FiniteRingModule {
  std::shared_ptr<const FiniteRing> ring;
  int size = 0;
  std::vector<int> add;  // flattened size^2, abelian group
  int zero = 0;
  std::vector<int> act;  // flattened |R| x size
  bool unital = false;

  int add_at(int a, int b) const {
    return add[static_cast<std::size_t>(a) * size + b];
  }
  int act_at(int r, int x) const {
    return act[static_cast<std::size_t>(r) * size + x];
  }
};

struct RingModuleMorphism {
  FiniteRingModule dom, cod;
  std::vector<int> map;
};

FiniteModule make_module(std::shared_ptr<const FiniteTruss> truss,
                         FiniteHeap heap, std::vector<int> act,
                         bool unital = false);
FiniteRingModule make_ring_module(std::shared_ptr<const FiniteRing> ring,
                                  int size, std::vector<int> add, int zero,
                                  std::vector<int> act, bool unital = false);

// Action laws in order: associativity of the action, distributivity over the
// truss heap, distributivity over the module heap, declared unit law.
ValidationReport validate_module(const FiniteModule& m);
ValidationReport validate_ring_module(const FiniteRingModule& m);

std::vector<int> absorbers(const FiniteModule& m);

// t ._e m = [t.m, t.e, e]; e becomes an absorber of the result.
FiniteModule induced_module(const FiniteModule& m, int e);

bool is_submodule(const FiniteModule& m, const std::vector<int>& elems);
bool is_induced_submodule(const FiniteModule& m, const std::vector<int>& elems);

// Reindexes a submodule as a standalone module. `embedding` (optional out)
// receives the sorted parent elements in new-index order.
FiniteModule submodule_restrict(const FiniteModule& m,
                                const std::vector<int>& elems,
                                std::vector<int>* embedding = nullptr);

QuotientModule quotient_module(const FiniteModule& m,
                               const std::vector<int>& submodule_elems);
// Quotient by an arbitrary partition; congruence compatibility of the heap
// operation and the action is asserted over all representatives.
QuotientModule quotient_by_partition(const FiniteModule& m,
                                     std::vector<std::vector<int>> classes);

// Pairs indexed as m*|N| + n.
FiniteModule product_module(const FiniteModule& m, const FiniteModule& n);

ValidationReport validate_module_morphism(const ModuleMorphism& f);
ValidationReport validate_ring_module_morphism(const RingModuleMorphism& f);

KernelFiber kernel_e(const ModuleMorphism& f, int e);
std::vector<int> image_elements(const ModuleMorphism& f);
FiniteModule image_module(const ModuleMorphism& f,
                          std::vector<int>* embedding = nullptr);

FirstIso first_isomorphism(const ModuleMorphism& f);

// T : R-mod -> T(R)-mod. Pass `truss` to share one truss value across the
// images of several modules; it must equal T(ring) table-wise.
FiniteModule module_of_ring_module(
    const FiniteRingModule& n,
    std::shared_ptr<const FiniteTruss> truss = nullptr);

bool same_truss(const FiniteModule& a, const FiniteModule& b);
ModuleMorphism identity_morphism(const FiniteModule& m);
// g after f.
ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f);
bool is_injective(const std::vector<int>& map);
bool is_surjective(const std::vector<int>& map, int cod_size);

}  // namespace trusslab
