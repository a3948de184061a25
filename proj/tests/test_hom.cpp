#include <catch2/catch_amalgamated.hpp>

#include "trusslab/corpus.hpp"
#include "trusslab/hom.hpp"
#include "trusslab/serial.hpp"

using namespace trusslab;

namespace {

FiniteModule idact(const TrussContext& c, int m) {
  FiniteHeap h = heap_of_group(cyclic_group(m));
  std::vector<int> act(static_cast<std::size_t>(c.n) * m);
  for (int t = 0; t < c.n; ++t)
    for (int x = 0; x < m; ++x) act[t * m + x] = x;
  return make_module(c.truss, h, act, true);
}

}  // namespace

TEST_CASE("Hom of the T(Z/2) self-module is {zero, id}", "[hom][quick]") {
  TrussContext c = truss_context(2, CorpusConfig{});
  FiniteModule self = make_module(c.truss, c.truss->heap, c.truss->mul, true);
  auto hs = enumerate_hom(self, self);
  REQUIRE(hs.maps == std::vector<std::vector<int>>{{0, 0}, {0, 1}});
}

TEST_CASE("Hom(star, N) counts absorbers; Hom(M, star) is a point",
          "[hom][quick]") {
  for (int n : {2, 3, 4}) {
    TrussContext c = truss_context(n, CorpusConfig{});
    FiniteModule star = idact(c, 1);
    for (const auto& m : c.modules) {
      if (m.size() > 6) continue;
      auto to_n = enumerate_hom(star, m);
      REQUIRE(to_n.count() == static_cast<int>(absorbers(m).size()));
      auto to_star = enumerate_hom(m, star);
      REQUIRE(to_star.count() == 1);
    }
  }
}

TEST_CASE("enumerate_hom agrees with the unpruned oracle", "[hom][property]") {
  for (int n : {2, 3, 4}) {
    TrussContext c = truss_context(n, CorpusConfig{});
    for (const auto& a : c.modules)
      for (const auto& b : c.modules) {
        std::uint64_t total = 1;
        bool in_budget = true;
        for (int i = 0; i < a.size() && in_budget; ++i) {
          total *= static_cast<std::uint64_t>(b.size());
          in_budget = total <= 4096;
        }
        if (!in_budget) continue;
        REQUIRE(enumerate_hom(a, b).maps ==
                serial::enumerate_hom_bruteforce(a, b, 4096).maps);
      }
  }
}

TEST_CASE("budget errors are explicit", "[hom][errors]") {
  TrussContext c = truss_context(4, CorpusConfig{});
  FiniteModule self = make_module(c.truss, c.truss->heap, c.truss->mul, true);
  REQUIRE_THROWS_AS(enumerate_hom(self, self, 255), BudgetError);
  REQUIRE_NOTHROW(enumerate_hom(self, self, 256));
}

TEST_CASE("hom heap structure", "[hom][quick]") {
  TrussContext c = truss_context(2, CorpusConfig{});
  FiniteModule self = make_module(c.truss, c.truss->heap, c.truss->mul, true);
  auto hs = enumerate_hom(self, self);
  FiniteHeap hh = hom_heap(hs);
  REQUIRE(hh.op == heap_of_group(cyclic_group(2)).op);
  REQUIRE(validate_heap(hh).ok);
  REQUIRE(is_abelian(hh));
  // [f,f,g] = g pointwise (Mal'cev at the heap level).
  for (int i = 0; i < hh.size; ++i)
    for (int j = 0; j < hh.size; ++j) REQUIRE(hh.at(i, i, j) == j);

  // Closure: the pointwise combination of any three maps revalidates.
  auto tri = enumerate_hom(idact(c, 2), idact(c, 2));
  REQUIRE(tri.count() == 4);  // all heap endomorphisms of Z/2
  FiniteHeap th = hom_heap(tri);
  REQUIRE(validate_heap(th).ok);
  for (int i = 0; i < tri.count(); ++i)
    for (int j = 0; j < tri.count(); ++j)
      for (int k = 0; k < tri.count(); ++k) {
        std::vector<int> pt(2);
        for (int x = 0; x < 2; ++x)
          pt[x] = tri.cod.heap.at(tri.maps[i][x], tri.maps[j][x], tri.maps[k][x]);
        ModuleMorphism f{tri.dom, tri.cod, pt};
        REQUIRE(validate_module_morphism(f).ok);
      }
}

TEST_CASE("hom module structure over a commutative truss", "[hom][quick]") {
  TrussContext c = truss_context(2, CorpusConfig{});
  FiniteModule self = make_module(c.truss, c.truss->heap, c.truss->mul, true);
  auto hs = enumerate_hom(self, self);  // {zero, id}
  auto hm = hom_module(hs);
  REQUIRE_FALSE(hm.closure_failure.has_value());
  REQUIRE(validate_module(hm.mod).ok);
  // 0 . id = zero map; 1 . f = f.
  REQUIRE(hm.mod.act_at(0, 1) == 0);
  for (int i = 0; i < hs.count(); ++i) REQUIRE(hm.mod.act_at(1, i) == i);
  // The constant map to an absorber is an absorber of the Hom module.
  auto zero_idx = hs.index_of({0, 0});
  REQUIRE(zero_idx.has_value());
  auto abs = absorbers(hm.mod);
  REQUIRE(std::binary_search(abs.begin(), abs.end(), *zero_idx));
}

TEST_CASE("hom module closure fails over a noncommutative truss",
          "[hom][noncommutative]") {
  auto r8 = upper_triangular_f2();
  auto truss = std::make_shared<const FiniteTruss>(truss_of_ring(r8));
  FiniteModule self = make_module(truss, truss->heap, truss->mul, true);
  auto hs = enumerate_hom(self, self, 1ULL << 32);
  // The identity is T-linear, so the hom set is nonempty.
  std::vector<int> id(8);
  for (int i = 0; i < 8; ++i) id[i] = i;
  REQUIRE(hs.index_of(id).has_value());
  auto hm = hom_module(hs);
  REQUIRE(hm.closure_failure.has_value());
  // The witness composite genuinely fails T-linearity.
  auto [t, fi] = *hm.closure_failure;
  std::vector<int> tf(8);
  for (int x = 0; x < 8; ++x) tf[x] = self.act_at(t, hs.maps[fi][x]);
  ModuleMorphism bad{self, self, tf};
  REQUIRE_FALSE(validate_module_morphism(bad).ok);
}

TEST_CASE("abs_object of the self-module recovers the ring module",
          "[abs][quick]") {
  TrussContext c = truss_context(4, CorpusConfig{});
  FiniteModule self = make_module(c.truss, c.truss->heap, c.truss->mul, true);
  auto ai = abs_object(self, c.ring);
  REQUIRE(ai.classes.size() == 4);  // Abs = {0}, classes are singletons
  REQUIRE(ai.base_class == 0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) REQUIRE(ai.mod.add_at(a, b) == (a + b) % 4);
  for (int s = 0; s < 4; ++s)
    for (int x = 0; x < 4; ++x) REQUIRE(ai.mod.act_at(s, x) == (s * x) % 4);
}

TEST_CASE("abs_object collapses identity-action modules", "[abs][quick]") {
  TrussContext c = truss_context(4, CorpusConfig{});
  auto ai = abs_object(idact(c, 3), c.ring);
  REQUIRE(ai.classes.size() == 1);
  REQUIRE(ai.mod.size == 1);
}

TEST_CASE("T(N)_Abs is isomorphic to N", "[abs][property]") {
  for (int n : {2, 3, 4}) {
    auto ring = std::make_shared<const FiniteRing>(cyclic_ring(n));
    for (const auto& nm : corpus_ring_modules(CorpusConfig{}, ring)) {
      FiniteModule tm = module_of_ring_module(nm.mod);
      auto ai = abs_object(tm, *ring);
      bool found = false;
      for (const auto& cand : enumerate_ring_linear(ai.mod, nm.mod))
        if (is_injective(cand) && is_surjective(cand, nm.mod.size)) {
          found = true;
          break;
        }
      REQUIRE(found);
    }
  }
}

TEST_CASE("abs_morphism is functorial and preserves monos", "[abs]") {
  TrussContext c = truss_context(4, CorpusConfig{});
  FiniteModule self = make_module(c.truss, c.truss->heap, c.truss->mul, true);
  auto am = abs_object(self, c.ring);

  // Identity maps to the identity.
  auto ida = abs_morphism(am, am, identity_morphism(self));
  for (std::size_t i = 0; i < ida.size(); ++i)
    REQUIRE(ida[i] == static_cast<int>(i));

  // The mod-2 morphism induces the Z/4-linear surjection Z/4 -> Z/2.
  FiniteHeap h2 = heap_of_group(cyclic_group(2));
  std::vector<int> act(4 * 2);
  for (int t = 0; t < 4; ++t)
    for (int x = 0; x < 2; ++x) act[t * 2 + x] = (t * x) % 2;
  FiniteModule q2 = make_module(c.truss, h2, act, true);
  auto aq = abs_object(q2, c.ring);
  ModuleMorphism mod2{self, q2, {0, 1, 0, 1}};
  auto ma = abs_morphism(am, aq, mod2);
  REQUIRE(ma == std::vector<int>{0, 1, 0, 1});
  REQUIRE(is_surjective(ma, 2));

  // Monomorphisms map to injections.
  ModuleMorphism incl{q2, self, {0, 2}};
  REQUIRE(validate_module_morphism(incl).ok);
  auto ia = abs_morphism(aq, am, incl);
  REQUIRE(is_injective(ia));

  // Functoriality on a composite.
  auto comp = abs_morphism(am, aq, compose(mod2, identity_morphism(self)));
  REQUIRE(comp == ma);
}

TEST_CASE("abs_object preconditions", "[abs][errors]") {
  TrussContext c = truss_context(4, CorpusConfig{});
  FiniteModule self = make_module(c.truss, c.truss->heap, c.truss->mul, true);
  REQUIRE_THROWS_AS(abs_object(self, cyclic_ring(2)), PreconditionError);
}
