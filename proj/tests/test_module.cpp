#include <catch2/catch_amalgamated.hpp>

#include "trusslab/corpus.hpp"
#include "trusslab/module.hpp"

using namespace trusslab;

namespace {

TrussContext ctx4() { return truss_context(4, CorpusConfig{}); }

FiniteModule self4(const TrussContext& c) {
  return make_module(c.truss, c.truss->heap, c.truss->mul, true);
}

FiniteModule quot2(const TrussContext& c) {
  FiniteHeap h = heap_of_group(cyclic_group(2));
  std::vector<int> act(4 * 2);
  for (int t = 0; t < 4; ++t)
    for (int x = 0; x < 2; ++x) act[t * 2 + x] = (t * x) % 2;
  return make_module(c.truss, h, act, true);
}

}  // namespace

TEST_CASE("module law validation", "[module][quick]") {
  auto c = ctx4();
  REQUIRE(validate_module(self4(c)).ok);
  REQUIRE(validate_module(quot2(c)).ok);
  // Singleton module over any truss.
  FiniteModule star = make_module(c.truss, make_heap(1, {0}),
                                  std::vector<int>(4, 0), false);
  REQUIRE(validate_module(star).ok);
  // Every pool module validates (generator re-checks, this is the API check).
  for (const auto& m : c.modules) REQUIRE(validate_module(m).ok);
}

TEST_CASE("module validation reports the broken law", "[module]") {
  auto c = ctx4();
  auto m = self4(c);
  m.act[1 * 4 + 2] = 3;  // 1.2 = 3
  auto r = validate_module(m);
  REQUIRE_FALSE(r.ok);
  REQUIRE((r.law == "act_assoc" || r.law == "act_truss_heap" ||
           r.law == "act_module_heap" || r.law == "unit"));
  REQUIRE_THROWS_AS(
      make_module(c.truss, make_heap(2, heap_of_group(cyclic_group(2)).op),
                  {0, 0}, false),
      StructureError);
}

TEST_CASE("absorbers", "[module][quick]") {
  auto c = ctx4();
  REQUIRE(absorbers(self4(c)) == std::vector<int>{0});
  FiniteModule idact = [&] {
    FiniteHeap h = heap_of_group(cyclic_group(3));
    std::vector<int> act(4 * 3);
    for (int t = 0; t < 4; ++t)
      for (int x = 0; x < 3; ++x) act[t * 3 + x] = x;
    return make_module(c.truss, h, act, true);
  }();
  REQUIRE(absorbers(idact) == std::vector<int>{0, 1, 2});
  FiniteModule star =
      make_module(c.truss, make_heap(1, {0}), std::vector<int>(4, 0), false);
  REQUIRE(absorbers(star) == std::vector<int>{0});
}

TEST_CASE("induced action", "[module][quick]") {
  auto c = ctx4();
  auto m = self4(c);
  // e an absorber: the action is unchanged.
  REQUIRE(induced_module(m, 0).act == m.act);
  // 2 ._1 3 = [2.3, 2.1, 1] = [2,2,1] = 1.
  auto m1 = induced_module(m, 1);
  REQUIRE(m1.act_at(2, 3) == 1);
  REQUIRE(validate_module(m1).ok);
  // t ._e e = e for all t and e.
  for (int e = 0; e < 4; ++e) {
    auto me = induced_module(m, e);
    for (int t = 0; t < 4; ++t) REQUIRE(me.act_at(t, e) == e);
  }
  REQUIRE_THROWS_AS(induced_module(m, 9), PreconditionError);
}

TEST_CASE("induced iteration and base-point isomorphism", "[module][property]") {
  for (int n : {2, 3, 4}) {
    TrussContext c = truss_context(n, CorpusConfig{});
    for (const auto& m : c.modules) {
      for (int e = 0; e < m.size(); ++e) {
        auto me = induced_module(m, e);
        for (int e2 = 0; e2 < m.size(); ++e2)
          REQUIRE(induced_module(me, e2).act == induced_module(m, e2).act);
        // x -> [x,e,e2] is an isomorphism M^(e) -> M^(e2).
        for (int e2 = 0; e2 < m.size(); ++e2) {
          std::vector<int> iso(m.size());
          for (int x = 0; x < m.size(); ++x) iso[x] = m.heap.at(x, e, e2);
          ModuleMorphism f{me, induced_module(m, e2), iso};
          REQUIRE(validate_module_morphism(f).ok);
          REQUIRE(is_injective(iso));
        }
      }
    }
  }
}

TEST_CASE("submodules and induced submodules", "[module][quick]") {
  auto c = ctx4();
  auto m = self4(c);
  REQUIRE(is_submodule(m, {0, 2}));
  REQUIRE_FALSE(is_submodule(m, {1, 3}));  // 2.1 = 2 escapes
  REQUIRE(is_induced_submodule(m, {1, 3}));
  REQUIRE(is_submodule(m, {0, 1, 2, 3}));
  REQUIRE(is_induced_submodule(m, {0, 1, 2, 3}));
  REQUIRE_THROWS_AS(is_submodule(m, {}), PreconditionError);
}

TEST_CASE("quotient module of the self-module by {0,2}", "[module][quick]") {
  auto c = ctx4();
  auto q = quotient_module(self4(c), {0, 2});
  REQUIRE(q.classes == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
  REQUIRE(q.mod.size() == 2);
  // The action on classes is multiplication mod 2.
  auto expected = quot2(c);
  REQUIRE(q.mod.act == expected.act);
  REQUIRE(q.mod.heap.op == expected.heap.op);
  REQUIRE(validate_module_morphism(q.projection).ok);

  auto whole = quotient_module(self4(c), {0, 1, 2, 3});
  REQUIRE(whole.mod.size() == 1);
  auto by_abs = quotient_module(self4(c), {0});
  REQUIRE(by_abs.mod.size() == 4);
  REQUIRE(by_abs.mod.act == self4(c).act);
  REQUIRE_THROWS_AS(quotient_module(self4(c), {1, 3}), PreconditionError);
}

TEST_CASE("product module", "[module][quick]") {
  auto c = ctx4();
  auto m = quot2(c);
  FiniteModule idact3 = [&] {
    FiniteHeap h = heap_of_group(cyclic_group(3));
    std::vector<int> act(4 * 3);
    for (int t = 0; t < 4; ++t)
      for (int x = 0; x < 3; ++x) act[t * 3 + x] = x;
    return make_module(c.truss, h, act, true);
  }();
  auto p = product_module(m, idact3);
  REQUIRE(p.size() == 6);
  REQUIRE(validate_module(p).ok);
  // Componentwise heap operation, pairs indexed as a*|N| + b.
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) {
        const int a = m.heap.at(i / 3, j / 3, k / 3);
        const int b = idact3.heap.at(i % 3, j % 3, k % 3);
        REQUIRE(p.heap.at(i, j, k) == a * 3 + b);
      }
  // Componentwise action.
  for (int t = 0; t < 4; ++t)
    for (int i = 0; i < 6; ++i)
      REQUIRE(p.act_at(t, i) == m.act_at(t, i / 3) * 3 + idact3.act_at(t, i % 3));
}

TEST_CASE("module morphisms, kernels, images", "[module][quick]") {
  auto c = ctx4();
  auto m = self4(c);
  auto q = quot2(c);
  ModuleMorphism mod2{m, q, {0, 1, 0, 1}};
  REQUIRE(validate_module_morphism(mod2).ok);

  auto k = kernel_e(mod2, 0);
  REQUIRE(k.elems == std::vector<int>{0, 2});
  REQUIRE(k.action_closed);
  auto k1 = kernel_e(mod2, 1);
  REQUIRE(k1.elems == std::vector<int>{1, 3});
  REQUIRE_FALSE(k1.action_closed);  // 2.1 = 2 leaves {1,3}

  auto id = identity_morphism(m);
  for (int e = 0; e < 4; ++e) REQUIRE(kernel_e(id, e).elems == std::vector<int>{e});
  ModuleMorphism cst{m, m, {0, 0, 0, 0}};
  REQUIRE(validate_module_morphism(cst).ok);
  REQUIRE(kernel_e(cst, 0).elems == std::vector<int>{0, 1, 2, 3});
  REQUIRE_THROWS_AS(kernel_e(cst, 1), PreconditionError);

  REQUIRE(image_elements(mod2) == std::vector<int>{0, 1});
  REQUIRE(image_module(mod2).size() == 2);
}

TEST_CASE("first isomorphism theorem", "[module][quick]") {
  auto c = ctx4();
  auto m = self4(c);
  ModuleMorphism mod2{m, quot2(c), {0, 1, 0, 1}};
  auto fi = first_isomorphism(mod2);
  REQUIRE(fi.quotient.classes == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
  REQUIRE(fi.image.size() == 2);
  REQUIRE(is_injective(fi.iso.map));
  REQUIRE_FALSE(fi.induced_structure_needed);

  auto fi_id = first_isomorphism(identity_morphism(m));
  REQUIRE(fi_id.quotient.mod.size() == 4);
  REQUIRE(fi_id.image.size() == 4);

  ModuleMorphism cst{m, m, {0, 0, 0, 0}};
  auto fi_c = first_isomorphism(cst);
  REQUIRE(fi_c.quotient.mod.size() == 1);
  REQUIRE(fi_c.image.size() == 1);
}

TEST_CASE("T functor on ring modules", "[module][quick]") {
  auto ring = std::make_shared<const FiniteRing>(cyclic_ring(4));
  auto mods = corpus_ring_modules(CorpusConfig{}, ring);
  for (const auto& nm : mods) {
    REQUIRE(validate_ring_module(nm.mod).ok);
    FiniteModule tm = module_of_ring_module(nm.mod);
    REQUIRE(validate_module(tm).ok);
    REQUIRE(tm.size() == nm.mod.size);
  }
  // A z/4-linear map stays T-linear with the same table.
  const FiniteRingModule& z2 = mods[1].mod;  // "Z2"
  const FiniteRingModule& z4 = mods[2].mod;  // "Z4"
  RingModuleMorphism rf{z2, z4, {0, 2}};
  REQUIRE(validate_ring_module_morphism(rf).ok);
  auto truss = std::make_shared<const FiniteTruss>(truss_of_ring(*ring));
  ModuleMorphism tf{module_of_ring_module(z2, truss),
                    module_of_ring_module(z4, truss), rf.map};
  REQUIRE(validate_module_morphism(tf).ok);
  // Zero module maps to the singleton module.
  REQUIRE(module_of_ring_module(mods[0].mod).size() == 1);
}

TEST_CASE("morphism absorber facts", "[module][property]") {
  for (int n : {2, 3, 4}) {
    TrussContext c = truss_context(n, CorpusConfig{});
    for (const auto& a : c.modules)
      for (const auto& b : c.modules) {
        if (a.size() > 4 || b.size() > 4) continue;
        auto hs = enumerate_hom(a, b, 4096);
        auto abs_a = absorbers(a);
        auto abs_b = absorbers(b);
        for (const auto& map : hs.maps) {
          for (int e : abs_a) {
            REQUIRE(std::binary_search(abs_b.begin(), abs_b.end(), map[e]));
            ModuleMorphism f{a, b, map};
            REQUIRE(kernel_e(f, map[e]).action_closed);
          }
        }
      }
  }
}

#include "trusslab/hom.hpp"

TEST_CASE("epi iff surjective, mono iff injective on small carriers",
          "[module][property]") {
  TrussContext c = truss_context(2, CorpusConfig{});
  std::vector<FiniteModule> small;
  for (const auto& m : c.modules)
    if (m.size() <= 4) small.push_back(m);
  for (const auto& a : small)
    for (const auto& b : small) {
      auto hs = enumerate_hom(a, b, 4096);
      for (int i = 0; i < hs.count(); ++i) {
        auto f = hs.morphism(i);
        // Cancellation against all test-pair morphisms into/out of the pool.
        bool epi = true;
        for (const auto& q : small) {
          auto post = enumerate_hom(b, q, 4096);
          for (int g1 = 0; g1 < post.count() && epi; ++g1)
            for (int g2 = g1 + 1; g2 < post.count() && epi; ++g2) {
              bool agree = true;
              for (int x = 0; x < a.size() && agree; ++x)
                agree = post.maps[g1][f.map[x]] == post.maps[g2][f.map[x]];
              if (agree) epi = false;  // g1 f = g2 f with g1 != g2
            }
          if (!epi) break;
        }
        REQUIRE(epi == is_surjective(f.map, b.size()));
        bool mono = true;
        for (const auto& q : small) {
          auto pre = enumerate_hom(q, a, 4096);
          for (int g1 = 0; g1 < pre.count() && mono; ++g1)
            for (int g2 = g1 + 1; g2 < pre.count() && mono; ++g2) {
              bool agree = true;
              for (int x = 0; x < q.size() && agree; ++x)
                agree = f.map[pre.maps[g1][x]] == f.map[pre.maps[g2][x]];
              if (agree) mono = false;
            }
          if (!mono) break;
        }
        REQUIRE(mono == is_injective(f.map));
      }
    }
}
