#include <catch2/catch_amalgamated.hpp>

#include "trusslab/corpus.hpp"
#include "trusslab/exact.hpp"

using namespace trusslab;

namespace {

struct SnakeFix {
  TrussContext c = truss_context(4, CorpusConfig{});
  FiniteModule self, q2;
  ModuleMorphism iota, pi;

  SnakeFix() {
    self = make_module(c.truss, c.truss->heap, c.truss->mul, true);
    FiniteHeap h2 = heap_of_group(cyclic_group(2));
    std::vector<int> act(4 * 2);
    for (int t = 0; t < 4; ++t)
      for (int x = 0; x < 2; ++x) act[t * 2 + x] = (t * x) % 2;
    q2 = make_module(c.truss, h2, act, true);
    iota = ModuleMorphism{q2, self, {0, 2}};
    pi = ModuleMorphism{self, q2, {0, 1, 0, 1}};
  }

  SnakeDiagram with_verticals(ModuleMorphism fp, ModuleMorphism f,
                              ModuleMorphism fpp) const {
    SnakeDiagram d;
    d.phi = iota;
    d.psi = pi;
    d.phi1 = iota;
    d.psi1 = pi;
    d.fp = std::move(fp);
    d.f = std::move(f);
    d.fpp = std::move(fpp);
    return d;
  }
};

}  // namespace

TEST_CASE("snake with identity verticals is trivial", "[snake][quick]") {
  SnakeFix x;
  auto d = x.with_verticals(identity_morphism(x.q2), identity_morphism(x.self),
                            identity_morphism(x.q2));
  auto r = snake(d);
  REQUIRE(r.e_prime == 0);
  REQUIRE(r.ker_fp.size() == 1);
  REQUIRE(r.ker_f.size() == 1);
  REQUIRE(r.ker_fpp.size() == 1);
  REQUIRE(r.coker_fp.mod.size() == 1);
  REQUIRE(r.coker_f.mod.size() == 1);
  REQUIRE(r.coker_fpp.mod.size() == 1);
}

TEST_CASE("snake with multiplication-by-2 middle vertical", "[snake][quick]") {
  SnakeFix x;
  auto d = x.with_verticals(ModuleMorphism{x.q2, x.q2, {0, 0}},
                            ModuleMorphism{x.self, x.self, {0, 2, 0, 2}},
                            ModuleMorphism{x.q2, x.q2, {0, 0}});
  auto r = snake(d);
  // Frozen from an independent derivation: all three kernels have size 2
  // (ker f' = Z/2, ker f = {0,2}, ker f'' = Z/2) and all three cokernels
  // have size 2 (Im f' = {0}, Im f = {0,2}, Im f'' = {0}).
  REQUIRE(r.ker_fp.size() == 2);
  REQUIRE(r.ker_f.size() == 2);
  REQUIRE(r.ker_fpp.size() == 2);
  REQUIRE(r.ker_f_elems == std::vector<int>{0, 2});
  REQUIRE(r.coker_fp.mod.size() == 2);
  REQUIRE(r.coker_f.mod.size() == 2);
  REQUIRE(r.coker_fpp.mod.size() == 2);
  // phi0 is a bijection (iota embeds {0,2}, reindexed); psi0 collapses;
  // delta is injective.
  REQUIRE(r.phi0.map == std::vector<int>{0, 1});
  REQUIRE(r.psi0.map == std::vector<int>{0, 0});
  REQUIRE(r.delta.map == std::vector<int>{0, 1});
  REQUIRE(is_injective(r.delta.map));
}

TEST_CASE("snake verifies the whole generated corpus", "[snake][property]") {
  auto snakes = corpus_snakes(CorpusConfig{});
  REQUIRE(snakes.size() >= 50);
  for (const auto& s : snakes) {
    INFO(s.name);
    REQUIRE_NOTHROW(snake(s.d));
  }
}

TEST_CASE("snake verdict is stable over all absorbers", "[snake][property]") {
  CorpusConfig cfg;
  cfg.count = 12;
  for (const auto& s : corpus_snakes(cfg)) {
    INFO(s.name);
    auto rs = snake_all_absorbers(s.d);
    REQUIRE_FALSE(rs.empty());
    for (const auto& r : rs) {
      REQUIRE(r.ker_fp.size() == rs.front().ker_fp.size());
      REQUIRE(r.ker_f.size() == rs.front().ker_f.size());
      REQUIRE(r.ker_fpp.size() == rs.front().ker_fpp.size());
    }
  }
}

TEST_CASE("snake shape preconditions carry names", "[snake][errors]") {
  SnakeFix x;
  auto good = x.with_verticals(identity_morphism(x.q2),
                               identity_morphism(x.self),
                               identity_morphism(x.q2));
  REQUIRE_NOTHROW(validate_snake_shape(good));

  SECTION("broken square") {
    auto bad = good;
    bad.f = ModuleMorphism{x.self, x.self, {0, 3, 2, 1}};  // x -> -x
    REQUIRE_THROWS_MATCHES(snake(bad), PreconditionError,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("commute")));
  }
  SECTION("non-exact top row") {
    auto bad = good;
    bad.phi = ModuleMorphism{x.q2, x.self, {0, 0}};
    REQUIRE_THROWS_MATCHES(
        snake(bad), PreconditionError,
        Catch::Matchers::MessageMatches(
            Catch::Matchers::ContainsSubstring("not exact")));
  }
  SECTION("psi not epic") {
    auto bad = good;
    bad.psi = ModuleMorphism{x.self, x.q2, {0, 0, 0, 0}};
    // Exactness at M also breaks; either precondition message is acceptable,
    // the class must be PreconditionError.
    REQUIRE_THROWS_AS(snake(bad), PreconditionError);
  }
  SECTION("e' not an absorber") {
    REQUIRE_THROWS_MATCHES(
        snake(good, 1), PreconditionError,
        Catch::Matchers::MessageMatches(
            Catch::Matchers::ContainsSubstring("absorber")));
  }
  SECTION("non-linear vertical is rejected eagerly") {
    auto bad = good;
    bad.fp = ModuleMorphism{x.q2, x.q2, {1, 0}};  // x -> x+1 is not T-linear
    REQUIRE_THROWS_AS(snake(bad), PreconditionError);
  }
}

TEST_CASE("short five lemma on corpus diagrams", "[snake][shortfive]") {
  SnakeFix x;
  // Identity verticals: all three maps are isomorphisms.
  auto d = x.with_verticals(identity_morphism(x.q2), identity_morphism(x.self),
                            identity_morphism(x.q2));
  auto r = short_five(d);
  REQUIRE(r.fp_injective);
  REQUIRE(r.fpp_injective);
  REQUIRE(r.f_injective);
  REQUIRE(r.all_ok());

  // The scaled stack (id, x->3x, id): injective and surjective verticals.
  auto d3 = x.with_verticals(identity_morphism(x.q2),
                             ModuleMorphism{x.self, x.self, {0, 3, 2, 1}},
                             identity_morphism(x.q2));
  auto r3 = short_five(d3);
  REQUIRE(r3.fp_injective);
  REQUIRE(r3.f_injective);
  REQUIRE(r3.all_ok());

  for (const auto& s : corpus_snakes(CorpusConfig{})) {
    INFO(s.name);
    REQUIRE(short_five(s.d).all_ok());
  }
}

TEST_CASE("five lemma on the generated corpus", "[five][property]") {
  auto fives = corpus_fives(CorpusConfig{});
  REQUIRE(fives.size() >= 30);
  int applicable = 0;
  for (const auto& f : fives) {
    INFO(f.name);
    auto r = five_lemma(f.d);
    REQUIRE(r.all_ok());
    if (r.mono_clause_applicable || r.epi_clause_applicable) ++applicable;
  }
  REQUIRE(applicable > 0);
}

TEST_CASE("nine lemma on the generated corpus", "[nine][property]") {
  auto nines = corpus_nines(CorpusConfig{});
  REQUIRE(nines.size() >= 20);
  bool saw_nonexact_pair = false;
  for (const auto& g : nines) {
    INFO(g.name);
    auto r = nine_lemma(g.d);
    REQUIRE(r.biconditional_ok);
    if (!r.first_exact) saw_nonexact_pair = true;
  }
  // The corpus includes grids whose end columns are both non-exact.
  REQUIRE(saw_nonexact_pair);
}

TEST_CASE("nine lemma rejects corrupted grids as precondition failures",
          "[nine][errors]") {
  auto nines = corpus_nines(CorpusConfig{});
  int mutated = 0;
  for (const auto& g : nines) {
    if (g.d.mods[1][1].size() < 2) continue;
    NineDiagram bad = g.d;
    bad.row_maps[1][0].map[0] =
        (bad.row_maps[1][0].map[0] + 1) % bad.row_maps[1][0].cod.size();
    REQUIRE_THROWS_AS(nine_lemma(bad), PreconditionError);
    if (++mutated >= 5) break;
  }
  REQUIRE(mutated > 0);
}
