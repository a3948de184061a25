#include <catch2/catch_amalgamated.hpp>

#include "trusslab/corpus.hpp"
#include "trusslab/truss.hpp"

using namespace trusslab;

TEST_CASE("T(Z/4) and the singleton truss validate", "[truss][quick]") {
  REQUIRE(validate_truss(truss_of_ring(cyclic_ring(4))).ok);
  REQUIRE(validate_truss(make_truss(make_heap(1, {0}), {0})).ok);
}

TEST_CASE("every corpus ring yields a valid truss", "[truss]") {
  for (const auto& r : corpus_rings(CorpusConfig{})) {
    REQUIRE(validate_ring(r).ok);
    auto t = truss_of_ring(r);
    REQUIRE(validate_truss(t).ok);
    REQUIRE(mul_commutative(r) == mul_commutative(t));
  }
  REQUIRE(validate_ring(upper_triangular_f2()).ok);
  REQUIRE_FALSE(mul_commutative(upper_triangular_f2()));
  REQUIRE(validate_truss(truss_of_ring(upper_triangular_f2())).ok);
}

TEST_CASE("truss_of_ring copies multiplication", "[truss][quick]") {
  auto t4 = truss_of_ring(cyclic_ring(4));
  REQUIRE(t4.mul_at(2, 3) == 2);
  REQUIRE(t4.one == 1);
  auto z1 = truss_of_ring(cyclic_ring(1));
  REQUIRE(z1.size() == 1);
  auto t22 = truss_of_ring(product_ring(cyclic_ring(2), cyclic_ring(2)));
  // (1,0) * (1,1) = (1,0); pairs are indexed as 2a+b.
  REQUIRE(t22.mul_at(2, 3) == 2);
}

TEST_CASE("addition on H(Z/4) is a valid multiplication", "[truss]") {
  // The brace-type truss: a*b = a+b distributes over [x,y,z] = x-y+z on both
  // sides, so this table must validate.
  auto h4 = heap_of_group(cyclic_group(4));
  std::vector<int> add(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) add[a * 4 + b] = (a + b) % 4;
  REQUIRE(validate_truss(make_truss(h4, add)).ok);
}

TEST_CASE("max multiplication breaks distributivity", "[truss][quick]") {
  auto h4 = heap_of_group(cyclic_group(4));
  std::vector<int> mx(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) mx[a * 4 + b] = std::max(a, b);
  auto r = validate_truss(make_truss(h4, mx));
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.law == "left_distrib");
  // First lexicographic violating tuple (w,x,y,z), frozen from the oracle.
  REQUIRE(r.witness == std::vector<int>{1, 0, 1, 0});
}

TEST_CASE("non-abelian heap component is rejected", "[truss]") {
  FiniteHeap s3 = heap_of_group(symmetric3());
  FiniteTruss t;
  t.heap = s3;
  t.mul.assign(36, 0);
  auto r = validate_truss(t);
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.law == "heap/abelian");
}

TEST_CASE("declared unit law is checked", "[truss]") {
  auto t = truss_of_ring(cyclic_ring(4));
  t.one = 2;
  auto r = validate_truss(t);
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.law == "unit");
}

TEST_CASE("truss morphism validation", "[truss][quick]") {
  auto t4 = truss_of_ring(cyclic_ring(4));
  auto t2 = truss_of_ring(cyclic_ring(2));
  REQUIRE(validate_truss_morphism({t4, t4, {0, 1, 2, 3}}).ok);
  REQUIRE(validate_truss_morphism({t4, t2, {0, 1, 0, 1}}).ok);

  // x -> x+1 on T(Z/4) is a heap morphism but not multiplicative; the first
  // lexicographic violation is (a,b) = (0,1): f(0*1) = 1 vs f(0)f(1) = 2.
  auto r = validate_truss_morphism({t4, t4, {1, 2, 3, 0}});
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.law == "multiplicative");
  REQUIRE(r.witness == std::vector<int>{0, 1});
}

TEST_CASE("ring validation catches broken laws", "[truss][errors]") {
  auto r = cyclic_ring(4);
  REQUIRE(validate_ring(r).ok);
  auto bad = r;
  bad.mul[1 * 4 + 2] = 3;  // 1*2 = 3 breaks the unit row
  REQUIRE_FALSE(validate_ring(bad).ok);
  REQUIRE_THROWS_AS(make_ring(2, {0, 1, 1, 0}, {0, 0, 0, 3}, 0), StructureError);
}
