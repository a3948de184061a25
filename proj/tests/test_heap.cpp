#include <catch2/catch_amalgamated.hpp>

#include "trusslab/corpus.hpp"
#include "trusslab/heap.hpp"

using namespace trusslab;

namespace {

FiniteHeap zheap(int n) { return heap_of_group(cyclic_group(n)); }

// Independent of the library path: builds [a,b,c] = a-b+c mod n directly.
FiniteHeap zheap_oracle(int n) {
  std::vector<int> op;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) op.push_back(((a - b + c) % n + n) % n);
  return make_heap(n, op);
}

}  // namespace

TEST_CASE("validate_heap accepts singleton and Z/3", "[heap][quick]") {
  REQUIRE(validate_heap(make_heap(1, {0})).ok);
  REQUIRE(validate_heap(zheap_oracle(3)).ok);
  REQUIRE(zheap(3).op == zheap_oracle(3).op);
}

TEST_CASE("validate_heap rejects constant-in-first table", "[heap][quick]") {
  // op[a][b][c] = a satisfies associativity but fails the right Mal'cev
  // identity; first lexicographic witness is (a,b) = (0,1).
  const int n = 2;
  std::vector<int> op;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) op.push_back(a);
  auto r = validate_heap(make_heap(n, op));
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.law == "malcev");
  REQUIRE(r.witness == std::vector<int>{0, 1});
}

TEST_CASE("malformed tables are structural errors", "[heap][errors]") {
  REQUIRE_THROWS_AS(make_heap(2, {0, 1, 1, 0}), StructureError);
  REQUIRE_THROWS_AS(make_heap(2, std::vector<int>(8, 3)), StructureError);
  REQUIRE_THROWS_AS(make_heap(0, {}), StructureError);
}

TEST_CASE("is_abelian with witnesses", "[heap]") {
  REQUIRE(is_abelian(make_heap(1, {0})));
  REQUIRE(is_abelian(zheap(3)));
  FiniteHeap s3 = heap_of_group(symmetric3());
  REQUIRE(validate_heap(s3).ok);
  REQUIRE_FALSE(is_abelian(s3));
  auto w = abelian_witness(s3);
  REQUIRE(w.has_value());
  // First lexicographic non-commuting triple, frozen from the oracle scan.
  REQUIRE(*w == std::array<int, 3>{0, 1, 2});
  REQUIRE(s3.at(0, 1, 2) == 4);
  REQUIRE(s3.at(2, 1, 0) == 3);
}

TEST_CASE("heap_of_group evaluates a b^{-1} c", "[heap][quick]") {
  FiniteHeap h3 = zheap(3);
  REQUIRE(h3.at(1, 2, 0) == 2);
  FiniteHeap h4 = zheap(4);
  REQUIRE(h4.at(3, 1, 2) == 0);
  for (int a = 0; a < 4; ++a) REQUIRE(h4.at(a, a, a) == a);
}

TEST_CASE("group_of_heap inverts heap_of_group", "[heap]") {
  FiniteHeap h3 = zheap(3);
  FiniteGroup g = group_of_heap(h3, 0);
  REQUIRE(g.mul_at(1, 2) == 0);
  REQUIRE(g.inv[1] == 2);
  REQUIRE(validate_group(g).ok);
  for (int a = 0; a < 3; ++a) REQUIRE(g.mul_at(0, a) == a);

  // Round trip at every base point, for every corpus group.
  for (const auto& grp : corpus_groups(CorpusConfig{})) {
    FiniteHeap h = heap_of_group(grp);
    for (int e = 0; e < h.size; ++e) {
      FiniteGroup ge = group_of_heap(h, e);
      REQUIRE(validate_group(ge).ok);
      REQUIRE(heap_of_group(ge).op == h.op);
    }
  }
  REQUIRE_THROWS_AS(group_of_heap(h3, 7), PreconditionError);
}

TEST_CASE("abelian(G) iff abelian(H(G))", "[heap]") {
  for (const auto& g : corpus_groups(CorpusConfig{})) {
    bool gab = true;
    for (int a = 0; a < g.size && gab; ++a)
      for (int b = 0; b < g.size && gab; ++b)
        gab = g.mul_at(a, b) == g.mul_at(b, a);
    REQUIRE(gab == is_abelian(heap_of_group(g)));
  }
}

TEST_CASE("solve_fourth closed forms", "[heap]") {
  FiniteHeap h3 = zheap(3);
  REQUIRE(solve_fourth(h3, std::nullopt, 1, 2, 0) == 2);
  FiniteHeap h4 = zheap(4);
  REQUIRE(solve_fourth(h4, 1, std::nullopt, 3, 2) == 2);
  // [x,y,y] = w forces w = x.
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      REQUIRE(solve_fourth(h4, x, y, y, std::nullopt) == x);
  REQUIRE_THROWS_AS(solve_fourth(h4, 1, 2, 3, 0), PreconditionError);
  REQUIRE_THROWS_AS(
      solve_fourth(h4, std::nullopt, std::nullopt, 3, 2), PreconditionError);

  // Every position, against an exhaustive scan oracle.
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z) {
        const int w = h4.at(x, y, z);
        REQUIRE(solve_fourth(h4, std::nullopt, y, z, w) == x);
        REQUIRE(solve_fourth(h4, x, std::nullopt, z, w) == y);
        REQUIRE(solve_fourth(h4, x, y, std::nullopt, w) == z);
        REQUIRE(solve_fourth(h4, x, y, z, std::nullopt) == w);
      }
}

TEST_CASE("sub-heaps and closure", "[heap]") {
  FiniteHeap h4 = zheap(4);
  REQUIRE(is_subheap(h4, {0, 2}));
  REQUIRE_FALSE(is_subheap(h4, {0, 1}));  // [0,1,0] = 3 escapes
  REQUIRE(h4.at(0, 1, 0) == 3);
  REQUIRE(is_subheap(h4, {0, 1, 2, 3}));
  auto cl = subheap_closure(h4, {0, 1});
  REQUIRE(cl.elems == std::vector<int>{0, 1, 2, 3});
  REQUIRE(subheap_closure(h4, {0, 2}).elems == std::vector<int>{0, 2});
  REQUIRE_THROWS_AS(subheap_closure(h4, {}), PreconditionError);
}

TEST_CASE("quotient heap of Z/4 by {0,2}", "[heap][quick]") {
  FiniteHeap h4 = zheap(4);
  auto q = quotient_heap(h4, {0, 2});
  REQUIRE(q.classes == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
  REQUIRE(q.heap.op == zheap(2).op);
  REQUIRE(validate_heap_morphism(q.projection).ok);
}

TEST_CASE("quotient heap edge cases", "[heap]") {
  FiniteHeap h4 = zheap(4);
  auto whole = quotient_heap(h4, {0, 1, 2, 3});
  REQUIRE(whole.heap.size == 1);

  FiniteHeap h6 = zheap(6);
  auto q = quotient_heap(h6, {0, 3});
  REQUIRE(q.classes.size() == 3);
  REQUIRE(q.heap.op == zheap(3).op);

  // Non-abelian heaps are rejected by the quotient construction.
  FiniteHeap s3 = heap_of_group(symmetric3());
  REQUIRE(validate_heap(s3).ok);
  REQUIRE_THROWS_AS(quotient_heap(s3, subheap_closure(s3, {0}).elems),
                    PreconditionError);
}

TEST_CASE("class of s in S equals S, all representatives agree", "[heap]") {
  for (int n : {4, 6, 8}) {
    FiniteHeap h = zheap(n);
    for (int d = 2; d < n; ++d) {
      if (n % d != 0) continue;
      std::vector<int> sub;
      for (int x = 0; x < n; x += n / d) sub.push_back(x);
      auto q = quotient_heap(h, sub);  // representative independence asserted
      for (int s : sub) REQUIRE(q.classes[q.class_of[s]] == sub);
    }
  }
}

TEST_CASE("heap morphism validation", "[heap]") {
  FiniteHeap h4 = zheap(4), h2 = zheap(2);
  std::vector<int> id{0, 1, 2, 3};
  REQUIRE(validate_heap_morphism({h4, h4, id}).ok);
  REQUIRE(validate_heap_morphism({h4, h2, {0, 1, 0, 1}}).ok);
  auto r = validate_heap_morphism({h4, h2, {0, 1, 0, 0}});
  REQUIRE_FALSE(r.ok);
  // The spec's probe tuple [1,2,3] is a genuine violation.
  std::vector<int> bad{0, 1, 0, 0};
  REQUIRE(bad[h4.at(1, 2, 3)] != h2.at(bad[1], bad[2], bad[3]));
  REQUIRE_THROWS_AS(validate_heap_morphism({h4, h2, {0, 1}}), StructureError);
  REQUIRE_THROWS_AS(validate_heap_morphism({h4, h2, {0, 1, 2, 0}}),
                    StructureError);
}

TEST_CASE("kernel sub-heaps and fiber partitions", "[heap]") {
  FiniteHeap h4 = zheap(4), h2 = zheap(2);
  HeapMorphism mod2{h4, h2, {0, 1, 0, 1}};
  REQUIRE(kernel_subheap(mod2, 0).elems == std::vector<int>{0, 2});
  REQUIRE(kernel_subheap(mod2, 1).elems == std::vector<int>{1, 3});
  HeapMorphism id{h4, h4, {0, 1, 2, 3}};
  for (int e = 0; e < 4; ++e)
    REQUIRE(kernel_subheap(id, e).elems == std::vector<int>{e});
  HeapMorphism cst{h4, h2, {1, 1, 1, 1}};
  REQUIRE(kernel_subheap(cst, 1).elems == std::vector<int>{0, 1, 2, 3});
  REQUIRE_THROWS_AS(kernel_subheap(cst, 0), PreconditionError);

  // ker_e fibers all have equal cardinality and the fiber partition equals
  // the congruence partition by any kernel.
  for (int e : image_of(mod2.map)) {
    auto k = kernel_subheap(mod2, e);
    REQUIRE(k.elems.size() == 2);
    REQUIRE(fiber_partition(mod2.map) == congruence_classes(h4, k.elems));
  }
}

TEST_CASE("lemma identities hold on all corpus heaps", "[heap][property]") {
  for (const auto& g : corpus_groups(CorpusConfig{})) {
    FiniteHeap h = heap_of_group(g);
    if (h.size > 6) continue;  // 5-tuple scan; larger sizes covered in suites
    for (int x = 0; x < h.size; ++x)
      for (int y = 0; y < h.size; ++y)
        for (int z = 0; z < h.size; ++z) {
          REQUIRE(h.at(x, y, h.at(y, x, z)) == z);
          REQUIRE(h.at(h.at(z, x, y), y, x) == z);
        }
    for (int v = 0; v < h.size; ++v)
      for (int w = 0; w < h.size; ++w)
        for (int x = 0; x < h.size; ++x)
          for (int y = 0; y < h.size; ++y)
            for (int z = 0; z < h.size; ++z)
              REQUIRE(h.at(v, w, h.at(x, y, z)) == h.at(v, h.at(y, x, w), z));
  }
}
