#include "trusslab/hom.hpp"

#include <algorithm>
#include <sstream>

namespace trusslab {

namespace {

// Backtracking over map[0..m-1]; a constraint is checked exactly once, at the
// depth where its last participating index becomes assigned.
struct HomSearch {
  const FiniteModule& dom;
  const FiniteModule& cod;
  std::vector<int> map;
  std::vector<std::vector<int>> out;

  explicit HomSearch(const FiniteModule& d, const FiniteModule& c)
      : dom(d), cod(c), map(d.size(), -1) {}

  bool consistent_at(int i) const {
    for (int x = 0; x <= i; ++x)
      for (int y = 0; y <= i; ++y)
        for (int z = 0; z <= i; ++z) {
          const int r = dom.heap.at(x, y, z);
          if (r > i) continue;
          if (std::max({x, y, z, r}) != i) continue;
          if (cod.heap.at(map[x], map[y], map[z]) != map[r]) return false;
        }
    for (int t = 0; t < dom.tsize(); ++t)
      for (int x = 0; x <= i; ++x) {
        const int r = dom.act_at(t, x);
        if (r > i) continue;
        if (std::max(x, r) != i) continue;
        if (cod.act_at(t, map[x]) != map[r]) return false;
      }
    return true;
  }

  void run(int depth) {
    if (depth == dom.size()) {
      out.push_back(map);
      return;
    }
    for (int v = 0; v < cod.size(); ++v) {
      map[depth] = v;
      if (consistent_at(depth)) run(depth + 1);
    }
    map[depth] = -1;
  }
};

std::uint64_t candidate_count(const FiniteModule& m, const FiniteModule& n,
                              std::uint64_t budget) {
  std::uint64_t p = 1;
  for (int i = 0; i < m.size(); ++i) {
    if (p > budget / static_cast<std::uint64_t>(n.size()) &&
        p * static_cast<std::uint64_t>(n.size()) / n.size() != p)
      return budget + 1;  // overflow
    p *= static_cast<std::uint64_t>(n.size());
    if (p > budget) return p;
  }
  return p;
}

}  // namespace

std::optional<int> HomSet::index_of(const std::vector<int>& map) const {
  auto it = std::lower_bound(maps.begin(), maps.end(), map);
  if (it == maps.end() || *it != map) return std::nullopt;
  return static_cast<int>(it - maps.begin());
}

ModuleMorphism HomSet::morphism(int i) const {
  return ModuleMorphism{dom, cod, maps[i]};
}

HomSet enumerate_hom(const FiniteModule& m, const FiniteModule& n,
                     std::uint64_t budget) {
  if (!same_truss(m, n))
    throw PreconditionError("hom set between modules over different trusses");
  if (candidate_count(m, n, budget) > budget) {
    std::ostringstream os;
    os << "hom enumeration budget exceeded: |cod|^|dom| = " << n.size() << "^"
       << m.size() << " > " << budget;
    throw BudgetError(os.str());
  }

  const int branches = n.size();
  std::vector<std::vector<std::vector<int>>> per_branch(branches);
#pragma omp parallel for schedule(dynamic)
  for (int v0 = 0; v0 < branches; ++v0) {
    HomSearch s(m, n);
    s.map[0] = v0;
    if (s.consistent_at(0)) s.run(1);
    per_branch[v0] = std::move(s.out);
  }

  HomSet h{m, n, {}};
  for (auto& b : per_branch)
    for (auto& mp : b) h.maps.push_back(std::move(mp));
  return h;
}

FiniteHeap hom_heap(const HomSet& h) {
  if (h.maps.empty()) throw PreconditionError("hom heap of an empty hom set");
  const int k = h.count();
  std::vector<int> op(static_cast<std::size_t>(k) * k * k);
  std::vector<int> pt(h.dom.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) {
        for (int x = 0; x < h.dom.size(); ++x)
          pt[x] = h.cod.heap.at(h.maps[i][x], h.maps[j][x], h.maps[l][x]);
        auto idx = h.index_of(pt);
        if (!idx)
          throw ConsistencyError(
              "pointwise heap of T-linear maps left the hom set");
        op[(static_cast<std::size_t>(i) * k + j) * k + l] = *idx;
      }
  return FiniteHeap{k, std::move(op), true};
}

HomModule hom_module(const HomSet& h) {
  HomModule out;
  const int k = h.count();
  const int tn = h.dom.tsize();
  std::vector<int> act(static_cast<std::size_t>(tn) * k, -1);
  std::vector<int> pt(h.dom.size());
  for (int t = 0; t < tn; ++t)
    for (int i = 0; i < k; ++i) {
      for (int x = 0; x < h.dom.size(); ++x)
        pt[x] = h.cod.act_at(t, h.maps[i][x]);
      auto idx = h.index_of(pt);
      if (!idx) {
        out.closure_failure = std::make_pair(t, i);
        return out;
      }
      act[static_cast<std::size_t>(t) * k + i] = *idx;
    }
  out.mod = FiniteModule{h.dom.truss, hom_heap(h), std::move(act), false};
  return out;
}

AbsImage abs_object(const FiniteModule& m, const FiniteRing& r) {
  if (!same_tables(*m.truss, truss_of_ring(r)))
    throw PreconditionError("module truss is not T(R) for the given ring");
  auto abs = absorbers(m);
  if (abs.empty()) throw PreconditionError("Abs(M) is empty");
  if (!is_subheap(m.heap, abs))
    throw ConsistencyError("Abs(M) is not a sub-heap");

  auto q = quotient_heap(m.heap, abs);
  const int k = q.heap.size;
  const int base = q.class_of[abs.front()];
  auto grp = group_of_heap(q.heap, base);

  std::vector<int> act(static_cast<std::size_t>(r.size) * k, -1);
  for (int s = 0; s < r.size; ++s)
    for (int i = 0; i < k; ++i) {
      int result = -1;
      for (int a : q.classes[i]) {
        const int v = q.class_of[m.act_at(s, a)];
        if (result < 0)
          result = v;
        else if (result != v)
          throw ConsistencyError("Abs quotient action depends on representatives");
      }
      act[static_cast<std::size_t>(s) * k + i] = result;
    }

  AbsImage out;
  out.mod = FiniteRingModule{std::make_shared<FiniteRing>(r), k,
                             std::move(grp.mul), base, std::move(act),
                             m.unital && r.one.has_value()};
  out.classes = std::move(q.classes);
  out.class_of = std::move(q.class_of);
  out.base_class = base;

  auto vr = validate_ring_module(out.mod);
  if (!vr.ok)
    throw ConsistencyError("M_Abs fails R-module laws (" + vr.law + "): " +
                           vr.detail);
  return out;
}

std::vector<int> abs_morphism(const AbsImage& dom, const AbsImage& cod,
                              const ModuleMorphism& phi) {
  const int k = static_cast<int>(dom.classes.size());
  std::vector<int> map(k, -1);
  for (int i = 0; i < k; ++i) {
    int value = -1;
    for (int a : dom.classes[i]) {
      const int v = cod.class_of[phi.map[a]];
      if (value < 0)
        value = v;
      else if (value != v)
        throw ConsistencyError("phi_Abs is not well-defined on classes");
    }
    map[i] = value;
  }
  RingModuleMorphism rm{dom.mod, cod.mod, map};
  auto vr = validate_ring_module_morphism(rm);
  if (!vr.ok)
    throw ConsistencyError("phi_Abs is not R-linear (" + vr.law + ")");
  return map;
}

}  // namespace trusslab
