#include "trusslab/module.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>

namespace trusslab {

namespace {

constexpr std::int64_t kNoViolation = std::numeric_limits<std::int64_t>::max();

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

FiniteModule make_module(std::shared_ptr<const FiniteTruss> truss,
                         FiniteHeap heap, std::vector<int> act, bool unital) {
  if (!truss) throw StructureError("module requires a truss");
  if (heap.size <= 0) throw StructureError("module carrier must be non-empty");
  const std::size_t expected =
      static_cast<std::size_t>(truss->size()) * heap.size;
  if (act.size() != expected) {
    std::ostringstream os;
    os << "action table has " << act.size() << " entries, expected "
       << expected;
    throw StructureError(os.str());
  }
  for (std::size_t i = 0; i < act.size(); ++i)
    if (act[i] < 0 || act[i] >= heap.size) {
      std::ostringstream os;
      os << "action entry at flat index " << i << " out of range";
      throw StructureError(os.str());
    }
  heap.declared_abelian = true;
  return FiniteModule{std::move(truss), std::move(heap), std::move(act), unital};
}

FiniteRingModule make_ring_module(std::shared_ptr<const FiniteRing> ring,
                                  int size, std::vector<int> add, int zero,
                                  std::vector<int> act, bool unital) {
  if (!ring) throw StructureError("ring module requires a ring");
  if (size <= 0) throw StructureError("ring module carrier must be non-empty");
  if (add.size() != static_cast<std::size_t>(size) * size)
    throw StructureError("ring module add table has wrong shape");
  if (act.size() != static_cast<std::size_t>(ring->size) * size)
    throw StructureError("ring module action table has wrong shape");
  for (int v : add)
    if (v < 0 || v >= size) throw StructureError("add entry out of range");
  for (int v : act)
    if (v < 0 || v >= size) throw StructureError("action entry out of range");
  if (zero < 0 || zero >= size) throw StructureError("zero out of range");
  return FiniteRingModule{std::move(ring), size, std::move(add), zero,
                          std::move(act), unital};
}

ValidationReport validate_module(const FiniteModule& m) {
  const int tn = m.tsize(), mn = m.size();
  const FiniteTruss& t = *m.truss;

  // Associativity of the action: t.(t'.x) = (tt').x over (t,t',x).
  {
    std::int64_t bad = kNoViolation;
    const std::int64_t total = static_cast<std::int64_t>(tn) * tn * mn;
#pragma omp parallel for reduction(min : bad) schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      const int x = static_cast<int>(idx % mn);
      const int t2 = static_cast<int>((idx / mn) % tn);
      const int t1 = static_cast<int>(idx / (static_cast<std::int64_t>(mn) * tn));
      if (m.act_at(t1, m.act_at(t2, x)) != m.act_at(t.mul_at(t1, t2), x))
        bad = std::min(bad, idx);
    }
    if (bad != kNoViolation) {
      const int x = static_cast<int>(bad % mn);
      const int t2 = static_cast<int>((bad / mn) % tn);
      const int t1 = static_cast<int>(bad / (static_cast<std::int64_t>(mn) * tn));
      std::ostringstream os;
      os << "t.(t'.x) != (tt').x at (t,t',x)=(" << t1 << "," << t2 << "," << x
         << ")";
      return ValidationReport::fail("act_assoc", {t1, t2, x}, os.str());
    }
  }

  // [t,t',t''].x = [t.x, t'.x, t''.x] over (t,t',t'',x).
  {
    std::int64_t bad = kNoViolation;
    const std::int64_t total = static_cast<std::int64_t>(tn) * tn * tn * mn;
#pragma omp parallel for reduction(min : bad) schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::int64_t rest = idx;
      const int x = static_cast<int>(rest % mn); rest /= mn;
      const int t3 = static_cast<int>(rest % tn); rest /= tn;
      const int t2 = static_cast<int>(rest % tn); rest /= tn;
      const int t1 = static_cast<int>(rest);
      if (m.act_at(t.heap.at(t1, t2, t3), x) !=
          m.heap.at(m.act_at(t1, x), m.act_at(t2, x), m.act_at(t3, x)))
        bad = std::min(bad, idx);
    }
    if (bad != kNoViolation) {
      std::int64_t rest = bad;
      const int x = static_cast<int>(rest % mn); rest /= mn;
      const int t3 = static_cast<int>(rest % tn); rest /= tn;
      const int t2 = static_cast<int>(rest % tn); rest /= tn;
      const int t1 = static_cast<int>(rest);
      std::ostringstream os;
      os << "[t,t',t''].x != [t.x,t'.x,t''.x] at (" << t1 << "," << t2 << ","
         << t3 << "," << x << ")";
      return ValidationReport::fail("act_truss_heap", {t1, t2, t3, x}, os.str());
    }
  }

  // t.[x,y,z] = [t.x, t.y, t.z] over (t,x,y,z).
  {
    std::int64_t bad = kNoViolation;
    const std::int64_t total = static_cast<std::int64_t>(tn) * mn * mn * mn;
#pragma omp parallel for reduction(min : bad) schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::int64_t rest = idx;
      const int z = static_cast<int>(rest % mn); rest /= mn;
      const int y = static_cast<int>(rest % mn); rest /= mn;
      const int x = static_cast<int>(rest % mn); rest /= mn;
      const int t1 = static_cast<int>(rest);
      if (m.act_at(t1, m.heap.at(x, y, z)) !=
          m.heap.at(m.act_at(t1, x), m.act_at(t1, y), m.act_at(t1, z)))
        bad = std::min(bad, idx);
    }
    if (bad != kNoViolation) {
      std::int64_t rest = bad;
      const int z = static_cast<int>(rest % mn); rest /= mn;
      const int y = static_cast<int>(rest % mn); rest /= mn;
      const int x = static_cast<int>(rest % mn); rest /= mn;
      const int t1 = static_cast<int>(rest);
      std::ostringstream os;
      os << "t.[x,y,z] != [t.x,t.y,t.z] at (" << t1 << "," << x << "," << y
         << "," << z << ")";
      return ValidationReport::fail("act_module_heap", {t1, x, y, z}, os.str());
    }
  }

  if (m.unital) {
    if (!t.one)
      return ValidationReport::fail("unit", {},
                                    "module declared unital over a truss with no unit");
    for (int x = 0; x < mn; ++x)
      if (m.act_at(*t.one, x) != x)
        return ValidationReport::fail("unit", {x}, "1.x != x");
  }

  return ValidationReport::pass();
}

ValidationReport validate_ring_module(const FiniteRingModule& m) {
  const FiniteRing& r = *m.ring;
  const int n = m.size;
  // Abelian group laws.
  for (int a = 0; a < n; ++a)
    if (m.add_at(m.zero, a) != a || m.add_at(a, m.zero) != a)
      return ValidationReport::fail("add_zero", {a}, "zero law fails");
  for (int a = 0; a < n; ++a) {
    bool has = false;
    for (int b = 0; b < n && !has; ++b)
      has = m.add_at(a, b) == m.zero && m.add_at(b, a) == m.zero;
    if (!has)
      return ValidationReport::fail("add_inverse", {a}, "no additive inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (m.add_at(a, b) != m.add_at(b, a))
        return ValidationReport::fail("add_comm", {a, b}, "not commutative");
      for (int c = 0; c < n; ++c)
        if (m.add_at(m.add_at(a, b), c) != m.add_at(a, m.add_at(b, c)))
          return ValidationReport::fail("add_assoc", {a, b, c}, "not associative");
    }
  // Module laws.
  for (int s = 0; s < r.size; ++s)
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y)
        if (m.act_at(s, m.add_at(x, y)) != m.add_at(m.act_at(s, x), m.act_at(s, y)))
          return ValidationReport::fail("act_add", {s, x, y}, "r(x+y) != rx+ry");
      for (int s2 = 0; s2 < r.size; ++s2) {
        if (m.act_at(r.add_at(s, s2), x) !=
            m.add_at(m.act_at(s, x), m.act_at(s2, x)))
          return ValidationReport::fail("add_act", {s, s2, x}, "(r+s)x != rx+sx");
        if (m.act_at(r.mul_at(s, s2), x) != m.act_at(s, m.act_at(s2, x)))
          return ValidationReport::fail("mul_act", {s, s2, x}, "(rs)x != r(sx)");
      }
    }
  if (m.unital) {
    if (!r.one)
      return ValidationReport::fail("unit", {}, "unital module over a ring with no unit");
    for (int x = 0; x < n; ++x)
      if (m.act_at(*r.one, x) != x)
        return ValidationReport::fail("unit", {x}, "1.x != x");
  }
  return ValidationReport::pass();
}

std::vector<int> absorbers(const FiniteModule& m) {
  std::vector<int> out;
  for (int x = 0; x < m.size(); ++x) {
    bool abs = true;
    for (int t = 0; t < m.tsize() && abs; ++t) abs = m.act_at(t, x) == x;
    if (abs) out.push_back(x);
  }
  return out;
}

FiniteModule induced_module(const FiniteModule& m, int e) {
  if (e < 0 || e >= m.size()) throw PreconditionError("induced base point out of range");
  FiniteModule out = m;
  for (int t = 0; t < m.tsize(); ++t)
    for (int x = 0; x < m.size(); ++x)
      out.act[static_cast<std::size_t>(t) * m.size() + x] =
          m.heap.at(m.act_at(t, x), m.act_at(t, e), e);
  // The deformed action need not fix the truss unit.
  out.unital = false;
  return out;
}

bool is_submodule(const FiniteModule& m, const std::vector<int>& elems) {
  if (elems.empty()) throw PreconditionError("empty subset");
  if (!is_subheap(m.heap, elems)) return false;
  std::vector<char> in(m.size(), 0);
  for (int v : elems) in[v] = 1;
  for (int t = 0; t < m.tsize(); ++t)
    for (int x : elems)
      if (!in[m.act_at(t, x)]) return false;
  return true;
}

bool is_induced_submodule(const FiniteModule& m, const std::vector<int>& elems) {
  if (elems.empty()) throw PreconditionError("empty subset");
  if (!is_subheap(m.heap, elems)) return false;
  std::vector<char> in(m.size(), 0);
  for (int v : elems) in[v] = 1;
  for (int t = 0; t < m.tsize(); ++t)
    for (int x : elems)
      for (int e : elems)
        if (!in[m.heap.at(m.act_at(t, x), m.act_at(t, e), e)]) return false;
  return true;
}

FiniteModule submodule_restrict(const FiniteModule& m,
                                const std::vector<int>& elems,
                                std::vector<int>* embedding) {
  auto sorted = sorted_unique(elems);
  if (!is_submodule(m, sorted))
    throw PreconditionError("subset is not a submodule");
  const int k = static_cast<int>(sorted.size());
  std::vector<int> back(m.size(), -1);
  for (int i = 0; i < k; ++i) back[sorted[i]] = i;

  std::vector<int> op(static_cast<std::size_t>(k) * k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        op[(static_cast<std::size_t>(a) * k + b) * k + c] =
            back[m.heap.at(sorted[a], sorted[b], sorted[c])];
  std::vector<int> act(static_cast<std::size_t>(m.tsize()) * k);
  for (int t = 0; t < m.tsize(); ++t)
    for (int a = 0; a < k; ++a)
      act[static_cast<std::size_t>(t) * k + a] = back[m.act_at(t, sorted[a])];

  if (embedding) *embedding = sorted;
  return FiniteModule{m.truss, FiniteHeap{k, std::move(op), true},
                      std::move(act), false};
}

QuotientModule quotient_by_partition(const FiniteModule& m,
                                     std::vector<std::vector<int>> classes) {
  for (auto& c : classes) std::sort(c.begin(), c.end());
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  const int k = static_cast<int>(classes.size());
  std::vector<int> class_of(m.size(), -1);
  for (int i = 0; i < k; ++i)
    for (int v : classes[i]) {
      if (v < 0 || v >= m.size() || class_of[v] != -1)
        throw PreconditionError("classes do not partition the carrier");
      class_of[v] = i;
    }
  for (int v = 0; v < m.size(); ++v)
    if (class_of[v] < 0)
      throw PreconditionError("classes do not partition the carrier");

  std::vector<int> op(static_cast<std::size_t>(k) * k * k, -1);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) {
        int result = -1;
        for (int a : classes[i])
          for (int b : classes[j])
            for (int c : classes[l]) {
              const int r = class_of[m.heap.at(a, b, c)];
              if (result < 0)
                result = r;
              else if (result != r)
                throw ConsistencyError(
                    "quotient heap operation depends on representatives");
            }
        op[(static_cast<std::size_t>(i) * k + j) * k + l] = result;
      }

  std::vector<int> act(static_cast<std::size_t>(m.tsize()) * k, -1);
  for (int t = 0; t < m.tsize(); ++t)
    for (int i = 0; i < k; ++i) {
      int result = -1;
      for (int a : classes[i]) {
        const int r = class_of[m.act_at(t, a)];
        if (result < 0)
          result = r;
        else if (result != r)
          throw ConsistencyError("quotient action depends on representatives");
      }
      act[static_cast<std::size_t>(t) * k + i] = result;
    }

  QuotientModule q;
  q.mod = FiniteModule{m.truss, FiniteHeap{k, std::move(op), true},
                       std::move(act), false};
  q.classes = std::move(classes);
  q.class_of = std::move(class_of);
  q.projection = ModuleMorphism{m, q.mod, q.class_of};
  return q;
}

QuotientModule quotient_module(const FiniteModule& m,
                               const std::vector<int>& submodule_elems) {
  auto sorted = sorted_unique(submodule_elems);
  if (!is_submodule(m, sorted))
    throw PreconditionError("quotient by a subset that is not a submodule");
  auto classes = congruence_classes(m.heap, sorted);
  return quotient_by_partition(m, std::move(classes));
}

FiniteModule product_module(const FiniteModule& m, const FiniteModule& n) {
  if (!same_truss(m, n))
    throw PreconditionError("product of modules over different trusses");
  const int a = m.size(), b = n.size(), k = a * b;
  std::vector<int> op(static_cast<std::size_t>(k) * k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) {
        const int x = m.heap.at(i / b, j / b, l / b);
        const int y = n.heap.at(i % b, j % b, l % b);
        op[(static_cast<std::size_t>(i) * k + j) * k + l] = x * b + y;
      }
  std::vector<int> act(static_cast<std::size_t>(m.tsize()) * k);
  for (int t = 0; t < m.tsize(); ++t)
    for (int i = 0; i < k; ++i)
      act[static_cast<std::size_t>(t) * k + i] =
          m.act_at(t, i / b) * b + n.act_at(t, i % b);
  return FiniteModule{m.truss, FiniteHeap{k, std::move(op), true},
                      std::move(act), m.unital && n.unital};
}

ValidationReport validate_module_morphism(const ModuleMorphism& f) {
  if (!same_truss(f.dom, f.cod))
    throw PreconditionError("morphism between modules over different trusses");
  HeapMorphism hm{f.dom.heap, f.cod.heap, f.map};
  auto hr = validate_heap_morphism(hm);
  if (!hr.ok) return hr;
  for (int t = 0; t < f.dom.tsize(); ++t)
    for (int x = 0; x < f.dom.size(); ++x)
      if (f.map[f.dom.act_at(t, x)] != f.cod.act_at(t, f.map[x])) {
        std::ostringstream os;
        os << "f(t.x) = " << f.map[f.dom.act_at(t, x)] << " but t.f(x) = "
           << f.cod.act_at(t, f.map[x]) << " at (t,x)=(" << t << "," << x << ")";
        return ValidationReport::fail("linear", {t, x}, os.str());
      }
  return ValidationReport::pass();
}

ValidationReport validate_ring_module_morphism(const RingModuleMorphism& f) {
  const int n = f.dom.size;
  if (static_cast<int>(f.map.size()) != n)
    throw StructureError("map is not total");
  for (int v : f.map)
    if (v < 0 || v >= f.cod.size) throw StructureError("image out of range");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (f.map[f.dom.add_at(a, b)] != f.cod.add_at(f.map[a], f.map[b]))
        return ValidationReport::fail("additive", {a, b}, "f(a+b) != f(a)+f(b)");
  for (int s = 0; s < f.dom.ring->size; ++s)
    for (int x = 0; x < n; ++x)
      if (f.map[f.dom.act_at(s, x)] != f.cod.act_at(s, f.map[x]))
        return ValidationReport::fail("linear", {s, x}, "f(sx) != s f(x)");
  return ValidationReport::pass();
}

KernelFiber kernel_e(const ModuleMorphism& f, int e) {
  auto im = image_of(f.map);
  if (!std::binary_search(im.begin(), im.end(), e))
    throw PreconditionError("kernel base point is not in the image");
  KernelFiber k;
  k.elems = fiber_of(f.map, e);
  if (!is_subheap(f.dom.heap, k.elems))
    throw ConsistencyError("kernel fiber is not a sub-heap");
  std::vector<char> in(f.dom.size(), 0);
  for (int v : k.elems) in[v] = 1;
  k.action_closed = true;
  for (int t = 0; t < f.dom.tsize() && k.action_closed; ++t)
    for (int x : k.elems)
      if (!in[f.dom.act_at(t, x)]) {
        k.action_closed = false;
        break;
      }
  return k;
}

std::vector<int> image_elements(const ModuleMorphism& f) {
  return image_of(f.map);
}

FiniteModule image_module(const ModuleMorphism& f, std::vector<int>* embedding) {
  return submodule_restrict(f.cod, image_of(f.map), embedding);
}

FirstIso first_isomorphism(const ModuleMorphism& f) {
  FirstIso out;
  out.quotient = quotient_by_partition(f.dom, fiber_partition(f.map));
  out.image = image_module(f, &out.image_elements);

  const int k = static_cast<int>(out.quotient.classes.size());
  std::vector<int> iso(k, -1);
  for (int i = 0; i < k; ++i) {
    int value = -1;
    for (int a : out.quotient.classes[i]) {
      if (value < 0)
        value = f.map[a];
      else if (value != f.map[a])
        throw ConsistencyError("first isomorphism: class maps to two values");
    }
    auto it = std::lower_bound(out.image_elements.begin(),
                               out.image_elements.end(), value);
    iso[i] = static_cast<int>(it - out.image_elements.begin());
  }
  out.iso = ModuleMorphism{out.quotient.mod, out.image, std::move(iso)};

  auto vr = validate_module_morphism(out.iso);
  if (!vr.ok)
    throw ConsistencyError("first isomorphism: canonical map is not T-linear: " +
                           vr.detail);
  if (!is_injective(out.iso.map) ||
      !is_surjective(out.iso.map, out.image.size()))
    throw ConsistencyError("first isomorphism: canonical map is not bijective");
  return out;
}

FiniteModule module_of_ring_module(const FiniteRingModule& n,
                                   std::shared_ptr<const FiniteTruss> truss) {
  if (!truss)
    truss = std::make_shared<FiniteTruss>(truss_of_ring(*n.ring));
  else {
    auto expect = truss_of_ring(*n.ring);
    if (!same_tables(*truss, expect))
      throw PreconditionError("supplied truss is not T(R) for the module's ring");
  }
  FiniteGroup add{n.size, n.add, n.zero, {}};
  add.inv.resize(n.size);
  for (int a = 0; a < n.size; ++a) {
    int b = 0;
    while (n.add_at(a, b) != n.zero) ++b;
    add.inv[a] = b;
  }
  FiniteHeap h = heap_of_group(add);
  h.declared_abelian = true;
  return FiniteModule{std::move(truss), std::move(h), n.act, n.unital};
}

bool same_truss(const FiniteModule& a, const FiniteModule& b) {
  if (a.truss == b.truss) return true;
  return same_tables(*a.truss, *b.truss);
}

ModuleMorphism identity_morphism(const FiniteModule& m) {
  std::vector<int> id(m.size());
  for (int i = 0; i < m.size(); ++i) id[i] = i;
  return ModuleMorphism{m, m, std::move(id)};
}

ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
  if (f.cod.size() != g.dom.size() || !same_truss(f.cod, g.dom))
    throw PreconditionError("composition domain mismatch");
  std::vector<int> map(f.map.size());
  for (std::size_t i = 0; i < f.map.size(); ++i) map[i] = g.map[f.map[i]];
  return ModuleMorphism{f.dom, g.cod, std::move(map)};
}

bool is_injective(const std::vector<int>& map) {
  std::set<int> s(map.begin(), map.end());
  return s.size() == map.size();
}

bool is_surjective(const std::vector<int>& map, int cod_size) {
  std::set<int> s(map.begin(), map.end());
  return static_cast<int>(s.size()) == cod_size;
}

}  // namespace trusslab
