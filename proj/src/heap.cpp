#include "trusslab/heap.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace trusslab {

namespace {

std::string tuple_str(const std::vector<int>& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

void check_table(const char* what, const std::vector<int>& t,
                 std::size_t expected, int range) {
  if (t.size() != expected) {
    std::ostringstream os;
    os << what << " table has " << t.size() << " entries, expected " << expected;
    throw StructureError(os.str());
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0 || t[i] >= range) {
      std::ostringstream os;
      os << what << " table entry at flat index " << i << " is " << t[i]
         << ", out of range [0," << range << ")";
      throw StructureError(os.str());
    }
  }
}

constexpr std::int64_t kNoViolation = std::numeric_limits<std::int64_t>::max();

}  // namespace

FiniteHeap make_heap(int size, std::vector<int> op, bool declared_abelian) {
  if (size <= 0) throw StructureError("heap carrier must be non-empty");
  check_table("heap op", op,
              static_cast<std::size_t>(size) * size * size, size);
  return FiniteHeap{size, std::move(op), declared_abelian};
}

FiniteGroup make_group(int size, std::vector<int> mul, int id,
                       std::vector<int> inv) {
  if (size <= 0) throw StructureError("group carrier must be non-empty");
  check_table("group mul", mul, static_cast<std::size_t>(size) * size, size);
  if (id < 0 || id >= size) throw StructureError("group identity out of range");
  FiniteGroup g{size, std::move(mul), id, {}};
  if (inv.empty()) {
    g.inv.assign(size, -1);
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        if (g.mul_at(a, b) == id && g.mul_at(b, a) == id) {
          g.inv[a] = b;
          break;
        }
      }
      if (g.inv[a] < 0) {
        std::ostringstream os;
        os << "element " << a << " has no two-sided inverse";
        throw StructureError(os.str());
      }
    }
  } else {
    check_table("group inv", inv, static_cast<std::size_t>(size), size);
    g.inv = std::move(inv);
  }
  return g;
}

ValidationReport validate_heap(const FiniteHeap& h) {
  const int n = h.size;

  // Mal'cev over (a,b): [a,b,b] = a and [b,b,a] = a.
  {
    std::int64_t bad = kNoViolation;
#pragma omp parallel for reduction(min : bad) schedule(static)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(n) * n; ++idx) {
      const int a = static_cast<int>(idx / n), b = static_cast<int>(idx % n);
      if (h.at(a, b, b) != a || h.at(b, b, a) != a) bad = std::min(bad, idx);
    }
    if (bad != kNoViolation) {
      const int a = static_cast<int>(bad / n), b = static_cast<int>(bad % n);
      std::ostringstream os;
      if (h.at(a, b, b) != a)
        os << "[" << a << "," << b << "," << b << "] = " << h.at(a, b, b)
           << ", expected " << a;
      else
        os << "[" << b << "," << b << "," << a << "] = " << h.at(b, b, a)
           << ", expected " << a;
      return ValidationReport::fail("malcev", {a, b}, os.str());
    }
  }

  // Associativity over (a,b,c,d,e).
  {
    const std::int64_t total = static_cast<std::int64_t>(n) * n * n * n * n;
    std::int64_t bad = kNoViolation;
#pragma omp parallel for reduction(min : bad) schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::int64_t rest = idx;
      const int e = static_cast<int>(rest % n); rest /= n;
      const int d = static_cast<int>(rest % n); rest /= n;
      const int c = static_cast<int>(rest % n); rest /= n;
      const int b = static_cast<int>(rest % n); rest /= n;
      const int a = static_cast<int>(rest);
      if (h.at(h.at(a, b, c), d, e) != h.at(a, b, h.at(c, d, e)))
        bad = std::min(bad, idx);
    }
    if (bad != kNoViolation) {
      std::vector<int> w(5);
      std::int64_t rest = bad;
      for (int i = 4; i >= 0; --i) { w[i] = static_cast<int>(rest % n); rest /= n; }
      std::ostringstream os;
      os << "[[a,b,c],d,e] = " << h.at(h.at(w[0], w[1], w[2]), w[3], w[4])
         << " but [a,b,[c,d,e]] = " << h.at(w[0], w[1], h.at(w[2], w[3], w[4]))
         << " at " << tuple_str(w);
      return ValidationReport::fail("assoc", w, os.str());
    }
  }

  if (h.declared_abelian) {
    if (auto w = abelian_witness(h)) {
      std::ostringstream os;
      os << "[a,b,c] = " << h.at((*w)[0], (*w)[1], (*w)[2]) << " but [c,b,a] = "
         << h.at((*w)[2], (*w)[1], (*w)[0]) << " at ("
         << (*w)[0] << "," << (*w)[1] << "," << (*w)[2] << ")";
      return ValidationReport::fail("abelian", {(*w)[0], (*w)[1], (*w)[2]},
                                    os.str());
    }
  }

  return ValidationReport::pass();
}

std::optional<std::array<int, 3>> abelian_witness(const FiniteHeap& h) {
  const int n = h.size;
  const std::int64_t total = static_cast<std::int64_t>(n) * n * n;
  std::int64_t bad = kNoViolation;
#pragma omp parallel for reduction(min : bad) schedule(static)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const int c = static_cast<int>(idx % n);
    const int b = static_cast<int>((idx / n) % n);
    const int a = static_cast<int>(idx / (static_cast<std::int64_t>(n) * n));
    if (h.at(a, b, c) != h.at(c, b, a)) bad = std::min(bad, idx);
  }
  if (bad == kNoViolation) return std::nullopt;
  const int c = static_cast<int>(bad % n);
  const int b = static_cast<int>((bad / n) % n);
  const int a = static_cast<int>(bad / (static_cast<std::int64_t>(n) * n));
  return std::array<int, 3>{a, b, c};
}

bool is_abelian(const FiniteHeap& h) { return !abelian_witness(h).has_value(); }

ValidationReport validate_group(const FiniteGroup& g) {
  const int n = g.size;
  for (int a = 0; a < n; ++a) {
    if (g.mul_at(g.id, a) != a || g.mul_at(a, g.id) != a) {
      std::ostringstream os;
      os << "identity law fails at " << a;
      return ValidationReport::fail("identity", {a}, os.str());
    }
  }
  for (int a = 0; a < n; ++a) {
    if (g.mul_at(a, g.inv[a]) != g.id || g.mul_at(g.inv[a], a) != g.id) {
      std::ostringstream os;
      os << "inverse law fails at " << a;
      return ValidationReport::fail("inverse", {a}, os.str());
    }
  }
  const std::int64_t total = static_cast<std::int64_t>(n) * n * n;
  std::int64_t bad = kNoViolation;
#pragma omp parallel for reduction(min : bad) schedule(static)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const int c = static_cast<int>(idx % n);
    const int b = static_cast<int>((idx / n) % n);
    const int a = static_cast<int>(idx / (static_cast<std::int64_t>(n) * n));
    if (g.mul_at(g.mul_at(a, b), c) != g.mul_at(a, g.mul_at(b, c)))
      bad = std::min(bad, idx);
  }
  if (bad != kNoViolation) {
    const int c = static_cast<int>(bad % n);
    const int b = static_cast<int>((bad / n) % n);
    const int a = static_cast<int>(bad / (static_cast<std::int64_t>(n) * n));
    std::ostringstream os;
    os << "(a*b)*c != a*(b*c) at (" << a << "," << b << "," << c << ")";
    return ValidationReport::fail("assoc", {a, b, c}, os.str());
  }
  return ValidationReport::pass();
}

FiniteHeap heap_of_group(const FiniteGroup& g) {
  const int n = g.size;
  std::vector<int> op(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int abinv = g.mul_at(a, g.inv[b]);
      for (int c = 0; c < n; ++c)
        op[(static_cast<std::size_t>(a) * n + b) * n + c] = g.mul_at(abinv, c);
    }
  return FiniteHeap{n, std::move(op), false};
}

FiniteGroup group_of_heap(const FiniteHeap& h, int e) {
  if (e < 0 || e >= h.size) throw PreconditionError("base point out of range");
  const int n = h.size;
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  std::vector<int> inv(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      mul[static_cast<std::size_t>(a) * n + b] = h.at(a, e, b);
    inv[a] = h.at(e, a, e);
  }
  return FiniteGroup{n, std::move(mul), e, std::move(inv)};
}

int solve_fourth(const FiniteHeap& h, std::optional<int> x,
                 std::optional<int> y, std::optional<int> z,
                 std::optional<int> w) {
  const int missing = !x.has_value() + !y.has_value() + !z.has_value() +
                      !w.has_value();
  if (missing != 1)
    throw PreconditionError("exactly one of x,y,z,w must be unknown");
  auto in_range = [&](std::optional<int> v) {
    return !v || (*v >= 0 && *v < h.size);
  };
  if (!in_range(x) || !in_range(y) || !in_range(z) || !in_range(w))
    throw PreconditionError("known element out of range");

  // Closed forms for an abelian heap, each followed by a uniqueness scan.
  int candidate;
  if (!w)
    candidate = h.at(*x, *y, *z);
  else if (!z)
    candidate = h.at(*y, *x, *w);
  else if (!x)
    candidate = h.at(*y, *z, *w);
  else
    candidate = h.at(*x, *w, *z);

  int found = -1;
  for (int v = 0; v < h.size; ++v) {
    const int xa = x.value_or(v), ya = y.value_or(v), za = z.value_or(v);
    const int wa = w.value_or(v);
    if (h.at(xa, ya, za) == wa) {
      if (found >= 0)
        throw ConsistencyError("solve_fourth: solution not unique; table is not a heap");
      found = v;
    }
  }
  if (found < 0)
    throw ConsistencyError("solve_fourth: no solution; table is not a heap");
  if (found != candidate)
    throw ConsistencyError("solve_fourth: closed form disagrees with scan");
  return found;
}

bool is_subheap(const FiniteHeap& h, const std::vector<int>& elems) {
  std::vector<char> in(h.size, 0);
  for (int v : elems) {
    if (v < 0 || v >= h.size) throw PreconditionError("subset element out of range");
    in[v] = 1;
  }
  for (int a : elems)
    for (int b : elems)
      for (int c : elems)
        if (!in[h.at(a, b, c)]) return false;
  return true;
}

SubHeap subheap_closure(const FiniteHeap& h, const std::vector<int>& seed) {
  if (seed.empty()) throw PreconditionError("closure of the empty set");
  std::vector<char> in(h.size, 0);
  for (int v : seed) {
    if (v < 0 || v >= h.size) throw PreconditionError("subset element out of range");
    in[v] = 1;
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur;
    for (int v = 0; v < h.size; ++v)
      if (in[v]) cur.push_back(v);
    for (int a : cur)
      for (int b : cur)
        for (int c : cur) {
          const int r = h.at(a, b, c);
          if (!in[r]) { in[r] = 1; grew = true; }
        }
  }
  std::vector<int> elems;
  for (int v = 0; v < h.size; ++v)
    if (in[v]) elems.push_back(v);
  return SubHeap{h, std::move(elems)};
}

std::vector<std::vector<int>> congruence_classes(const FiniteHeap& h,
                                                 const std::vector<int>& sub) {
  if (sub.empty()) throw PreconditionError("congruence by the empty sub-heap");
  if (!is_abelian(h))
    throw PreconditionError("sub-heap congruence requires an abelian heap");
  if (!is_subheap(h, sub))
    throw PreconditionError("subset is not closed under the heap operation");

  std::vector<char> in(h.size, 0);
  for (int v : sub) in[v] = 1;
  const int s0 = *std::min_element(sub.begin(), sub.end());

  auto related = [&](int a, int b) { return in[h.at(a, b, s0)] != 0; };

  // The defining relation must not depend on the chosen s.
  for (int a = 0; a < h.size; ++a)
    for (int b = 0; b < h.size; ++b) {
      const bool r = related(a, b);
      for (int s : sub)
        if ((in[h.at(a, b, s)] != 0) != r)
          throw ConsistencyError("congruence relation depends on the choice of s");
    }

  std::vector<int> cls(h.size, -1);
  std::vector<std::vector<int>> classes;
  for (int a = 0; a < h.size; ++a) {
    if (cls[a] >= 0) continue;
    const int id = static_cast<int>(classes.size());
    classes.emplace_back();
    for (int b = a; b < h.size; ++b)
      if (cls[b] < 0 && related(a, b)) {
        cls[b] = id;
        classes.back().push_back(b);
      }
  }
  return classes;
}

QuotientHeap quotient_heap(const FiniteHeap& h, const std::vector<int>& sub) {
  auto classes = congruence_classes(h, sub);

  // The class of any s in S must be S itself.
  {
    std::vector<int> sorted_sub = sub;
    std::sort(sorted_sub.begin(), sorted_sub.end());
    sorted_sub.erase(std::unique(sorted_sub.begin(), sorted_sub.end()),
                     sorted_sub.end());
    for (const auto& c : classes) {
      const bool touches = std::find(sorted_sub.begin(), sorted_sub.end(),
                                     c.front()) != sorted_sub.end();
      if (touches && c != sorted_sub)
        throw ConsistencyError("class of s in S differs from S");
    }
  }

  const int k = static_cast<int>(classes.size());
  std::vector<int> class_of(h.size, -1);
  for (int i = 0; i < k; ++i)
    for (int v : classes[i]) class_of[v] = i;

  std::vector<int> op(static_cast<std::size_t>(k) * k * k, -1);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) {
        int result = -1;
        for (int a : classes[i])
          for (int b : classes[j])
            for (int c : classes[l]) {
              const int r = class_of[h.at(a, b, c)];
              if (result < 0)
                result = r;
              else if (result != r)
                throw ConsistencyError(
                    "quotient operation depends on representatives");
            }
        op[(static_cast<std::size_t>(i) * k + j) * k + l] = result;
      }

  QuotientHeap q;
  q.heap = FiniteHeap{k, std::move(op), true};
  q.classes = std::move(classes);
  q.class_of = std::move(class_of);
  q.projection = HeapMorphism{h, q.heap, q.class_of};
  return q;
}

ValidationReport validate_heap_morphism(const HeapMorphism& f) {
  const int n = f.dom.size;
  if (static_cast<int>(f.map.size()) != n)
    throw StructureError("morphism map is not total on the domain");
  for (int v : f.map)
    if (v < 0 || v >= f.cod.size)
      throw StructureError("morphism image out of range");
  const std::int64_t total = static_cast<std::int64_t>(n) * n * n;
  std::int64_t bad = kNoViolation;
#pragma omp parallel for reduction(min : bad) schedule(static)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const int z = static_cast<int>(idx % n);
    const int y = static_cast<int>((idx / n) % n);
    const int x = static_cast<int>(idx / (static_cast<std::int64_t>(n) * n));
    if (f.map[f.dom.at(x, y, z)] != f.cod.at(f.map[x], f.map[y], f.map[z]))
      bad = std::min(bad, idx);
  }
  if (bad != kNoViolation) {
    const int z = static_cast<int>(bad % n);
    const int y = static_cast<int>((bad / n) % n);
    const int x = static_cast<int>(bad / (static_cast<std::int64_t>(n) * n));
    std::ostringstream os;
    os << "f([x,y,z]) = " << f.map[f.dom.at(x, y, z)] << " but [fx,fy,fz] = "
       << f.cod.at(f.map[x], f.map[y], f.map[z]) << " at (" << x << "," << y
       << "," << z << ")";
    return ValidationReport::fail("heap_morphism", {x, y, z}, os.str());
  }
  return ValidationReport::pass();
}

std::vector<int> image_of(const std::vector<int>& map) {
  std::set<int> s(map.begin(), map.end());
  return {s.begin(), s.end()};
}

std::vector<int> fiber_of(const std::vector<int>& map, int e) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(map.size()); ++i)
    if (map[i] == e) out.push_back(i);
  return out;
}

std::vector<std::vector<int>> fiber_partition(const std::vector<int>& map) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(map.size(), 0);
  for (int i = 0; i < static_cast<int>(map.size()); ++i) {
    if (seen[i]) continue;
    std::vector<int> f;
    for (int j = i; j < static_cast<int>(map.size()); ++j)
      if (map[j] == map[i]) { f.push_back(j); seen[j] = 1; }
    out.push_back(std::move(f));
  }
  return out;
}

SubHeap kernel_subheap(const HeapMorphism& f, int e) {
  auto im = image_of(f.map);
  if (!std::binary_search(im.begin(), im.end(), e))
    throw PreconditionError("kernel base point is not in the image");
  auto elems = fiber_of(f.map, e);
  if (!is_subheap(f.dom, elems))
    throw ConsistencyError("kernel fiber is not closed under the heap operation");
  return SubHeap{f.dom, std::move(elems)};
}

}  // namespace trusslab
