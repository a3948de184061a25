#include "trusslab/truss.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>

namespace trusslab {

namespace {

constexpr std::int64_t kNoViolation = std::numeric_limits<std::int64_t>::max();

void check_square(const char* what, const std::vector<int>& t, int n) {
  if (t.size() != static_cast<std::size_t>(n) * n) {
    std::ostringstream os;
    os << what << " table has " << t.size() << " entries, expected " << n * n;
    throw StructureError(os.str());
  }
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0 || t[i] >= n) {
      std::ostringstream os;
      os << what << " entry at flat index " << i << " out of range";
      throw StructureError(os.str());
    }
}

}  // namespace

int FiniteRing::neg_of(int a) const {
  for (int b = 0; b < size; ++b)
    if (add_at(a, b) == zero) return b;
  throw StructureError("element has no additive inverse");
}

FiniteTruss make_truss(FiniteHeap heap, std::vector<int> mul,
                       std::optional<int> one) {
  check_square("truss mul", mul, heap.size);
  if (one && (*one < 0 || *one >= heap.size))
    throw StructureError("truss unit out of range");
  heap.declared_abelian = true;
  return FiniteTruss{std::move(heap), std::move(mul), one};
}

FiniteRing make_ring(int size, std::vector<int> add, std::vector<int> mul,
                     int zero, std::optional<int> one) {
  if (size <= 0) throw StructureError("ring carrier must be non-empty");
  check_square("ring add", add, size);
  check_square("ring mul", mul, size);
  if (zero < 0 || zero >= size) throw StructureError("ring zero out of range");
  if (one && (*one < 0 || *one >= size))
    throw StructureError("ring one out of range");
  return FiniteRing{size, std::move(add), std::move(mul), zero, one};
}

ValidationReport validate_truss(const FiniteTruss& t) {
  const int n = t.size();

  {
    auto hr = validate_heap(t.heap);
    if (!hr.ok)
      return ValidationReport::fail("heap/" + hr.law, hr.witness, hr.detail);
    if (auto w = abelian_witness(t.heap)) {
      std::ostringstream os;
      os << "truss heap is not abelian at (" << (*w)[0] << "," << (*w)[1]
         << "," << (*w)[2] << ")";
      return ValidationReport::fail("heap/abelian",
                                    {(*w)[0], (*w)[1], (*w)[2]}, os.str());
    }
  }

  {
    std::int64_t bad = kNoViolation;
    const std::int64_t total = static_cast<std::int64_t>(n) * n * n;
#pragma omp parallel for reduction(min : bad) schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      const int c = static_cast<int>(idx % n);
      const int b = static_cast<int>((idx / n) % n);
      const int a = static_cast<int>(idx / (static_cast<std::int64_t>(n) * n));
      if (t.mul_at(t.mul_at(a, b), c) != t.mul_at(a, t.mul_at(b, c)))
        bad = std::min(bad, idx);
    }
    if (bad != kNoViolation) {
      const int c = static_cast<int>(bad % n);
      const int b = static_cast<int>((bad / n) % n);
      const int a = static_cast<int>(bad / (static_cast<std::int64_t>(n) * n));
      std::ostringstream os;
      os << "(ab)c != a(bc) at (" << a << "," << b << "," << c << ")";
      return ValidationReport::fail("mul_assoc", {a, b, c}, os.str());
    }
  }

  // Left then right distributivity, scanned over (w,x,y,z).
  for (int side = 0; side < 2; ++side) {
    std::int64_t bad = kNoViolation;
    const std::int64_t total = static_cast<std::int64_t>(n) * n * n * n;
#pragma omp parallel for reduction(min : bad) schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::int64_t rest = idx;
      const int z = static_cast<int>(rest % n); rest /= n;
      const int y = static_cast<int>(rest % n); rest /= n;
      const int x = static_cast<int>(rest % n); rest /= n;
      const int w = static_cast<int>(rest);
      const bool ok =
          side == 0
              ? t.mul_at(w, t.heap.at(x, y, z)) ==
                    t.heap.at(t.mul_at(w, x), t.mul_at(w, y), t.mul_at(w, z))
              : t.mul_at(t.heap.at(x, y, z), w) ==
                    t.heap.at(t.mul_at(x, w), t.mul_at(y, w), t.mul_at(z, w));
      if (!ok) bad = std::min(bad, idx);
    }
    if (bad != kNoViolation) {
      std::int64_t rest = bad;
      const int z = static_cast<int>(rest % n); rest /= n;
      const int y = static_cast<int>(rest % n); rest /= n;
      const int x = static_cast<int>(rest % n); rest /= n;
      const int w = static_cast<int>(rest);
      std::ostringstream os;
      if (side == 0)
        os << "w[x,y,z] = " << t.mul_at(w, t.heap.at(x, y, z))
           << " but [wx,wy,wz] = "
           << t.heap.at(t.mul_at(w, x), t.mul_at(w, y), t.mul_at(w, z))
           << " at (w,x,y,z)=(" << w << "," << x << "," << y << "," << z << ")";
      else
        os << "[x,y,z]w = " << t.mul_at(t.heap.at(x, y, z), w)
           << " but [xw,yw,zw] = "
           << t.heap.at(t.mul_at(x, w), t.mul_at(y, w), t.mul_at(z, w))
           << " at (w,x,y,z)=(" << w << "," << x << "," << y << "," << z << ")";
      return ValidationReport::fail(side == 0 ? "left_distrib" : "right_distrib",
                                    {w, x, y, z}, os.str());
    }
  }

  if (t.one) {
    for (int a = 0; a < n; ++a)
      if (t.mul_at(*t.one, a) != a || t.mul_at(a, *t.one) != a) {
        std::ostringstream os;
        os << "declared unit " << *t.one << " fails at " << a;
        return ValidationReport::fail("unit", {a}, os.str());
      }
  }

  return ValidationReport::pass();
}

ValidationReport validate_ring(const FiniteRing& r) {
  const int n = r.size;
  // Additive abelian group.
  for (int a = 0; a < n; ++a)
    if (r.add_at(r.zero, a) != a || r.add_at(a, r.zero) != a)
      return ValidationReport::fail("add_zero", {a}, "zero law fails");
  for (int a = 0; a < n; ++a) {
    bool has = false;
    for (int b = 0; b < n && !has; ++b)
      has = r.add_at(a, b) == r.zero && r.add_at(b, a) == r.zero;
    if (!has)
      return ValidationReport::fail("add_inverse", {a}, "no additive inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (r.add_at(a, b) != r.add_at(b, a))
        return ValidationReport::fail("add_comm", {a, b}, "addition not commutative");
      for (int c = 0; c < n; ++c)
        if (r.add_at(r.add_at(a, b), c) != r.add_at(a, r.add_at(b, c)))
          return ValidationReport::fail("add_assoc", {a, b, c},
                                        "addition not associative");
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (r.mul_at(r.mul_at(a, b), c) != r.mul_at(a, r.mul_at(b, c)))
          return ValidationReport::fail("mul_assoc", {a, b, c},
                                        "multiplication not associative");
        if (r.mul_at(a, r.add_at(b, c)) != r.add_at(r.mul_at(a, b), r.mul_at(a, c)))
          return ValidationReport::fail("left_distrib", {a, b, c},
                                        "a(b+c) != ab+ac");
        if (r.mul_at(r.add_at(a, b), c) != r.add_at(r.mul_at(a, c), r.mul_at(b, c)))
          return ValidationReport::fail("right_distrib", {a, b, c},
                                        "(a+b)c != ac+bc");
      }
  if (r.one)
    for (int a = 0; a < n; ++a)
      if (r.mul_at(*r.one, a) != a || r.mul_at(a, *r.one) != a)
        return ValidationReport::fail("one", {a}, "declared unit fails");
  return ValidationReport::pass();
}

FiniteTruss truss_of_ring(const FiniteRing& r) {
  FiniteGroup add{r.size, r.add, r.zero, {}};
  add.inv.resize(r.size);
  for (int a = 0; a < r.size; ++a) add.inv[a] = r.neg_of(a);
  FiniteHeap h = heap_of_group(add);
  h.declared_abelian = true;
  return FiniteTruss{std::move(h), r.mul, r.one};
}

ValidationReport validate_truss_morphism(const TrussMorphism& f) {
  HeapMorphism hm{f.dom.heap, f.cod.heap, f.map};
  auto hr = validate_heap_morphism(hm);
  if (!hr.ok) return hr;
  const int n = f.dom.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (f.map[f.dom.mul_at(a, b)] != f.cod.mul_at(f.map[a], f.map[b])) {
        std::ostringstream os;
        os << "f(ab) = " << f.map[f.dom.mul_at(a, b)] << " but f(a)f(b) = "
           << f.cod.mul_at(f.map[a], f.map[b]) << " at (" << a << "," << b << ")";
        return ValidationReport::fail("multiplicative", {a, b}, os.str());
      }
  return ValidationReport::pass();
}

bool mul_commutative(const FiniteTruss& t) {
  for (int a = 0; a < t.size(); ++a)
    for (int b = 0; b < a; ++b)
      if (t.mul_at(a, b) != t.mul_at(b, a)) return false;
  return true;
}

bool mul_commutative(const FiniteRing& r) {
  for (int a = 0; a < r.size; ++a)
    for (int b = 0; b < a; ++b)
      if (r.mul_at(a, b) != r.mul_at(b, a)) return false;
  return true;
}

bool same_tables(const FiniteHeap& a, const FiniteHeap& b) {
  return a.size == b.size && a.op == b.op;
}

bool same_tables(const FiniteTruss& a, const FiniteTruss& b) {
  return same_tables(a.heap, b.heap) && a.mul == b.mul && a.one == b.one;
}

}  // namespace trusslab
