#include "trusslab/serial.hpp"

#include <sstream>

namespace trusslab::serial {

ValidationReport validate_heap(const FiniteHeap& h) {
  const int n = h.size;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (h.at(a, b, b) != a) {
        std::ostringstream os;
        os << "[" << a << "," << b << "," << b << "] = " << h.at(a, b, b)
           << ", expected " << a;
        return ValidationReport::fail("malcev", {a, b}, os.str());
      }
      if (h.at(b, b, a) != a) {
        std::ostringstream os;
        os << "[" << b << "," << b << "," << a << "] = " << h.at(b, b, a)
           << ", expected " << a;
        return ValidationReport::fail("malcev", {a, b}, os.str());
      }
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          for (int e = 0; e < n; ++e)
            if (h.at(h.at(a, b, c), d, e) != h.at(a, b, h.at(c, d, e))) {
              std::ostringstream os;
              os << "[[a,b,c],d,e] = " << h.at(h.at(a, b, c), d, e)
                 << " but [a,b,[c,d,e]] = " << h.at(a, b, h.at(c, d, e))
                 << " at (" << a << "," << b << "," << c << "," << d << ","
                 << e << ")";
              return ValidationReport::fail("assoc", {a, b, c, d, e}, os.str());
            }
  if (h.declared_abelian)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (h.at(a, b, c) != h.at(c, b, a)) {
            std::ostringstream os;
            os << "[a,b,c] = " << h.at(a, b, c) << " but [c,b,a] = "
               << h.at(c, b, a) << " at (" << a << "," << b << "," << c << ")";
            return ValidationReport::fail("abelian", {a, b, c}, os.str());
          }
  return ValidationReport::pass();
}

bool is_abelian(const FiniteHeap& h) {
  for (int a = 0; a < h.size; ++a)
    for (int b = 0; b < h.size; ++b)
      for (int c = 0; c < h.size; ++c)
        if (h.at(a, b, c) != h.at(c, b, a)) return false;
  return true;
}

ValidationReport validate_truss(const FiniteTruss& t) {
  const int n = t.size();
  {
    auto hr = serial::validate_heap(t.heap);
    if (!hr.ok)
      return ValidationReport::fail("heap/" + hr.law, hr.witness, hr.detail);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (t.heap.at(a, b, c) != t.heap.at(c, b, a))
            return ValidationReport::fail("heap/abelian", {a, b, c},
                                          "truss heap is not abelian");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t.mul_at(t.mul_at(a, b), c) != t.mul_at(a, t.mul_at(b, c)))
          return ValidationReport::fail("mul_assoc", {a, b, c},
                                        "multiplication not associative");
  for (int w = 0; w < n; ++w)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (t.mul_at(w, t.heap.at(x, y, z)) !=
              t.heap.at(t.mul_at(w, x), t.mul_at(w, y), t.mul_at(w, z)))
            return ValidationReport::fail("left_distrib", {w, x, y, z},
                                          "w[x,y,z] != [wx,wy,wz]");
  for (int w = 0; w < n; ++w)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (t.mul_at(t.heap.at(x, y, z), w) !=
              t.heap.at(t.mul_at(x, w), t.mul_at(y, w), t.mul_at(z, w)))
            return ValidationReport::fail("right_distrib", {w, x, y, z},
                                          "[x,y,z]w != [xw,yw,zw]");
  if (t.one)
    for (int a = 0; a < n; ++a)
      if (t.mul_at(*t.one, a) != a || t.mul_at(a, *t.one) != a)
        return ValidationReport::fail("unit", {a}, "declared unit fails");
  return ValidationReport::pass();
}

ValidationReport validate_module(const FiniteModule& m) {
  const int tn = m.tsize(), mn = m.size();
  const FiniteTruss& t = *m.truss;
  for (int t1 = 0; t1 < tn; ++t1)
    for (int t2 = 0; t2 < tn; ++t2)
      for (int x = 0; x < mn; ++x)
        if (m.act_at(t1, m.act_at(t2, x)) != m.act_at(t.mul_at(t1, t2), x))
          return ValidationReport::fail("act_assoc", {t1, t2, x},
                                        "t.(t'.x) != (tt').x");
  for (int t1 = 0; t1 < tn; ++t1)
    for (int t2 = 0; t2 < tn; ++t2)
      for (int t3 = 0; t3 < tn; ++t3)
        for (int x = 0; x < mn; ++x)
          if (m.act_at(t.heap.at(t1, t2, t3), x) !=
              m.heap.at(m.act_at(t1, x), m.act_at(t2, x), m.act_at(t3, x)))
            return ValidationReport::fail("act_truss_heap", {t1, t2, t3, x},
                                          "[t,t',t''].x != [t.x,t'.x,t''.x]");
  for (int t1 = 0; t1 < tn; ++t1)
    for (int x = 0; x < mn; ++x)
      for (int y = 0; y < mn; ++y)
        for (int z = 0; z < mn; ++z)
          if (m.act_at(t1, m.heap.at(x, y, z)) !=
              m.heap.at(m.act_at(t1, x), m.act_at(t1, y), m.act_at(t1, z)))
            return ValidationReport::fail("act_module_heap", {t1, x, y, z},
                                          "t.[x,y,z] != [t.x,t.y,t.z]");
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

HomSet enumerate_hom_bruteforce(const FiniteModule& m, const FiniteModule& n,
                                std::uint64_t budget) {
  if (!same_truss(m, n))
    throw PreconditionError("hom set between modules over different trusses");
  std::uint64_t total = 1;
  for (int i = 0; i < m.size(); ++i) {
    total *= static_cast<std::uint64_t>(n.size());
    if (total > budget) throw BudgetError("brute-force hom budget exceeded");
  }

  HomSet h{m, n, {}};
  std::vector<int> map(m.size(), 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    std::uint64_t rest = c;
    for (int i = m.size() - 1; i >= 0; --i) {
      map[i] = static_cast<int>(rest % n.size());
      rest /= n.size();
    }
    bool ok = true;
    for (int x = 0; x < m.size() && ok; ++x)
      for (int y = 0; y < m.size() && ok; ++y)
        for (int z = 0; z < m.size() && ok; ++z)
          ok = map[m.heap.at(x, y, z)] == n.heap.at(map[x], map[y], map[z]);
    for (int t = 0; t < m.tsize() && ok; ++t)
      for (int x = 0; x < m.size() && ok; ++x)
        ok = map[m.act_at(t, x)] == n.act_at(t, map[x]);
    if (ok) h.maps.push_back(map);
  }
  return h;
}

}  // namespace trusslab::serial
