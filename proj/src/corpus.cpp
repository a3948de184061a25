#include "trusslab/corpus.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <sstream>

namespace trusslab {

namespace {

std::string zname(int n) { return "Z" + std::to_string(n); }

// Pool modules and canonical maps are validated at generation time; the
// corpus contract is that every emitted instance already satisfies its own
// preconditions.
void must_be_valid(const FiniteModule& m, const std::string& what) {
  auto r = validate_module(m);
  if (!r.ok)
    throw ConsistencyError("generator produced an invalid module (" + what +
                           "): " + r.law);
}

void must_be_linear(const ModuleMorphism& f, const std::string& what) {
  auto r = validate_module_morphism(f);
  if (!r.ok)
    throw ConsistencyError("generator produced a non-linear map (" + what +
                           "): " + r.law);
}

}  // namespace

FiniteGroup cyclic_group(int n) {
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  std::vector<int> inv(n);
  for (int a = 0; a < n; ++a) {
    inv[a] = (n - a) % n;
    for (int b = 0; b < n; ++b)
      mul[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  return FiniteGroup{n, std::move(mul), 0, std::move(inv)};
}

FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b) {
  const int n = a.size * b.size;
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  std::vector<int> inv(n);
  for (int x = 0; x < n; ++x) {
    const int xa = x / b.size, xb = x % b.size;
    inv[x] = a.inv[xa] * b.size + b.inv[xb];
    for (int y = 0; y < n; ++y) {
      const int ya = y / b.size, yb = y % b.size;
      mul[static_cast<std::size_t>(x) * n + y] =
          a.mul_at(xa, ya) * b.size + b.mul_at(xb, yb);
    }
  }
  return FiniteGroup{n, std::move(mul), a.id * b.size + b.id, std::move(inv)};
}

FiniteGroup symmetric3() {
  // Permutations of {0,1,2} in lexicographic order; (p*q)(i) = p[q[i]].
  const std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  auto index_of = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    throw ConsistencyError("S3 table construction failed");
  };
  std::vector<int> mul(36);
  std::vector<int> inv(6);
  for (int i = 0; i < 6; ++i) {
    std::array<int, 3> vi{};
    for (int k = 0; k < 3; ++k) vi[perms[i][k]] = k;
    inv[i] = index_of(vi);
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[i][perms[j][k]];
      mul[static_cast<std::size_t>(i) * 6 + j] = index_of(c);
    }
  }
  return FiniteGroup{6, std::move(mul), 0, std::move(inv)};
}

FiniteRing cyclic_ring(int n) {
  std::vector<int> add(static_cast<std::size_t>(n) * n);
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      add[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
      mul[static_cast<std::size_t>(a) * n + b] = (a * b) % n;
    }
  return FiniteRing{n, std::move(add), std::move(mul), 0,
                    n > 1 ? std::optional<int>(1) : std::optional<int>(0)};
}

FiniteRing product_ring(const FiniteRing& a, const FiniteRing& b) {
  const int n = a.size * b.size;
  std::vector<int> add(static_cast<std::size_t>(n) * n);
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int xa = x / b.size, xb = x % b.size;
      const int ya = y / b.size, yb = y % b.size;
      add[static_cast<std::size_t>(x) * n + y] =
          a.add_at(xa, ya) * b.size + b.add_at(xb, yb);
      mul[static_cast<std::size_t>(x) * n + y] =
          a.mul_at(xa, ya) * b.size + b.mul_at(xb, yb);
    }
  std::optional<int> one;
  if (a.one && b.one) one = *a.one * b.size + *b.one;
  return FiniteRing{n, std::move(add), std::move(mul),
                    a.zero * b.size + b.zero, one};
}

FiniteRing upper_triangular_f2() {
  const int n = 8;
  auto pack = [](int a, int b, int d) { return 4 * a + 2 * b + d; };
  std::vector<int> add(64), mul(64);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int xa = x >> 2, xb = (x >> 1) & 1, xd = x & 1;
      const int ya = y >> 2, yb = (y >> 1) & 1, yd = y & 1;
      add[static_cast<std::size_t>(x) * n + y] =
          pack(xa ^ ya, xb ^ yb, xd ^ yd);
      mul[static_cast<std::size_t>(x) * n + y] =
          pack(xa & ya, (xa & yb) ^ (xb & yd), xd & yd);
    }
  return FiniteRing{n, std::move(add), std::move(mul), 0, pack(1, 0, 1)};
}

std::vector<FiniteGroup> corpus_groups(const CorpusConfig& cfg) {
  std::vector<FiniteGroup> out;
  for (int n = 1; n <= 8; ++n) out.push_back(cyclic_group(n));
  for (int a = 2; a <= 8; ++a)
    for (int b = a; a * b <= 8; ++b)
      out.push_back(product_group(cyclic_group(a), cyclic_group(b)));
  out.push_back(symmetric3());
  (void)cfg;
  return out;
}

std::vector<FiniteRing> corpus_rings(const CorpusConfig& cfg) {
  std::vector<FiniteRing> out;
  for (int n = 1; n <= 8; ++n) out.push_back(cyclic_ring(n));
  for (int a = 2; a <= 8; ++a)
    for (int b = a; b <= 8; ++b)
      if (a * b <= cfg.max_size)
        out.push_back(product_ring(cyclic_ring(a), cyclic_ring(b)));
  return out;
}

namespace {

FiniteModule self_module(const TrussContext& ctx) {
  return make_module(ctx.truss, ctx.truss->heap, ctx.truss->mul,
                     ctx.truss->one.has_value());
}

// Z/m as a T(Z/n)-module, m | n.
FiniteModule quotient_zm(const TrussContext& ctx, int m) {
  FiniteHeap h = heap_of_group(cyclic_group(m));
  std::vector<int> act(static_cast<std::size_t>(ctx.n) * m);
  for (int t = 0; t < ctx.n; ++t)
    for (int x = 0; x < m; ++x)
      act[static_cast<std::size_t>(t) * m + x] = (t * x) % m;
  return make_module(ctx.truss, std::move(h), std::move(act), true);
}

FiniteModule identity_action_module(const TrussContext& ctx, int m) {
  FiniteHeap h = heap_of_group(cyclic_group(m));
  std::vector<int> act(static_cast<std::size_t>(ctx.n) * m);
  for (int t = 0; t < ctx.n; ++t)
    for (int x = 0; x < m; ++x) act[static_cast<std::size_t>(t) * m + x] = x;
  return make_module(ctx.truss, std::move(h), std::move(act), true);
}

}  // namespace

TrussContext truss_context(int n, const CorpusConfig& cfg) {
  TrussContext ctx;
  ctx.n = n;
  ctx.ring = cyclic_ring(n);
  ctx.truss = std::make_shared<const FiniteTruss>(truss_of_ring(ctx.ring));

  auto add = [&](const std::string& name, FiniteModule m) {
    if (m.size() > cfg.max_size) return;
    must_be_valid(m, name);
    if (absorbers(m).empty())
      throw ConsistencyError("pool module without absorbers: " + name);
    ctx.names.push_back(name);
    ctx.modules.push_back(std::move(m));
  };

  add("star", identity_action_module(ctx, 1));
  add("self", self_module(ctx));
  for (int m = 2; m < n; ++m)
    if (n % m == 0) add("quot" + std::to_string(m), quotient_zm(ctx, m));
  add("idact2", identity_action_module(ctx, 2));
  add("idact3", identity_action_module(ctx, 3));
  if (n >= 2) add("twist1", induced_module(self_module(ctx), 1));
  for (int m = 2; m < n; ++m)
    if (n % m == 0) {
      add("self.x.quot" + std::to_string(m),
          product_module(self_module(ctx), quotient_zm(ctx, m)));
      add("quot" + std::to_string(m) + ".sq",
          product_module(quotient_zm(ctx, m), quotient_zm(ctx, m)));
      break;
    }
  return ctx;
}

namespace {

ModuleMorphism const_map(const FiniteModule& dom, const FiniteModule& cod,
                         int value) {
  return ModuleMorphism{dom, cod, std::vector<int>(dom.size(), value)};
}

ModuleMorphism proj_product(const FiniteModule& prod, const FiniteModule& b) {
  std::vector<int> map(prod.size());
  for (int p = 0; p < prod.size(); ++p) map[p] = p % b.size();
  return ModuleMorphism{prod, b, std::move(map)};
}

ModuleMorphism incl_product(const FiniteModule& a, const FiniteModule& prod,
                            int b_size, int b_base) {
  std::vector<int> map(a.size());
  for (int x = 0; x < a.size(); ++x) map[x] = x * b_size + b_base;
  return ModuleMorphism{a, prod, std::move(map)};
}

// Structured short exact sequences over one truss context; all entries are
// genuinely short exact and pre-validated.
std::vector<SesInstance> structured_ses(const TrussContext& ctx,
                                        const CorpusConfig& cfg, Rng& rng) {
  std::vector<SesInstance> out;
  const std::string base = zname(ctx.n);

  for (std::size_t i = 0; i < ctx.modules.size(); ++i) {
    const FiniteModule& m = ctx.modules[i];
    const int a0 = absorbers(m).front();
    const FiniteModule& star = ctx.modules.front();
    SesInstance left;
    left.name = base + "/trivl/" + ctx.names[i];
    left.f = const_map(star, m, a0);
    left.g = identity_morphism(m);
    left.expect_exact = true;
    out.push_back(std::move(left));

    SesInstance right;
    right.name = base + "/trivr/" + ctx.names[i];
    right.f = identity_morphism(m);
    right.g = const_map(m, star, 0);
    right.expect_exact = true;
    out.push_back(std::move(right));
  }

  // Factor sequences quot(a) -> self -> quot(n/a).
  for (int a = 2; a < ctx.n; ++a) {
    if (ctx.n % a != 0) continue;
    const int b = ctx.n / a;
    if (b < 2) continue;
    SesInstance s;
    s.name = base + "/factor/" + std::to_string(a);
    std::vector<int> fmap(a);
    for (int x = 0; x < a; ++x) fmap[x] = (b * x) % ctx.n;
    s.f = ModuleMorphism{quotient_zm(ctx, a), self_module(ctx), std::move(fmap)};
    std::vector<int> gmap(ctx.n);
    for (int x = 0; x < ctx.n; ++x) gmap[x] = x % b;
    s.g = ModuleMorphism{self_module(ctx), quotient_zm(ctx, b), std::move(gmap)};
    s.expect_exact = true;
    out.push_back(std::move(s));
  }

  // Product sequences A -> AxB -> B.
  int wanted = 4;
  int guard = 0;
  while (wanted > 0 && guard++ < 64) {
    const int i = rng.below(static_cast<int>(ctx.modules.size()));
    const int j = rng.below(static_cast<int>(ctx.modules.size()));
    const FiniteModule& a = ctx.modules[i];
    const FiniteModule& b = ctx.modules[j];
    if (a.size() * b.size() > cfg.max_size) continue;
    FiniteModule prod = product_module(a, b);
    const int b0 = absorbers(b).front();
    SesInstance s;
    s.name = base + "/split/" + ctx.names[i] + "x" + ctx.names[j];
    s.f = incl_product(a, prod, b.size(), b0);
    s.g = proj_product(prod, b);
    s.expect_exact = true;
    out.push_back(std::move(s));
    --wanted;
  }

  for (auto& s : out) {
    must_be_linear(s.f, s.name + "/f");
    must_be_linear(s.g, s.name + "/g");
  }
  return out;
}

SesInstance twist_ses(const SesInstance& s, int e1, const std::string& tag) {
  SesInstance out;
  out.name = s.name + "/" + tag;
  FiniteModule m1 = induced_module(s.f.dom, e1);
  const int em = s.f.map[e1];
  FiniteModule mm = induced_module(s.f.cod, em);
  const int e2 = s.g.map[em];
  FiniteModule m2 = induced_module(s.g.cod, e2);
  out.f = ModuleMorphism{std::move(m1), mm, s.f.map};
  out.g = ModuleMorphism{std::move(mm), std::move(m2), s.g.map};
  out.expect_exact = s.expect_exact;
  return out;
}

SnakeDiagram twist_snake(const SnakeDiagram& d, int e) {
  SnakeDiagram t;
  FiniteModule mp = induced_module(d.phi.dom, e);
  const int em = d.phi.map[e];
  FiniteModule m = induced_module(d.psi.dom, em);
  const int empp = d.psi.map[em];
  FiniteModule mpp = induced_module(d.psi.cod, empp);
  const int enp = d.fp.map[e];
  FiniteModule np = induced_module(d.phi1.dom, enp);
  const int en = d.phi1.map[enp];
  FiniteModule nn = induced_module(d.psi1.dom, en);
  const int enpp = d.psi1.map[en];
  FiniteModule npp = induced_module(d.psi1.cod, enpp);
  t.phi = ModuleMorphism{mp, m, d.phi.map};
  t.psi = ModuleMorphism{m, mpp, d.psi.map};
  t.phi1 = ModuleMorphism{np, nn, d.phi1.map};
  t.psi1 = ModuleMorphism{nn, npp, d.psi1.map};
  t.fp = ModuleMorphism{std::move(mp), std::move(np), d.fp.map};
  t.f = ModuleMorphism{std::move(m), std::move(nn), d.f.map};
  t.fpp = ModuleMorphism{std::move(mpp), std::move(npp), d.fpp.map};
  return t;
}

}  // namespace

std::vector<SesInstance> corpus_sequences(const CorpusConfig& cfg) {
  Rng rng(cfg.seed ^ 0x5e5e5e5eULL);
  std::vector<SesInstance> out;

  for (int n : cfg.base_ns) {
    TrussContext ctx = truss_context(n, cfg);
    auto structured = structured_ses(ctx, cfg, rng);
    for (const auto& s : structured) out.push_back(s);
    for (const auto& s : structured) {
      const int e1 = rng.below(s.f.dom.size());
      out.push_back(twist_ses(s, e1, "tw" + std::to_string(e1)));
    }

    const std::string base = zname(n);
    // Deliberately non-exact instances; maps stay T-linear.
    for (std::size_t i = 0; i < ctx.modules.size(); ++i) {
      const FiniteModule& m = ctx.modules[i];
      if (m.size() > 1) {
        SesInstance s;
        s.name = base + "/mut-idid/" + ctx.names[i];
        s.f = identity_morphism(m);
        s.g = identity_morphism(m);
        s.expect_exact = false;
        out.push_back(std::move(s));
      }
      const int a0 = absorbers(m).front();
      SesInstance c;
      c.name = base + "/mut-const/" + ctx.names[i];
      c.f = const_map(m, m, a0);
      c.g = const_map(m, m, a0);
      c.expect_exact = m.size() == 1;
      out.push_back(std::move(c));
    }
    if (n == 4) {
      FiniteModule self = self_module(ctx);
      SesInstance s;
      s.name = base + "/mut-2x-id";
      std::vector<int> fmap(4);
      for (int x = 0; x < 4; ++x) fmap[x] = (2 * x) % 4;
      s.f = ModuleMorphism{self, self, std::move(fmap)};
      s.g = identity_morphism(self);
      s.expect_exact = false;
      out.push_back(std::move(s));
    }
  }

  // Top up with further seeded twists; twisting preserves the expectation.
  const int target = cfg.count > 0 ? cfg.count : 240;
  std::size_t src = 0;
  while (static_cast<int>(out.size()) < target && !out.empty()) {
    const SesInstance s = out[src % out.size()];
    const int e1 = rng.below(s.f.dom.size());
    out.push_back(twist_ses(s, e1, "fill" + std::to_string(out.size())));
    ++src;
  }
  if (static_cast<int>(out.size()) > target) out.resize(target);
  return out;
}

std::vector<NamedSnake> corpus_snakes(const CorpusConfig& cfg) {
  Rng rng(cfg.seed ^ 0x57a7e5ULL);
  std::vector<NamedSnake> out;
  const int target = cfg.count > 0 ? cfg.count : 60;
  const int per_n = target / static_cast<int>(cfg.base_ns.size()) + 1;

  for (int n : cfg.base_ns) {
    TrussContext ctx = truss_context(n, cfg);
    auto sess = structured_ses(ctx, cfg, rng);
    const std::string base = zname(n);
    int emitted = 0;

    // The multiplication-by-2 verticals instance over T(Z/4).
    if (n == 4) {
      FiniteModule self = self_module(ctx);
      FiniteModule q2 = quotient_zm(ctx, 2);
      ModuleMorphism iota{q2, self, {0, 2}};
      ModuleMorphism pi{self, q2, {0, 1, 0, 1}};
      NamedSnake d;
      d.name = base + "/snake-x2";
      d.d.phi = iota;
      d.d.psi = pi;
      d.d.phi1 = iota;
      d.d.psi1 = pi;
      d.d.fp = const_map(q2, q2, 0);
      d.d.f = ModuleMorphism{self, self, {0, 2, 0, 2}};
      d.d.fpp = const_map(q2, q2, 0);
      out.push_back(std::move(d));
      ++emitted;
    }

    // Identity verticals for every structured sequence.
    for (const auto& s : sess) {
      if (emitted >= per_n) break;
      NamedSnake d;
      d.name = base + "/snake-id/" + s.name;
      d.d.phi = s.f;
      d.d.psi = s.g;
      d.d.phi1 = s.f;
      d.d.psi1 = s.g;
      d.d.fp = identity_morphism(s.f.dom);
      d.d.f = identity_morphism(s.f.cod);
      d.d.fpp = identity_morphism(s.g.cod);
      out.push_back(std::move(d));
      ++emitted;
    }

    // Morphisms of sequences: middle vertical with f(Im phi) inside Im phi1,
    // induced end verticals.
    for (std::size_t i = 0; i < sess.size() && emitted < per_n; ++i)
      for (std::size_t j = 0; j < sess.size() && emitted < per_n; ++j) {
        const SesInstance& s1 = sess[i];
        const SesInstance& s2 = sess[j];
        std::vector<std::vector<int>> eligible;
        try {
          auto hs = enumerate_hom(s1.f.cod, s2.f.cod, 65536);
          auto im1 = image_of(s1.f.map);
          auto im2 = image_of(s2.f.map);
          for (const auto& cand : hs.maps) {
            bool ok = true;
            for (int v : im1)
              if (!std::binary_search(im2.begin(), im2.end(), cand[v])) {
                ok = false;
                break;
              }
            if (ok) eligible.push_back(cand);
          }
        } catch (const BudgetError&) {
          continue;
        }
        if (eligible.empty()) continue;
        const int picks = std::min<int>(2, static_cast<int>(eligible.size()));
        for (int p = 0; p < picks && emitted < per_n; ++p) {
          const auto& fmid =
              eligible[rng.below(static_cast<int>(eligible.size()))];
          std::vector<int> inv2(s2.f.cod.size(), -1);
          for (int x = 0; x < s2.f.dom.size(); ++x) inv2[s2.f.map[x]] = x;
          std::vector<int> fp(s1.f.dom.size());
          bool good = true;
          for (int x = 0; x < s1.f.dom.size(); ++x) {
            const int v = inv2[fmid[s1.f.map[x]]];
            if (v < 0) { good = false; break; }
            fp[x] = v;
          }
          if (!good) continue;
          std::vector<int> fpp(s1.g.cod.size(), -1);
          for (int x = 0; x < s1.g.dom.size(); ++x) {
            const int c = s1.g.map[x];
            const int v = s2.g.map[fmid[x]];
            if (fpp[c] < 0)
              fpp[c] = v;
            else if (fpp[c] != v) { good = false; break; }
          }
          if (!good) continue;
          NamedSnake d;
          d.name = base + "/snake/" + s1.name + "~" + s2.name + "/p" +
                   std::to_string(p);
          d.d.phi = s1.f;
          d.d.psi = s1.g;
          d.d.phi1 = s2.f;
          d.d.psi1 = s2.g;
          d.d.fp = ModuleMorphism{s1.f.dom, s2.f.dom, std::move(fp)};
          d.d.f = ModuleMorphism{s1.f.cod, s2.f.cod, fmid};
          d.d.fpp = ModuleMorphism{s1.g.cod, s2.g.cod, std::move(fpp)};
          out.push_back(std::move(d));
          ++emitted;
        }
      }
  }

  // Consistent induced-action twists to reach the target.
  std::size_t src = 0;
  while (static_cast<int>(out.size()) < target && src < out.size()) {
    const int e = rng.below(out[src].d.phi.dom.size());
    NamedSnake t{out[src].name + "/tw" + std::to_string(e),
                 twist_snake(out[src].d, e)};
    out.push_back(std::move(t));
    ++src;
  }
  if (static_cast<int>(out.size()) > target) out.resize(target);
  return out;
}

std::vector<NamedNine> corpus_nines(const CorpusConfig& cfg) {
  Rng rng(cfg.seed ^ 0x9199ULL);
  std::vector<NamedNine> out;
  const int target = cfg.count > 0 ? cfg.count : 24;

  std::vector<int> ns = cfg.base_ns;
  if (std::find(ns.begin(), ns.end(), 8) == ns.end() && cfg.max_size >= 8)
    ns.push_back(8);
  const int per_n = target / static_cast<int>(ns.size()) + 1;

  for (int n : ns) {
    TrussContext ctx = truss_context(n, cfg);
    auto sess = structured_ses(ctx, cfg, rng);
    const std::string base = zname(n);
    int emitted = 0;

    // Grids whose end columns are both non-exact.
    for (const auto& s : sess) {
      if (emitted >= per_n / 3 + 1) break;
      if (s.f.dom.size() <= 1 || s.g.cod.size() <= 1) continue;
      const FiniteModule& star = ctx.modules.front();
      const FiniteModule& xp = s.f.dom;
      const FiniteModule& x = s.f.cod;
      const FiniteModule& xpp = s.g.cod;
      const int a0 = absorbers(xp).front();
      NamedNine g;
      g.name = base + "/nine-collapsed/" + s.name;
      g.d.mods[0] = {star, xp, xp};
      g.d.mods[1] = {xp, x, xpp};
      g.d.mods[2] = {xpp, xpp, star};
      g.d.row_maps[0][0] = const_map(star, xp, a0);
      g.d.row_maps[0][1] = identity_morphism(xp);
      g.d.row_maps[1][0] = s.f;
      g.d.row_maps[1][1] = s.g;
      g.d.row_maps[2][0] = identity_morphism(xpp);
      g.d.row_maps[2][1] = const_map(xpp, star, 0);
      ModuleMorphism vu = compose(s.g, s.f);
      g.d.col_maps[0][0] = const_map(star, xp, a0);
      g.d.col_maps[0][1] = s.f;
      g.d.col_maps[0][2] = vu;
      g.d.col_maps[1][0] = vu;
      g.d.col_maps[1][1] = s.g;
      g.d.col_maps[1][2] = const_map(xpp, star, 0);
      out.push_back(std::move(g));
      ++emitted;
    }

    // Product grids from pairs of short exact chains.
    for (std::size_t i = 0; i < sess.size() && emitted < per_n; ++i)
      for (std::size_t j = 0; j < sess.size() && emitted < per_n; ++j) {
        const SesInstance& sa = sess[i];
        const SesInstance& sb = sess[j];
        const std::array<const FiniteModule*, 3> am{&sa.f.dom, &sa.f.cod,
                                                    &sa.g.cod};
        const std::array<const FiniteModule*, 3> bm{&sb.f.dom, &sb.f.cod,
                                                    &sb.g.cod};
        bool fits = true;
        for (int k = 0; k < 3; ++k)
          fits = fits && am[k]->size() * bm[k]->size() <= cfg.max_size;
        if (!fits) continue;

        NamedNine g;
        g.name = base + "/nine-prod/" + sa.name + "*" + sb.name;
        std::array<int, 3> bbase{};
        bbase[0] = absorbers(*bm[0]).front();
        bbase[1] = sb.f.map[bbase[0]];
        bbase[2] = sb.g.map[bbase[1]];
        std::array<FiniteModule, 3> prods;
        for (int k = 0; k < 3; ++k) prods[k] = product_module(*am[k], *bm[k]);
        for (int k = 0; k < 3; ++k) {
          g.d.mods[k][0] = *am[k];
          g.d.mods[k][1] = prods[k];
          g.d.mods[k][2] = *bm[k];
          g.d.row_maps[k][0] =
              incl_product(*am[k], prods[k], bm[k]->size(), bbase[k]);
          g.d.row_maps[k][1] = proj_product(prods[k], *bm[k]);
        }
        const std::array<const ModuleMorphism*, 2> amap{&sa.f, &sa.g};
        const std::array<const ModuleMorphism*, 2> bmap{&sb.f, &sb.g};
        for (int k = 0; k < 2; ++k) {
          g.d.col_maps[k][0] = *amap[k];
          g.d.col_maps[k][2] = *bmap[k];
          std::vector<int> vm(prods[k].size());
          for (int p = 0; p < prods[k].size(); ++p) {
            const int xa = p / bm[k]->size(), xb = p % bm[k]->size();
            vm[p] = amap[k]->map[xa] * bm[k + 1]->size() + bmap[k]->map[xb];
          }
          g.d.col_maps[k][1] =
              ModuleMorphism{prods[k], prods[k + 1], std::move(vm)};
        }
        out.push_back(std::move(g));
        ++emitted;
      }
  }

  // All-singleton degenerate grid.
  {
    TrussContext ctx = truss_context(cfg.base_ns.front(), cfg);
    const FiniteModule& star = ctx.modules.front();
    NamedNine g;
    g.name = "nine-degenerate";
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g.d.mods[i][j] = star;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) g.d.row_maps[i][j] = identity_morphism(star);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) g.d.col_maps[i][j] = identity_morphism(star);
    out.insert(out.begin(), std::move(g));
  }
  if (static_cast<int>(out.size()) > target) out.resize(target);
  return out;
}

std::vector<NamedFive> corpus_fives(const CorpusConfig& cfg) {
  Rng rng(cfg.seed ^ 0xf17e5ULL);
  std::vector<NamedFive> out;
  const int target = cfg.count > 0 ? cfg.count : 36;
  const int per_n = target / static_cast<int>(cfg.base_ns.size()) + 1;

  for (int n : cfg.base_ns) {
    TrussContext ctx = truss_context(n, cfg);
    auto sess = structured_ses(ctx, cfg, rng);
    const std::string base = zname(n);
    int emitted = 0;

    auto mods_equal = [](const FiniteModule& a, const FiniteModule& b) {
      return a.heap.size == b.heap.size && a.heap.op == b.heap.op &&
             a.act == b.act;
    };

    for (std::size_t i = 0; i < sess.size() && emitted < per_n; ++i)
      for (std::size_t j = 0; j < sess.size() && emitted < per_n; ++j) {
        if (!mods_equal(sess[i].g.cod, sess[j].f.dom)) continue;
        for (std::size_t k = 0; k < sess.size() && emitted < per_n; ++k) {
          if (!mods_equal(sess[j].g.cod, sess[k].f.dom)) continue;
          // Chain of three short exact sequences; exact at the three
          // interior nodes by splicing.
          FiveDiagram d;
          d.top_mods = {sess[i].f.dom, sess[i].f.cod, sess[j].f.cod,
                        sess[k].f.cod, sess[k].g.cod};
          ModuleMorphism g1 = sess[i].g;
          g1.cod = sess[j].f.dom;
          ModuleMorphism g2 = sess[j].g;
          g2.cod = sess[k].f.dom;
          d.top[0] = sess[i].f;
          d.top[1] = compose(sess[j].f, g1);
          d.top[2] = compose(sess[k].f, g2);
          d.top[3] = sess[k].g;
          d.bottom_mods = d.top_mods;
          d.bottom = d.top;
          for (int v = 0; v < 5; ++v)
            d.vert[v] = identity_morphism(d.top_mods[v]);

          NamedFive f;
          f.name = base + "/five-id/" + sess[i].name + "|" + sess[j].name +
                   "|" + sess[k].name;
          f.d = d;
          out.push_back(std::move(f));
          ++emitted;

          // Scalar verticals x -> c.x; T-linear over the commutative truss
          // and commuting with every T-linear map.
          for (int c : {3 % n, 2 % n}) {
            if (c <= 1 || emitted >= per_n) continue;
            FiveDiagram sd = d;
            bool ok = true;
            for (int v = 0; v < 5 && ok; ++v) {
              std::vector<int> map(sd.top_mods[v].size());
              for (int x = 0; x < sd.top_mods[v].size(); ++x)
                map[x] = sd.top_mods[v].act_at(c, x);
              sd.vert[v] =
                  ModuleMorphism{sd.top_mods[v], sd.bottom_mods[v], map};
              ok = validate_module_morphism(sd.vert[v]).ok;
            }
            if (!ok) continue;
            NamedFive g;
            g.name = base + "/five-scalar" + std::to_string(c) + "/" +
                     sess[i].name + "|" + sess[j].name + "|" + sess[k].name;
            g.d = std::move(sd);
            out.push_back(std::move(g));
            ++emitted;
          }
        }
      }
  }
  if (static_cast<int>(out.size()) > target) out.resize(target);
  return out;
}

std::vector<SplitInstance> corpus_splits(const CorpusConfig& cfg) {
  Rng rng(cfg.seed ^ 0x5b117ULL);
  std::vector<SplitInstance> out;
  const int target = cfg.count > 0 ? cfg.count : 24;
  const int per_n = target / static_cast<int>(cfg.base_ns.size()) + 1;

  for (int n : cfg.base_ns) {
    TrussContext ctx = truss_context(n, cfg);
    const std::string base = zname(n);
    int emitted = 0;

    for (int a = 2; a < n; ++a) {
      if (n % a != 0 || n / a < 2) continue;
      SplitInstance s;
      s.name = base + "/split-factor/" + std::to_string(a);
      std::vector<int> fmap(a);
      for (int x = 0; x < a; ++x) fmap[x] = ((n / a) * x) % n;
      s.f = ModuleMorphism{quotient_zm(ctx, a), self_module(ctx), std::move(fmap)};
      std::vector<int> gmap(n);
      for (int x = 0; x < n; ++x) gmap[x] = x % (n / a);
      s.g = ModuleMorphism{self_module(ctx), quotient_zm(ctx, n / a),
                           std::move(gmap)};
      s.e2 = 0;
      out.push_back(std::move(s));
      ++emitted;
    }

    for (std::size_t i = 0; i < ctx.modules.size() && emitted < per_n; ++i)
      for (std::size_t j = 0; j < ctx.modules.size() && emitted < per_n; ++j) {
        const FiniteModule& a = ctx.modules[i];
        const FiniteModule& b = ctx.modules[j];
        if (a.size() * b.size() > cfg.max_size) continue;
        if (a.size() > 4 || b.size() > 4) continue;  // keep hom search small
        FiniteModule prod = product_module(a, b);
        const int b0 = absorbers(b).front();
        SplitInstance s;
        s.name = base + "/split-prod/" + ctx.names[i] + "x" + ctx.names[j];
        s.f = incl_product(a, prod, b.size(), b0);
        s.g = proj_product(prod, b);
        s.e2 = b0;
        out.push_back(std::move(s));
        ++emitted;
      }

    for (std::size_t i = 0; i < ctx.modules.size() && i < 3; ++i) {
      const FiniteModule& m = ctx.modules[i];
      if (m.size() > 4) continue;
      SplitInstance s;
      s.name = base + "/split-star/" + ctx.names[i];
      s.f = identity_morphism(m);
      s.g = const_map(m, ctx.modules.front(), 0);
      s.e2 = 0;
      out.push_back(std::move(s));
    }
  }

  // Twisted copies until the target is reached.
  std::size_t src = 0;
  while (static_cast<int>(out.size()) < target && src < out.size()) {
    const SplitInstance s = out[src];
    const int e1 = rng.below(s.f.dom.size());
    SplitInstance t;
    t.name = s.name + "/tw" + std::to_string(e1);
    FiniteModule m1 = induced_module(s.f.dom, e1);
    const int em = s.f.map[e1];
    FiniteModule mm = induced_module(s.f.cod, em);
    const int e2 = s.g.map[em];
    FiniteModule m2 = induced_module(s.g.cod, e2);
    t.f = ModuleMorphism{std::move(m1), mm, s.f.map};
    t.g = ModuleMorphism{std::move(mm), std::move(m2), s.g.map};
    t.e2 = e2;
    out.push_back(std::move(t));
    ++src;
  }
  if (static_cast<int>(out.size()) > target) out.resize(target);
  return out;
}

std::vector<NamedRingModule> corpus_ring_modules(
    const CorpusConfig& cfg, std::shared_ptr<const FiniteRing> ring) {
  std::vector<NamedRingModule> out;
  const int n = ring->size;
  auto cyclic_rm = [&](int m) {
    std::vector<int> add(static_cast<std::size_t>(m) * m);
    std::vector<int> act(static_cast<std::size_t>(n) * m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        add[static_cast<std::size_t>(a) * m + b] = (a + b) % m;
    for (int r = 0; r < n; ++r)
      for (int x = 0; x < m; ++x)
        act[static_cast<std::size_t>(r) * m + x] = (r * x) % m;
    return make_ring_module(ring, m, std::move(add), 0, std::move(act), true);
  };
  out.push_back({"zero", cyclic_rm(1)});
  for (int m = 2; m <= n; ++m)
    if (n % m == 0) out.push_back({zname(m), cyclic_rm(m)});
  for (int m = 2; m < n; ++m)
    if (n % m == 0 && m * m <= cfg.max_size) {
      const auto a = cyclic_rm(m);
      const int k = m * m;
      std::vector<int> add(static_cast<std::size_t>(k) * k);
      std::vector<int> act(static_cast<std::size_t>(n) * k);
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
          add[static_cast<std::size_t>(x) * k + y] =
              a.add_at(x / m, y / m) * m + a.add_at(x % m, y % m);
      for (int r = 0; r < n; ++r)
        for (int x = 0; x < k; ++x)
          act[static_cast<std::size_t>(r) * k + x] =
              a.act_at(r, x / m) * m + a.act_at(r, x % m);
      out.push_back({zname(m) + "sq", make_ring_module(ring, k, std::move(add),
                                                       0, std::move(act), true)});
      break;
    }
  return out;
}

std::vector<NamedRingSes> corpus_ring_ses(const CorpusConfig& cfg) {
  std::vector<NamedRingSes> out;
  for (int n : cfg.base_ns) {
    auto ring = std::make_shared<const FiniteRing>(cyclic_ring(n));
    auto mods = corpus_ring_modules(cfg, ring);
    auto find = [&](const std::string& name) -> const FiniteRingModule* {
      for (const auto& m : mods)
        if (m.name == name) return &m.mod;
      return nullptr;
    };
    for (int a = 2; a < n; ++a) {
      if (n % a != 0 || n / a < 2) continue;
      const auto* za = find(zname(a));
      const auto* zn = find(zname(n));
      const auto* zb = find(zname(n / a));
      if (!za || !zn || !zb) continue;
      NamedRingSes s;
      s.name = zname(n) + "/rses-factor/" + std::to_string(a);
      std::vector<int> fmap(a);
      for (int x = 0; x < a; ++x) fmap[x] = ((n / a) * x) % n;
      s.ses.f = RingModuleMorphism{*za, *zn, std::move(fmap)};
      std::vector<int> gmap(n);
      for (int x = 0; x < n; ++x) gmap[x] = x % (n / a);
      s.ses.g = RingModuleMorphism{*zn, *zb, std::move(gmap)};
      out.push_back(std::move(s));
    }
    for (const auto& m : mods) {
      const auto* zero = find("zero");
      if (!zero) continue;
      {
        NamedRingSes s;
        s.name = zname(n) + "/rses-trivl/" + m.name;
        s.ses.f = RingModuleMorphism{*zero, m.mod, {m.mod.zero}};
        std::vector<int> idm(m.mod.size);
        for (int x = 0; x < m.mod.size; ++x) idm[x] = x;
        s.ses.g = RingModuleMorphism{m.mod, m.mod, std::move(idm)};
        out.push_back(std::move(s));
      }
      {
        NamedRingSes s;
        s.name = zname(n) + "/rses-trivr/" + m.name;
        std::vector<int> idm(m.mod.size);
        for (int x = 0; x < m.mod.size; ++x) idm[x] = x;
        s.ses.f = RingModuleMorphism{m.mod, m.mod, std::move(idm)};
        s.ses.g =
            RingModuleMorphism{m.mod, *zero, std::vector<int>(m.mod.size, 0)};
        out.push_back(std::move(s));
      }
    }
    for (const auto& m : mods) {
      if (m.name.size() < 3 || m.name.substr(m.name.size() - 2) != "sq")
        continue;
      const std::string base_name = m.name.substr(0, m.name.size() - 2);
      const auto* zm = find(base_name);
      if (!zm) continue;
      const int k = zm->size;
      NamedRingSes s;
      s.name = zname(n) + "/rses-split/" + base_name;
      std::vector<int> fmap(k);
      for (int x = 0; x < k; ++x) fmap[x] = x * k;
      s.ses.f = RingModuleMorphism{*zm, m.mod, std::move(fmap)};
      std::vector<int> gmap(k * k);
      for (int x = 0; x < k * k; ++x) gmap[x] = x % k;
      s.ses.g = RingModuleMorphism{m.mod, *zm, std::move(gmap)};
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<std::vector<int>> enumerate_ring_linear(const FiniteRingModule& a,
                                                    const FiniteRingModule& b) {
  std::vector<std::vector<int>> out;
  std::vector<int> map(a.size, -1);
  std::function<void(int)> rec = [&](int depth) {
    if (depth == a.size) {
      out.push_back(map);
      return;
    }
    for (int v = 0; v < b.size; ++v) {
      map[depth] = v;
      bool ok = true;
      for (int x = 0; x <= depth && ok; ++x)
        for (int y = 0; y <= depth && ok; ++y) {
          const int r = a.add_at(x, y);
          if (r > depth) continue;
          if (std::max({x, y, r}) != depth) continue;
          ok = b.add_at(map[x], map[y]) == map[r];
        }
      for (int s = 0; s < a.ring->size && ok; ++s)
        for (int x = 0; x <= depth && ok; ++x) {
          const int r = a.act_at(s, x);
          if (r > depth) continue;
          if (std::max(x, r) != depth) continue;
          ok = b.act_at(s, map[x]) == map[r];
        }
      if (ok) rec(depth + 1);
    }
    map[depth] = -1;
  };
  rec(0);
  return out;
}

}  // namespace trusslab
