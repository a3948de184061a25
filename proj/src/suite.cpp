#include "trusslab/suite.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "trusslab/serial.hpp"

namespace trusslab {

namespace {

using Job = std::function<SuiteCheck()>;

// Runs jobs in parallel, result order stable by index.
std::vector<SuiteCheck> run_jobs(const std::vector<Job>& jobs) {
  std::vector<SuiteCheck> out(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      out[i] = jobs[i]();
    } catch (const std::exception& e) {
      out[i].passed = false;
      if (out[i].name.empty()) out[i].name = "job" + std::to_string(i);
      out[i].detail = e.what();
    }
  }
  return out;
}

SuiteCheck check(const std::string& name, bool ok, std::string detail = {}) {
  return SuiteCheck{name, ok, ok ? std::string{} : std::move(detail)};
}

// Wraps a body so that exceptions fail the named check instead of the run.
Job named(const std::string& name, std::function<SuiteCheck()> body) {
  return [name, body]() -> SuiteCheck {
    try {
      return body();
    } catch (const std::exception& e) {
      return SuiteCheck{name, false, e.what()};
    }
  };
}


// ----- axioms ---------------------------------------------------------

void axioms_jobs(const CorpusConfig& cfg, std::vector<Job>& jobs) {
  auto groups = corpus_groups(cfg);
  auto rings = corpus_rings(cfg);

  for (std::size_t i = 0; i < groups.size(); ++i) {
    jobs.push_back(named("axioms/heap" + std::to_string(i), [g = groups[i]] {
      FiniteHeap h = heap_of_group(g);
      auto r = validate_heap(h);
      return check("axioms/heap|G|=" + std::to_string(g.size), r.ok, r.detail);
    }));
  }
  for (std::size_t i = 0; i < rings.size(); ++i) {
    jobs.push_back(named("axioms/truss" + std::to_string(i), [r = rings[i]] {
      auto t = truss_of_ring(r);
      auto rep = validate_truss(t);
      return check("axioms/truss|R|=" + std::to_string(r.size), rep.ok,
                   rep.detail);
    }));
    jobs.push_back(named("axioms/module" + std::to_string(i), [r = rings[i]] {
      auto t = std::make_shared<const FiniteTruss>(truss_of_ring(r));
      auto m = make_module(t, t->heap, t->mul, t->one.has_value());
      auto rep = validate_module(m);
      return check("axioms/selfmod|R|=" + std::to_string(r.size), rep.ok,
                   rep.detail);
    }));
  }

  // Mutation detection: one corrupted table entry per mutant, 100 mutants
  // per structure kind, >= 99% caught.
  jobs.push_back(named("axioms/mutation", [cfg] {
    Rng rng(cfg.seed ^ 0x37a7e0ULL);
    std::vector<FiniteGroup> groups;
    for (auto& g : corpus_groups(cfg))
      if (g.size >= 2) groups.push_back(std::move(g));
    std::vector<FiniteRing> rings;
    for (auto& r : corpus_rings(cfg))
      if (r.size >= 2) rings.push_back(std::move(r));
    int caught_heap = 0, caught_truss = 0, caught_module = 0;
    for (int k = 0; k < 100; ++k) {
      FiniteHeap h = heap_of_group(groups[k % groups.size()]);
      const int idx = rng.below(static_cast<int>(h.op.size()));
      int nv = rng.below(h.size - 1);
      if (nv >= h.op[idx]) ++nv;
      h.op[idx] = nv;
      if (!validate_heap(h).ok) ++caught_heap;
    }
    for (int k = 0; k < 100; ++k) {
      FiniteTruss t = truss_of_ring(rings[k % rings.size()]);
      auto& table = rng.below(2) == 0 ? t.mul : t.heap.op;
      const int idx = rng.below(static_cast<int>(table.size()));
      int nv = rng.below(t.size() - 1);
      if (nv >= table[idx]) ++nv;
      table[idx] = nv;
      if (!validate_truss(t).ok) ++caught_truss;
    }
    for (int k = 0; k < 100; ++k) {
      auto r = rings[k % rings.size()];
      auto ts = std::make_shared<const FiniteTruss>(truss_of_ring(r));
      FiniteModule m = make_module(ts, ts->heap, ts->mul, false);
      auto& table = rng.below(2) == 0 ? m.act : m.heap.op;
      const int idx = rng.below(static_cast<int>(table.size()));
      int nv = rng.below(m.size() - 1);
      if (nv >= table[idx]) ++nv;
      table[idx] = nv;
      if (!validate_module(m).ok) ++caught_module;
    }
    std::ostringstream os;
    os << "caught heap=" << caught_heap << " truss=" << caught_truss
       << " module=" << caught_module << " (of 100 each)";
    const bool ok =
        caught_heap >= 99 && caught_truss >= 99 && caught_module >= 99;
    return check("axioms/mutation", ok, os.str());
  }));
}

// ----- section2 -------------------------------------------------------

void section2_jobs(const CorpusConfig& cfg, std::vector<Job>& jobs) {
  auto groups = corpus_groups(cfg);

  for (std::size_t i = 0; i < groups.size(); ++i) {
    jobs.push_back(named("section2/roundtrip" + std::to_string(i),
                         [g = groups[i], i] {
      FiniteHeap h = heap_of_group(g);
      for (int e = 0; e < h.size; ++e) {
        FiniteGroup ge = group_of_heap(h, e);
        if (!validate_group(ge).ok)
          return check("section2/roundtrip/g" + std::to_string(i), false,
                       "derived group invalid at e=" + std::to_string(e));
        FiniteHeap back = heap_of_group(ge);
        if (back.op != h.op)
          return check("section2/roundtrip/g" + std::to_string(i), false,
                       "H(G(H;e)) differs at e=" + std::to_string(e));
      }
      FiniteGroup gid = group_of_heap(h, g.id);
      if (gid.mul != g.mul || gid.id != g.id)
        return check("section2/roundtrip/g" + std::to_string(i), false,
                     "G(H(G); id) differs from G");
      return check("section2/roundtrip/g" + std::to_string(i), true);
    }));

    jobs.push_back(named("section2/lemma-ident" + std::to_string(i),
                         [g = groups[i], i] {
      FiniteHeap h = heap_of_group(g);
      for (int x = 0; x < h.size; ++x)
        for (int y = 0; y < h.size; ++y)
          for (int z = 0; z < h.size; ++z)
            if (h.at(x, y, h.at(y, x, z)) != z)
              return check("section2/lemma-ident/g" + std::to_string(i), false,
                           "[x,y,[y,x,z]] != z");
      for (int v = 0; v < h.size; ++v)
        for (int w = 0; w < h.size; ++w)
          for (int x = 0; x < h.size; ++x)
            for (int y = 0; y < h.size; ++y)
              for (int z = 0; z < h.size; ++z)
                if (h.at(v, w, h.at(x, y, z)) != h.at(v, h.at(y, x, w), z))
                  return check("section2/lemma-ident/g" + std::to_string(i),
                               false, "rectangle identity fails");
      return check("section2/lemma-ident/g" + std::to_string(i), true);
    }));
  }

  for (int n : cfg.base_ns) {
    jobs.push_back(named("section2/modules/Z" + std::to_string(n), [n, cfg] {
      TrussContext ctx = truss_context(n, cfg);
      Rng rng(cfg.seed ^ static_cast<std::uint64_t>(n));
      const std::string nm = "section2/modules/Z" + std::to_string(n);
      for (std::size_t i = 0; i < ctx.modules.size(); ++i) {
        const FiniteModule& m = ctx.modules[i];
        // Induced-action iteration and base-point independence.
        const int e = rng.below(m.size());
        const int e2 = rng.below(m.size());
        FiniteModule me = induced_module(m, e);
        if (induced_module(me, e2).act != induced_module(m, e2).act)
          return check(nm, false, "(M^(e))^(e') != M^(e') on " + ctx.names[i]);
        auto abs = absorbers(me);
        if (std::find(abs.begin(), abs.end(), e) == abs.end())
          return check(nm, false, "e not absorbing in M^(e)");
        // M^(e) ~ M^(e') via x -> [x,e,e'].
        std::vector<int> iso(m.size());
        for (int x = 0; x < m.size(); ++x) iso[x] = m.heap.at(x, e, e2);
        ModuleMorphism f{me, induced_module(m, e2), iso};
        if (!validate_module_morphism(f).ok || !is_injective(iso))
          return check(nm, false, "induced modules not isomorphic via [x,e,e']");
      }
      return check(nm, true);
    }));

    jobs.push_back(named("section2/firstiso/Z" + std::to_string(n), [n, cfg] {
      TrussContext ctx = truss_context(n, cfg);
      const std::string nm = "section2/firstiso/Z" + std::to_string(n);
      int tested = 0;
      for (std::size_t i = 0; i < ctx.modules.size(); ++i)
        for (std::size_t j = 0; j < ctx.modules.size(); ++j) {
          const FiniteModule& a = ctx.modules[i];
          const FiniteModule& b = ctx.modules[j];
          if (a.size() > 4 || b.size() > 4) continue;
          auto hs = enumerate_hom(a, b, 4096);
          for (int k = 0; k < hs.count(); ++k) {
            auto fi = first_isomorphism(hs.morphism(k));
            if (fi.quotient.classes.size() != fi.image_elements.size())
              return check(nm, false, "quotient/image size mismatch");
            ++tested;
          }
        }
      return check(nm, tested > 0, "no morphisms tested");
    }));

    jobs.push_back(named("section2/morphprops/Z" + std::to_string(n), [n, cfg] {
      TrussContext ctx = truss_context(n, cfg);
      const std::string nm = "section2/morphprops/Z" + std::to_string(n);
      for (std::size_t i = 0; i < ctx.modules.size(); ++i)
        for (std::size_t j = 0; j < ctx.modules.size(); ++j) {
          const FiniteModule& a = ctx.modules[i];
          const FiniteModule& b = ctx.modules[j];
          if (a.size() > 4 || b.size() > 4) continue;
          auto hs = enumerate_hom(a, b, 4096);
          for (int k = 0; k < hs.count(); ++k) {
            const auto f = hs.morphism(k);
            // Absorbers map into absorbers.
            auto abs_a = absorbers(a);
            auto abs_b = absorbers(b);
            for (int x : abs_a)
              if (!std::binary_search(abs_b.begin(), abs_b.end(), f.map[x]))
                return check(nm, false, "f(Abs(M)) escaped Abs(N)");
            // Kernel over an absorber image is action-closed.
            if (!abs_a.empty()) {
              auto kf = kernel_e(f, f.map[abs_a.front()]);
              if (!kf.action_closed)
                return check(nm, false, "kernel over absorber image not closed");
            }
          }
        }
      return check(nm, true);
    }));
  }
}

// ----- theorem suites -------------------------------------------------

void snake_jobs(const CorpusConfig& cfg, std::vector<Job>& jobs) {
  auto snakes = corpus_snakes(cfg);
  for (std::size_t i = 0; i < snakes.size(); ++i) {
    jobs.push_back(named("snake/" + snakes[i].name, [s = snakes[i]] {
      auto results = snake_all_absorbers(s.d);
      if (results.empty()) return check("snake/" + s.name, false, "no absorbers");
      return check("snake/" + s.name, true);
    }));
  }
}

void nine_jobs(const CorpusConfig& cfg, std::vector<Job>& jobs) {
  auto nines = corpus_nines(cfg);
  for (std::size_t i = 0; i < nines.size(); ++i) {
    jobs.push_back(named("nine/" + nines[i].name, [g = nines[i]] {
      auto r = nine_lemma(g.d);
      std::ostringstream os;
      os << "first=" << r.first_exact << " last=" << r.last_exact;
      return check("nine/" + g.name, r.biconditional_ok, os.str());
    }));
  }
  // A corrupted grid must be rejected as a precondition failure, not
  // reported as a lemma violation.
  jobs.push_back(named("nine/mutated-precondition", [cfg] {
    auto nines = corpus_nines(cfg);
    for (const auto& g : nines) {
      if (g.d.mods[1][1].size() < 2) continue;
      NineDiagram bad = g.d;
      auto& map = bad.row_maps[1][0].map;
      map[0] = (map[0] + 1) % bad.row_maps[1][0].cod.size();
      try {
        nine_lemma(bad);
        return check("nine/mutated-precondition", false,
                     "corrupted grid was accepted");
      } catch (const PreconditionError&) {
        return check("nine/mutated-precondition", true);
      }
    }
    return check("nine/mutated-precondition", false, "no grid to mutate");
  }));
}

void five_jobs(const CorpusConfig& cfg, std::vector<Job>& jobs) {
  auto fives = corpus_fives(cfg);
  for (std::size_t i = 0; i < fives.size(); ++i) {
    jobs.push_back(named("five/" + fives[i].name, [f = fives[i]] {
      auto r = five_lemma(f.d);
      return check("five/" + f.name, r.all_ok(), "a five-lemma clause failed");
    }));
  }
  auto snakes = corpus_snakes(cfg);
  for (std::size_t i = 0; i < snakes.size() && i < 40; ++i) {
    jobs.push_back(named("shortfive/" + snakes[i].name, [s = snakes[i]] {
      auto r = short_five(s.d);
      return check("shortfive/" + s.name, r.all_ok(),
                   "a short-five clause failed");
    }));
  }
}

void split_jobs(const CorpusConfig& cfg, std::vector<Job>& jobs) {
  auto splits = corpus_splits(cfg);
  for (std::size_t i = 0; i < splits.size(); ++i) {
    jobs.push_back(named("split/" + splits[i].name, [s = splits[i], cfg] {
      auto r = splitting(s.f, s.g, s.e2, cfg.hom_budget);
      std::ostringstream os;
      os << "section=" << r.has_section << " retraction=" << r.has_retraction
         << " iso=" << r.has_product_iso;
      bool ok = r.agree;
      // The Z/2-Z/4-Z/2 factor witness must be non-split.
      if (s.name.find("split-factor") != std::string::npos &&
          s.name.find("Z4") != std::string::npos)
        ok = ok && !r.has_section;
      if (s.name.find("split-prod") != std::string::npos)
        ok = ok && r.has_section;
      return check("split/" + s.name, ok, os.str());
    }));
  }
}

void hom_jobs(const CorpusConfig& cfg, std::vector<Job>& jobs) {
  for (int n : cfg.base_ns) {
    jobs.push_back(named("hom/agreement/Z" + std::to_string(n), [n, cfg] {
      TrussContext ctx = truss_context(n, cfg);
      const std::string nm = "hom/agreement/Z" + std::to_string(n);
      int tested = 0;
      for (std::size_t i = 0; i < ctx.modules.size(); ++i)
        for (std::size_t j = 0; j < ctx.modules.size(); ++j) {
          const FiniteModule& a = ctx.modules[i];
          const FiniteModule& b = ctx.modules[j];
          std::uint64_t total = 1;
          bool in_budget = true;
          for (int k = 0; k < a.size() && in_budget; ++k) {
            total *= static_cast<std::uint64_t>(b.size());
            in_budget = total <= 4096;
          }
          if (!in_budget) continue;
          auto fast = enumerate_hom(a, b, cfg.hom_budget);
          auto slow = serial::enumerate_hom_bruteforce(a, b, 4096);
          if (fast.maps != slow.maps)
            return check(nm, false,
                         ctx.names[i] + "->" + ctx.names[j] + " disagrees");
          ++tested;
        }
      return check(nm, tested > 0, "no pairs in budget");
    }));

    jobs.push_back(named("hom/structure/Z" + std::to_string(n), [n, cfg] {
      TrussContext ctx = truss_context(n, cfg);
      const std::string nm = "hom/structure/Z" + std::to_string(n);
      for (std::size_t i = 0; i < ctx.modules.size(); ++i)
        for (std::size_t j = 0; j < ctx.modules.size(); ++j) {
          const FiniteModule& a = ctx.modules[i];
          const FiniteModule& b = ctx.modules[j];
          if (a.size() > 4 || b.size() > 4) continue;
          auto hs = enumerate_hom(a, b, cfg.hom_budget);
          if (hs.maps.empty()) continue;
          FiniteHeap hh = hom_heap(hs);
          auto rep = validate_heap(hh);
          if (!rep.ok || !is_abelian(hh))
            return check(nm, false, "hom heap invalid for " + ctx.names[i] +
                                         "->" + ctx.names[j]);
          auto hm = hom_module(hs);
          if (hm.closure_failure)
            return check(nm, false, "hom module closure failed over Z/n");
          if (!validate_module(hm.mod).ok)
            return check(nm, false, "hom module laws failed");
        }
      return check(nm, true);
    }));

    jobs.push_back(named("hom/left-exact/Z" + std::to_string(n), [n, cfg] {
      TrussContext ctx = truss_context(n, cfg);
      Rng rng(cfg.seed ^ 0x401eULL ^ static_cast<std::uint64_t>(n));
      auto sess = corpus_sequences(CorpusConfig{{n}, cfg.max_size, cfg.seed, 40,
                                                cfg.hom_budget});
      const std::string nm = "hom/left-exact/Z" + std::to_string(n);
      int tested = 0;
      for (const auto& s : sess) {
        if (!s.expect_exact) continue;
        if (!is_injective(s.f.map)) continue;
        auto w = is_exact_at(s.f, s.g);
        if (!w) continue;
        auto abs = absorbers(s.g.cod);
        if (std::find(abs.begin(), abs.end(), *w) == abs.end()) continue;
        const FiniteModule& q = ctx.modules[rng.below(
            static_cast<int>(ctx.modules.size()))];
        if (q.size() > 4 || s.f.cod.size() > 6) continue;
        auto r = hom_left_exact(q, s.f, s.g, *w, cfg.hom_budget);
        if (!r.ok()) return check(nm, false, "failed on " + s.name);
        if (++tested >= 6) break;
      }
      return check(nm, tested > 0, "no qualifying sequences");
    }));
  }
}

void abs_jobs(const CorpusConfig& cfg, std::vector<Job>& jobs) {
  for (int n : cfg.base_ns) {
    jobs.push_back(named("abs/tn-roundtrip/Z" + std::to_string(n), [n, cfg] {
      auto ring = std::make_shared<const FiniteRing>(cyclic_ring(n));
      auto mods = corpus_ring_modules(cfg, ring);
      const std::string nm = "abs/tn-roundtrip/Z" + std::to_string(n);
      for (const auto& m : mods) {
        FiniteModule tm = module_of_ring_module(m.mod);
        AbsImage ai = abs_object(tm, *ring);
        // Explicit R-linear bijection search between M_Abs and the original.
        auto maps = enumerate_ring_linear(ai.mod, m.mod);
        bool found = false;
        for (const auto& cand : maps)
          if (is_injective(cand) &&
              is_surjective(cand, m.mod.size)) {
            found = true;
            break;
          }
        if (!found)
          return check(nm, false, "no isomorphism T(N)_Abs ~ N for " + m.name);
      }
      return check(nm, true);
    }));

    jobs.push_back(named("abs/functorial/Z" + std::to_string(n), [n, cfg] {
      TrussContext ctx = truss_context(n, cfg);
      const std::string nm = "abs/functorial/Z" + std::to_string(n);
      for (std::size_t i = 0; i < ctx.modules.size(); ++i) {
        const FiniteModule& m = ctx.modules[i];
        if (m.size() > 4) continue;
        auto hs = enumerate_hom(m, m, 4096);
        AbsImage am = abs_object(m, ctx.ring);
        for (int k = 0; k < hs.count(); ++k) {
          auto f = hs.morphism(k);
          auto fa = abs_morphism(am, am, f);
          for (int l = 0; l < hs.count(); ++l) {
            auto g = hs.morphism(l);
            auto ga = abs_morphism(am, am, g);
            auto gfa = abs_morphism(am, am, compose(g, f));
            for (std::size_t c = 0; c < gfa.size(); ++c)
              if (gfa[c] != ga[fa[c]])
                return check(nm, false, "(g f)_Abs != g_Abs f_Abs");
          }
        }
        auto ida = abs_morphism(am, am, identity_morphism(m));
        for (std::size_t c = 0; c < ida.size(); ++c)
          if (ida[c] != static_cast<int>(c))
            return check(nm, false, "id_Abs != id");
      }
      return check(nm, true);
    }));

    jobs.push_back(named("abs/sequence/Z" + std::to_string(n), [n, cfg] {
      TrussContext ctx = truss_context(n, cfg);
      const std::string nm = "abs/sequence/Z" + std::to_string(n);
      for (std::size_t i = 0; i < ctx.modules.size(); ++i) {
        auto r = abs_sequence(ctx.modules[i]);
        if (!r.ses.ok())
          return check(nm, false, "abs sequence failed on " + ctx.names[i]);
      }
      return check(nm, true);
    }));
  }

  jobs.push_back(named("abs/t-functor", [cfg] {
    auto sess = corpus_ring_ses(cfg);
    for (const auto& s : sess) {
      auto r = t_functor_ses(s.ses);
      if (!r.ses.ok())
        return check("abs/t-functor", false, "failed on " + s.name);
    }
    return check("abs/t-functor", true, "no ring sequences");
  }));

  jobs.push_back(named("abs/abs-exact", [cfg] {
    auto sess = corpus_ring_ses(cfg);
    int tested = 0;
    for (const auto& s : sess) {
      auto t = t_functor_ses(s.ses);
      try {
        auto r = abs_exact(t.f, t.g, *s.ses.f.dom.ring);
        if (!r.ok())
          return check("abs/abs-exact", false, "not exact after (-)_Abs: " + s.name);
        ++tested;
      } catch (const PreconditionError&) {
        // Hypothesis g(Abs(N)) = Abs(P) can fail for legitimate inputs.
      }
    }
    return check("abs/abs-exact", tested > 0, "no qualifying sequences");
  }));
}

void sequences_jobs(const CorpusConfig& cfg, std::vector<Job>& jobs) {
  auto sess = corpus_sequences(cfg);
  for (std::size_t i = 0; i < sess.size(); ++i) {
    jobs.push_back(named("ses/" + sess[i].name, [s = sess[i]] {
      auto r = is_short_exact(s.f, s.g);  // throws on verdict disagreement
      if (r.ok() != s.expect_exact) {
        std::ostringstream os;
        os << "expected " << (s.expect_exact ? "exact" : "non-exact")
           << ", engine says " << (r.ok() ? "exact" : "non-exact");
        return check("ses/" + s.name, false, os.str());
      }
      return check("ses/" + s.name, true);
    }));
  }
}

}  // namespace

int SuiteReport::passed() const {
  int n = 0;
  for (const auto& c : checks) n += c.passed ? 1 : 0;
  return n;
}

int SuiteReport::failed() const {
  return static_cast<int>(checks.size()) - passed();
}

bool known_suite(const std::string& name) {
  for (const auto& s : suite_names())
    if (s == name) return true;
  return false;
}

std::vector<std::string> suite_names() {
  return {"axioms", "section2", "snake", "nine", "five",
          "split",  "hom",      "abs",   "all"};
}

SuiteReport run_suite(const std::string& name, const CorpusConfig& cfg) {
  if (!known_suite(name)) throw PreconditionError("unknown suite: " + name);
  std::vector<Job> jobs;
  const bool all = name == "all";
  if (all || name == "axioms") axioms_jobs(cfg, jobs);
  if (all || name == "section2") {
    section2_jobs(cfg, jobs);
    sequences_jobs(cfg, jobs);
  }
  if (all || name == "snake") snake_jobs(cfg, jobs);
  if (all || name == "nine") nine_jobs(cfg, jobs);
  if (all || name == "five") five_jobs(cfg, jobs);
  if (all || name == "split") split_jobs(cfg, jobs);
  if (all || name == "hom") hom_jobs(cfg, jobs);
  if (all || name == "abs") abs_jobs(cfg, jobs);

  SuiteReport r;
  r.suite = name;
  r.cfg = cfg;
  r.checks = run_jobs(jobs);
  return r;
}

json suite_report_json(const SuiteReport& r, bool with_timing,
                       double elapsed_ms) {
  json j;
  j["suite"] = r.suite;
  json cfg;
  cfg["base_ns"] = r.cfg.base_ns;
  cfg["max_size"] = r.cfg.max_size;
  cfg["seed"] = r.cfg.seed;
  cfg["count"] = r.cfg.count;
  cfg["hom_budget"] = r.cfg.hom_budget;
  j["config"] = std::move(cfg);
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["passed"] = r.passed();
  j["failed"] = r.failed();
  if (with_timing) j["elapsed_ms"] = elapsed_ms;
  return j;
}

}  // namespace trusslab
