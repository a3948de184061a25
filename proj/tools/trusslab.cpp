#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "trusslab/json_io.hpp"
#include "trusslab/serial.hpp"
#include "trusslab/suite.hpp"

namespace {

using trusslab::json;

constexpr int kExitVerified = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitInputError = 2;

std::uint64_t default_budget() {
  if (const char* env = std::getenv("TRUSSLAB_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return trusslab::kDefaultHomBudget;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json error_json(const std::string& cls, const std::string& what) {
  json j;
  j["ok"] = false;
  j["error"] = cls;
  j["message"] = what;
  return j;
}

int run_check(const std::string& path) {
  auto loaded = trusslab::load_file(path);
  json out;
  int exit_code = kExitVerified;

  if (auto* h = std::get_if<trusslab::FiniteHeap>(&loaded)) {
    out["kind"] = "heap";
    out["report"] = trusslab::report_to_json(trusslab::validate_heap(*h));
    out["abelian"] = trusslab::is_abelian(*h);
  } else if (auto* g = std::get_if<trusslab::FiniteGroup>(&loaded)) {
    out["kind"] = "group";
    out["report"] = trusslab::report_to_json(trusslab::validate_group(*g));
  } else if (auto* r = std::get_if<trusslab::FiniteRing>(&loaded)) {
    out["kind"] = "ring";
    out["report"] = trusslab::report_to_json(trusslab::validate_ring(*r));
  } else if (auto* t = std::get_if<trusslab::FiniteTruss>(&loaded)) {
    out["kind"] = "truss";
    out["report"] = trusslab::report_to_json(trusslab::validate_truss(*t));
  } else if (auto* m = std::get_if<trusslab::FiniteModule>(&loaded)) {
    out["kind"] = "module";
    out["report"] = trusslab::report_to_json(trusslab::validate_module(*m));
  } else if (auto* mor = std::get_if<trusslab::LoadedMorphism>(&loaded)) {
    out["kind"] = "morphism";
    out["role"] = mor->role;
    trusslab::ValidationReport rep;
    if (auto* hm = std::get_if<trusslab::HeapMorphism>(&mor->value))
      rep = trusslab::validate_heap_morphism(*hm);
    else if (auto* tm = std::get_if<trusslab::TrussMorphism>(&mor->value))
      rep = trusslab::validate_truss_morphism(*tm);
    else
      rep = trusslab::validate_module_morphism(
          std::get<trusslab::ModuleMorphism>(mor->value));
    out["report"] = trusslab::report_to_json(rep);
  } else {
    const auto& d = std::get<trusslab::Diagram>(loaded);
    out["kind"] = "diagram";
    out["shape"] = d.shape;
    // Eager validation: commutativity plus the declared exactness of the
    // shape. Theorem conclusions are left to the dedicated commands.
    if (d.shape == "ses") {
      auto [f, g] = trusslab::to_ses(d);
      auto rep = trusslab::is_short_exact(f, g);
      out["short_exact"] = rep.ok();
      if (rep.witness) out["witness"] = *rep.witness;
      if (!rep.ok()) exit_code = kExitFalsified;
    } else if (d.shape == "snake") {
      auto s = trusslab::to_snake(d);
      auto info = trusslab::validate_snake_shape(s);
      out["preconditions_ok"] = true;
      out["top_witness"] = info.top_witness;
      out["bottom_witness"] = info.bottom_witness;
      out["absorbers_mp"] = info.abs_mp;
    } else if (d.shape == "grid3x3") {
      trusslab::nine_lemma(trusslab::to_nine(d));
      out["preconditions_ok"] = true;
    } else {
      trusslab::five_lemma(trusslab::to_five(d));
      out["preconditions_ok"] = true;
    }
  }

  if (out.contains("report") && !out["report"]["ok"].get<bool>())
    exit_code = kExitFalsified;
  out["ok"] = exit_code == kExitVerified;
  emit(out);
  return exit_code;
}

json snake_result_json(const trusslab::SnakeResult& r) {
  json j;
  j["e_prime"] = r.e_prime;
  j["kernel_sizes"] =
      json::array({r.ker_fp.size(), r.ker_f.size(), r.ker_fpp.size()});
  j["cokernel_sizes"] = json::array({r.coker_fp.mod.size(),
                                     r.coker_f.mod.size(),
                                     r.coker_fpp.mod.size()});
  j["kernel_elements"] = json::array(
      {r.ker_fp_elems, r.ker_f_elems, r.ker_fpp_elems});
  j["maps"] = json::object();
  j["maps"]["phi0"] = r.phi0.map;
  j["maps"]["psi0"] = r.psi0.map;
  j["maps"]["delta"] = r.delta.map;
  j["maps"]["phi2"] = r.phi2.map;
  j["maps"]["psi2"] = r.psi2.map;
  j["witnesses"] = r.witnesses;
  return j;
}

int run_snake(const std::string& path, bool all_absorbers) {
  auto loaded = trusslab::load_file(path);
  auto* d = std::get_if<trusslab::Diagram>(&loaded);
  if (!d || d->shape != "snake")
    throw trusslab::StructureError("snake expects a diagram of shape \"snake\"");
  auto s = trusslab::to_snake(*d);
  json out;
  out["command"] = "snake";
  if (all_absorbers) {
    auto results = trusslab::snake_all_absorbers(s);
    json arr = json::array();
    for (const auto& r : results) arr.push_back(snake_result_json(r));
    out["runs"] = std::move(arr);
    out["stable"] = true;  // snake_all_absorbers asserts size stability
  } else {
    out["result"] = snake_result_json(trusslab::snake(s));
  }
  out["ok"] = true;
  emit(out);
  return kExitVerified;
}

int run_nine(const std::string& path) {
  auto loaded = trusslab::load_file(path);
  auto* d = std::get_if<trusslab::Diagram>(&loaded);
  if (!d || d->shape != "grid3x3")
    throw trusslab::StructureError("nine expects a diagram of shape \"grid3x3\"");
  auto r = trusslab::nine_lemma(trusslab::to_nine(*d));
  json out;
  out["command"] = "nine";
  out["first_column_exact"] = r.first_exact;
  out["last_column_exact"] = r.last_exact;
  out["biconditional_ok"] = r.biconditional_ok;
  out["ok"] = r.biconditional_ok;
  emit(out);
  return r.biconditional_ok ? kExitVerified : kExitFalsified;
}

int run_five(const std::string& path) {
  auto loaded = trusslab::load_file(path);
  auto* d = std::get_if<trusslab::Diagram>(&loaded);
  if (!d) throw trusslab::StructureError("five expects a diagram file");
  json out;
  out["command"] = "five";
  bool ok = false;
  if (d->shape == "row2x5") {
    auto r = trusslab::five_lemma(trusslab::to_five(*d));
    out["variant"] = "five";
    out["mono_clause"] = json::object(
        {{"applicable", r.mono_clause_applicable}, {"ok", r.mono_clause_ok}});
    out["epi_clause"] = json::object(
        {{"applicable", r.epi_clause_applicable}, {"ok", r.epi_clause_ok}});
    out["iso_clause"] = json::object(
        {{"applicable", r.iso_clause_applicable}, {"ok", r.iso_clause_ok}});
    ok = r.all_ok();
  } else if (d->shape == "snake") {
    auto r = trusslab::short_five(trusslab::to_snake(*d));
    out["variant"] = "short-five";
    out["f_injective"] = r.f_injective;
    out["f_surjective"] = r.f_surjective;
    out["injective_clause_ok"] = r.injective_clause_ok;
    out["surjective_clause_ok"] = r.surjective_clause_ok;
    out["iso_clause_ok"] = r.iso_clause_ok;
    ok = r.all_ok();
  } else {
    throw trusslab::StructureError(
        "five expects shape \"row2x5\" (five lemma) or \"snake\" (short five)");
  }
  out["ok"] = ok;
  emit(out);
  return ok ? kExitVerified : kExitFalsified;
}

int run_split(const std::string& path, std::uint64_t budget) {
  auto loaded = trusslab::load_file(path);
  auto* d = std::get_if<trusslab::Diagram>(&loaded);
  if (!d || d->shape != "ses")
    throw trusslab::StructureError("split expects a diagram of shape \"ses\"");
  auto [f, g] = trusslab::to_ses(*d);
  auto rep = trusslab::is_short_exact(f, g);
  if (!rep.ok())
    throw trusslab::PreconditionError("sequence is not short exact");
  auto r = trusslab::splitting(f, g, *rep.witness, budget);
  json out;
  out["command"] = "split";
  out["witness_e2"] = *rep.witness;
  out["has_section"] = r.has_section;
  out["has_retraction"] = r.has_retraction;
  out["has_product_iso"] = r.has_product_iso;
  if (r.phi) out["phi"] = *r.phi;
  out["agree"] = r.agree;
  out["ok"] = r.agree;
  emit(out);
  return r.agree ? kExitVerified : kExitFalsified;
}

int run_hom(const std::string& mpath, const std::string& npath,
            std::uint64_t budget) {
  auto lm = trusslab::load_file(mpath);
  auto ln = trusslab::load_file(npath);
  auto* m = std::get_if<trusslab::FiniteModule>(&lm);
  auto* n = std::get_if<trusslab::FiniteModule>(&ln);
  if (!m || !n) throw trusslab::StructureError("hom expects two module files");
  auto hs = trusslab::enumerate_hom(*m, *n, budget);
  json arr = json::array();
  for (const auto& map : hs.maps) arr.push_back(map);
  emit(arr);
  return kExitVerified;
}

int run_abs(const std::string& mpath, const std::string& rpath) {
  auto lm = trusslab::load_file(mpath);
  auto lr = trusslab::load_file(rpath);
  auto* m = std::get_if<trusslab::FiniteModule>(&lm);
  auto* r = std::get_if<trusslab::FiniteRing>(&lr);
  if (!m || !r)
    throw trusslab::StructureError("abs expects a module file and a ring file");
  auto ai = trusslab::abs_object(*m, *r);
  json out;
  out["classes"] = ai.classes;
  json mul = json::array();
  for (int a = 0; a < ai.mod.size; ++a) {
    json row = json::array();
    for (int b = 0; b < ai.mod.size; ++b) row.push_back(ai.mod.add_at(a, b));
    mul.push_back(std::move(row));
  }
  out["group_mul"] = std::move(mul);
  json act = json::array();
  for (int s = 0; s < r->size; ++s) {
    json row = json::array();
    for (int x = 0; x < ai.mod.size; ++x) row.push_back(ai.mod.act_at(s, x));
    act.push_back(std::move(row));
  }
  out["action"] = std::move(act);
  emit(out);
  return kExitVerified;
}

int run_corpus(int n, std::uint64_t seed, int count, const std::string& kind,
               int max_size, std::uint64_t budget) {
  trusslab::CorpusConfig cfg;
  cfg.base_ns = {n};
  cfg.seed = seed;
  cfg.count = count;
  cfg.max_size = max_size;
  cfg.hom_budget = budget;
  json arr = json::array();
  if (kind == "snake") {
    for (const auto& s : trusslab::corpus_snakes(cfg)) {
      json e;
      e["name"] = s.name;
      e["diagram"] = trusslab::snake_to_json(s.d);
      arr.push_back(std::move(e));
    }
  } else if (kind == "ses") {
    for (const auto& s : trusslab::corpus_sequences(cfg)) {
      json e;
      e["name"] = s.name;
      e["expect_exact"] = s.expect_exact;
      e["diagram"] = trusslab::ses_to_json(s.f, s.g);
      arr.push_back(std::move(e));
    }
  } else if (kind == "grid3x3") {
    for (const auto& s : trusslab::corpus_nines(cfg)) {
      json e;
      e["name"] = s.name;
      e["diagram"] = trusslab::nine_to_json(s.d);
      arr.push_back(std::move(e));
    }
  } else if (kind == "row2x5") {
    for (const auto& s : trusslab::corpus_fives(cfg)) {
      json e;
      e["name"] = s.name;
      e["diagram"] = trusslab::five_to_json(s.d);
      arr.push_back(std::move(e));
    }
  } else {
    throw trusslab::StructureError("unknown corpus kind \"" + kind + "\"");
  }
  emit(arr);
  return kExitVerified;
}

int run_suite_cmd(const std::string& name, const trusslab::CorpusConfig& cfg,
                  bool as_json, bool with_timing) {
  const auto t0 = std::chrono::steady_clock::now();
  auto rep = trusslab::run_suite(name, cfg);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  if (as_json) {
    emit(trusslab::suite_report_json(rep, with_timing, ms));
  } else {
    for (const auto& c : rep.checks) {
      if (c.passed)
        std::cout << "ok   " << c.name << "\n";
      else
        std::cout << "FAIL " << c.name << ": " << c.detail << "\n";
    }
    std::cout << rep.passed() << " passed, " << rep.failed() << " failed";
    if (with_timing) std::cout << " (" << ms << " ms)";
    std::cout << "\n";
  }
  return rep.failed() == 0 ? kExitVerified : kExitFalsified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trusslab: finite heaps, trusses, modules and exact sequences"};
  app.require_subcommand(1);

  std::string file, file2;
  bool all_absorbers = false;
  std::uint64_t budget = default_budget();
  std::uint64_t seed = 0;
  int max_size = 12;
  int count = 0;
  int corpus_n = 4;
  std::string corpus_truss = "Zn";
  std::string corpus_kind = "snake";
  std::string suite_name;
  bool as_json = false;
  bool with_timing = false;

  auto* c_check = app.add_subcommand("check", "validate a structure file");
  c_check->add_option("file", file)->required();

  auto* c_snake = app.add_subcommand("snake", "run the snake lemma engine");
  c_snake->add_option("file", file)->required();
  c_snake->add_flag("--all-absorbers", all_absorbers,
                    "re-run over every absorber of M'");

  auto* c_nine = app.add_subcommand("nine", "run the nine lemma engine");
  c_nine->add_option("file", file)->required();

  auto* c_five =
      app.add_subcommand("five", "run the five (or short five) lemma engine");
  c_five->add_option("file", file)->required();

  auto* c_split = app.add_subcommand("split", "splitting trichotomy of a SES");
  c_split->add_option("file", file)->required();
  c_split->add_option("--hom-budget", budget);

  auto* c_hom = app.add_subcommand("hom", "enumerate Hom_T(M,N)");
  c_hom->add_option("M", file)->required();
  c_hom->add_option("N", file2)->required();
  c_hom->add_option("--hom-budget", budget);

  auto* c_abs = app.add_subcommand("abs", "Abs functor image of a T(R)-module");
  c_abs->add_option("module", file)->required();
  c_abs->add_option("ring", file2)->required();

  auto* c_corpus = app.add_subcommand("corpus", "emit generated instances");
  c_corpus->add_option("--truss", corpus_truss, "family (Zn)");
  c_corpus->add_option("--n", corpus_n)->required();
  c_corpus->add_option("--seed", seed);
  c_corpus->add_option("--count", count);
  c_corpus->add_option("--kind", corpus_kind, "snake|ses|grid3x3|row2x5");
  c_corpus->add_option("--max-size", max_size);
  c_corpus->add_option("--hom-budget", budget);

  auto* c_suite = app.add_subcommand("suite", "run a verification suite");
  c_suite->add_option("name", suite_name)->required();
  c_suite->add_option("--seed", seed);
  c_suite->add_option("--max-size", max_size);
  c_suite->add_option("--count", count);
  c_suite->add_option("--hom-budget", budget);
  c_suite->add_flag("--json", as_json);
  c_suite->add_flag("--timing", with_timing);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_check->parsed()) return run_check(file);
    if (c_snake->parsed()) return run_snake(file, all_absorbers);
    if (c_nine->parsed()) return run_nine(file);
    if (c_five->parsed()) return run_five(file);
    if (c_split->parsed()) return run_split(file, budget);
    if (c_hom->parsed()) return run_hom(file, file2, budget);
    if (c_abs->parsed()) return run_abs(file, file2);
    if (c_corpus->parsed()) {
      if (corpus_truss != "Zn")
        throw trusslab::StructureError("unknown truss family \"" +
                                       corpus_truss + "\"");
      return run_corpus(corpus_n, seed, count, corpus_kind, max_size, budget);
    }
    if (c_suite->parsed()) {
      trusslab::CorpusConfig cfg;
      cfg.seed = seed;
      cfg.max_size = max_size;
      cfg.count = count;
      cfg.hom_budget = budget;
      return run_suite_cmd(suite_name, cfg, as_json, with_timing);
    }
  } catch (const trusslab::StructureError& e) {
    emit(error_json("structure", e.what()));
    return kExitInputError;
  } catch (const trusslab::PreconditionError& e) {
    emit(error_json("precondition", e.what()));
    return kExitInputError;
  } catch (const trusslab::BudgetError& e) {
    emit(error_json("budget", e.what()));
    return kExitInputError;
  } catch (const trusslab::ConsistencyError& e) {
    emit(error_json("consistency", e.what()));
    return kExitFalsified;
  } catch (const std::exception& e) {
    emit(error_json("internal", e.what()));
    return kExitInputError;
  }
  return kExitInputError;
}
