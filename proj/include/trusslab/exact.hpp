#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trusslab/hom.hpp"
#include "trusslab/module.hpp"

namespace trusslab {

// Exactness of M -f-> N -g-> P at N: some e in Im g with Im f = ker_e g.
// The witness, when it exists, is unique (fibers are disjoint); the scan
// runs over Im g in ascending order.
std::optional<int> is_exact_at(const ModuleMorphism& f, const ModuleMorphism& g);

// Two independently computed short-exactness verdicts:
//   A: exact at N, f injective, g surjective;
//   B: f injective and the canonical map N/Im f -> P is an isomorphism.
// Disagreement raises ConsistencyError.
struct ShortExactReport {
  bool verdict_a = false;
  bool verdict_b = false;
  std::optional<int> witness;  // exactness witness in P
  bool f_injective = false;
  bool g_surjective = false;
  bool quotient_map_well_defined = false;
  bool quotient_map_bijective = false;
  bool quotient_map_linear = false;
  bool ok() const { return verdict_a; }
};

ShortExactReport is_short_exact(const ModuleMorphism& f, const ModuleMorphism& g);

// Splice of two short exact sequences at Z: X -> Y -> A -> B with middle map
// alpha o g, verified exact at Y and A.
struct SplicedSequence {
  ModuleMorphism left, middle, right;  // X->Y, Y->A, A->B
  int witness_y = -1, witness_a = -1;
};

SplicedSequence splice(const ModuleMorphism& f, const ModuleMorphism& g,
                       const ModuleMorphism& alpha, const ModuleMorphism& beta);

// * -> Abs(M) -> M -> M/Abs(M) -> *.
struct AbsSequence {
  std::vector<int> abs;
  ModuleMorphism inclusion, projection;
  ShortExactReport ses;
};

AbsSequence abs_sequence(const FiniteModule& m);

// Snake-shaped diagram:
//       M' --phi--> M --psi--> M'' -> *     (exact at M, psi epic)
//       |fp         |f         |fpp
//  * -> N' --phi1-> N --psi1-> N''          (phi1 monic, exact at N)
struct SnakeDiagram {
  ModuleMorphism phi, psi;    // top row
  ModuleMorphism phi1, psi1;  // bottom row
  ModuleMorphism fp, f, fpp;  // verticals
};

// Checks shape, commutativity, row exactness and Abs(M') != {} eagerly.
// Returns the unique top/bottom witnesses (m'' and n'').
struct SnakeShapeInfo {
  int top_witness = -1;     // Im phi = fiber of psi over it
  int bottom_witness = -1;  // Im phi1 = fiber of psi1 over it
  std::vector<int> abs_mp;  // absorbers of M'
};
SnakeShapeInfo validate_snake_shape(const SnakeDiagram& d);

struct SnakeResult {
  int e_prime = -1;
  FiniteModule ker_fp, ker_f, ker_fpp;  // restricted kernel modules
  std::vector<int> ker_fp_elems, ker_f_elems, ker_fpp_elems;
  QuotientModule coker_fp, coker_f, coker_fpp;
  ModuleMorphism phi0, psi0, delta, phi2, psi2;
  std::array<int, 4> witnesses{};  // at ker_f, ker_fpp, coker_fp, coker_f
};

// Builds and fully verifies the six-term sequence; never returns an
// unverified result. e_prime defaults to the smallest absorber of M'.
SnakeResult snake(const SnakeDiagram& d, std::optional<int> e_prime = std::nullopt);
std::vector<SnakeResult> snake_all_absorbers(const SnakeDiagram& d);

struct ShortFiveReport {
  bool fp_injective = false, fpp_injective = false, f_injective = false;
  bool fp_surjective = false, fpp_surjective = false, f_surjective = false;
  bool injective_clause_ok = true;   // fp,fpp inj => f inj, when applicable
  bool surjective_clause_ok = true;  // fp,fpp surj => f surj
  bool iso_clause_ok = true;
  bool all_ok() const {
    return injective_clause_ok && surjective_clause_ok && iso_clause_ok;
  }
};

ShortFiveReport short_five(const SnakeDiagram& d);

// 2x3 diagram with rows ending in *:
//   A' --phi1--> A --psi1--> A'' -> *
//   |f           |g          :h
//   B' --phi2--> B --psi2--> B'' -> *
struct EpiSquareDiagram {
  ModuleMorphism phi1, psi1;  // top row
  ModuleMorphism phi2, psi2;  // bottom row
  ModuleMorphism f, g;        // verticals A'->B', A->B
};

struct InducedMapResult {
  ModuleMorphism h;
  bool unique = false;
  bool uniqueness_exhaustive = false;  // false when hom budget was exceeded
  bool iso_clause_applicable = false;  // f and g are both isomorphisms
  bool h_isomorphism = false;
};

InducedMapResult induced_epi_map(const EpiSquareDiagram& d,
                                 std::uint64_t hom_budget = kDefaultHomBudget);

// 2x3 diagram with rows starting at *:
//   * -> A' --phi1--> A --psi1--> A''
//        :h           |f          |g
//   * -> B' --phi2--> B --psi2--> B''
// Base points a'' and b'' are the unique exactness witnesses; the paper's
// hypothesis g(a'') = b'' is checked.
struct MonoSquareDiagram {
  ModuleMorphism phi1, psi1;
  ModuleMorphism phi2, psi2;
  ModuleMorphism f, g;  // verticals A->B, A''->B''
};

InducedMapResult induced_mono_map(const MonoSquareDiagram& d,
                                  std::uint64_t hom_budget = kDefaultHomBudget);

// 3x3 grid, modules mods[row][col], row maps row_maps[i] = (f_i, g_i),
// column verticals col_maps[i][j]: mods[i][j] -> mods[i+1][j].
struct NineDiagram {
  std::array<std::array<FiniteModule, 3>, 3> mods;
  std::array<std::array<ModuleMorphism, 2>, 3> row_maps;
  std::array<std::array<ModuleMorphism, 3>, 2> col_maps;
};

struct NineReport {
  bool first_exact = false;
  bool last_exact = false;
  bool biconditional_ok = false;
};

// Preconditions (three short exact rows, short exact middle column, four
// commuting squares) are validated eagerly with named errors.
NineReport nine_lemma(const NineDiagram& d);

// 2x5 diagram: top[i]: A_i -> A_{i+1}, bottom likewise, vert[i]: A_i -> B_i.
struct FiveDiagram {
  std::array<FiniteModule, 5> top_mods, bottom_mods;
  std::array<ModuleMorphism, 4> top, bottom;
  std::array<ModuleMorphism, 5> vert;
};

struct FiveReport {
  std::array<bool, 5> vert_injective{}, vert_surjective{};
  bool mono_clause_applicable = false, mono_clause_ok = true;
  bool epi_clause_applicable = false, epi_clause_ok = true;
  bool iso_clause_applicable = false, iso_clause_ok = true;
  bool all_ok() const { return mono_clause_ok && epi_clause_ok && iso_clause_ok; }
};

FiveReport five_lemma(const FiveDiagram& d);

// Factorization through an epimorphism: f = h o g with ker_s g contained in
// ker_t f. The containment is a hypothesis; violations raise
// PreconditionError with a witness element in the message.
struct FactorResult {
  ModuleMorphism h;
  bool unique = false;
  bool uniqueness_exhaustive = false;
  bool kernel_image_ok = false;  // ker_t h = g(ker_t f)   (epi case)
  bool image_ok = false;         // Im h = Im f            (epi case)
  bool h_epic = false, h_monic = false;
};

FactorResult factor_through_epi(const ModuleMorphism& f, const ModuleMorphism& g,
                                int s, int t,
                                std::uint64_t hom_budget = kDefaultHomBudget);

// Factorization through a monomorphism g with Im f inside Im g: f = g o h.
FactorResult factor_through_mono(const ModuleMorphism& f,
                                 const ModuleMorphism& g,
                                 std::uint64_t hom_budget = kDefaultHomBudget);

// Splitting trichotomy for * -> M1 -f-> M -g-> M2 -> * with Im f = ker_{e2} g
// and e2 an absorber of M2, Abs(M1) nonempty.
struct SplitReport {
  bool has_section = false;     // h: M2 -> M with g h = 1
  bool has_retraction = false;  // k: M -> M1 with k f = 1
  bool has_product_iso = false; // phi: M1 x M2 -> M commuting with the SES
  std::optional<std::vector<int>> phi;  // witness iso when found
  bool agree = false;           // three-way equivalence holds on this instance
};

SplitReport splitting(const ModuleMorphism& f, const ModuleMorphism& g, int e2,
                      std::uint64_t hom_budget = kDefaultHomBudget);

// Hom_T(Q,-) applied to * -> M -f-> N -g-> P exact with absorbing witness e.
struct HomLeftExactReport {
  HomSet hom_qm, hom_qn, hom_qp;
  std::vector<int> h_map, l_map;  // index maps between the hom lists
  int gamma_index = -1;           // constant-e map inside Hom(Q,P)
  bool h_injective = false;
  bool image_equals_kernel = false;
  bool ok() const { return h_injective && image_equals_kernel; }
};

HomLeftExactReport hom_left_exact(const FiniteModule& q,
                                  const ModuleMorphism& f,
                                  const ModuleMorphism& g, int e,
                                  std::uint64_t budget = kDefaultHomBudget);

// (-)_Abs applied to a short exact sequence of T(R)-modules with absorbing
// witness and g(Abs(N)) = Abs(P) (hypothesis; checked with witness).
struct AbsExactReport {
  AbsImage m_abs, n_abs, p_abs;
  std::vector<int> f_abs, g_abs;
  bool f_abs_injective = false;
  bool middle_exact = false;  // Im f_Abs = Ker g_Abs
  bool g_abs_surjective = false;
  bool ok() const { return f_abs_injective && middle_exact && g_abs_surjective; }
};

AbsExactReport abs_exact(const ModuleMorphism& f, const ModuleMorphism& g,
                         const FiniteRing& r);

// T(-) image of a short exact sequence of R-modules.
struct RingSes {
  RingModuleMorphism f, g;
};

struct TFunctorResult {
  ModuleMorphism f, g;
  ShortExactReport ses;
  int zero_witness = -1;  // the witness element, equal to the zero of G3
};

TFunctorResult t_functor_ses(const RingSes& s);

}  // namespace trusslab
