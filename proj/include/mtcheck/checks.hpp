#pragma once

#include "mtcheck/sl2z.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtcheck {

// Five verdicts: axioms.s4, axioms.modular_relation, axioms.symmetric,
// axioms.charge_conjugation, axioms.vacuum_positive. The last one compares
// embeddings against their error bound plus cfg.positivity_tolerance and
// reports undecided when the sign is ambiguous.
std::vector<CheckVerdict> check_axioms(const ModularData& md, const CheckConfig& cfg);

// N_pqr = sum_s S_ps S_qs S_rs / S_0s. The verdict (fusion_integrality)
// passes iff every value is a non-negative integer. tensor is indexed
// p*rank^2 + q*rank + r and left empty when some value is not even rational.
struct FusionResult {
    CheckVerdict verdict;
    unsigned rank = 0;
    std::vector<Rational> tensor;
};
FusionResult fusion_tensor(const ModularData& md);

// nu_p = sum_q S_pq |M(2)_0q|^2 / S_0q with M(k) = S^-1 T^k S; each value
// must be exactly -1, 0 or 1 (verdict frobenius_schur).
struct FsResult {
    CheckVerdict verdict;
    std::vector<Rational> values;
};
FsResult fs_indicators(const ModularData& md);

// For every unit l mod the conductor: G_l = S^-1 T^l S T^m S T^l with
// m = l^-1. Verdicts: each G_l a signed permutation; sigma_l(S) = S G_l;
// G_l G_m = G_{lm} (all pairs up to 64 units, sampled beyond); and
// G_l^-1 T G_l = sigma_{l^2}(T) with G_l^-1 taken as the transpose.
struct GaloisSuiteResult {
    std::vector<unsigned> units;      // ascending units mod conductor
    std::vector<CycMatrix> g;         // G_l, indexed like units
    std::vector<MatrixClass> shape;   // classify(G_l)
    CheckVerdict signed_permutation;  // galois.signed_permutation
    CheckVerdict s_transform;         // galois.s_transform
    CheckVerdict multiplicativity;    // galois.multiplicativity
    CheckVerdict t_commutation;       // galois.t_commutation
};
GaloisSuiteResult galois_suite(const ModularData& md, const CheckConfig& cfg);

// Probabilistic kernel test: rho agrees on cfg.samples pairs A, A*G with
// G drawn from the principal congruence subgroup of level N, plus the
// deterministic rho(T^N) = Id instance.
CheckVerdict congruence_test(const ModularData& md, const CheckConfig& cfg);

// K = projective order of T (smallest K with T^K scalar), e = N/K, h = the
// residues mod K whose G_l is scalar.
struct ProjectiveKernelProfile {
    unsigned K = 1;
    unsigned e = 1;
    std::vector<unsigned> h;  // sorted residues in [1, K]
    bool parity_constraints_ok = false;
    bool galois_current_candidate = false;  // e odd and 16 | K
    bool gamma_kh_sampled_ok = false;
    Json to_json() const;
};
// Verdicts: projective.parity (e | 12, and K odd when 4 | e),
// projective.h_structure (nonempty, exponent two, closed under products),
// projective.gamma_kh (sampled members map to scalar matrices).
struct ProjectiveKernelResult {
    ProjectiveKernelProfile profile;
    std::vector<CheckVerdict> verdicts;
};
ProjectiveKernelResult projective_kernel_profile(const ModularData& md,
                                                 const GaloisSuiteResult& suite,
                                                 const CheckConfig& cfg);

// dim V_g = sum_p S_0p^{2-2g}; must be a positive integer.
struct GenusResult {
    CheckVerdict verdict;
    Rational value;
};
GenusResult genus_dimension(const ModularData& md, unsigned g);

// sum_p S_0p^{2-2g-n} prod_i rho(w_i)_0p for n = words.size() >= 1, g >= 1.
// Throws std::invalid_argument on bad g/words, std::domain_error on a zero
// vacuum entry, RelationError when rho is undefined.
CycNumber seifert_invariant(const ModularData& md, unsigned g, const std::vector<GenWord>& words);

// sum_p M(4)_0p^2 M(-2)_0p / S_0p = trace(S), both sides exact.
CheckVerdict trace_identity_s(const ModularData& md);

struct CheckReport {
    std::string name;
    Status overall = Status::pass;
    unsigned conductor = 1;
    std::optional<ProjectiveKernelProfile> profile;
    std::vector<CheckVerdict> checks;

    Json to_json(bool with_timing = true) const;
};

// Known names accepted by CheckConfig::checks: full verdict names as emitted
// in reports, or a dotted prefix ("axioms", "galois", "projective").
// Dependencies are pulled in automatically.
std::vector<std::string> known_check_names();

CheckReport run_all(const ModularData& md, const CheckConfig& cfg);

}  // namespace mtcheck
