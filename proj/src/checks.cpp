#include "mtcheck/checks.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mtcheck {

const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skip: return "skip";
        case Status::undecided: return "undecided";
    }
    return "unknown";
}

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

Json rational_json(const Rational& q) {
    return Json{{"num", json_integer(q.get_num())}, {"den", json_integer(q.get_den())}};
}

std::optional<std::pair<unsigned, unsigned>> first_difference(const CycMatrix& a,
                                                              const CycMatrix& b) {
    for (unsigned i = 0; i < a.dim(); ++i)
        for (unsigned j = 0; j < a.dim(); ++j)
            if (a.at(i, j) != b.at(i, j)) return std::make_pair(i, j);
    return std::nullopt;
}

Json mismatch_witness(const char* kind, const CycMatrix& lhs, const CycMatrix& rhs,
                      std::pair<unsigned, unsigned> at) {
    return Json{{"kind", kind},
                {"row", at.first},
                {"col", at.second},
                {"lhs", cyc_json(lhs.at(at.first, at.second))},
                {"rhs", cyc_json(rhs.at(at.first, at.second))}};
}

// Index of the first zero entry in row 0 of S, if any.
std::optional<unsigned> vacuum_zero(const ModularData& md) {
    for (unsigned p = 0; p < md.rank(); ++p)
        if (md.s().at(0, p).is_zero()) return p;
    return std::nullopt;
}

std::vector<CycNumber> vacuum_inverses(const ModularData& md) {
    std::vector<CycNumber> inv;
    inv.reserve(md.rank());
    for (unsigned p = 0; p < md.rank(); ++p) inv.push_back(md.s().at(0, p).inverse());
    return inv;
}

// Sign of a real cyclotomic entry, decided numerically against the embedding
// error bound plus the configured tolerance: +1, -1, or nullopt for ambiguous.
std::optional<int> embedded_sign(const CycNumber& v, double tolerance, double* re_out = nullptr,
                                 double* bound_out = nullptr) {
    const auto emb = v.embed();
    if (re_out) *re_out = emb.re;
    if (bound_out) *bound_out = emb.bound;
    const double thr = emb.bound + tolerance;
    if (emb.re > thr) return 1;
    if (emb.re < -thr) return -1;
    return std::nullopt;
}

}  // namespace

std::vector<CheckVerdict> check_axioms(const ModularData& md, const CheckConfig& cfg) {
    std::vector<CheckVerdict> out;
    Stopwatch sw;
    auto finish = [&](CheckVerdict v) {
        v.ms = sw.ms();
        sw = Stopwatch();
        out.push_back(std::move(v));
    };

    const CycMatrix& S = md.s();
    const unsigned r = md.rank();
    const CycMatrix id = CycMatrix::identity(r);

    // (a) S^4 = Id
    {
        const CycMatrix s4 = md.charge_conjugation() * md.charge_conjugation();
        if (auto d = first_difference(s4, id))
            finish(CheckVerdict::failed("axioms.s4", mismatch_witness("entry_mismatch", s4, id, *d)));
        else
            finish(CheckVerdict::passed("axioms.s4"));
    }

    // (b) S T S = T^{-1} S T^{-1}, the braid form of (ST)^3 = S^2
    {
        const CycMatrix lhs = md.right_t(S, 1) * S;
        const CycMatrix rhs = md.left_t(md.right_t(S, -1), -1);
        if (auto d = first_difference(lhs, rhs))
            finish(CheckVerdict::failed("axioms.modular_relation",
                                        mismatch_witness("entry_mismatch", lhs, rhs, *d)));
        else
            finish(CheckVerdict::passed("axioms.modular_relation"));
    }

    // (c) S symmetric
    {
        std::optional<std::pair<unsigned, unsigned>> bad;
        for (unsigned i = 0; i < r && !bad; ++i)
            for (unsigned j = i + 1; j < r; ++j)
                if (S.at(i, j) != S.at(j, i)) {
                    bad = std::make_pair(i, j);
                    break;
                }
        if (bad)
            finish(CheckVerdict::failed("axioms.symmetric",
                                        mismatch_witness("entry_mismatch", S, S.transposed(), *bad)));
        else
            finish(CheckVerdict::passed("axioms.symmetric"));
    }

    // (d) C = S^2 is a permutation with C^2 = Id
    {
        const CycMatrix& c = md.charge_conjugation();
        const MatrixClass cls = c.classify();
        if (!cls.is_permutation) {
            finish(CheckVerdict::failed("axioms.charge_conjugation",
                                        Json{{"kind", "not_permutation"}}));
        } else if (auto d = first_difference(c * c, id)) {
            finish(CheckVerdict::failed("axioms.charge_conjugation",
                                        mismatch_witness("entry_mismatch", c * c, id, *d)));
        } else {
            finish(CheckVerdict::passed("axioms.charge_conjugation"));
        }
    }

    // (e) every vacuum-row entry is real and strictly positive
    {
        std::optional<Json> fail_witness;
        std::optional<Json> undecided_witness;
        for (unsigned p = 0; p < r && !fail_witness; ++p) {
            const CycNumber& v = S.at(0, p);
            if (!v.is_real()) {
                fail_witness = Json{{"kind", "entry_not_real"}, {"index", p}, {"value", cyc_json(v)}};
                break;
            }
            if (v.is_zero()) {
                fail_witness = Json{{"kind", "zero_vacuum_entry"}, {"index", p}};
                break;
            }
            double re = 0.0, bound = 0.0;
            const auto sign = embedded_sign(v, cfg.positivity_tolerance, &re, &bound);
            if (sign && *sign < 0) {
                fail_witness = Json{{"kind", "entry_not_positive"},
                                    {"index", p},
                                    {"value", cyc_json(v)},
                                    {"re", re}};
            } else if (!sign && !undecided_witness) {
                undecided_witness = Json{{"kind", "ambiguous_sign"},
                                         {"index", p},
                                         {"value", cyc_json(v)},
                                         {"re", re},
                                         {"bound", bound},
                                         {"tolerance", cfg.positivity_tolerance}};
            }
        }
        if (fail_witness) {
            // Other rows may qualify as an all-positive vacuum row; report them.
            Json candidates = Json::array();
            for (unsigned q = 0; q < r; ++q) {
                bool all_positive = true;
                for (unsigned p = 0; p < r && all_positive; ++p) {
                    const CycNumber& v = S.at(q, p);
                    if (!v.is_real() || v.is_zero()) {
                        all_positive = false;
                        break;
                    }
                    const auto sign = embedded_sign(v, cfg.positivity_tolerance);
                    all_positive = sign && *sign > 0;
                }
                if (all_positive) candidates.push_back(q);
            }
            (*fail_witness)["positive_row_candidates"] = std::move(candidates);
            finish(CheckVerdict::failed("axioms.vacuum_positive", std::move(*fail_witness)));
        } else if (undecided_witness) {
            finish(CheckVerdict::undecided("axioms.vacuum_positive", std::move(*undecided_witness)));
        } else {
            finish(CheckVerdict::passed("axioms.vacuum_positive"));
        }
    }

    return out;
}

FusionResult fusion_tensor(const ModularData& md) {
    Stopwatch sw;
    FusionResult res;
    res.rank = md.rank();
    const unsigned r = md.rank();
    const CycMatrix& S = md.s();

    if (auto z = vacuum_zero(md)) {
        res.verdict =
            CheckVerdict::failed("fusion_integrality", Json{{"kind", "zero_vacuum_entry"}, {"index", *z}});
        res.verdict.ms = sw.ms();
        return res;
    }
    const std::vector<CycNumber> inv0 = vacuum_inverses(md);

    res.tensor.assign(static_cast<std::size_t>(r) * r * r, Rational(0));
    std::optional<Json> fail_witness;
    // The sum over s is symmetric in (p, q, t), so only sorted triples are computed.
    for (unsigned p = 0; p < r; ++p)
        for (unsigned q = p; q < r; ++q)
            for (unsigned t = q; t < r; ++t) {
                CycNumber acc;
                for (unsigned s = 0; s < r; ++s)
                    acc = acc + S.at(p, s) * S.at(q, s) * S.at(t, s) * inv0[s];
                const auto rat = acc.as_rational();
                if (!rat) {
                    res.tensor.clear();
                    res.verdict = CheckVerdict::failed("fusion_integrality",
                                                       Json{{"kind", "value_not_rational"},
                                                            {"p", p},
                                                            {"q", q},
                                                            {"r", t},
                                                            {"value", cyc_json(acc)}});
                    res.verdict.ms = sw.ms();
                    return res;
                }
                if (!fail_witness && (rat->get_den() != 1 || rat->get_num() < 0))
                    fail_witness = Json{{"kind", rat->get_den() != 1 ? "not_integer" : "negative"},
                                        {"p", p},
                                        {"q", q},
                                        {"r", t},
                                        {"value", rational_json(*rat)}};
                const unsigned idx[3] = {p, q, t};
                unsigned perm[3] = {0, 1, 2};
                std::sort(perm, perm + 3);
                do {
                    res.tensor[(static_cast<std::size_t>(idx[perm[0]]) * r + idx[perm[1]]) * r +
                               idx[perm[2]]] = *rat;
                } while (std::next_permutation(perm, perm + 3));
            }

    res.verdict = fail_witness ? CheckVerdict::failed("fusion_integrality", std::move(*fail_witness))
                               : CheckVerdict::passed("fusion_integrality");
    res.verdict.ms = sw.ms();
    return res;
}

FsResult fs_indicators(const ModularData& md) {
    Stopwatch sw;
    FsResult res;
    const unsigned r = md.rank();
    const CycMatrix& S = md.s();

    if (auto z = vacuum_zero(md)) {
        res.verdict =
            CheckVerdict::failed("frobenius_schur", Json{{"kind", "zero_vacuum_entry"}, {"index", *z}});
        res.verdict.ms = sw.ms();
        return res;
    }
    const std::vector<CycNumber> inv0 = vacuum_inverses(md);

    const CycMatrix m2 = md.s_inv() * md.left_t(S, 2);
    std::vector<CycNumber> norm2;
    norm2.reserve(r);
    for (unsigned q = 0; q < r; ++q) norm2.push_back(m2.at(0, q) * m2.at(0, q).conjugate());

    for (unsigned p = 0; p < r; ++p) {
        CycNumber acc;
        for (unsigned q = 0; q < r; ++q) acc = acc + S.at(p, q) * norm2[q] * inv0[q];
        const auto rat = acc.as_rational();
        if (!rat) {
            res.verdict = CheckVerdict::failed(
                "frobenius_schur",
                Json{{"kind", "value_not_rational"}, {"index", p}, {"value", cyc_json(acc)}});
            res.verdict.ms = sw.ms();
            return res;
        }
        if (rat->get_den() != 1 || *rat < -1 || *rat > 1) {
            res.verdict = CheckVerdict::failed(
                "frobenius_schur",
                Json{{"kind", "value_out_of_range"}, {"index", p}, {"value", rational_json(*rat)}});
            res.verdict.ms = sw.ms();
            return res;
        }
        res.values.push_back(*rat);
    }
    res.verdict = CheckVerdict::passed("frobenius_schur");
    res.verdict.ms = sw.ms();
    return res;
}

GaloisSuiteResult galois_suite(const ModularData& md, const CheckConfig& cfg) {
    GaloisSuiteResult res;
    Stopwatch sw;
    const unsigned N = md.conductor();
    const CycMatrix& S = md.s();
    res.units = unit_group(N);
    const std::size_t nu = res.units.size();

    for (const unsigned l : res.units) {
        const Integer m = invmod(l, N);
        CycMatrix g = md.right_t(md.s_inv(), l);
        g = md.right_t(g * S, m);
        g = md.right_t(g * S, l);
        res.shape.push_back(g.classify());
        res.g.push_back(std::move(g));
    }

    {
        std::optional<Json> bad;
        for (std::size_t i = 0; i < nu && !bad; ++i)
            if (!res.shape[i].is_signed_permutation)
                bad = Json{{"kind", "not_signed_permutation"}, {"l", res.units[i]}};
        res.signed_permutation = bad
                                     ? CheckVerdict::failed("galois.signed_permutation", std::move(*bad))
                                     : CheckVerdict::passed("galois.signed_permutation");
        res.signed_permutation.ms = sw.ms();
        sw = Stopwatch();
    }

    {
        std::optional<Json> bad;
        for (std::size_t i = 0; i < nu && !bad; ++i) {
            const CycMatrix lhs = S.galois(GaloisIndex(res.units[i], N));
            const CycMatrix rhs = S * res.g[i];
            if (auto d = first_difference(lhs, rhs)) {
                bad = mismatch_witness("entry_mismatch", lhs, rhs, *d);
                (*bad)["l"] = res.units[i];
            }
        }
        res.s_transform = bad ? CheckVerdict::failed("galois.s_transform", std::move(*bad))
                              : CheckVerdict::passed("galois.s_transform");
        res.s_transform.ms = sw.ms();
        sw = Stopwatch();
    }

    {
        auto unit_pos = [&](unsigned long long product) {
            const unsigned lm = N == 1 ? 1 : static_cast<unsigned>(product % N);
            return static_cast<std::size_t>(
                std::lower_bound(res.units.begin(), res.units.end(), lm) - res.units.begin());
        };
        auto pair_ok = [&](std::size_t i, std::size_t j) {
            const std::size_t k =
                unit_pos(static_cast<unsigned long long>(res.units[i]) * res.units[j]);
            return res.g[i] * res.g[j] == res.g[k];
        };
        std::optional<Json> bad;
        Json pass_witness;
        if (nu <= 64) {
            for (std::size_t i = 0; i < nu && !bad; ++i)
                for (std::size_t j = 0; j < nu; ++j)
                    if (!pair_ok(i, j)) {
                        bad = Json{{"kind", "pair_mismatch"}, {"l", res.units[i]}, {"m", res.units[j]}};
                        break;
                    }
            pass_witness = Json{{"pairs", nu * nu}};
        } else {
            std::mt19937_64 rng(cfg.seed);
            for (unsigned n = 0; n < cfg.samples && !bad; ++n) {
                const std::size_t i = rng() % nu, j = rng() % nu;
                if (!pair_ok(i, j))
                    bad = Json{{"kind", "pair_mismatch"}, {"l", res.units[i]}, {"m", res.units[j]}};
            }
            pass_witness = Json{{"samples", cfg.samples}, {"seed", cfg.seed}};
        }
        res.multiplicativity = bad
                                   ? CheckVerdict::failed("galois.multiplicativity", std::move(*bad))
                                   : CheckVerdict::passed("galois.multiplicativity");
        if (!bad) res.multiplicativity.witness = std::move(pass_witness);
        res.multiplicativity.ms = sw.ms();
        sw = Stopwatch();
    }

    if (res.signed_permutation.status != Status::pass) {
        res.t_commutation = CheckVerdict::skipped("galois.t_commutation",
                                                  "needs signed-permutation Galois matrices");
    } else {
        std::optional<Json> bad;
        for (std::size_t i = 0; i < nu && !bad; ++i) {
            const unsigned l = res.units[i];
            const CycMatrix lhs = res.g[i].transposed() * md.left_t(res.g[i], 1);
            const CycMatrix rhs = md.t_matrix(Integer(l) * l);
            if (auto d = first_difference(lhs, rhs)) {
                bad = mismatch_witness("entry_mismatch", lhs, rhs, *d);
                (*bad)["l"] = l;
            }
        }
        res.t_commutation = bad ? CheckVerdict::failed("galois.t_commutation", std::move(*bad))
                                : CheckVerdict::passed("galois.t_commutation");
    }
    res.t_commutation.ms = sw.ms();
    return res;
}

CheckVerdict congruence_test(const ModularData& md, const CheckConfig& cfg) {
    Stopwatch sw;
    auto stamp = [&](CheckVerdict v) {
        v.ms = sw.ms();
        return v;
    };
    if (!md.relations_ok())
        return stamp(CheckVerdict::skipped("congruence", "defining relations fail"));

    const unsigned N = md.conductor();
    const CycMatrix tn = md.t_matrix(N);
    if (auto d = first_difference(tn, CycMatrix::identity(md.rank())))
        return stamp(CheckVerdict::failed(
            "congruence", Json{{"kind", "t_power_not_identity"}, {"level", N},
                               {"row", d->first}, {"value", cyc_json(tn.at(d->first, d->second))}}));

    const SubgroupSpec gamma = SubgroupSpec::principal_congruence(N);
    std::mt19937_64 rng(cfg.seed);
    for (unsigned n = 0; n < cfg.samples; ++n) {
        const SL2Elem a = random_unimodular(rng, 128);
        const SL2Elem g = sample_member(gamma, rng());
        if (evaluate_elem(a, md) != evaluate_elem(a * g, md))
            return stamp(CheckVerdict::failed("congruence", Json{{"kind", "sampled_mismatch"},
                                                                 {"sample", n},
                                                                 {"seed", cfg.seed},
                                                                 {"level", N},
                                                                 {"a", sl2_json(a)},
                                                                 {"g", sl2_json(g)}}));
    }
    auto v = CheckVerdict::passed("congruence");
    v.witness = Json{{"samples", cfg.samples}, {"seed", cfg.seed}};
    return stamp(v);
}

Json ProjectiveKernelProfile::to_json() const {
    return Json{{"K", K},
                {"e", e},
                {"h", Json(h)},
                {"galois_current_candidate", galois_current_candidate}};
}

ProjectiveKernelResult projective_kernel_profile(const ModularData& md,
                                                 const GaloisSuiteResult& suite,
                                                 const CheckConfig& cfg) {
    ProjectiveKernelResult res;
    ProjectiveKernelProfile& pr = res.profile;
    Stopwatch sw;

    const unsigned M = md.root_order();
    const auto& te = md.t_exponents();
    unsigned K = 1;
    for (const unsigned ep : te) {
        const unsigned d = (ep + M - te[0]) % M;
        if (d != 0) K = lcm_u(K, M / std::gcd(M, d));
    }
    const unsigned N = md.conductor();
    if (N % K != 0) throw std::logic_error("projective order does not divide the conductor");
    pr.K = K;
    pr.e = N / K;

    std::set<unsigned> hset;
    for (std::size_t i = 0; i < suite.units.size(); ++i)
        if (suite.shape[i].scalar) hset.insert(canonical_residue(Integer(suite.units[i]), K));
    pr.h.assign(hset.begin(), hset.end());

    pr.parity_constraints_ok = 12 % pr.e == 0 && (pr.e % 4 != 0 || K % 2 == 1);
    pr.galois_current_candidate = pr.e % 2 == 1 && K % 16 == 0;

    {
        auto v = pr.parity_constraints_ok
                     ? CheckVerdict::passed("projective.parity")
                     : CheckVerdict::failed("projective.parity",
                                            Json{{"kind", "value_out_of_range"}, {"K", K}, {"e", pr.e}});
        v.ms = sw.ms();
        sw = Stopwatch();
        res.verdicts.push_back(std::move(v));
    }

    bool h_ok = !pr.h.empty();
    {
        std::optional<Json> bad;
        if (pr.h.empty()) bad = Json{{"kind", "h_empty"}};
        for (std::size_t i = 0; i < pr.h.size() && !bad; ++i) {
            if (canonical_residue(Integer(pr.h[i]) * pr.h[i], K) != canonical_residue(1, K)) {
                bad = Json{{"kind", "h_element_not_involutive"}, {"value", pr.h[i]}};
                break;
            }
            for (std::size_t j = 0; j < pr.h.size(); ++j) {
                const unsigned p = canonical_residue(Integer(pr.h[i]) * pr.h[j], K);
                if (!std::binary_search(pr.h.begin(), pr.h.end(), p)) {
                    bad = Json{{"kind", "h_not_closed"}, {"x", pr.h[i]}, {"y", pr.h[j]}, {"product", p}};
                    break;
                }
            }
        }
        h_ok = !bad;
        auto v = bad ? CheckVerdict::failed("projective.h_structure", std::move(*bad))
                     : CheckVerdict::passed("projective.h_structure");
        v.ms = sw.ms();
        sw = Stopwatch();
        res.verdicts.push_back(std::move(v));
    }

    {
        CheckVerdict v = CheckVerdict::skipped("projective.gamma_kh", "");
        if (!h_ok) {
            v = CheckVerdict::skipped("projective.gamma_kh", "needs a valid residue set");
        } else if (!md.relations_ok()) {
            v = CheckVerdict::skipped("projective.gamma_kh", "defining relations fail");
        } else {
            const SubgroupSpec spec = SubgroupSpec::gamma_kh(K, pr.h);
            std::mt19937_64 rng(cfg.seed);
            std::optional<Json> bad;
            for (unsigned n = 0; n < cfg.samples && !bad; ++n) {
                const SL2Elem m = sample_member(spec, rng());
                if (!evaluate_elem(m, md).classify().scalar)
                    bad = Json{{"kind", "nonscalar_image"},
                               {"sample", n},
                               {"seed", cfg.seed},
                               {"member", sl2_json(m)}};
            }
            if (bad) {
                v = CheckVerdict::failed("projective.gamma_kh", std::move(*bad));
            } else {
                v = CheckVerdict::passed("projective.gamma_kh");
                v.witness = Json{{"samples", cfg.samples}, {"seed", cfg.seed}};
                pr.gamma_kh_sampled_ok = true;
            }
        }
        v.ms = sw.ms();
        res.verdicts.push_back(std::move(v));
    }

    return res;
}

GenusResult genus_dimension(const ModularData& md, unsigned g) {
    Stopwatch sw;
    GenusResult res;
    auto stamp = [&](CheckVerdict v) {
        v.ms = sw.ms();
        res.verdict = std::move(v);
        return res;
    };

    if (auto z = vacuum_zero(md))
        return stamp(CheckVerdict::failed(
            "genus_dimensions", Json{{"kind", "zero_vacuum_entry"}, {"g", g}, {"index", *z}}));

    const int k = 2 - 2 * static_cast<int>(g);
    CycNumber acc;
    for (unsigned p = 0; p < md.rank(); ++p) {
        const CycNumber& v = md.s().at(0, p);
        acc = acc + (k >= 0 ? pow(v, static_cast<unsigned>(k))
                            : pow(v.inverse(), static_cast<unsigned>(-k)));
    }
    const auto rat = acc.as_rational();
    if (!rat)
        return stamp(CheckVerdict::failed(
            "genus_dimensions",
            Json{{"kind", "value_not_rational"}, {"g", g}, {"value", cyc_json(acc)}}));
    res.value = *rat;
    if (rat->get_den() != 1)
        return stamp(CheckVerdict::failed(
            "genus_dimensions", Json{{"kind", "not_integer"}, {"g", g}, {"value", rational_json(*rat)}}));
    if (*rat <= 0)
        return stamp(CheckVerdict::failed(
            "genus_dimensions",
            Json{{"kind", "value_out_of_range"}, {"g", g}, {"value", rational_json(*rat)}}));
    return stamp(CheckVerdict::passed("genus_dimensions"));
}

CycNumber seifert_invariant(const ModularData& md, unsigned g, const std::vector<GenWord>& words) {
    if (g < 1) throw std::invalid_argument("seifert_invariant: genus must be at least 1");
    if (words.empty()) throw std::invalid_argument("seifert_invariant: need at least one word");
    if (vacuum_zero(md)) throw std::domain_error("seifert_invariant: zero vacuum entry");

    std::vector<CycMatrix> imgs;
    imgs.reserve(words.size());
    for (const GenWord& w : words) imgs.push_back(evaluate_word(w, md));

    const unsigned drop = 2 * g - 2 + static_cast<unsigned>(words.size());  // -(2-2g-n) >= 1
    CycNumber acc;
    for (unsigned p = 0; p < md.rank(); ++p) {
        CycNumber term = pow(md.s().at(0, p).inverse(), drop);
        for (const CycMatrix& img : imgs) term = term * img.at(0, p);
        acc = acc + term;
    }
    return acc;
}

CheckVerdict trace_identity_s(const ModularData& md) {
    Stopwatch sw;
    auto stamp = [&](CheckVerdict v) {
        v.ms = sw.ms();
        return v;
    };
    if (auto z = vacuum_zero(md))
        return stamp(CheckVerdict::failed("trace_identity_s",
                                          Json{{"kind", "zero_vacuum_entry"}, {"index", *z}}));
    const std::vector<CycNumber> inv0 = vacuum_inverses(md);

    const CycMatrix m4 = md.s_inv() * md.left_t(md.s(), 4);
    const CycMatrix mneg2 = md.s_inv() * md.left_t(md.s(), -2);
    CycNumber lhs;
    for (unsigned p = 0; p < md.rank(); ++p)
        lhs = lhs + m4.at(0, p) * m4.at(0, p) * mneg2.at(0, p) * inv0[p];
    const CycNumber rhs = md.s().trace();
    if (lhs != rhs)
        return stamp(CheckVerdict::failed(
            "trace_identity_s",
            Json{{"kind", "value_mismatch"}, {"lhs", cyc_json(lhs)}, {"rhs", cyc_json(rhs)}}));
    return stamp(CheckVerdict::passed("trace_identity_s"));
}

namespace {

const std::vector<std::string>& all_check_names() {
    static const std::vector<std::string> names = {
        "axioms.s4",
        "axioms.modular_relation",
        "axioms.symmetric",
        "axioms.charge_conjugation",
        "axioms.vacuum_positive",
        "field_containment",
        "fusion_integrality",
        "frobenius_schur",
        "galois.signed_permutation",
        "galois.s_transform",
        "galois.multiplicativity",
        "galois.t_commutation",
        "congruence",
        "projective.parity",
        "projective.h_structure",
        "projective.gamma_kh",
        "genus_dimensions",
        "trace_identity_s",
    };
    return names;
}

bool in_group(const std::string& name, const char* group) {
    return name.rfind(std::string(group) + ".", 0) == 0;
}

// Everything that presumes the defining relations or a usable vacuum row.
bool is_gated(const std::string& name) {
    return name == "fusion_integrality" || name == "frobenius_schur" || name == "congruence" ||
           name == "trace_identity_s" || in_group(name, "galois") || in_group(name, "projective");
}

// Expands group tokens, validates names, and pulls in dependencies: the
// projective checks read the Galois suite, and every gated check needs the
// axiom verdicts to gate on.
std::set<std::string> expand_filter(const std::optional<std::set<std::string>>& filter) {
    const auto& all = all_check_names();
    std::set<std::string> sel;
    if (!filter) {
        sel.insert(all.begin(), all.end());
        return sel;
    }
    for (const std::string& tok : *filter) {
        bool hit = false;
        for (const std::string& name : all)
            if (name == tok || in_group(name, tok.c_str())) {
                sel.insert(name);
                hit = true;
            }
        if (!hit) throw std::invalid_argument("unknown check name '" + tok + "'");
    }
    const bool wants_projective =
        std::any_of(sel.begin(), sel.end(), [](const auto& n) { return in_group(n, "projective"); });
    if (wants_projective)
        for (const std::string& name : all)
            if (in_group(name, "galois")) sel.insert(name);
    const bool wants_gated = std::any_of(sel.begin(), sel.end(), is_gated);
    if (wants_gated)
        for (const std::string& name : all)
            if (in_group(name, "axioms")) sel.insert(name);
    return sel;
}

}  // namespace

std::vector<std::string> known_check_names() { return all_check_names(); }

CheckReport run_all(const ModularData& md, const CheckConfig& cfg) {
    cfg.validate();
    const std::set<std::string> sel = expand_filter(cfg.checks);
    const auto want = [&](const char* name) { return sel.count(name) != 0; };

    CheckReport rep;
    rep.name = md.name();
    rep.conductor = md.conductor();

    bool structural_ok = true;
    if (std::any_of(sel.begin(), sel.end(), [](const auto& n) { return in_group(n, "axioms"); })) {
        for (CheckVerdict& v : check_axioms(md, cfg)) {
            if (v.name != "axioms.vacuum_positive" && v.status != Status::pass)
                structural_ok = false;
            if (sel.count(v.name)) rep.checks.push_back(std::move(v));
        }
    }

    // Runs the check when the structural axioms hold, otherwise records a skip.
    const auto gated = [&](const char* name, auto&& run) {
        if (!want(name)) return;
        if (structural_ok)
            rep.checks.push_back(run());
        else
            rep.checks.push_back(CheckVerdict::skipped(name, "structural axioms failed"));
    };

    if (want("field_containment")) {
        Stopwatch sw;
        CheckVerdict v = field_containment(md);
        v.ms = sw.ms();
        rep.checks.push_back(std::move(v));
    }

    gated("fusion_integrality", [&] { return fusion_tensor(md).verdict; });
    gated("frobenius_schur", [&] { return fs_indicators(md).verdict; });

    std::optional<GaloisSuiteResult> suite;
    const auto with_suite = [&](auto&& pick) {
        if (!suite) suite = galois_suite(md, cfg);
        return pick(*suite);
    };
    gated("galois.signed_permutation",
          [&] { return with_suite([](const auto& s) { return s.signed_permutation; }); });
    gated("galois.s_transform",
          [&] { return with_suite([](const auto& s) { return s.s_transform; }); });
    gated("galois.multiplicativity",
          [&] { return with_suite([](const auto& s) { return s.multiplicativity; }); });
    gated("galois.t_commutation",
          [&] { return with_suite([](const auto& s) { return s.t_commutation; }); });

    gated("congruence", [&] { return congruence_test(md, cfg); });

    if (std::any_of(sel.begin(), sel.end(),
                    [](const auto& n) { return in_group(n, "projective"); })) {
        if (structural_ok) {
            if (!suite) suite = galois_suite(md, cfg);
            ProjectiveKernelResult pk = projective_kernel_profile(md, *suite, cfg);
            rep.profile = std::move(pk.profile);
            for (CheckVerdict& v : pk.verdicts)
                if (sel.count(v.name)) rep.checks.push_back(std::move(v));
        } else {
            for (const char* name : {"projective.parity", "projective.h_structure", "projective.gamma_kh"})
                if (want(name))
                    rep.checks.push_back(CheckVerdict::skipped(name, "structural axioms failed"));
        }
    }

    if (want("genus_dimensions")) {
        Stopwatch sw;
        CheckVerdict v = CheckVerdict::passed("genus_dimensions");
        for (unsigned g = 0; g <= cfg.genus_max; ++g) {
            GenusResult gr = genus_dimension(md, g);
            if (gr.verdict.status != Status::pass) {
                v = std::move(gr.verdict);
                break;
            }
        }
        v.ms = sw.ms();
        rep.checks.push_back(std::move(v));
    }

    gated("trace_identity_s", [&] { return trace_identity_s(md); });

    rep.overall = Status::pass;
    for (const CheckVerdict& v : rep.checks) {
        if (v.status == Status::fail) {
            rep.overall = Status::fail;
            break;
        }
        if (v.status == Status::undecided) rep.overall = Status::undecided;
    }
    return rep;
}

Json CheckReport::to_json(bool with_timing) const {
    Json j;
    j["name"] = name;
    j["overall"] = status_name(overall);
    j["conductor"] = conductor;
    if (profile) j["profile"] = profile->to_json();
    Json arr = Json::array();
    for (const CheckVerdict& v : checks) {
        Json c;
        c["name"] = v.name;
        c["status"] = status_name(v.status);
        if (!v.witness.is_null()) c["witness"] = v.witness;
        if (with_timing) c["ms"] = v.ms;
        arr.push_back(std::move(c));
    }
    j["checks"] = std::move(arr);
    return j;
}

}  // namespace mtcheck
