// Acceptance battery: one line per criterion, exit 0 only if all pass.
// Criterion 1 drives the CLI binary named by MTCHECK_BIN; everything else
// links the library directly. Numeric oracles come from oracle.hpp.

#include "mtcheck/checks.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <utility>
#include <vector>

using namespace mtcheck;

namespace {

struct Criterion {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (notes.size() < 8) notes.push_back(what);
    }
};

const std::vector<std::string>& entry_names() {
    static const std::vector<std::string> n = {"trivial", "semion", "fibonacci", "ising"};
    return n;
}

CheckConfig default_cfg() { return CheckConfig{}; }  // 100 samples, seed 0, tol 1e-9

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    CliResult res;
    const char* bin = std::getenv("MTCHECK_BIN");
    if (!bin) return res;
    const std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, n);
    const int rc = pclose(pipe);
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

const Rational& fusion_at(const FusionResult& f, unsigned p, unsigned q, unsigned r) {
    return f.tensor[(static_cast<std::size_t>(p) * f.rank + q) * f.rank + r];
}

// 1. verify on each built-in: exit 0, overall pass, no fail/undecided verdicts.
void criterion_catalog_soundness(Criterion& c) {
    c.expect(std::getenv("MTCHECK_BIN") != nullptr, "MTCHECK_BIN is not set");
    for (const std::string& name : entry_names()) {
        const CliResult res = run_cli("verify @" + name + " --no-timing --tolerance 1e-9");
        c.expect(res.exit_code == 0, name + ": exit code " + std::to_string(res.exit_code));
        if (res.exit_code != 0) continue;
        const Json rep = Json::parse(res.output, nullptr, false);
        c.expect(!rep.is_discarded(), name + ": output is not JSON");
        if (rep.is_discarded()) continue;
        c.expect(rep["overall"] == "pass", name + ": overall is not pass");
        for (const auto& v : rep["checks"])
            c.expect(v["status"] == "pass",
                     name + ": " + v["name"].get<std::string>() + " is " +
                         v["status"].get<std::string>());
    }
}

// 2. Exact fusion coefficients are non-negative integers, match a float
//    Verlinde sum to 1e-9 before rounding, and hit the known small values.
void criterion_fusion(Criterion& c) {
    for (const std::string& name : entry_names()) {
        const ModularData md = catalog(name);
        const FusionResult f = fusion_tensor(md);
        c.expect(f.verdict.status == Status::pass, name + ": fusion verdict not pass");
        if (f.verdict.status != Status::pass) continue;
        const auto s = oracle::s_matrix(name);
        const unsigned n = md.rank();
        for (unsigned p = 0; p < n; ++p)
            for (unsigned q = 0; q < n; ++q)
                for (unsigned r = 0; r < n; ++r) {
                    const Rational& v = fusion_at(f, p, q, r);
                    c.expect(v.get_den() == 1 && v >= 0, name + ": non-integral coefficient");
                    double want = 0.0;
                    for (unsigned t = 0; t < n; ++t) want += s[p][t] * s[q][t] * s[r][t] / s[0][t];
                    c.expect(std::abs(v.get_d() - want) < 1e-9, name + ": float oracle mismatch");
                }
    }
    const FusionResult semion = fusion_tensor(catalog("semion"));
    c.expect(fusion_at(semion, 1, 1, 0) == 1, "semion: N[1,1,0] != 1");
    c.expect(fusion_at(semion, 1, 1, 1) == 0, "semion: N[1,1,1] != 0");
    const FusionResult fib = fusion_tensor(catalog("fibonacci"));
    c.expect(fusion_at(fib, 1, 1, 1) == 1, "fibonacci: N[1,1,1] != 1");
}

// 3. Indicator vector lies in {-1,0,1}^rank exactly; ising gives (1,1,1).
void criterion_indicators(Criterion& c) {
    for (const std::string& name : entry_names()) {
        const FsResult res = fs_indicators(catalog(name));
        c.expect(res.verdict.status == Status::pass, name + ": indicator verdict not pass");
        for (const Rational& v : res.values)
            c.expect(v == -1 || v == 0 || v == 1, name + ": indicator outside {-1,0,1}");
    }
    const FsResult ising = fs_indicators(catalog("ising"));
    c.expect(ising.values == std::vector<Rational>(3, Rational(1)), "ising: indicators != (1,1,1)");
}

// 4. Galois suite: signed permutations, S-transform, multiplicativity on all
//    pairs, and T-conjugation, exactly, for every unit of every entry.
void criterion_galois(Criterion& c) {
    for (const std::string& name : entry_names()) {
        const ModularData md = catalog(name);
        const GaloisSuiteResult suite = galois_suite(md, default_cfg());
        c.expect(suite.units.size() <= 16, name + ": unexpectedly large unit group");
        c.expect(suite.signed_permutation.status == Status::pass, name + ": signed permutation");
        c.expect(suite.s_transform.status == Status::pass, name + ": S transform");
        c.expect(suite.multiplicativity.status == Status::pass, name + ": multiplicativity");
        c.expect(suite.multiplicativity.witness.contains("pairs"),
                 name + ": multiplicativity was sampled, not exhaustive");
        c.expect(suite.t_commutation.status == Status::pass, name + ": T conjugation");
    }
}

// 5. Congruence at level N: seed 0, 100 samples per entry, plus T^N = Id.
void criterion_congruence(Criterion& c) {
    for (const std::string& name : entry_names()) {
        const ModularData md = catalog(name);
        c.expect(md.t_matrix(md.conductor()) == CycMatrix::identity(md.rank()),
                 name + ": T^N is not the identity");
        const CheckVerdict v = congruence_test(md, default_cfg());
        c.expect(v.status == Status::pass, name + ": congruence sampling failed");
        c.expect(v.witness["samples"] == 100 && v.witness["seed"] == 0,
                 name + ": unexpected sampling parameters");
    }
}

// 6. Projective kernel: (K, e) per entry, e | 12, h of exponent two, and 100
//    sampled members of the level-(K,h) subgroup mapping to scalars.
void criterion_projective(Criterion& c) {
    const std::vector<std::pair<std::string, std::pair<unsigned, unsigned>>> want = {
        {"trivial", {1, 1}}, {"semion", {4, 6}}, {"fibonacci", {5, 12}}, {"ising", {16, 3}}};
    for (const auto& [name, ke] : want) {
        const ModularData md = catalog(name);
        const CheckConfig cfg = default_cfg();
        const GaloisSuiteResult suite = galois_suite(md, cfg);
        const ProjectiveKernelResult res = projective_kernel_profile(md, suite, cfg);
        c.expect(res.profile.K == ke.first && res.profile.e == ke.second,
                 name + ": (K,e) = (" + std::to_string(res.profile.K) + "," +
                     std::to_string(res.profile.e) + ")");
        c.expect(12 % res.profile.e == 0, name + ": e does not divide 12");
        for (const unsigned l : res.profile.h)
            c.expect(canonical_residue(Integer(l) * l, res.profile.K) ==
                         canonical_residue(1, res.profile.K),
                     name + ": h element " + std::to_string(l) + " is not an involution");
        c.expect(res.profile.gamma_kh_sampled_ok, name + ": sampled subgroup members not scalar");
        for (const auto& v : res.verdicts)
            c.expect(v.status == Status::pass, name + ": " + v.name + " not pass");
    }
}

// 7. Dimension sums: V_0 = 1, V_1 = rank, the known genus-2 values, and
//    positive integers through genus 5.
void criterion_dimensions(Criterion& c) {
    for (const std::string& name : entry_names()) {
        const ModularData md = catalog(name);
        c.expect(genus_dimension(md, 0).value == 1, name + ": dim V_0 != 1");
        c.expect(genus_dimension(md, 1).value == static_cast<long>(md.rank()),
                 name + ": dim V_1 != rank");
        for (unsigned g = 0; g <= 5; ++g) {
            const GenusResult res = genus_dimension(md, g);
            c.expect(res.verdict.status == Status::pass,
                     name + ": genus " + std::to_string(g) + " not a positive integer");
        }
    }
    c.expect(genus_dimension(catalog("fibonacci"), 2).value == 5, "fibonacci: dim V_2 != 5");
    c.expect(genus_dimension(catalog("ising"), 2).value == 10, "ising: dim V_2 != 10");
}

// 8. Trace identity, exactly; Tr S = 0 for semion and 1 for ising.
void criterion_trace(Criterion& c) {
    for (const std::string& name : entry_names())
        c.expect(trace_identity_s(catalog(name)).status == Status::pass,
                 name + ": trace identity failed");
    c.expect(catalog("semion").s().trace() == CycNumber(0L), "semion: Tr S != 0");
    c.expect(catalog("ising").s().trace() == CycNumber(1L), "ising: Tr S != 1");
}

// 9. Surgery sums: the single-S-word value equals the dimension sum for
//    g in {1,2,3}; the identity word gives the vacuum power.
void criterion_seifert(Criterion& c) {
    const std::vector<GenWord> s_word = {parse_word("S")};
    for (const std::string& name : entry_names()) {
        const ModularData md = catalog(name);
        for (unsigned g = 1; g <= 3; ++g) {
            c.expect(seifert_invariant(md, g, s_word) == CycNumber(genus_dimension(md, g).value),
                     name + ": S-word sum != dim V_" + std::to_string(g));
            c.expect(seifert_invariant(md, g, {GenWord{}}) ==
                         pow(md.s().at(0, 0).inverse(), 2 * g - 1),
                     name + ": identity-word sum mismatch at g=" + std::to_string(g));
        }
    }
}

// 10. Ten mutations of the ising entry, each caught with a usable witness.
void criterion_negative_controls(Criterion& c) {
    const ModularData base = catalog("ising");
    const auto rows_of = [&](const ModularData& md) {
        std::vector<std::vector<CycNumber>> rows(md.rank());
        for (unsigned i = 0; i < md.rank(); ++i)
            for (unsigned j = 0; j < md.rank(); ++j) rows[i].push_back(md.s().at(i, j));
        return rows;
    };
    const auto rebuild = [&](const std::string& tag, std::vector<std::vector<CycNumber>> rows,
                             std::vector<unsigned> te) {
        return ModularData(tag, base.rank(), base.root_order(), std::move(te), CycMatrix(rows));
    };
    const std::vector<unsigned> te = base.t_exponents();

    std::vector<std::pair<std::string, ModularData>> mutations;
    {
        auto r = rows_of(base);
        r[0][0] = -r[0][0];
        mutations.emplace_back("negate S[0][0]", rebuild("m1", std::move(r), te));
    }
    {
        auto r = rows_of(base);
        r[0][1] = -r[0][1];
        r[1][0] = -r[1][0];
        mutations.emplace_back("negate S[0][1] symmetrically", rebuild("m2", std::move(r), te));
    }
    {
        auto r = rows_of(base);
        for (auto& row : r)
            for (auto& x : row) x = x * CycNumber(2L);
        mutations.emplace_back("scale S by 2", rebuild("m3", std::move(r), te));
    }
    {
        auto r = rows_of(base);
        r[0][1] = -r[0][1];
        mutations.emplace_back("break symmetry at S[0][1]", rebuild("m4", std::move(r), te));
    }
    mutations.emplace_back("swap T exponents 1 and 2",
                           rebuild("m5", rows_of(base), {te[0], te[2], te[1]}));
    {
        auto r = rows_of(base);
        r[0][0] = CycNumber(0L);
        mutations.emplace_back("zero the vacuum entry S[0][0]", rebuild("m6", std::move(r), te));
    }
    mutations.emplace_back("shift T exponent 0 by one",
                           rebuild("m7", rows_of(base), {te[0] - 1, te[1], te[2]}));
    {
        auto r = rows_of(base);
        std::swap(r[0], r[1]);
        mutations.emplace_back("swap rows 0 and 1 of S", rebuild("m8", std::move(r), te));
    }
    {
        auto r = rows_of(base);
        for (auto& row : r)
            for (auto& x : row) x = x * CycNumber::root_of_unity(base.root_order(), 1);
        mutations.emplace_back("multiply S by a root of unity", rebuild("m9", std::move(r), te));
    }
    {
        const CycMatrix sq = base.s() * base.s();
        std::vector<std::vector<CycNumber>> r(base.rank());
        for (unsigned i = 0; i < base.rank(); ++i)
            for (unsigned j = 0; j < base.rank(); ++j) r[i].push_back(sq.at(i, j));
        mutations.emplace_back("replace S by S^2", rebuild("m10", std::move(r), te));
    }

    c.expect(mutations.size() == 10, "expected ten mutations");
    for (const auto& [tag, md] : mutations) {
        const CheckReport rep = run_all(md, default_cfg());
        c.expect(rep.overall == Status::fail, tag + ": overall is not fail");
        bool witnessed = false;
        for (const CheckVerdict& v : rep.checks) {
            if (v.status != Status::fail) continue;
            if (!v.witness.is_object() || !v.witness.contains("kind")) continue;
            witnessed = true;
            // Witnesses carrying both sides replay the violation directly.
            if (v.witness.contains("lhs") && v.witness.contains("rhs"))
                c.expect(v.witness["lhs"] != v.witness["rhs"],
                         tag + ": " + v.name + " witness does not separate lhs and rhs");
        }
        c.expect(witnessed, tag + ": no failing verdict carries a typed witness");
    }
}

// 11. Core properties: word decomposition round-trip, representation
//     homomorphism on random pairs, field axioms on random triples.
void criterion_core_properties(Criterion& c) {
    {
        std::mt19937_64 rng(2024);
        for (int i = 0; i < 1000; ++i) {
            const SL2Elem m = random_unimodular(rng, 1000000);
            if (!(decompose(m).to_sl2() == m)) {
                c.expect(false, "decomposition round-trip failed at iteration " + std::to_string(i));
                break;
            }
        }
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(7);
        for (const std::string& name : entry_names()) {
            const ModularData md = catalog(name);
            for (int i = 0; i < 200; ++i) {
                const SL2Elem a = random_unimodular(rng, 128);
                const SL2Elem b = random_unimodular(rng, 128);
                if (!(evaluate_elem(a * b, md) == evaluate_elem(a, md) * evaluate_elem(b, md))) {
                    c.expect(false, name + ": homomorphism failed at pair " + std::to_string(i));
                    break;
                }
            }
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.expect(secs < 60.0, "homomorphism sweep took " + std::to_string(secs) + " s");
    }
    {
        const std::vector<unsigned> orders = {1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 18, 20, 24, 30, 36, 40, 48, 60};
        std::mt19937_64 rng(99);
        const auto random_cyc = [&]() {
            const unsigned M = orders[rng() % orders.size()];
            std::vector<std::pair<Integer, Rational>> terms;
            const unsigned k = 1 + rng() % 3;
            for (unsigned t = 0; t < k; ++t) {
                const long num = static_cast<long>(rng() % 19) - 9;
                const long den = 1 + static_cast<long>(rng() % 7);
                terms.emplace_back(Integer(rng() % M), make_rational(num, den));
            }
            return CycNumber::from_terms(M, terms);
        };
        for (int i = 0; i < 1000; ++i) {
            const CycNumber a = random_cyc(), b = random_cyc(), x = random_cyc();
            bool ok = (a + b) + x == a + (b + x);
            ok = ok && (a * b) * x == a * (b * x);
            ok = ok && a * b == b * a;
            ok = ok && a * (b + x) == a * b + a * x;
            ok = ok && (a - a).is_zero();
            ok = ok && (a * b).conjugate() == a.conjugate() * b.conjugate();
            if (!a.is_zero()) ok = ok && a * a.inverse() == CycNumber(1L);
            if (!ok) {
                c.expect(false, "field axiom failed at triple " + std::to_string(i));
                break;
            }
        }
    }
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* title;
        std::function<void(Criterion&)> fn;
    };
    const std::vector<Entry> entries = {
        {1, "catalog soundness via CLI verify", criterion_catalog_soundness},
        {2, "fusion coefficients are non-negative integers", criterion_fusion},
        {3, "indicator vector lies in {-1,0,1}", criterion_indicators},
        {4, "Galois suite exact on every unit", criterion_galois},
        {5, "congruence at level N (seed 0, 100 samples)", criterion_congruence},
        {6, "projective kernel profile (K, e, h)", criterion_projective},
        {7, "dimension sums are positive integers", criterion_dimensions},
        {8, "trace identity", criterion_trace},
        {9, "surgery sums against dimension sums", criterion_seifert},
        {10, "ten ising mutations all caught with witnesses", criterion_negative_controls},
        {11, "core properties: round-trip, homomorphism, field axioms", criterion_core_properties},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        Criterion c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            e.fn(c);
        } catch (const std::exception& ex) {
            c.expect(false, std::string("exception: ") + ex.what());
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line << "[" << (e.id < 10 ? " " : "") << e.id << "] " << (c.ok ? "PASS" : "FAIL") << "  "
             << e.title << "  (" << static_cast<long>(ms) << " ms)";
        std::cout << line.str() << "\n";
        for (const std::string& note : c.notes) std::cout << "       - " << note << "\n";
        if (!c.ok) ++failures;
    }
    std::cout << (entries.size() - failures) << "/" << entries.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
