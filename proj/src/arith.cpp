#include "mtcheck/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtcheck {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

unsigned mod_u(const Integer& a, unsigned m) {
    return static_cast<unsigned>(mod_floor(a, Integer(m)).get_ui());
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

unsigned lcm_u(unsigned a, unsigned b) {
    return static_cast<unsigned>(lcm(Integer(a), Integer(b)).get_ui());
}

Integer invmod(const Integer& a, const Integer& m) {
    if (m == 1) return 0;
    Integer r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("residue not invertible");
    return r;
}

std::vector<std::pair<unsigned, unsigned>> factorize(unsigned m) {
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned p = 2; static_cast<unsigned long long>(p) * p <= m; ++p) {
        if (m % p) continue;
        unsigned e = 0;
        while (m % p == 0) m /= p, ++e;
        out.emplace_back(p, e);
    }
    if (m > 1) out.emplace_back(m, 1u);
    return out;
}

unsigned euler_phi(unsigned m) {
    unsigned phi = 1;
    for (auto [p, e] : factorize(m)) {
        unsigned pe = 1;
        for (unsigned i = 1; i < e; ++i) pe *= p;
        phi *= pe * (p - 1);
    }
    return phi;
}

std::vector<unsigned> divisors(unsigned m) {
    std::vector<unsigned> out{1};
    for (auto [p, e] : factorize(m)) {
        const std::size_t n = out.size();
        unsigned pe = 1;
        for (unsigned i = 0; i < e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < n; ++j) out.push_back(out[j] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<unsigned> unit_group(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned l = 1; l <= n; ++l)
        if (gcd(Integer(l), Integer(n)) == 1) out.push_back(l);
    return out;
}

unsigned lift_unit(unsigned l, unsigned N, unsigned M) {
    if (M % N != 0) throw std::invalid_argument("lift_unit: N must divide M");
    if (M == 1) return 1;
    if (N == M) {
        unsigned r = l % M;
        return r;
    }
    // CRT over the prime powers of M: keep l where the prime divides N, use 1 elsewhere.
    Integer x = 0, mod = 1;
    for (auto [p, e] : factorize(M)) {
        Integer pe = 1;
        for (unsigned i = 0; i < e; ++i) pe *= p;
        Integer target = (N % p == 0) ? mod_floor(Integer(l), pe) : Integer(1);
        // x' = x + mod * t with t = (target - x) / mod  (mod pe)
        Integer t = mod_floor((target - x) * invmod(mod_floor(mod, pe), pe), pe);
        x += mod * t;
        mod *= pe;
    }
    unsigned r = mod_u(x, M);
    return r == 0 ? 1 : r;  // 0 only when M == 1
}

}  // namespace mtcheck
