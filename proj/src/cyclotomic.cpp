#include "mtcheck/cyclotomic.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace mtcheck {

namespace {

// Polynomials are ascending coefficient vectors; the zero polynomial is empty.

void poly_trim(std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
    return out;
}

// num = quot * den + rem, deg rem < deg den. den must be nonzero.
void poly_divmod(std::vector<Rational> num, const std::vector<Rational>& den,
                 std::vector<Rational>& quot, std::vector<Rational>& rem) {
    quot.clear();
    if (num.size() < den.size()) {
        rem = std::move(num);
        return;
    }
    quot.assign(num.size() - den.size() + 1, Rational(0));
    const Rational& lead = den.back();
    for (size_t k = num.size(); k-- >= den.size();) {
        if (num[k] != 0) {
            Rational c = num[k] / lead;
            quot[k - den.size() + 1] = c;
            for (size_t j = 0; j < den.size(); ++j)
                if (den[j] != 0) num[k - den.size() + 1 + j] -= c * den[j];
        }
        if (k == 0) break;
    }
    poly_trim(num);
    rem = std::move(num);
}

// Fold exponents mod M (zeta^M = 1), then take the remainder mod the M-th
// cyclotomic polynomial. Returns exactly phi(M) coefficients.
std::vector<Rational> reduce(unsigned M, const std::vector<Rational>& p) {
    std::vector<Rational> folded(M, Rational(0));
    for (size_t k = 0; k < p.size(); ++k)
        if (p[k] != 0) folded[k % M] += p[k];
    const std::vector<Rational>& phi = cyclotomic_poly(M);
    const size_t d = phi.size() - 1;
    for (size_t k = folded.size(); k-- > d;) {
        if (folded[k] == 0) continue;
        Rational c = folded[k];  // phi is monic
        folded[k] = 0;
        for (size_t j = 0; j < d; ++j)
            if (phi[j] != 0) folded[k - d + j] -= c * phi[j];
    }
    folded.resize(d, Rational(0));
    return folded;
}

}  // namespace

const std::vector<Rational>& cyclotomic_poly(unsigned M) {
    if (M == 0) throw std::invalid_argument("cyclotomic_poly: order must be positive");
    static std::map<unsigned, std::vector<Rational>> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = cache.find(M);
        if (it != cache.end()) return it->second;
    }
    // x^M - 1 divided by the cyclotomic polynomials of all proper divisors.
    std::vector<Rational> poly(M + 1, Rational(0));
    poly[0] = -1;
    poly[M] = 1;
    for (unsigned d : divisors(M)) {
        if (d == M) continue;
        std::vector<Rational> quot, rem;
        poly_divmod(std::move(poly), cyclotomic_poly(d), quot, rem);
        poly = std::move(quot);
    }
    std::lock_guard<std::mutex> lk(mtx);
    return cache.emplace(M, std::move(poly)).first->second;
}

GaloisIndex::GaloisIndex(const Integer& l, unsigned modulus) : modulus_(modulus) {
    if (modulus == 0) throw std::invalid_argument("GaloisIndex: modulus must be positive");
    residue_ = modulus == 1 ? 1 : mod_u(l, modulus);
    if (gcd(Integer(residue_), Integer(modulus)) != 1)
        throw std::invalid_argument("GaloisIndex: residue is not a unit");
}

CycNumber::CycNumber() : order_(1), coeffs_(1, Rational(0)) {}

CycNumber::CycNumber(const Rational& r) : order_(1), coeffs_(1, r) {}

CycNumber::CycNumber(long v) : order_(1), coeffs_(1, Rational(v)) {}

CycNumber::CycNumber(unsigned order, std::vector<Rational> reduced)
    : order_(order), coeffs_(std::move(reduced)) {}

CycNumber CycNumber::root_of_unity(unsigned M, const Integer& exponent) {
    if (M == 0) throw std::invalid_argument("root_of_unity: order must be positive");
    std::vector<Rational> p(mod_u(exponent, M) + 1, Rational(0));
    p.back() = 1;
    return CycNumber(M, reduce(M, p));
}

CycNumber CycNumber::from_terms(unsigned M, const std::vector<std::pair<Integer, Rational>>& terms) {
    if (M == 0) throw std::invalid_argument("from_terms: order must be positive");
    std::vector<Rational> p(M, Rational(0));
    for (const auto& [e, c] : terms) p[mod_u(e, M)] += c;
    return CycNumber(M, reduce(M, p));
}

CycNumber CycNumber::lifted(unsigned order) const {
    if (order == order_) return *this;
    if (order == 0 || order % order_ != 0)
        throw std::invalid_argument("lifted: current root order must divide the target");
    const unsigned stride = order / order_;
    std::vector<Rational> p(order, Rational(0));
    for (size_t k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) p[(k * stride) % order] += coeffs_[k];
    return CycNumber(order, reduce(order, p));
}

bool CycNumber::is_zero() const {
    for (const Rational& c : coeffs_)
        if (c != 0) return false;
    return true;
}

std::optional<Rational> CycNumber::as_rational() const {
    for (size_t k = 1; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) return std::nullopt;
    return coeffs_[0];
}

bool CycNumber::is_real() const { return *this == conjugate(); }

CycNumber CycNumber::operator-() const {
    std::vector<Rational> c = coeffs_;
    for (Rational& x : c) x = -x;
    return CycNumber(order_, std::move(c));
}

CycNumber operator+(const CycNumber& a, const CycNumber& b) {
    const unsigned L = lcm_u(a.order_, b.order_);
    CycNumber x = a.lifted(L);
    const CycNumber y = b.lifted(L);
    for (size_t k = 0; k < x.coeffs_.size(); ++k) x.coeffs_[k] += y.coeffs_[k];
    return x;
}

CycNumber operator-(const CycNumber& a, const CycNumber& b) { return a + (-b); }

CycNumber operator*(const CycNumber& a, const CycNumber& b) {
    const unsigned L = lcm_u(a.order_, b.order_);
    const CycNumber x = a.lifted(L);
    const CycNumber y = b.lifted(L);
    std::vector<Rational> out(2 * x.coeffs_.size(), Rational(0));
    for (size_t i = 0; i < x.coeffs_.size(); ++i) {
        if (x.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < y.coeffs_.size(); ++j)
            if (y.coeffs_[j] != 0) out[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
    return CycNumber(L, reduce(L, out));
}

CycNumber CycNumber::inverse() const {
    if (is_zero()) throw std::domain_error("CycNumber: inverse of zero");
    // Extended Euclid in Q[x] against the cyclotomic polynomial, tracking
    // only the cofactor of this element.
    std::vector<Rational> r0 = cyclotomic_poly(order_);
    std::vector<Rational> r1 = coeffs_;
    poly_trim(r1);
    std::vector<Rational> t0;                 // 0
    std::vector<Rational> t1(1, Rational(1));  // 1
    while (!r1.empty()) {
        std::vector<Rational> q, r;
        poly_divmod(r0, r1, q, r);
        std::vector<Rational> qt = poly_mul(q, t1);
        std::vector<Rational> t2 = t0;
        if (t2.size() < qt.size()) t2.resize(qt.size(), Rational(0));
        for (size_t k = 0; k < qt.size(); ++k) t2[k] -= qt[k];
        poly_trim(t2);
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 is a nonzero constant: the cyclotomic polynomial is irreducible.
    const Rational g = r0[0];
    for (Rational& c : t0) c /= g;
    return CycNumber(order_, reduce(order_, t0));
}

CycNumber CycNumber::times_root(const Integer& exponent) const {
    const unsigned shift = mod_u(exponent, order_);
    std::vector<Rational> p(order_ + coeffs_.size(), Rational(0));
    for (size_t k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) p[(k + shift) % order_] += coeffs_[k];
    return CycNumber(order_, reduce(order_, p));
}

CycNumber CycNumber::galois(const GaloisIndex& g) const {
    const unsigned L = lcm_u(order_, g.modulus());
    const unsigned l = lift_unit(g.residue(), g.modulus(), L);
    if (l == 1) return *this;
    const CycNumber x = lifted(L);
    std::vector<Rational> p(L, Rational(0));
    for (size_t k = 0; k < x.coeffs_.size(); ++k)
        if (x.coeffs_[k] != 0) p[(k * static_cast<size_t>(l)) % L] += x.coeffs_[k];
    return CycNumber(L, reduce(L, p));
}

CycNumber CycNumber::conjugate() const {
    if (order_ <= 2) return *this;
    return galois(GaloisIndex(Integer(order_) - 1, order_));
}

CycNumber::Embedded CycNumber::embed() const {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    Embedded out;
    double mag = 0.0;  // sum of |coefficient|
    size_t terms = 0;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        const double c = coeffs_[k].get_d();
        const double angle =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order_);
        out.re += c * std::cos(angle);
        out.im += c * std::sin(angle);
        mag += std::abs(c);
        ++terms;
    }
    // Per term: coefficient conversion, angle computation and trig evaluation
    // stay within 40 eps relative to |c|; each accumulation adds at most
    // eps * (sum of |c|).
    out.bound = (40.0 + 2.0 * static_cast<double>(terms)) * eps * mag;
    return out;
}

bool operator==(const CycNumber& a, const CycNumber& b) {
    const unsigned L = lcm_u(a.order_, b.order_);
    return a.lifted(L).coeffs_ == b.lifted(L).coeffs_;
}

CycNumber pow(const CycNumber& a, unsigned k) {
    CycNumber acc(1L);
    CycNumber base = a;
    while (k > 0) {
        if (k & 1u) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

}  // namespace mtcheck
