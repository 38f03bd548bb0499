#pragma once

#include "mtcheck/arith.hpp"

#include <optional>
#include <vector>

namespace mtcheck {

// Coefficients of the M-th cyclotomic polynomial, ascending degree.
// Monic of degree phi(M); results are memoized (thread-safe).
const std::vector<Rational>& cyclotomic_poly(unsigned M);

// A prime residue l mod M, the symbol of the field automorphism
// zeta_M -> zeta_M^l.
class GaloisIndex {
public:
    GaloisIndex(const Integer& l, unsigned modulus);

    unsigned residue() const { return residue_; }  // in [1, modulus], 1 when modulus == 1
    unsigned modulus() const { return modulus_; }

private:
    unsigned residue_;
    unsigned modulus_;
};

// An element of Q(zeta_M): phi(M) exact rational coefficients on the power
// basis 1, zeta, ..., zeta^{phi(M)-1}, reduced mod the M-th cyclotomic
// polynomial. The reduced form is canonical, so equality at a fixed order is
// coefficient comparison; mixed orders are compared after lifting to the lcm.
class CycNumber {
public:
    CycNumber();  // zero, root order 1
    explicit CycNumber(const Rational& r);
    CycNumber(long v);

    static CycNumber root_of_unity(unsigned M, const Integer& exponent);
    // Sum of coeff * zeta_M^exp; exponents arbitrary (taken mod M), duplicates accumulate.
    static CycNumber from_terms(unsigned M, const std::vector<std::pair<Integer, Rational>>& terms);

    unsigned root_order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    CycNumber lifted(unsigned order) const;  // root_order() must divide order

    bool is_zero() const;
    std::optional<Rational> as_rational() const;
    bool is_real() const;

    CycNumber operator-() const;
    friend CycNumber operator+(const CycNumber& a, const CycNumber& b);
    friend CycNumber operator-(const CycNumber& a, const CycNumber& b);
    friend CycNumber operator*(const CycNumber& a, const CycNumber& b);

    CycNumber inverse() const;  // throws std::domain_error on zero

    // Multiply by zeta_{root_order}^exponent.
    CycNumber times_root(const Integer& exponent) const;

    // Exponent substitution k -> l*k. When the index modulus differs from the
    // root order, both are lifted to the lcm; the residue is extended
    // canonically (identity on primes outside the index modulus).
    CycNumber galois(const GaloisIndex& g) const;
    CycNumber conjugate() const;

    struct Embedded {
        double re = 0.0;
        double im = 0.0;
        double bound = 0.0;  // rigorous bound on the rounding error of re and im
    };
    // Numeric value under zeta_M -> exp(2*pi*i/M).
    Embedded embed() const;

    friend bool operator==(const CycNumber& a, const CycNumber& b);
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

private:
    CycNumber(unsigned order, std::vector<Rational> reduced);

    unsigned order_;
    std::vector<Rational> coeffs_;  // size phi(order_), reduced
};

CycNumber pow(const CycNumber& a, unsigned k);

}  // namespace mtcheck
