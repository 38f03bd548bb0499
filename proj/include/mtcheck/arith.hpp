#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace mtcheck {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonicalized num/den; throws std::domain_error on den == 0.
Rational make_rational(const Integer& num, const Integer& den);

// Residue of a in [0, m), m >= 1.
Integer mod_floor(const Integer& a, const Integer& m);
unsigned mod_u(const Integer& a, unsigned m);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
unsigned lcm_u(unsigned a, unsigned b);

// a^{-1} mod m (m >= 1); throws std::domain_error when gcd(a, m) != 1.
Integer invmod(const Integer& a, const Integer& m);

unsigned euler_phi(unsigned m);
std::vector<unsigned> divisors(unsigned m);                       // ascending, includes 1 and m
std::vector<std::pair<unsigned, unsigned>> factorize(unsigned m); // (prime, exponent)

// Residues in [1, n] coprime to n, ascending. unit_group(1) == {1}.
std::vector<unsigned> unit_group(unsigned n);

// Smallest canonical unit mod M congruent to l mod N, for N | M and gcd(l, N) = 1.
// Acts as l on the primes of N and as the identity on primes of M coprime to N.
unsigned lift_unit(unsigned l, unsigned N, unsigned M);

}  // namespace mtcheck
