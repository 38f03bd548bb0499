#pragma once

#include "mtcheck/cyclotomic.hpp"

#include <optional>
#include <vector>

namespace mtcheck {

// Structural facts about a square matrix, all decided by exact comparisons.
// The signed-permutation decomposition follows A[p][q] = signs[q] when
// p == perm[q] and 0 otherwise (perm maps column to row).
struct MatrixClass {
    bool is_identity = false;
    std::optional<CycNumber> scalar;  // lambda with A = lambda * Id
    bool is_permutation = false;
    bool is_signed_permutation = false;
    std::vector<unsigned> perm;   // populated iff is_signed_permutation
    std::vector<int> signs;       // entries +1/-1, populated iff is_signed_permutation
    bool is_symmetric = false;
    std::optional<std::vector<unsigned>> order_divides;  // probed k with A^k = Id
};

// Immutable dense square matrix over a cyclotomic field. Entries are lifted
// to one shared root order at construction.
class CycMatrix {
public:
    explicit CycMatrix(const std::vector<std::vector<CycNumber>>& rows);
    static CycMatrix identity(unsigned n);

    unsigned dim() const { return n_; }
    unsigned root_order() const { return order_; }
    const CycNumber& at(unsigned r, unsigned c) const { return a_[r * n_ + c]; }

    CycMatrix operator*(const CycMatrix& rhs) const;  // throws on dimension mismatch
    CycMatrix pow(unsigned k) const;
    CycMatrix transposed() const;
    CycMatrix galois(const GaloisIndex& g) const;
    CycNumber trace() const;

    // order_probes: exponents k to test A^k = Id for; empty leaves the field unset.
    MatrixClass classify(const std::vector<unsigned>& order_probes = {}) const;

    bool operator==(const CycMatrix& rhs) const;
    bool operator!=(const CycMatrix& rhs) const { return !(*this == rhs); }

private:
    CycMatrix(unsigned n, unsigned order, std::vector<CycNumber> entries);

    unsigned n_;
    unsigned order_;
    std::vector<CycNumber> a_;  // row-major
};

// S^3, the inverse of any S with S^4 = Id. Callers are expected to have
// checked that relation.
CycMatrix s_inverse(const CycMatrix& S);

}  // namespace mtcheck
