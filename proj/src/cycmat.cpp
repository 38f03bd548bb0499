#include "mtcheck/cycmat.hpp"

#include <stdexcept>
#include <utility>

namespace mtcheck {

CycMatrix::CycMatrix(unsigned n, unsigned order, std::vector<CycNumber> entries)
    : n_(n), order_(order), a_(std::move(entries)) {}

CycMatrix::CycMatrix(const std::vector<std::vector<CycNumber>>& rows) {
    n_ = static_cast<unsigned>(rows.size());
    if (n_ == 0) throw std::invalid_argument("CycMatrix: empty");
    order_ = 1;
    for (const auto& row : rows) {
        if (row.size() != n_) throw std::invalid_argument("CycMatrix: not square");
        for (const CycNumber& x : row) order_ = lcm_u(order_, x.root_order());
    }
    a_.reserve(static_cast<size_t>(n_) * n_);
    for (const auto& row : rows)
        for (const CycNumber& x : row) a_.push_back(x.lifted(order_));
}

CycMatrix CycMatrix::identity(unsigned n) {
    if (n == 0) throw std::invalid_argument("CycMatrix: empty");
    std::vector<CycNumber> e(static_cast<size_t>(n) * n, CycNumber());
    for (unsigned i = 0; i < n; ++i) e[static_cast<size_t>(i) * n + i] = CycNumber(1L);
    return CycMatrix(n, 1, std::move(e));
}

CycMatrix CycMatrix::operator*(const CycMatrix& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("CycMatrix: dimension mismatch");
    std::vector<CycNumber> out(static_cast<size_t>(n_) * n_, CycNumber());
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) {
            CycNumber acc;
            for (unsigned k = 0; k < n_; ++k) {
                const CycNumber& x = at(i, k);
                const CycNumber& y = rhs.at(k, j);
                if (!x.is_zero() && !y.is_zero()) acc = acc + x * y;
            }
            out[static_cast<size_t>(i) * n_ + j] = std::move(acc);
        }
    const unsigned order = lcm_u(order_, rhs.order_);
    for (CycNumber& x : out) x = x.lifted(order);
    return CycMatrix(n_, order, std::move(out));
}

CycMatrix CycMatrix::pow(unsigned k) const {
    CycMatrix acc = identity(n_);
    CycMatrix base = *this;
    while (k > 0) {
        if (k & 1u) acc = acc * base;
        if (k >>= 1) base = base * base;
    }
    return acc;
}

CycMatrix CycMatrix::transposed() const {
    std::vector<CycNumber> out(a_.size(), CycNumber());
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) out[static_cast<size_t>(j) * n_ + i] = at(i, j);
    return CycMatrix(n_, order_, std::move(out));
}

CycMatrix CycMatrix::galois(const GaloisIndex& g) const {
    std::vector<CycNumber> out;
    out.reserve(a_.size());
    unsigned order = 1;
    for (const CycNumber& x : a_) {
        out.push_back(x.galois(g));
        order = lcm_u(order, out.back().root_order());
    }
    for (CycNumber& x : out) x = x.lifted(order);
    return CycMatrix(n_, order, std::move(out));
}

CycNumber CycMatrix::trace() const {
    CycNumber t;
    for (unsigned i = 0; i < n_; ++i) t = t + at(i, i);
    return t;
}

MatrixClass CycMatrix::classify(const std::vector<unsigned>& order_probes) const {
    MatrixClass out;

    out.is_symmetric = true;
    for (unsigned i = 0; i < n_ && out.is_symmetric; ++i)
        for (unsigned j = i + 1; j < n_; ++j)
            if (at(i, j) != at(j, i)) {
                out.is_symmetric = false;
                break;
            }

    bool diagonal_constant = true;
    bool off_diagonal_zero = true;
    for (unsigned i = 0; i < n_ && (diagonal_constant || off_diagonal_zero); ++i)
        for (unsigned j = 0; j < n_; ++j) {
            if (i == j) {
                if (at(i, i) != at(0, 0)) diagonal_constant = false;
            } else if (!at(i, j).is_zero()) {
                off_diagonal_zero = false;
            }
        }
    if (diagonal_constant && off_diagonal_zero) out.scalar = at(0, 0);
    out.is_identity = out.scalar && *out.scalar == CycNumber(1L);

    // Signed-permutation shape: one nonzero per column, value +1 or -1,
    // rows covered exactly once.
    std::vector<unsigned> perm(n_, 0);
    std::vector<int> signs(n_, 0);
    std::vector<bool> row_used(n_, false);
    bool signed_perm = true;
    bool plain_perm = true;
    for (unsigned q = 0; q < n_ && signed_perm; ++q) {
        int found = -1;
        for (unsigned p = 0; p < n_; ++p) {
            const CycNumber& x = at(p, q);
            if (x.is_zero()) continue;
            const auto r = x.as_rational();
            if (found >= 0 || !r || (*r != 1 && *r != -1)) {
                signed_perm = false;
                break;
            }
            found = static_cast<int>(p);
            signs[q] = (*r == 1) ? 1 : -1;
        }
        if (!signed_perm || found < 0 || row_used[static_cast<unsigned>(found)]) {
            signed_perm = false;
            break;
        }
        row_used[static_cast<unsigned>(found)] = true;
        perm[q] = static_cast<unsigned>(found);
        if (signs[q] != 1) plain_perm = false;
    }
    out.is_signed_permutation = signed_perm;
    out.is_permutation = signed_perm && plain_perm;
    if (signed_perm) {
        out.perm = std::move(perm);
        out.signs = std::move(signs);
    }

    if (!order_probes.empty()) {
        std::vector<unsigned> hits;
        for (unsigned k : order_probes)
            if (pow(k) == identity(n_)) hits.push_back(k);
        out.order_divides = std::move(hits);
    }
    return out;
}

bool CycMatrix::operator==(const CycMatrix& rhs) const {
    if (n_ != rhs.n_) return false;
    for (size_t k = 0; k < a_.size(); ++k)
        if (a_[k] != rhs.a_[k]) return false;
    return true;
}

CycMatrix s_inverse(const CycMatrix& S) { return S.pow(3); }

}  // namespace mtcheck
