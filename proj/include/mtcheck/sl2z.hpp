#pragma once

#include "mtcheck/modular_data.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtcheck {

// Element of SL(2,Z). Construction validates the determinant.
struct SL2Elem {
    Integer a, b, c, d;

    SL2Elem(Integer a_, Integer b_, Integer c_, Integer d_);
    static SL2Elem identity() { return {1, 0, 0, 1}; }

    SL2Elem operator*(const SL2Elem& rhs) const;
    SL2Elem inverse() const { return {d, -b, -c, a}; }
    bool operator==(const SL2Elem& rhs) const = default;
};

Json sl2_json(const SL2Elem& m);

// Word in the two generators, evaluated left to right; `negate` records a
// central -Id factor (= S^2).
struct GenWord {
    struct Letter {
        bool is_s = true;
        Integer power;  // exponent of a T^k letter; unused for S

        static Letter s() { return {true, 0}; }
        static Letter t(Integer k) { return {false, std::move(k)}; }
    };

    std::vector<Letter> letters;
    bool negate = false;

    SL2Elem to_sl2() const;
    std::string str() const;  // "S T^3 ..." tokens; the -Id factor prints as a trailing "S S"
};

// Euclidean descent on the left column with nearest-integer quotients.
// The returned word always evaluates back to the input exactly.
GenWord decompose(const SL2Elem& m);

// Tokens: `S`, `T^k` (nonzero k, `T` = `T^1`), whitespace-separated; or a
// raw integer matrix `[[a,b],[c,d]]`, which is decomposed. Throws
// std::invalid_argument on anything else.
GenWord parse_word(const std::string& text);

// Either the principal congruence subgroup of some level, or the group of
// matrices congruent mod K to diag(alpha, alpha^{-1}) with alpha in h.
struct SubgroupSpec {
    enum class Kind { principal_congruence, gamma_kh };

    Kind kind;
    unsigned level;
    std::vector<unsigned> residues;  // gamma_kh only; sorted, in [1, K]

    static SubgroupSpec principal_congruence(unsigned n);
    // Validates: residues coprime to K, closed under multiplication mod K.
    static SubgroupSpec gamma_kh(unsigned K, const std::vector<unsigned>& h);
};

// Residue of x mod k placed in [1, k]; only k = 1 maps 0 up to k.
unsigned canonical_residue(const Integer& x, unsigned k);

bool is_member(const SL2Elem& m, const SubgroupSpec& spec);

// Deterministic in `seed`; every output satisfies is_member. Throws
// std::runtime_error after bounded retries (unreachable for valid specs).
SL2Elem sample_member(const SubgroupSpec& spec, std::uint64_t seed);

// Entries drawn up to `bound` in absolute value before unimodular completion.
SL2Elem random_unimodular(std::mt19937_64& rng, unsigned long bound);

struct RelationError : std::runtime_error {
    explicit RelationError(const std::string& msg) : std::runtime_error(msg) {}
};

// rho(word) in the given data: S letters multiply by md.s(), T^k letters
// scale columns by root-of-unity powers. Requires md.relations_ok(), since
// the word for a matrix is not unique. Throws RelationError otherwise.
CycMatrix evaluate_word(const GenWord& w, const ModularData& md);
CycMatrix evaluate_elem(const SL2Elem& m, const ModularData& md);

}  // namespace mtcheck
