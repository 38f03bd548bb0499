#pragma once

#include "mtcheck/cycmat.hpp"
#include "mtcheck/verdict.hpp"

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtcheck {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A candidate pair (S, T): T diagonal with entries zeta_M^{e_p} stored as the
// exponent vector, S an exact matrix over Q(zeta_M). Row/column 0 is the
// distinguished vacuum label. Immutable; derived matrices are cached.
class ModularData {
public:
    ModularData(std::string name, unsigned rank, unsigned root_order,
                std::vector<unsigned> t_exponents, CycMatrix s);

    const std::string& name() const { return name_; }
    unsigned rank() const { return rank_; }
    unsigned root_order() const { return root_order_; }
    const std::vector<unsigned>& t_exponents() const { return t_exponents_; }
    const CycMatrix& s() const { return s_; }

    // Order of T: lcm over p of the order of zeta_M^{e_p}. Divides M.
    unsigned conductor() const { return conductor_; }

    const CycMatrix& charge_conjugation() const;  // S^2
    const CycMatrix& s_inv() const;               // S^3
    // S^4 = Id and (ST)^3 = S^2, the two defining relations of the image.
    bool relations_ok() const;

    CycNumber t_entry(unsigned p, const Integer& k = 1) const;  // zeta_M^{k e_p}
    CycMatrix t_matrix(const Integer& k = 1) const;
    CycMatrix left_t(const CycMatrix& a, const Integer& k) const;   // T^k A
    CycMatrix right_t(const CycMatrix& a, const Integer& k) const;  // A T^k

private:
    struct Cache;
    void ensure_cache() const;

    std::string name_;
    unsigned rank_;
    unsigned root_order_;
    std::vector<unsigned> t_exponents_;
    CycMatrix s_;
    unsigned conductor_;
    std::shared_ptr<Cache> cache_;
};

// Tuning knobs shared by the whole battery.
struct CheckConfig {
    unsigned genus_max = 5;
    unsigned samples = 100;      // draws per probabilistic subgroup test
    std::uint64_t seed = 0;
    double positivity_tolerance = 1e-9;
    std::optional<std::set<std::string>> checks;  // name filter; empty = run all

    void validate() const;  // throws std::invalid_argument
};

// JSON document handling; errors name the offending path.
ModularData parse_modular_data(const Json& doc);
Json serialize_modular_data(const ModularData& md);

// Every entry of S must be fixed by each sigma_l with l = 1 mod conductor
// and l a unit mod M; equivalently S lives over Q(zeta_N).
CheckVerdict field_containment(const ModularData& md);

ModularData catalog(const std::string& name);
std::vector<std::string> catalog_names();

// Exact value as JSON: {"root_order": M, "terms": [[num, den, exp], ...]}.
Json cyc_json(const CycNumber& x);

// Emits a JSON number when the value fits 64 bits, a decimal string otherwise.
Json json_integer(const Integer& z);

}  // namespace mtcheck
