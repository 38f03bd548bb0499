#include "mtcheck/modular_data.hpp"

#include <sstream>

namespace mtcheck {

namespace {

Rational half() { return make_rational(1, 2); }

// 1/sqrt(2) = (zeta_8 - zeta_8^3)/2, written over the stated root order.
CycNumber inv_sqrt2(unsigned M) {
    const unsigned s = M / 8;
    return CycNumber::from_terms(M, {{s, half()}, {3 * s, -half()}});
}

ModularData make_trivial() {
    return ModularData("trivial", 1, 1, {0}, CycMatrix({{CycNumber(1L)}}));
}

// T = zeta_24^{-1} diag(1, zeta_4), S = (1/sqrt2) [[1,1],[1,-1]].
ModularData make_semion() {
    const CycNumber h = inv_sqrt2(24);
    return ModularData("semion", 2, 24, {23, 5}, CycMatrix({{h, h}, {h, -h}}));
}

// T = zeta_60^{-7} diag(1, zeta_5^2), S = (phi+2)^{-1/2} [[1,phi],[phi,-1]]
// with phi the golden ratio. Exact forms over Q(zeta_60): sqrt(5) is the
// Gauss sum over fifth roots, and (phi+2)^{-1/2} = (zeta_5^2 - zeta_5^3)/(i sqrt5)
// with i = zeta_60^15 (both sides are the positive real 1/sqrt(phi+2)).
ModularData make_fibonacci() {
    auto z = [](long e) { return CycNumber::root_of_unity(60, e); };
    const CycNumber sqrt5 = z(12) - z(24) - z(36) + z(48);
    const CycNumber phi = (CycNumber(1L) + sqrt5) * CycNumber(half());
    const CycNumber s = (z(24) - z(36)) * (z(15) * sqrt5).inverse();
    return ModularData("fibonacci", 2, 60, {53, 17},
                       CycMatrix({{s, s * phi}, {s * phi, -s}}));
}

// T = zeta_48^{-1} diag(1, zeta_16, -1),
// S = (1/2) [[1, sqrt2, 1], [sqrt2, 0, -sqrt2], [1, -sqrt2, 1]].
ModularData make_ising() {
    const CycNumber a(half());
    const CycNumber b = inv_sqrt2(48);  // sqrt2/2
    return ModularData("ising", 3, 48, {47, 2, 23},
                       CycMatrix({{a, b, a}, {b, CycNumber(), -b}, {a, -b, a}}));
}

}  // namespace

std::vector<std::string> catalog_names() { return {"trivial", "semion", "fibonacci", "ising"}; }

ModularData catalog(const std::string& name) {
    if (name == "trivial") return make_trivial();
    if (name == "semion") return make_semion();
    if (name == "fibonacci") return make_fibonacci();
    if (name == "ising") return make_ising();
    std::ostringstream msg;
    msg << "unknown catalog entry '" << name << "'; available:";
    for (const auto& n : catalog_names()) msg << " " << n;
    throw std::invalid_argument(msg.str());
}

}  // namespace mtcheck
