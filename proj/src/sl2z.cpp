#include "mtcheck/sl2z.hpp"

#include <algorithm>
#include <sstream>

namespace mtcheck {

SL2Elem::SL2Elem(Integer a_, Integer b_, Integer c_, Integer d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (a * d - b * c != 1) throw std::invalid_argument("SL2Elem: determinant must be 1");
}

SL2Elem SL2Elem::operator*(const SL2Elem& rhs) const {
    return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
            c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
}

Json sl2_json(const SL2Elem& m) {
    return Json::array({Json::array({json_integer(m.a), json_integer(m.b)}),
                        Json::array({json_integer(m.c), json_integer(m.d)})});
}

SL2Elem GenWord::to_sl2() const {
    Integer a = 1, b = 0, c = 0, d = 1;
    for (const Letter& l : letters) {
        if (l.is_s) {
            // right-multiply by [[0,-1],[1,0]]: [[a,b],[c,d]] -> [[b,-a],[d,-c]]
            std::swap(a, b);
            std::swap(c, d);
            b = -b;
            d = -d;
        } else {
            b += a * l.power;
            d += c * l.power;
        }
    }
    if (negate) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
    return {a, b, c, d};
}

std::string GenWord::str() const {
    std::ostringstream out;
    bool first = true;
    auto emit = [&](const std::string& tok) {
        if (!first) out << ' ';
        out << tok;
        first = false;
    };
    for (const Letter& l : letters) {
        if (l.is_s) {
            emit("S");
        } else if (l.power == 1) {
            emit("T");
        } else {
            emit("T^" + l.power.get_str());
        }
    }
    if (negate) {
        emit("S");
        emit("S");
    }
    return out.str();
}

GenWord decompose(const SL2Elem& m) {
    GenWord w;
    Integer a = m.a, b = m.b, c = m.c, d = m.d;
    while (c != 0) {
        // nearest-integer quotient of a/c
        const Integer num = 2 * a + c;
        const Integer den = 2 * c;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (q != 0) {
            // reduce by T^{-q} on the left; the word gains its inverse
            a -= q * c;
            b -= q * d;
            w.letters.push_back(GenWord::Letter::t(q));
        }
        // reduce by S^{-1} on the left; the word gains S
        const Integer na = c, nb = d;
        c = -a;
        d = -b;
        a = na;
        b = nb;
        w.letters.push_back(GenWord::Letter::s());
    }
    // upper triangular now: [[1,b],[0,1]] = T^b or -[[1,-b],[0,1]]
    if (a == 1) {
        if (b != 0) w.letters.push_back(GenWord::Letter::t(b));
    } else {
        w.negate = true;
        if (b != 0) w.letters.push_back(GenWord::Letter::t(-b));
    }
    return w;
}

namespace {

GenWord parse_matrix_form(const std::string& text) {
    Json m;
    try {
        m = Json::parse(text);
    } catch (const Json::parse_error&) {
        throw std::invalid_argument("word: malformed matrix literal");
    }
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() ||
        m[0].size() != 2 || m[1].size() != 2)
        throw std::invalid_argument("word: matrix literal must be [[a,b],[c,d]]");
    Integer e[4];
    for (int i = 0; i < 4; ++i) {
        const Json& v = m[i / 2][i % 2];
        if (v.is_number_integer())
            e[i] = Integer(static_cast<long>(v.get<std::int64_t>()));
        else if (v.is_string())
            try {
                e[i] = Integer(v.get<std::string>());
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("word: matrix entries must be integers");
            }
        else
            throw std::invalid_argument("word: matrix entries must be integers");
    }
    try {
        return decompose(SL2Elem(e[0], e[1], e[2], e[3]));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("word: matrix literal is not unimodular");
    }
}

}  // namespace

GenWord parse_word(const std::string& text) {
    const auto start = text.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && text[start] == '[') return parse_matrix_form(text);

    GenWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "S") {
            w.letters.push_back(GenWord::Letter::s());
        } else if (tok == "T") {
            w.letters.push_back(GenWord::Letter::t(1));
        } else if (tok.rfind("T^", 0) == 0 && tok.size() > 2) {
            Integer k;
            try {
                k = Integer(tok.substr(2));
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("word: bad token '" + tok + "'");
            }
            if (k == 0) throw std::invalid_argument("word: T^0 is not a letter");
            w.letters.push_back(GenWord::Letter::t(std::move(k)));
        } else {
            throw std::invalid_argument("word: bad token '" + tok + "'");
        }
    }
    return w;
}

SubgroupSpec SubgroupSpec::principal_congruence(unsigned n) {
    if (n == 0) throw std::invalid_argument("SubgroupSpec: level must be positive");
    return {Kind::principal_congruence, n, {}};
}

unsigned canonical_residue(const Integer& x, unsigned k) {
    const unsigned r = mod_u(x, k);
    return r == 0 ? k : r;
}

SubgroupSpec SubgroupSpec::gamma_kh(unsigned K, const std::vector<unsigned>& h) {
    if (K == 0) throw std::invalid_argument("SubgroupSpec: level must be positive");
    if (h.empty()) throw std::invalid_argument("SubgroupSpec: h must be nonempty");
    std::vector<unsigned> res;
    for (unsigned x : h) {
        const unsigned r = canonical_residue(x, K);
        if (gcd(Integer(r), Integer(K)) != 1)
            throw std::invalid_argument("SubgroupSpec: h contains a residue not coprime to the level");
        res.push_back(r);
    }
    std::sort(res.begin(), res.end());
    res.erase(std::unique(res.begin(), res.end()), res.end());
    for (unsigned x : res)
        for (unsigned y : res) {
            const unsigned p = canonical_residue(Integer(x) * y, K);
            if (!std::binary_search(res.begin(), res.end(), p))
                throw std::invalid_argument("SubgroupSpec: h is not closed under multiplication");
        }
    return {Kind::gamma_kh, K, std::move(res)};
}

bool is_member(const SL2Elem& m, const SubgroupSpec& spec) {
    const unsigned L = spec.level;
    if (mod_u(m.b, L) != 0 || mod_u(m.c, L) != 0) return false;
    if (spec.kind == SubgroupSpec::Kind::principal_congruence)
        return mod_u(m.a - 1, L) == 0 && mod_u(m.d - 1, L) == 0;
    return std::binary_search(spec.residues.begin(), spec.residues.end(), canonical_residue(m.a, L)) &&
           std::binary_search(spec.residues.begin(), spec.residues.end(), canonical_residue(m.d, L));
}

SL2Elem sample_member(const SubgroupSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const unsigned L = spec.level;
    auto draw = [&](long lo, long hi) {  // uniform-ish integer in [lo, hi]
        return Integer(lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)));
    };
    for (int attempt = 0; attempt < 256; ++attempt) {
        const unsigned alpha = spec.kind == SubgroupSpec::Kind::principal_congruence
                                   ? 1u % L
                                   : spec.residues[rng() % spec.residues.size()] % L;
        const Integer a = alpha + L * draw(-64, 64);
        const Integer c = L * draw(-64, 64);
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
        if (g != 1) continue;
        // [[a, -t], [c, s]] is unimodular; shear columns to zero b mod L.
        Integer b = -t, d = s;
        const Integer k = mod_floor(-b * invmod(a, L), L) + L * draw(0, 15);
        b += a * k;
        d += c * k;
        SL2Elem out(a, b, c, d);
        if (is_member(out, spec)) return out;
    }
    throw std::runtime_error("sample_member: no member found; inconsistent subgroup spec");
}

SL2Elem random_unimodular(std::mt19937_64& rng, unsigned long bound) {
    auto draw = [&]() {
        const unsigned long span = 2 * bound + 1;
        return Integer(static_cast<long>(rng() % span) - static_cast<long>(bound));
    };
    for (;;) {
        const Integer a = draw(), c = draw();
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
        if (g != 1) continue;
        Integer b = -t, d = s;
        const Integer k = draw();
        b += a * k;
        d += c * k;
        return {a, b, c, d};
    }
}

CycMatrix evaluate_word(const GenWord& w, const ModularData& md) {
    if (!md.relations_ok())
        throw RelationError("evaluate_word: data fails the defining relations, "
                            "so words do not determine a matrix");
    CycMatrix acc = CycMatrix::identity(md.rank());
    for (const GenWord::Letter& l : w.letters)
        acc = l.is_s ? acc * md.s() : md.right_t(acc, l.power);
    if (w.negate) acc = acc * md.charge_conjugation();
    return acc;
}

CycMatrix evaluate_elem(const SL2Elem& m, const ModularData& md) {
    return evaluate_word(decompose(m), md);
}

}  // namespace mtcheck
