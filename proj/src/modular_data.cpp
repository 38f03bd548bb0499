#include "mtcheck/modular_data.hpp"

#include <mutex>
#include <numeric>
#include <utility>

namespace mtcheck {

struct ModularData::Cache {
    std::once_flag once;
    std::unique_ptr<CycMatrix> s2;
    std::unique_ptr<CycMatrix> s3;
    bool relations = false;
};

ModularData::ModularData(std::string name, unsigned rank, unsigned root_order,
                         std::vector<unsigned> t_exponents, CycMatrix s)
    : name_(std::move(name)),
      rank_(rank),
      root_order_(root_order),
      t_exponents_(std::move(t_exponents)),
      s_(std::move(s)),
      conductor_(1),
      cache_(std::make_shared<Cache>()) {
    if (rank_ == 0) throw std::invalid_argument("ModularData: rank must be positive");
    if (root_order_ == 0) throw std::invalid_argument("ModularData: root order must be positive");
    if (t_exponents_.size() != rank_)
        throw std::invalid_argument("ModularData: t_exponents length must equal rank");
    if (s_.dim() != rank_) throw std::invalid_argument("ModularData: S dimension must equal rank");
    if (root_order_ % s_.root_order() != 0)
        throw std::invalid_argument("ModularData: S entries are represented outside the stated field");
    if (s_.root_order() != root_order_) {
        std::vector<std::vector<CycNumber>> rows(rank_);
        for (unsigned i = 0; i < rank_; ++i)
            for (unsigned j = 0; j < rank_; ++j) rows[i].push_back(s_.at(i, j).lifted(root_order_));
        s_ = CycMatrix(rows);
    }
    for (unsigned& e : t_exponents_) {
        e %= root_order_;
        conductor_ = lcm_u(conductor_, root_order_ / std::gcd(root_order_, e == 0 ? root_order_ : e));
    }
}

void ModularData::ensure_cache() const {
    std::call_once(cache_->once, [this] {
        Cache& c = *cache_;
        c.s2 = std::make_unique<CycMatrix>(s_ * s_);
        c.s3 = std::make_unique<CycMatrix>(*c.s2 * s_);
        const CycMatrix s4 = *c.s2 * *c.s2;
        const CycMatrix st = right_t(s_, 1);
        c.relations = s4 == CycMatrix::identity(rank_) && st * st * st == *c.s2;
    });
}

const CycMatrix& ModularData::charge_conjugation() const {
    ensure_cache();
    return *cache_->s2;
}

const CycMatrix& ModularData::s_inv() const {
    ensure_cache();
    return *cache_->s3;
}

bool ModularData::relations_ok() const {
    ensure_cache();
    return cache_->relations;
}

CycNumber ModularData::t_entry(unsigned p, const Integer& k) const {
    return CycNumber::root_of_unity(root_order_, k * t_exponents_.at(p));
}

CycMatrix ModularData::t_matrix(const Integer& k) const {
    std::vector<std::vector<CycNumber>> rows(rank_, std::vector<CycNumber>(rank_, CycNumber()));
    for (unsigned p = 0; p < rank_; ++p) rows[p][p] = t_entry(p, k);
    return CycMatrix(rows);
}

CycMatrix ModularData::left_t(const CycMatrix& a, const Integer& k) const {
    if (a.dim() != rank_) throw std::invalid_argument("left_t: dimension mismatch");
    std::vector<std::vector<CycNumber>> rows(rank_);
    const bool fast = a.root_order() % root_order_ == 0;
    const unsigned stride = fast ? a.root_order() / root_order_ : 0;
    for (unsigned p = 0; p < rank_; ++p) {
        const unsigned shift = mod_u(k * t_exponents_[p], root_order_);
        for (unsigned q = 0; q < rank_; ++q)
            rows[p].push_back(fast ? a.at(p, q).times_root(Integer(shift) * stride)
                                   : a.at(p, q) * CycNumber::root_of_unity(root_order_, shift));
    }
    return CycMatrix(rows);
}

CycMatrix ModularData::right_t(const CycMatrix& a, const Integer& k) const {
    if (a.dim() != rank_) throw std::invalid_argument("right_t: dimension mismatch");
    std::vector<std::vector<CycNumber>> rows(rank_);
    const bool fast = a.root_order() % root_order_ == 0;
    const unsigned stride = fast ? a.root_order() / root_order_ : 0;
    for (unsigned p = 0; p < rank_; ++p)
        for (unsigned q = 0; q < rank_; ++q) {
            const unsigned shift = mod_u(k * t_exponents_[q], root_order_);
            rows[p].push_back(fast ? a.at(p, q).times_root(Integer(shift) * stride)
                                   : a.at(p, q) * CycNumber::root_of_unity(root_order_, shift));
        }
    return CycMatrix(rows);
}

void CheckConfig::validate() const {
    if (!(positivity_tolerance > 0.0))
        throw std::invalid_argument("CheckConfig: tolerance must be positive");
    if (samples == 0) throw std::invalid_argument("CheckConfig: samples must be at least 1");
}

Json json_integer(const Integer& z) {
    if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
    return Json(z.get_str());
}

namespace {

Integer to_integer(const Json& v, const std::string& path) {
    if (v.is_number_integer()) return Integer(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_string()) {
        try {
            return Integer(v.get<std::string>());
        } catch (const std::invalid_argument&) {
        }
    }
    throw ParseError(path + ": expected an integer");
}

unsigned to_positive(const Json& v, const std::string& path) {
    const Integer z = to_integer(v, path);
    if (z < 1 || !z.fits_uint_p()) throw ParseError(path + ": must be a positive integer");
    return static_cast<unsigned>(z.get_ui());
}

const Json& need(const Json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(std::string(key) + ": missing");
    return *it;
}

}  // namespace

ModularData parse_modular_data(const Json& doc) {
    if (!doc.is_object()) throw ParseError("document: expected an object");

    std::string name;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw ParseError("name: expected a string");
        name = it->get<std::string>();
    }
    const unsigned rank = to_positive(need(doc, "rank"), "rank");
    const unsigned M = to_positive(need(doc, "root_order"), "root_order");

    const Json& te = need(doc, "t_exponents");
    if (!te.is_array() || te.size() != rank)
        throw ParseError("t_exponents: expected " + std::to_string(rank) + " entries");
    std::vector<unsigned> exps;
    for (size_t p = 0; p < te.size(); ++p)
        exps.push_back(mod_u(to_integer(te[p], "t_exponents[" + std::to_string(p) + "]"), M));

    const Json& sm = need(doc, "s_matrix");
    if (!sm.is_array() || sm.size() != rank)
        throw ParseError("s_matrix: expected " + std::to_string(rank) + " rows");
    std::vector<std::vector<CycNumber>> rows(rank);
    for (size_t i = 0; i < rank; ++i) {
        const std::string rpath = "s_matrix[" + std::to_string(i) + "]";
        if (!sm[i].is_array() || sm[i].size() != rank)
            throw ParseError(rpath + ": expected " + std::to_string(rank) + " entries");
        for (size_t j = 0; j < rank; ++j) {
            const std::string epath = rpath + "[" + std::to_string(j) + "]";
            const Json& entry = sm[i][j];
            if (!entry.is_array()) throw ParseError(epath + ": expected a list of [num, den, exp] triples");
            std::vector<std::pair<Integer, Rational>> terms;
            for (size_t t = 0; t < entry.size(); ++t) {
                const std::string tpath = epath + "[" + std::to_string(t) + "]";
                const Json& triple = entry[t];
                if (!triple.is_array() || triple.size() != 3)
                    throw ParseError(tpath + ": expected a [num, den, exp] triple");
                const Integer num = to_integer(triple[0], tpath + "[0]");
                const Integer den = to_integer(triple[1], tpath + "[1]");
                if (den == 0) throw ParseError(tpath + ": zero denominator");
                terms.emplace_back(to_integer(triple[2], tpath + "[2]"), make_rational(num, den));
            }
            rows[i].push_back(CycNumber::from_terms(M, terms));
        }
    }
    return ModularData(std::move(name), rank, M, std::move(exps), CycMatrix(rows));
}

Json cyc_json(const CycNumber& x) {
    Json terms = Json::array();
    const auto& c = x.coeffs();
    for (size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        terms.push_back(Json::array(
            {json_integer(c[k].get_num()), json_integer(c[k].get_den()),
             static_cast<std::int64_t>(k)}));
    }
    return Json{{"root_order", x.root_order()}, {"terms", std::move(terms)}};
}

Json serialize_modular_data(const ModularData& md) {
    Json s = Json::array();
    for (unsigned i = 0; i < md.rank(); ++i) {
        Json row = Json::array();
        for (unsigned j = 0; j < md.rank(); ++j) row.push_back(cyc_json(md.s().at(i, j))["terms"]);
        s.push_back(std::move(row));
    }
    return Json{{"name", md.name()},
                {"rank", md.rank()},
                {"root_order", md.root_order()},
                {"t_exponents", md.t_exponents()},
                {"s_matrix", std::move(s)}};
}

CheckVerdict field_containment(const ModularData& md) {
    const unsigned M = md.root_order();
    const unsigned N = md.conductor();
    for (unsigned l : unit_group(M)) {
        if (l == 1 || l % N != 1 % N) continue;
        const GaloisIndex g(l, M);
        for (unsigned p = 0; p < md.rank(); ++p)
            for (unsigned q = 0; q < md.rank(); ++q) {
                const CycNumber& x = md.s().at(p, q);
                CycNumber image = x.galois(g);
                if (image != x)
                    return CheckVerdict::failed("field_containment",
                                                Json{{"kind", "entry_not_fixed"},
                                                     {"row", p},
                                                     {"col", q},
                                                     {"galois_index", l},
                                                     {"conductor", N},
                                                     {"entry", cyc_json(x)},
                                                     {"image", cyc_json(image)}});
            }
    }
    return CheckVerdict::passed("field_containment");
}

}  // namespace mtcheck
