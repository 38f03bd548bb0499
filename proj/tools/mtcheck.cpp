#include "CLI11.hpp"
#include "mtcheck/checks.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace mtcheck;

namespace {

struct Options {
    std::string source;
    std::string out_path;
    bool pretty = false;
    bool no_timing = false;
    unsigned genus_max = 5;
    unsigned samples = 100;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    std::string checks_list;
    unsigned genus = 1;
    std::vector<std::string> words;
};

ModularData load_source(const std::string& source) {
    if (!source.empty() && source[0] == '@') return catalog(source.substr(1));
    std::ifstream in(source);
    if (!in) throw std::runtime_error("cannot open input file '" + source + "'");
    Json doc = Json::parse(in);
    return parse_modular_data(doc);
}

CheckConfig make_config(const Options& opt) {
    CheckConfig cfg;
    cfg.genus_max = opt.genus_max;
    cfg.samples = opt.samples;
    cfg.seed = opt.seed;
    cfg.positivity_tolerance = opt.tolerance;
    if (!opt.checks_list.empty()) {
        std::set<std::string> names;
        std::stringstream ss(opt.checks_list);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) names.insert(tok);
        if (names.empty()) throw std::invalid_argument("--checks: empty list");
        cfg.checks = std::move(names);
    }
    cfg.validate();
    return cfg;
}

// Writes to --out when given, stdout otherwise.
void emit(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path);
    if (!out) throw std::runtime_error("cannot write output file '" + opt.out_path + "'");
    out << text;
}

void emit_json(const Options& opt, const Json& j) { emit(opt, j.dump(2) + "\n"); }

Json rational_value(const Rational& q) {
    if (q.get_den() == 1) return json_integer(q.get_num());
    return Json{{"num", json_integer(q.get_num())}, {"den", json_integer(q.get_den())}};
}

std::string rational_text(const Rational& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

int cmd_verify(const Options& opt) {
    const ModularData md = load_source(opt.source);
    const CheckReport rep = run_all(md, make_config(opt));
    if (opt.pretty) {
        std::ostringstream os;
        os << rep.name << "  (conductor " << rep.conductor << ")\n";
        for (const auto& v : rep.checks) {
            os << "  " << v.name;
            for (std::size_t i = v.name.size(); i < 28; ++i) os << ' ';
            os << status_name(v.status);
            if (v.status == Status::skip) os << "  [" << v.witness["reason"].get<std::string>() << "]";
            else if (!v.witness.is_null() && v.status != Status::pass)
                os << "  " << v.witness.dump();
            os << "\n";
        }
        if (rep.profile)
            os << "  profile: K=" << rep.profile->K << " e=" << rep.profile->e
               << " |h|=" << rep.profile->h.size()
               << (rep.profile->galois_current_candidate ? " (galois current candidate)" : "")
               << "\n";
        os << "overall: " << status_name(rep.overall) << "\n";
        emit(opt, os.str());
    } else {
        emit_json(opt, rep.to_json(!opt.no_timing));
    }
    return rep.overall == Status::pass ? 0 : 1;
}

int cmd_fusion(const Options& opt) {
    const ModularData md = load_source(opt.source);
    const FusionResult res = fusion_tensor(md);
    Json nonzero = Json::array();
    std::ostringstream table;
    for (unsigned p = 0; p < res.rank && !res.tensor.empty(); ++p)
        for (unsigned q = 0; q < res.rank; ++q)
            for (unsigned r = 0; r < res.rank; ++r) {
                const Rational& v =
                    res.tensor[(static_cast<std::size_t>(p) * res.rank + q) * res.rank + r];
                if (v == 0) continue;
                nonzero.push_back(
                    Json{{"p", p}, {"q", q}, {"r", r}, {"value", rational_value(v)}});
                table << "N[" << p << "," << q << "," << r << "] = " << rational_text(v) << "\n";
            }
    if (opt.pretty) {
        std::ostringstream os;
        os << md.name() << "  rank " << res.rank << "\n" << table.str()
           << "fusion_integrality: " << status_name(res.verdict.status) << "\n";
        emit(opt, os.str());
    } else {
        Json j{{"name", md.name()},
               {"rank", res.rank},
               {"status", status_name(res.verdict.status)},
               {"nonzero", std::move(nonzero)}};
        if (!res.verdict.witness.is_null()) j["witness"] = res.verdict.witness;
        emit_json(opt, j);
    }
    return res.verdict.status == Status::pass ? 0 : 1;
}

int cmd_galois(const Options& opt) {
    const ModularData md = load_source(opt.source);
    const GaloisSuiteResult suite = galois_suite(md, make_config(opt));
    const std::vector<const CheckVerdict*> verdicts = {
        &suite.signed_permutation, &suite.s_transform, &suite.multiplicativity,
        &suite.t_commutation};

    if (opt.pretty) {
        std::ostringstream os;
        os << md.name() << "  conductor " << md.conductor() << "\n";
        for (std::size_t i = 0; i < suite.units.size(); ++i) {
            os << "  l=" << suite.units[i];
            if (suite.shape[i].is_signed_permutation) {
                os << "  perm=(";
                for (std::size_t q = 0; q < suite.shape[i].perm.size(); ++q)
                    os << (q ? " " : "") << suite.shape[i].perm[q];
                os << ")  signs=(";
                for (std::size_t q = 0; q < suite.shape[i].signs.size(); ++q)
                    os << (q ? " " : "") << (suite.shape[i].signs[q] > 0 ? '+' : '-');
                os << ")";
            } else {
                os << "  not a signed permutation";
            }
            os << "\n";
        }
        for (const auto* v : verdicts) os << v->name << ": " << status_name(v->status) << "\n";
        emit(opt, os.str());
    } else {
        Json units = Json::array();
        for (std::size_t i = 0; i < suite.units.size(); ++i) {
            Json u{{"l", suite.units[i]},
                   {"signed_permutation", suite.shape[i].is_signed_permutation}};
            if (suite.shape[i].is_signed_permutation) {
                u["perm"] = suite.shape[i].perm;
                u["signs"] = suite.shape[i].signs;
            }
            units.push_back(std::move(u));
        }
        Json checks = Json::array();
        for (const auto* v : verdicts) {
            Json c{{"name", v->name}, {"status", status_name(v->status)}};
            if (!v->witness.is_null()) c["witness"] = v->witness;
            checks.push_back(std::move(c));
        }
        emit_json(opt, Json{{"name", md.name()},
                            {"conductor", md.conductor()},
                            {"units", std::move(units)},
                            {"checks", std::move(checks)}});
    }
    const bool ok = std::all_of(verdicts.begin(), verdicts.end(),
                                [](const auto* v) { return v->status == Status::pass; });
    return ok ? 0 : 1;
}

int cmd_dims(const Options& opt) {
    const ModularData md = load_source(opt.source);
    bool ok = true;
    Json rows = Json::array();
    std::ostringstream table;
    for (unsigned g = 0; g <= opt.genus_max; ++g) {
        const GenusResult res = genus_dimension(md, g);
        Json row{{"g", g}, {"status", status_name(res.verdict.status)}};
        if (res.verdict.status == Status::pass) {
            row["dim"] = rational_value(res.value);
            table << "g=" << g << "  dim=" << rational_text(res.value) << "\n";
        } else {
            row["witness"] = res.verdict.witness;
            table << "g=" << g << "  " << status_name(res.verdict.status) << "\n";
            ok = false;
        }
        rows.push_back(std::move(row));
    }
    if (opt.pretty)
        emit(opt, md.name() + "\n" + table.str());
    else
        emit_json(opt, Json{{"name", md.name()}, {"dims", std::move(rows)}});
    return ok ? 0 : 1;
}

int cmd_seifert(const Options& opt) {
    const ModularData md = load_source(opt.source);
    std::vector<GenWord> words;
    words.reserve(opt.words.size());
    for (const std::string& w : opt.words) words.push_back(parse_word(w));
    const CycNumber value = seifert_invariant(md, opt.genus, words);
    const auto emb = value.embed();
    if (opt.pretty) {
        std::ostringstream os;
        os << md.name() << "  genus " << opt.genus << "\n";
        for (const auto& w : words) os << "  word: " << w.str() << "\n";
        os << "value = " << emb.re << (emb.im < 0 ? " - " : " + ") << std::abs(emb.im)
           << "i  (+/- " << emb.bound << ")\n";
        emit(opt, os.str());
    } else {
        Json ws = Json::array();
        for (const auto& w : words) ws.push_back(w.str());
        emit_json(opt, Json{{"name", md.name()},
                            {"genus", opt.genus},
                            {"words", std::move(ws)},
                            {"value", cyc_json(value)},
                            {"embedded", Json{{"re", emb.re}, {"im", emb.im}, {"bound", emb.bound}}}});
    }
    return 0;
}

int cmd_catalog(const Options& opt) {
    if (opt.pretty) {
        std::ostringstream os;
        for (const std::string& name : catalog_names()) {
            const ModularData md = catalog(name);
            os << name << "  (rank " << md.rank() << ", root order " << md.root_order()
               << ", conductor " << md.conductor() << ")\n";
        }
        emit(opt, os.str());
        return 0;
    }
    Json rows = Json::array();
    for (const std::string& name : catalog_names()) {
        const ModularData md = catalog(name);
        rows.push_back(Json{{"name", name},
                            {"rank", md.rank()},
                            {"root_order", md.root_order()},
                            {"conductor", md.conductor()}});
    }
    emit_json(opt, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of candidate modular data (S, T pairs)"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App* sub, bool with_source = true) {
        if (with_source)
            sub->add_option("source", opt.source, "input JSON file, or @name for a built-in")
                ->required();
        sub->add_option("--out", opt.out_path, "write output to a file instead of stdout");
        sub->add_flag("--pretty", opt.pretty, "human-readable table instead of JSON");
        return sub;
    };
    const auto add_config = [&](CLI::App* sub) {
        sub->add_option("--samples", opt.samples, "draws per probabilistic check");
        sub->add_option("--seed", opt.seed, "RNG seed for the sampled checks");
        sub->add_option("--tolerance", opt.tolerance, "numeric slack for positivity decisions");
        return sub;
    };

    CLI::App* verify = add_config(add_common(app.add_subcommand(
        "verify", "run the full battery and print the report")));
    verify->add_option("--genus-max", opt.genus_max, "largest genus for the dimension sums");
    verify->add_option("--checks", opt.checks_list,
                       "comma-separated check names or groups; dependencies are added");
    verify->add_flag("--no-timing", opt.no_timing, "omit elapsed-time fields from the report");

    add_common(app.add_subcommand("fusion", "print the nonzero fusion coefficients"));
    add_config(add_common(app.add_subcommand(
        "galois", "print the signed permutation and signs per Galois unit")));
    CLI::App* dims = add_common(app.add_subcommand("dims", "print dim V_g per genus"));
    dims->add_option("--genus-max", opt.genus_max, "largest genus to print");
    CLI::App* seifert = add_common(app.add_subcommand(
        "seifert", "evaluate the exact surgery sum for a genus and gluing words"));
    seifert->add_option("--genus", opt.genus, "base surface genus (at least 1)");
    seifert->add_option("--word", opt.words, "gluing word, e.g. \"S T^3 S\"; repeatable")
        ->required();
    add_common(app.add_subcommand("catalog", "list the built-in examples"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("verify")) return cmd_verify(opt);
        if (app.got_subcommand("fusion")) return cmd_fusion(opt);
        if (app.got_subcommand("galois")) return cmd_galois(opt);
        if (app.got_subcommand("dims")) return cmd_dims(opt);
        if (app.got_subcommand("seifert")) return cmd_seifert(opt);
        if (app.got_subcommand("catalog")) return cmd_catalog(opt);
    } catch (const Json::parse_error& e) {
        std::cerr << "error: input is not valid JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
