#include "keller/cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace keller {

namespace {

using Json = nlohmann::ordered_json;

struct Shared {
    std::string json_path;
    std::uint64_t seed = 0;
    std::optional<std::size_t> max_spairs;
    std::optional<std::uint32_t> max_degree;
    int factor_cap = 10;
    bool absolute = false;
    bool force = false;
    bool timing = false;

    GroebnerLimits limits() const {
        GroebnerLimits l = GroebnerLimits::from_environment();
        if (max_spairs) l.max_spairs = *max_spairs;
        if (max_degree) l.max_degree = *max_degree;
        return l;
    }
    FactorOptions factor() const { return {factor_cap, absolute}; }
    ClassifyConfig config() const { return {limits(), factor(), force}; }
};

// Mathematical refusal: caps, degenerate runs, preconditions not met.
struct Refusal : Error {
    using Error::Error;
};

void write_json(const Shared& s, const std::string& text) {
    if (s.json_path.empty()) return;
    std::ofstream f(s.json_path, std::ios::binary);
    if (!f) throw CLI::ValidationError("--json", "cannot open " + s.json_path);
    f << text;
}
void write_json(const Shared& s, const Json& j) { write_json(s, j.dump(2) + "\n"); }

Endomorphism parse_map(const std::string& p, const std::string& q) {
    const VarContext& xy = VarContext::xy();
    return Endomorphism(parse_poly(p, xy), parse_poly(q, xy));
}

std::string factor_line(const Factorization& f, std::size_t i) {
    std::string s = to_string(f.factors[i].poly) + " (multiplicity " + std::to_string(f.factors[i].multiplicity);
    if (i < f.absolute.size()) {
        s += f.absolute[i] == AbsoluteStatus::AbsolutelyIrreducible ? ", absolutely irreducible"
                                                                    : ", absolute status undetermined";
        if (i < f.gao_dimension.size()) s += ", absolute factors " + std::to_string(f.gao_dimension[i]);
    }
    return s + ")";
}

void print_report(const ClassificationReport& R, bool timing, std::ostream& out) {
    out << "p = " << to_string(R.map.p) << "\n";
    out << "q = " << to_string(R.map.q) << "\n";
    out << "jacobian = " << to_string(R.jacobian.det) << "\n";
    out << "verdict = " << to_string(R.verdict) << "\n";
    if (!R.reason.empty()) out << "reason = " << R.reason << "\n";
    if (R.kernel) {
        out << "H = " << to_string(R.kernel->H) << "\n";
        out << "r = " << R.kernel->r << "\n";
    }
    if (R.uv) {
        out << "u = " << to_string(R.uv->u) << "\n";
        out << "v = " << to_string(R.uv->v) << "\n";
        out << "g = " << to_string(R.uv->g) << "\n";
    }
    for (const auto& e : R.v_factors)
        out << "v_factor = " << to_string(e.factor) << " (multiplicity " << e.multiplicity
            << (e.preserved ? ", image irreducible" : ", image splits") << ")\n";
    if (R.units) out << "units_in_subring = " << (R.units->all_units_in_Cpq ? "true" : "false") << "\n";
    if (R.inverse) {
        out << "s = " << to_string(R.inverse->first) << "\n";
        out << "t = " << to_string(R.inverse->second) << "\n";
    }
    if (R.tfae)
        out << std::boolalpha << "tfae = i:" << R.tfae->i << " ii:" << R.tfae->ii << " iii:" << R.tfae->iii
            << (R.tfae->consistent() ? " consistent" : " inconsistent") << std::noboolalpha << "\n";
    out << "spairs = " << R.stats.spairs << "\n";
    if (timing) out << "millis = " << R.millis << "\n";
    for (const auto& n : R.notes) out << "note: " << n << "\n";
}

bool refused(Verdict v) { return v == Verdict::Degenerate || v == Verdict::CounterexampleCandidate; }

int run_check(const Shared& s, const std::string& p, const std::string& q, std::ostream& out) {
    ClassificationReport R = classify(parse_map(p, q), s.config());
    print_report(R, s.timing, out);
    write_json(s, report_json(R, s.timing));
    return refused(R.verdict) ? 1 : 0;
}

int run_batch(const Shared& s, const std::string& path, std::ostream& out, std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "cannot open " << path << "\n";
        return 2;
    }
    struct Entry {
        std::size_t line;
        std::optional<Endomorphism> map;
        std::string error;
        std::optional<ClassificationReport> report;
    };
    std::vector<Entry> entries;
    std::string text;
    for (std::size_t line = 1; std::getline(in, text); ++line) {
        auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos || text[first] == '#') continue;
        Entry e{line, std::nullopt, {}, std::nullopt};
        auto semi = text.find(';');
        try {
            if (semi == std::string::npos) throw ParseError(ParseError::Kind::Syntax, 0, "expected 'p ; q'");
            e.map = parse_map(text.substr(0, semi), text.substr(semi + 1));
        } catch (const ParseError& ex) {
            e.error = ex.what();
        }
        entries.push_back(std::move(e));
    }

    const ClassifyConfig config = s.config();
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < entries.size();) {
            if (!entries[i].map) continue;
            entries[i].report = classify(*entries[i].map, config);
        }
    };
    std::size_t n = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int code = 0;
    Json all = Json::array();
    for (const auto& e : entries) {
        out << "[line " << e.line << "] ";
        if (!e.map) {
            out << "parse error: " << e.error << "\n";
            code = 2;
            continue;
        }
        const auto& R = *e.report;
        out << "p = " << to_string(R.map.p) << " ; q = " << to_string(R.map.q) << " -> " << to_string(R.verdict);
        if (R.kernel) out << " r = " << R.kernel->r;
        if (!R.reason.empty()) out << " (" << R.reason << ")";
        out << "\n";
        if (refused(R.verdict) && code == 0) code = 1;
        all.push_back(Json::parse(report_json(R, s.timing)));
    }
    write_json(s, all);
    return code;
}

void require_keller(const Endomorphism& f) {
    if (f.jacobian.is_zero() || !f.jacobian.is_constant())
        throw Refusal("Jacobian " + to_string(f.jacobian) + " is not a nonzero constant");
}

// Tries the map variables first, then the coordinate names.
Polynomial parse_any(const std::string& text) {
    const VarContext contexts[] = {VarContext::xy(), VarContext::u12(), VarContext::u123()};
    for (std::size_t i = 0; i < 3; ++i) {
        try {
            return parse_poly(text, contexts[i]);
        } catch (const ParseError& e) {
            if (e.kind() != ParseError::Kind::UnknownVariable || i == 2) throw;
        }
    }
    throw Error("unreachable");
}

MonomialOrder parse_order(const std::string& name) {
    if (name == "lex") return MonomialOrder::lex();
    if (name == "grevlex") return MonomialOrder::grevlex();
    if (name.rfind("block:", 0) == 0 && name.size() > 6 &&
        std::all_of(name.begin() + 6, name.end(), [](unsigned char c) { return std::isdigit(c); }))
        return MonomialOrder::block(std::stoul(name.substr(6)));
    throw CLI::ValidationError("--order", "expected lex, grevlex or block:K");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    for (std::string part; std::getline(in, part, sep);) {
        auto a = part.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        part = part.substr(a, part.find_last_not_of(" \t") - a + 1);
        parts.push_back(part);
    }
    return parts;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Keller-map toolkit: kernels, uv decompositions, factorization and automorphism checks", "keller"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Shared s;
    app.add_option("--json", s.json_path, "write the machine report to this file");
    app.add_option("--seed", s.seed, "seed for generation and probes");
    app.add_option("--max-spairs", s.max_spairs, "S-pair cap (default 50000 or KELLER_MAX_SPAIRS)");
    app.add_option("--max-degree", s.max_degree, "cap on intermediate Groebner degree (default 60)");
    app.add_option("--factor-cap", s.factor_cap, "total-degree cap for factorization (default 10)");
    app.add_flag("--absolute", s.absolute, "also certify absolute irreducibility");
    app.add_flag("--force", s.force, "compute all evidence even without the Keller condition");
    app.add_flag("--timing", s.timing, "report wall-clock times");

    std::string p, q, w, v, f, batch, vars, order = "grevlex", gens;
    std::size_t samples = 20;
    int degree = 3, cap = 12;

    auto map_opts = [&](CLI::App* sub, bool required) {
        auto* po = sub->add_option("-p", p, "first component, in x and y");
        auto* qo = sub->add_option("-q", q, "second component, in x and y");
        if (required) {
            po->required();
            qo->required();
        }
    };
    auto* check = app.add_subcommand("check", "classify a map");
    map_opts(check, false);
    check->add_option("--batch", batch, "file with one 'p ; q' per line");
    auto* kernel = app.add_subcommand("kernel", "generator of the kernel of u1 -> p, u2 -> q, u3 -> x");
    map_opts(kernel, true);
    auto* uv = app.add_subcommand("uv", "y = u(p,q,x)/v(p,q)");
    map_opts(uv, true);
    auto* invert_cmd = app.add_subcommand("invert", "polynomial inverse of a Keller map");
    map_opts(invert_cmd, true);
    auto* member = app.add_subcommand("member", "is w in Q[p, q]?");
    map_opts(member, true);
    member->add_option("-w", w, "polynomial in x and y")->required();
    auto* factor = app.add_subcommand("factor", "factor a polynomial in two variables over Q");
    factor->add_option("-f", f, "polynomial")->required();
    auto* units = app.add_subcommand("units", "are the units of Q[x,y][1/v(p,q)] in Q(p,q)?");
    map_opts(units, true);
    units->add_option("-v", v, "polynomial in u1 and u2")->required();
    auto* probe = app.add_subcommand("probe-fc", "search for a factorial-closure violation");
    map_opts(probe, true);
    probe->add_option("--samples", samples, "number of G to try (default 20)");
    probe->add_option("--degree", degree, "degree bound for random G (default 3)");
    auto* gen = app.add_subcommand("gen", "random tame automorphism from --seed");
    gen->add_option("--cap", cap, "total-degree cap (default 12)");
    auto* gb = app.add_subcommand("gb", "reduced Groebner basis");
    gb->add_option("--gens", gens, "generators separated by ';'")->required();
    gb->add_option("--vars", vars, "comma-separated variables (default x,y)");
    gb->add_option("--order", order, "lex, grevlex or block:K (default grevlex)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help() << "expression grammar: " << kGrammar << "\n";
        return 2;
    }

    try {
        if (check->parsed()) {
            if (!batch.empty()) return run_batch(s, batch, out, err);
            if (p.empty() || q.empty()) throw CLI::RequiredError("-p and -q (or --batch)");
            return run_check(s, p, q, out);
        }
        if (kernel->parsed()) {
            KernelGenerator k = kernel_generator(parse_map(p, q), s.limits());
            out << "H = " << to_string(k.H) << "\n" << "r = " << k.r << "\n";
            Json coeffs = Json::array();
            for (std::size_t i = 0; i < k.coeffs.size(); ++i) {
                out << "H" << i << " = " << to_string(k.coeffs[i]) << "\n";
                coeffs.push_back(to_string(k.coeffs[i]));
            }
            write_json(s, Json{{"H", to_string(k.H)}, {"r", k.r}, {"coeffs", coeffs}, {"spairs", k.basis.stats.spairs}});
            return 0;
        }
        if (uv->parsed()) {
            UVDecomposition d = uv_decomposition(parse_map(p, q), s.limits());
            out << "u = " << to_string(d.u) << "\n"
                << "v = " << to_string(d.v) << "\n"
                << "g = " << to_string(d.g) << "\n"
                << "h = " << to_string(d.h) << "\n"
                << "r = " << d.r << "\n";
            write_json(s, Json{{"u", to_string(d.u)},
                               {"v", to_string(d.v)},
                               {"g", to_string(d.g)},
                               {"h", to_string(d.h)},
                               {"r", d.r}});
            return 0;
        }
        if (invert_cmd->parsed()) {
            Endomorphism m = parse_map(p, q);
            require_keller(m);
            auto [si, ti] = invert(m, s.limits());
            if (!verify_inverse(m, si, ti)) throw Refusal("candidate inverse failed verification");
            out << "s = " << to_string(si) << "\n" << "t = " << to_string(ti) << "\n";
            write_json(s, Json{{"s", to_string(si)}, {"t", to_string(ti)}});
            return 0;
        }
        if (member->parsed()) {
            Endomorphism m = parse_map(p, q);
            auto G = subring_membership(parse_poly(w, VarContext::xy()), m, s.limits());
            out << "G = " << (G ? to_string(*G) : "none") << "\n";
            write_json(s, Json{{"member", G.has_value()}, {"G", G ? Json(to_string(*G)) : Json(nullptr)}});
            return 0;
        }
        if (factor->parsed()) {
            Factorization fz = factor_bivariate(parse_any(f), s.factor());
            out << "content = " << fz.content.get_str() << "\n";
            Json list = Json::array();
            for (std::size_t i = 0; i < fz.factors.size(); ++i) {
                out << "factor = " << factor_line(fz, i) << "\n";
                Json e{{"factor", to_string(fz.factors[i].poly)}, {"multiplicity", fz.factors[i].multiplicity}};
                if (i < fz.absolute.size())
                    e["absolutely_irreducible"] = fz.absolute[i] == AbsoluteStatus::AbsolutelyIrreducible;
                list.push_back(std::move(e));
            }
            write_json(s, Json{{"content", fz.content.get_str()}, {"factors", list}});
            return 0;
        }
        if (units->parsed()) {
            Endomorphism m = parse_map(p, q);
            UnitsVerdict uvd = localization_units_check(m, parse_poly(v, VarContext::u12()), s.factor(), s.limits());
            out << "all_in_subring = " << (uvd.all_units_in_Cpq ? "true" : "false") << "\n";
            Json list = Json::array();
            for (const auto& wt : uvd.witnesses) {
                out << "factor = " << to_string(wt.factor) << " (multiplicity " << wt.multiplicity << ") "
                    << (wt.G ? "= " + to_string(*wt.G) + " in p, q" : "not in Q[p, q]") << "\n";
                list.push_back({{"factor", to_string(wt.factor)},
                                {"multiplicity", wt.multiplicity},
                                {"G", wt.G ? Json(to_string(*wt.G)) : Json(nullptr)}});
            }
            write_json(s, Json{{"all_in_subring", uvd.all_units_in_Cpq}, {"witnesses", list}});
            return 0;
        }
        if (probe->parsed()) {
            Endomorphism m = parse_map(p, q);
            ProbeResult pr = factorially_closed_probe(m, samples, degree, s.seed, s.factor(), s.limits());
            out << "violation = " << (pr.violation ? "true" : "false") << "\n";
            Json j{{"violation", pr.violation}, {"tested", pr.tested}, {"skipped", pr.skipped}};
            if (pr.witness) {
                out << "a1 = " << to_string(pr.witness->first) << "\n"
                    << "a2 = " << to_string(pr.witness->second) << "\n"
                    << "G = " << to_string(*pr.G) << "\n";
                j["a1"] = to_string(pr.witness->first);
                j["a2"] = to_string(pr.witness->second);
                j["G"] = to_string(*pr.G);
            } else {
                out << "no violation found (not a proof of factorial closure)\n";
            }
            out << "tested = " << pr.tested << "\n" << "skipped = " << pr.skipped << "\n";
            write_json(s, j);
            return 0;
        }
        if (gen->parsed()) {
            TameRecipe r = make_recipe(s.seed, cap);
            Endomorphism m = generate_tame(r);
            out << "recipe = " << describe(r) << "\n"
                << "p = " << to_string(m.p) << "\n"
                << "q = " << to_string(m.q) << "\n"
                << "jacobian = " << recipe_jacobian(r).get_str() << "\n";
            write_json(s, Json{{"seed", s.seed},
                               {"recipe", describe(r)},
                               {"p", to_string(m.p)},
                               {"q", to_string(m.q)},
                               {"jacobian", recipe_jacobian(r).get_str()}});
            return 0;
        }
        if (gb->parsed()) {
            VarContext ctx = vars.empty() ? VarContext::xy() : VarContext(split(vars, ','));
            std::vector<Polynomial> list;
            for (const auto& g : split(gens, ';')) list.push_back(parse_poly(g, ctx));
            GroebnerBasis b = buchberger(Ideal(ctx, list), parse_order(order), s.limits());
            Json elems = Json::array();
            for (const auto& e : b.elements) {
                out << to_string(e) << "\n";
                elems.push_back(to_string(e));
            }
            out << "order = " << b.order.describe() << "\n" << "spairs = " << b.stats.spairs << "\n";
            write_json(s, Json{{"order", b.order.describe()}, {"basis", elems}, {"spairs", b.stats.spairs}});
            return 0;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\nexpression grammar: " << kGrammar << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "refused: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace keller
