// degone-cli: number field, height and family-scan experiments.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "degone/report.hpp"

using namespace degone;

namespace {

enum Exit { kOk = 0, kVerification = 1, kUsage = 2, kNumeric = 3 };

int exit_code(const Error& e) {
    switch (e.code()) {
        case ErrorCode::VerificationFailed: return kVerification;
        case ErrorCode::IndexDivisor:
        case ErrorCode::PrecisionExhausted:
        case ErrorCode::BudgetExceeded: return kNumeric;
        default: return kUsage;
    }
}

struct Common {
    long prec = 192;
    double tol = 1e-9;
    std::string out;
    std::string format = "csv";
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, Common& c, bool with_output) {
    cmd->add_option("--prec", c.prec, "working precision in bits")->check(CLI::Range(64L, 1L << 20));
    cmd->add_option("--tol", c.tol, "tolerance for floating identities")->check(CLI::PositiveNumber);
    if (with_output) {
        cmd->add_option("--out", c.out, "output file (default stdout)");
        cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));
    }
}

/// Writes to --out or stdout.
void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open " + c.out);
    f << text;
}

NumberField field_from(const std::string& poly, long prec, const std::vector<std::string>& auts) {
    return make_field(parse_zpoly(poly), prec, auts);
}

/// Rational primes below the support of a, plus the extra ones requested.
PlaceSet support_places(const NumberField& K, const FieldElement& a, const std::vector<long>& extra) {
    std::vector<Int> ps;
    const auto F = factor_principal(K, a);
    for (const auto& [P, v] : F.factors())
        if (std::find(ps.begin(), ps.end(), P.p) == ps.end()) ps.push_back(P.p);
    for (long p : extra)
        if (std::find(ps.begin(), ps.end(), Int(p)) == ps.end()) ps.push_back(Int(p));
    std::sort(ps.begin(), ps.end());
    return places_above(K, ps);
}

std::string splitting_kind(const std::vector<PrimeIdeal>& ps, int d) {
    for (const auto& P : ps)
        if (P.e > 1) return "ramified";
    if (ps.size() == 1 && ps[0].f == d) return "inert";
    if (static_cast<int>(ps.size()) == d) return "split";
    return "partial";
}

int cmd_field_info(const std::string& poly, long bound, const std::vector<std::string>& auts, long prec) {
    NumberField K = field_from(poly, prec, auts);
    std::ostringstream os;
    os << "field: " << to_string(K.defining_poly()) << "\n";
    os << "degree: " << K.degree() << "\n";
    os << "disc: " << K.disc() << "\n";
    os << "index_prime_candidates:";
    for (const auto& p : K.index_primes()) os << " " << p;
    os << "\n";
    os << "nontrivial_automorphisms: " << K.automorphisms().size() << "\n";
    bool ok = true;
    for (const auto& p : primes_below(static_cast<unsigned long>(bound))) {
        os << "p=" << p << ": ";
        try {
            auto ps = split_prime(K, p);
            int sum = 0;
            for (const auto& P : ps) {
                os << P.label() << "(e=" << P.e << ",f=" << P.f << ") ";
                sum += P.e * P.f;
            }
            os << splitting_kind(ps, K.degree()) << " sum_ef=" << sum << (sum == K.degree() ? " ok" : " FAIL") << "\n";
            ok = ok && sum == K.degree();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::IndexDivisor) throw;
            os << "index divisor, not handled\n";
        }
    }
    std::cout << os.str();
    return ok ? kOk : kVerification;
}

int cmd_factor(const std::string& poly, const std::string& base, const std::vector<std::string>& auts, long prec) {
    NumberField K = field_from(poly, prec, auts);
    FieldElement a = K.parse(base);
    auto F = factor_principal(K, a);
    Json out{{"field", to_string(K.defining_poly())},
             {"element", a.str()},
             {"norm", element_norm(a).get_str()},
             {"factors", factorization_json(F)}};
    std::cout << out.dump(2) << "\n";
    return kOk;
}

int cmd_height(const std::string& poly, const std::string& base, const std::string& f_text,
               const std::vector<long>& extra_s, const std::vector<std::string>& auts, const Common& c) {
    NumberField K = field_from(poly, c.prec, auts);
    FieldElement a = K.parse(base);
    auto h = abs_height(K, a, c.tol);
    Json out{{"field", to_string(K.defining_poly())},
             {"element", a.str()},
             {"h_mahler", fmt_real(mahler_height(a))},
             {"h_places", fmt_real(places_height(K, a))},
             {"residual", fmt_real(h.residual)}};
    if (!f_text.empty()) {
        auto D = parse_divisor_gm(K, f_text);
        PlaceSet S = support_places(K, a, extra_s);
        HeightOptions opt;
        opt.tolerance = c.tol;
        auto r = gm_height_report(K, D, S, a, opt);
        out["f"] = f_text;
        out["h_D"] = fmt_real(r.h_D);
        out["h_deg1"] = fmt_real(r.h_deg1);
        out["h_deg_gt1"] = fmt_real(r.h_deg_gt1);
        out["norm_I"] = r.norm_I.exp_str();
        out["norm_J"] = r.norm_J.exp_str();
        out["c_u"] = fmt_real(exp(r.log_c_u));
        out["cu_residual"] = fmt_real(r.cu_residual);
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
}

struct GmArgs {
    std::string poly, base, f;
    std::vector<long> extra_s;
    std::vector<std::string> auts;
    long n_min = 1, n_max = 40;
    double eps = 0.1;
    int m_max = 12;
    bool relative = false;
};

int cmd_gm_scan(const GmArgs& g, const Common& c) {
    NumberField K = field_from(g.poly, c.prec, g.auts);
    FieldElement a = K.parse(g.base);
    GmExperiment X{K, parse_divisor_gm(K, g.f), support_places(K, a, g.extra_s), a};
    X.n_min = g.n_min;
    X.n_max = g.n_max;
    X.epsilon = g.eps;
    X.m_max = g.m_max;
    X.relative_comparator = g.relative;
    X.height.tolerance = c.tol;
    X.threads = c.threads;

    RunHeader h;
    h.command = "gm-scan";
    Json s = Json::array();
    for (const auto& p : X.S.rational_primes()) s.push_back(p.get_str());
    h.config = {{"poly", to_string(K.defining_poly())}, {"base", a.str()}, {"f", g.f},
                {"S", s},  {"automorphisms", g.auts},  {"n_min", g.n_min}, {"n_max", g.n_max},
                {"epsilon", g.eps}, {"m_max", g.m_max}, {"comparator", g.relative ? "relative" : "absolute"}};
    h.precision = c.prec;
    h.tolerance = c.tol;
    h.notes.emplace_back("classification", classify_family(K, a, g.m_max).str());

    auto rows = run_gm_family(X);
    std::ostringstream os;
    if (c.format == "json")
        write_json(os, h, rows, false);
    else
        write_csv(os, h, rows, false);
    emit(c, os.str());
    return kOk;
}

int cmd_fib_demo(long n_max, const Common& c) {
    if (n_max < 1 || n_max % 2 == 0) {
        std::cerr << "error: --nmax must be odd and positive\n";
        return kUsage;
    }
    auto rep = fib_demo(n_max, false, c.prec);
    std::ostringstream os;
    RunHeader h{"fib-demo", Json{{"n_max", n_max}}, c.prec, c.tol, {}};
    if (c.format == "json") {
        Json rows = Json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"n", r.n},
                            {"F_n", r.fib.get_str()},
                            {"ideal_ok", r.ideal_ok},
                            {"scalar_ok", r.scalar_ok},
                            {"norm_J", r.norm_J.get_str()},
                            {"inert_prime", r.inert_prime},
                            {"ideal", factorization_json(r.ideal)}});
        os << Json{{"header", h.json()}, {"rows", rows}, {"passed", rep.passed()}}.dump(2) << "\n";
    } else {
        write_csv_header(os, h);
        os << "n,F_n,ideal_ok,scalar_ok,norm_J,inert_prime\n";
        for (const auto& r : rep.rows)
            os << r.n << "," << r.fib << "," << (r.ideal_ok ? "pass" : "FAIL") << "," << (r.scalar_ok ? "pass" : "FAIL")
               << "," << r.norm_J << "," << (r.inert_prime ? 1 : 0) << "\n";
    }
    emit(c, os.str());
    return rep.passed() ? kOk : kVerification;
}

struct EllArgs {
    std::string config;
    long n_max = -1;
    double eps = -1;
    int m_max = -1;
};

EllPoint point_from_json(const EllCurve& E, const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return EllPoint::infinity();
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::Parse, "a point is \"inf\" or [\"x\", \"y\"]");
    return make_point(E, j[0].get<std::string>(), j[1].get<std::string>());
}

int cmd_ell_scan(const EllArgs& a, const Common& c) {
    Json cfg;
    {
        std::ifstream f(a.config);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open " + a.config);
        try {
            cfg = Json::parse(f);
        } catch (const Json::exception& e) {
            throw Error(ErrorCode::Parse, std::string("config: ") + e.what());
        }
    }
    try {
        if (a.n_max >= 0) cfg["n_max"] = a.n_max;
        if (a.eps > 0) cfg["epsilon"] = a.eps;
        if (a.m_max > 0) cfg["m_max"] = a.m_max;
        const std::string k_text = cfg.value("k", "x"), l_text = cfg.value("l", k_text);
        NumberField k = field_from(k_text, c.prec, {});
        NumberField l = field_from(l_text, c.prec, cfg.value("l_automorphisms", std::vector<std::string>{}));
        if (to_string(k.defining_poly()) == to_string(l.defining_poly())) l = k;
        EllCurve E = make_curve(k, l, cfg.at("a").get<std::string>(), cfg.at("b").get<std::string>(),
                                cfg.value("iota", std::string()));
        std::vector<std::pair<EllPoint, int>> comps;
        for (const auto& d : cfg.value("D", Json::array({Json::array({"inf", 1})})))
            comps.emplace_back(point_from_json(E, d.at(0)), d.at(1).get<int>());
        EllExperiment X{E, make_divisor_ell(E, comps), point_from_json(E, cfg.at("P"))};
        X.n_min = cfg.value("n_min", 1L);
        X.n_max = cfg.value("n_max", 10L);
        X.epsilon = cfg.value("epsilon", 0.1);
        X.m_max = cfg.value("m_max", 8);
        X.coordinate_bits = cfg.value("coordinate_bits", std::size_t{4096});
        X.height.tolerance = c.tol;
        X.threads = c.threads;

        RunHeader h;
        h.command = "ell-scan";
        h.config = {{"k", k_text},
                    {"l", l_text},
                    {"iota", E.iota.str()},
                    {"a", cfg.at("a")},
                    {"b", cfg.at("b")},
                    {"P", cfg.at("P")},
                    {"D", cfg.value("D", Json::array({Json::array({"inf", 1})}))},
                    {"n_min", X.n_min},
                    {"n_max", X.n_max},
                    {"epsilon", X.epsilon},
                    {"m_max", X.m_max},
                    {"coordinate_bits", X.coordinate_bits}};
        h.precision = c.prec;
        h.tolerance = c.tol;
        auto rows = run_ell_family(X);
        auto w = family_witness(E, X.P, X.m_max);
        h.notes.emplace_back("exceptional",
                             w.found ? "witness (" + std::to_string(w.m) + ", " + w.nu + ", " + w.sigma + ")" : "no");
        for (const auto& r : rows) {
            if (r.skip == "BudgetExceeded") {
                h.notes.emplace_back("truncated_at", std::to_string(r.n));
                std::cerr << "note: scan truncated at n = " << r.n << " (coordinate or factoring budget)\n";
                break;
            }
        }
        std::ostringstream os;
        if (c.format == "json")
            write_json(os, h, rows, true);
        else
            write_csv(os, h, rows, true);
        emit(c, os.str());
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("config: ") + e.what());
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degone-cli: heights and degree-one primes in S-unit and elliptic families"};
    app.require_subcommand(1);

    Common common;
    std::string poly, base, f_text;
    std::vector<std::string> auts;
    std::vector<long> extra_s;
    long bound = 50;

    auto* fi = app.add_subcommand("field-info", "field summary and splitting of small primes");
    fi->add_option("--poly", poly, "defining polynomial, e.g. \"x^2 - x - 1\"")->required();
    fi->add_option("--bound", bound, "split primes below this bound")->check(CLI::Range(2L, 100000L));
    fi->add_option("--aut", auts, "image of t under an automorphism (repeatable)");
    fi->add_option("--prec", common.prec, "working precision in bits");

    auto* fa = app.add_subcommand("factor", "prime factorization of a principal ideal");
    fa->add_option("--poly", poly)->required();
    fa->add_option("--base", base, "element as a polynomial in t")->required();
    fa->add_option("--aut", auts);
    fa->add_option("--prec", common.prec);

    auto* he = app.add_subcommand("height", "absolute height, and the divisor decomposition with --f");
    he->add_option("--poly", poly)->required();
    he->add_option("--base", base)->required();
    he->add_option("--f", f_text, "divisor polynomial in x, e.g. \"x + 1\"");
    he->add_option("--S", extra_s, "extra rational primes for S");
    he->add_option("--aut", auts);
    add_common(he, common, false);

    GmArgs gm;
    auto* gs = app.add_subcommand("gm-scan", "family u = a^n");
    gs->add_option("--poly", gm.poly)->required();
    gs->add_option("--base", gm.base)->required();
    gs->add_option("--f", gm.f)->required();
    gs->add_option("--S", gm.extra_s, "extra rational primes for S");
    gs->add_option("--aut", gm.auts);
    gs->add_option("--nmin", gm.n_min)->check(CLI::Range(-1000000L, 1000000L));
    gs->add_option("--nmax", gm.n_max)->check(CLI::Range(-1000000L, 1000000L));
    gs->add_option("--eps", gm.eps)->check(CLI::PositiveNumber);
    gs->add_option("--mmax", gm.m_max)->check(CLI::Range(1, 1000));
    gs->add_flag("--relative", gm.relative, "compare with eps * [k:Q] * h(u)");
    add_common(gs, common, true);

    long fib_nmax = 21;
    auto* fd = app.add_subcommand("fib-demo", "Fibonacci ideal identity in Q(sqrt 5)");
    fd->add_option("--nmax", fib_nmax);
    add_common(fd, common, true);

    EllArgs ell;
    auto* es = app.add_subcommand("ell-scan", "family nP on an elliptic curve");
    es->add_option("config", ell.config, "JSON configuration file")->required()->check(CLI::ExistingFile);
    es->add_option("--nmax", ell.n_max);
    es->add_option("--eps", ell.eps)->check(CLI::PositiveNumber);
    es->add_option("--mmax", ell.m_max)->check(CLI::Range(1, 1000));
    add_common(es, common, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*fi) return cmd_field_info(poly, bound, auts, common.prec);
        if (*fa) return cmd_factor(poly, base, auts, common.prec);
        if (*he) return cmd_height(poly, base, f_text, extra_s, auts, common);
        if (*gs) return cmd_gm_scan(gm, common);
        if (*fd) return cmd_fib_demo(fib_nmax, common);
        if (*es) return cmd_ell_scan(ell, common);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumeric;
    }
    return kUsage;
}
