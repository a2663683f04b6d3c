// ljensen: central derivatives, Taylor coefficients, saddle-point
// asymptotics, and certified Jensen-polynomial hyperbolicity for completed
// L-functions (zeta, real primitive Dirichlet, modular newforms, imaginary
// quadratic Dedekind).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ljensen/ljensen.hpp"

using namespace ljensen;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string family = "zeta";
    long disc = -4;
    long level = 11;
    long weight = 2;
    std::string coeffs_file;
    std::string epsf = "auto";
    long digits = 60;
    std::string n_range = "10";
    std::string d_range = "2..3";
    long order = 2;
    std::string format = "pretty";
    std::string cache_dir;
    unsigned workers = 1;
    bool allow_long = false;
    std::string out_file;
    std::string which = "chi4_gamma";

    PrecisionContext ctx() const { return PrecisionContext::from_digits(digits); }
    mpfr_prec_t fam_prec() const { return ctx().working_bits + 64; }
};

std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        long v = std::stol(s);
        return {v, v};
    }
    long lo = std::stol(s.substr(0, dots));
    long hi = std::stol(s.substr(dots + 2));
    if (lo > hi) throw InvalidParams("range must be ascending: " + s);
    return {lo, hi};
}

LFamily build_family(const RunConfig& cfg) {
    if (cfg.family == "zeta") return make_zeta(cfg.fam_prec());
    if (cfg.family == "dirichlet") return make_dirichlet(cfg.disc, cfg.fam_prec());
    if (cfg.family == "dedekind") return make_dedekind(cfg.disc, cfg.fam_prec());
    if (cfg.family == "modular") {
        std::vector<BigReal> coeffs;
        if (!cfg.coeffs_file.empty()) {
            coeffs = load_coefficient_csv(cfg.coeffs_file, cfg.fam_prec());
        } else if (cfg.level == 11 && cfg.weight == 2) {
            // built-in eta-product newform of level 11
            auto z = eta_product({{1, 2}, {11, 2}}, 600);
            for (auto& c : z) coeffs.push_back(to_bigreal(c, cfg.fam_prec()));
        } else {
            throw InvalidParams(
                "modular family needs --coeffs FILE (builtin only for level 11, weight 2)");
        }
        int ef;
        if (cfg.epsf == "auto")
            ef = detect_functional_sign(coeffs, cfg.level, cfg.weight, cfg.ctx());
        else if (cfg.epsf == "+1" || cfg.epsf == "1")
            ef = +1;
        else if (cfg.epsf == "-1")
            ef = -1;
        else
            throw InvalidParams("--epsf must be +1, -1 or auto");
        return make_modular(cfg.level, cfg.weight, coeffs, ef, cfg.fam_prec());
    }
    throw InvalidParams("unknown family: " + cfg.family);
}

json num_json(const BigReal& v, long digits) {
    return json{{"dec", v.str((int)digits)}, {"hex", v.hex()}};
}

std::ostream& open_out(std::ofstream& file, const RunConfig& cfg) {
    if (cfg.out_file.empty()) return std::cout;
    file.open(cfg.out_file);
    if (!file) throw InvalidParams("cannot open output file " + cfg.out_file);
    return file;
}

int cmd_gamma(const RunConfig& cfg) {
    auto fam = build_family(cfg);
    auto [lo, hi] = parse_range(cfg.n_range);
    if (lo < 0) throw InvalidParams("--n must be nonnegative");
    if (hi > 2000 && !cfg.allow_long)
        throw InvalidParams("n > 2000 takes a while; pass --allow-long");
    std::optional<GammaCache> cache;
    if (!cfg.cache_dir.empty()) cache.emplace(cfg.cache_dir);
    auto recs = gamma_range(fam, lo, hi, cfg.ctx(), cache ? &*cache : nullptr, cfg.workers);

    std::ofstream file;
    auto& os = open_out(file, cfg);
    if (cfg.format == "csv") {
        os << "n,gamma,bound\n";
        for (const auto& r : recs)
            os << r.n << "," << r.value.str((int)cfg.digits) << "," << r.error_bound.str(6)
               << "\n";
    } else if (cfg.format == "json") {
        json rows = json::array();
        for (const auto& r : recs)
            rows.push_back({{"n", r.n},
                            {"gamma", num_json(r.value, cfg.digits)},
                            {"bound", num_json(r.error_bound, 8)},
                            {"bits", (long)r.bits}});
        os << json{{"family", fam.name}, {"rows", rows}}.dump(1) << "\n";
    } else {
        os << "# gamma(n) for " << fam.name << " at " << cfg.digits << " digits\n";
        for (const auto& r : recs)
            os << "n = " << r.n << "   gamma = " << r.value.str((int)std::min(cfg.digits, 24L))
               << "   (bound " << r.error_bound.str(4) << ")\n";
    }
    return 0;
}

struct TableRow {
    long n;
    const char* two_term;  // reference two-term value
    const char* exact;     // reference exact value
    const char* ratio;     // reference exact/two-term
    bool long_row;         // gated behind --allow-long
};

// reference values for the odd character of modulus 4; the exact/two-term
// assignment is cross-checked against this library's own quadrature, and the
// ratio column is exact/two-term throughout
const TableRow kChi4Gamma[] = {
    {10, "8.6123842782e-14", "8.5921206983e-14", "0.997647158", false},
    {100, "1.0057597216e-174", "1.0054943805e-174", "0.9997361785", false},
    {1000, "1.7838866878e-2350", "1.7838444188e-2350", "0.9999763051", false},
    {10000, "1.7271200653e-30650", "1.7271165350e-30650", "0.9999979560", true},
    {100000, "8.1291531304e-384416", "8.1291521235e-384416", "0.9999998761", true},
};

struct JensenRow {
    long n;
    long d;
    const char* coeffs[4];  // expected monic coefficients, low degree first
};
const JensenRow kChi4Jensen[] = {
    {100, 2, {"-1.9985", "0.3332", "1", nullptr}},
    {1000, 2, {"-1.9997", "0.1136", "1", nullptr}},
    {100, 3, {"-1.3254", "-5.8678", "0.8306", "1"}},
    {1000, 3, {"-0.4414", "-5.9847", "0.2839", "1"}},
};

int cmd_table(const RunConfig& cfg) {
    auto fam = make_dirichlet(-4, cfg.fam_prec());
    auto ctx = cfg.ctx();
    std::optional<GammaCache> cache;
    if (!cfg.cache_dir.empty()) cache.emplace(cfg.cache_dir);
    std::ofstream file;
    auto& os = open_out(file, cfg);

    if (cfg.which == "chi4_gamma") {
        os << "# chi4 gamma table: computed vs reference\n";
        for (const auto& row : kChi4Gamma) {
            if (row.long_row && !cfg.allow_long) continue;
            BigReal gh = gamma_hat(fam, row.n, B1Variant::Calibrated, ctx);
            auto rec = gamma_range(fam, row.n, row.n, ctx, cache ? &*cache : nullptr)[0];
            BigReal ratio = rec.value / gh;
            auto rel = [&](const BigReal& got, const char* ref) {
                BigReal r = BigReal::from_string(ref, ctx.working_bits);
                return abs(got / r - 1).str(3);
            };
            os << "n = " << row.n << ":\n"
               << "  two-term  " << gh.str(11) << "  ref " << row.two_term << "  rel "
               << rel(gh, row.two_term) << "\n"
               << "  exact     " << rec.value.str(11) << "  ref " << row.exact << "  rel "
               << rel(rec.value, row.exact) << "\n"
               << "  ratio     " << ratio.str(10) << "  ref " << row.ratio << "  rel "
               << rel(ratio, row.ratio) << "\n";
        }
        return 0;
    }
    if (cfg.which == "chi4_jensen") {
        os << "# normalized Jensen polynomials vs reference (coefficients low to high)\n";
        for (const auto& row : kChi4Jensen) {
            auto recs = gamma_range(fam, row.n, row.n + row.d, ctx, cache ? &*cache : nullptr,
                                    cfg.workers);
            auto J = jensen_polynomial(recs, row.d, row.n, ctx.working_bits);
            auto hj = hj_normalizers(fam, row.n, ctx);
            auto Jn = normalized_jensen(J, hj.A, hj.delta);
            os << "n = " << row.n << ", d = " << row.d << ":\n";
            for (long i = 0; i <= row.d; ++i) {
                BigReal got = Jn[(size_t)i].mid;
                BigReal ref = BigReal::from_string(row.coeffs[i], ctx.working_bits);
                os << "  X^" << i << "  " << got.str(8) << "  ref " << row.coeffs[i]
                   << "  abs diff " << abs(got - ref).str(3) << "\n";
            }
        }
        return 0;
    }
    throw InvalidParams("--which must be chi4_gamma or chi4_jensen");
}

int cmd_scan(const RunConfig& cfg) {
    auto fam = build_family(cfg);
    auto [nlo, nhi] = parse_range(cfg.n_range);
    auto [dlo, dhi] = parse_range(cfg.d_range);
    std::vector<long> dset;
    for (long d = dlo; d <= dhi; ++d) dset.push_back(d);
    std::optional<GammaCache> cache;
    if (!cfg.cache_dir.empty()) cache.emplace(cfg.cache_dir);
    auto report = hyperbolicity_scan(fam, dset, nlo, nhi, cfg.ctx(),
                                     cache ? &*cache : nullptr, cfg.workers);
    std::ofstream file;
    auto& os = open_out(file, cfg);
    os << report.to_csv();
    if (!report.rows.empty() && report.unknowns * 20 > (long)report.rows.size())
        return 4;  // more than 5% undecided
    if (report.exceptions > 0) return 1;
    return 0;
}

int cmd_asympt(const RunConfig& cfg) {
    auto fam = build_family(cfg);
    auto [nlo, nhi] = parse_range(cfg.n_range);
    auto ctx = cfg.ctx();
    json out = json::array();
    for (long n = nlo; n <= nhi; ++n) {
        if (n < 1) throw InvalidParams("asympt needs n >= 1");
        long m = fam.m_map(n);
        auto sp = saddle_point(fam, m, ctx);
        auto le = log_expansion(fam, sp, 2 * (size_t)std::max(3L, cfg.order), ctx);
        auto cs = correction_terms(le, (size_t)std::max(3L, cfg.order));
        json j;
        j["n"] = n;
        j["m"] = m;
        j["saddle"] = {{"L", num_json(sp.L, cfg.digits)},
                       {"a", num_json(sp.a, cfg.digits)},
                       {"C", num_json(sp.C, cfg.digits)},
                       {"eps_var", num_json(sp.eps_var, cfg.digits)}};
        j["A"] = {{"A3", num_json(cs.A[3], 20)},
                  {"A4", num_json(cs.A[4], 20)},
                  {"A5", num_json(cs.A[5], 20)},
                  {"A6", num_json(cs.A[6], 20)}};
        j["b1"] = {{"general", num_json(b1_value(sp.L, B1Variant::General), 20)},
                   {"family", num_json(b1_value(sp.L, B1Variant::Family), 20)},
                   {"calibrated", num_json(b1_value(sp.L, B1Variant::Calibrated), 20)}};
        BigReal gh = gamma_hat(fam, n, B1Variant::Calibrated, ctx);
        j["gamma_hat"] = num_json(gh, cfg.digits);
        j["asymptotic_F_order"] = cfg.order;
        j["asymptotic_F"] = num_json(asymptotic_F(fam, m, (size_t)cfg.order, ctx), cfg.digits);
        if (n <= 2000 || cfg.allow_long) {
            auto rec = taylor_gamma(fam, n, ctx);
            j["gamma"] = num_json(rec.value, cfg.digits);
            j["ratio_gamma_over_hat"] = num_json(rec.value / gh, 12);
        }
        auto hj = hj_normalizers(fam, n, ctx);
        j["A_n"] = num_json(hj.A, 20);
        j["delta_n"] = num_json(hj.delta, 20);
        if (m > 2) {
            auto diag = ratio_diagnostics(fam, n, 1, ctx);
            j["diagnostics"] = {{"l1", num_json(diag.l1, 20)},
                                {"l2", num_json(diag.l2, 20)},
                                {"c1", num_json(diag.c1, 20)},
                                {"g1", num_json(diag.g1, 20)},
                                {"g2", num_json(diag.g2, 20)},
                                {"R_gamma_j1", num_json(diag.R_gamma, 20)}};
        }
        out.push_back(std::move(j));
    }
    std::ofstream file;
    auto& os = open_out(file, cfg);
    os << out.dump(1) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"central derivatives, Taylor coefficients and Jensen-polynomial "
                 "hyperbolicity for completed L-functions"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool with_family = true) {
        if (with_family)
            sub->add_option("--family", cfg.family, "zeta|dirichlet|modular|dedekind");
        sub->add_option("--disc", cfg.disc, "fundamental discriminant (dirichlet/dedekind)");
        sub->add_option("--level", cfg.level, "modular level N");
        sub->add_option("--weight", cfg.weight, "modular weight (even)");
        sub->add_option("--coeffs", cfg.coeffs_file, "coefficient CSV (header n,a_n)");
        sub->add_option("--epsf", cfg.epsf, "+1, -1 or auto");
        sub->add_option("--digits", cfg.digits, "decimal digits of working precision")
            ->check(CLI::Range(10L, 100000L));
        sub->add_option("--cache", cfg.cache_dir, "gamma cache directory");
        sub->add_option("--workers", cfg.workers, "parallel gamma workers");
        sub->add_option("--format", cfg.format, "csv|json|pretty");
        sub->add_option("--out", cfg.out_file, "output file (default stdout)");
        sub->add_flag("--allow-long", cfg.allow_long, "permit long-running rows");
    };

    auto* gamma = app.add_subcommand("gamma", "Taylor coefficients gamma(n) with error bounds");
    add_common(gamma);
    gamma->add_option("--n", cfg.n_range, "index or range A..B")->required();

    auto* table = app.add_subcommand("table", "reproduce the embedded reference tables");
    add_common(table, false);
    table->add_option("--which", cfg.which, "chi4_gamma|chi4_jensen");

    auto* scan = app.add_subcommand("scan", "certified hyperbolicity scan of J^(d,n)");
    add_common(scan);
    scan->add_option("--n", cfg.n_range, "shift range A..B")->required();
    scan->add_option("--d", cfg.d_range, "degree range A..B");

    auto* asympt = app.add_subcommand("asympt", "saddle-point diagnostics as JSON");
    add_common(asympt);
    asympt->add_option("--n", cfg.n_range, "index or range A..B")->required();
    asympt->add_option("--order", cfg.order, "resummation order (A_4..A_(2r))")
        ->check(CLI::Range(2L, 8L));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gamma->parsed()) return cmd_gamma(cfg);
        if (table->parsed()) return cmd_table(cfg);
        if (scan->parsed()) return cmd_scan(cfg);
        if (asympt->parsed()) return cmd_asympt(cfg);
    } catch (const PrecisionInsufficient& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return 3;
    } catch (const NoConvergence& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
