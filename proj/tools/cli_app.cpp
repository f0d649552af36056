#include "cli_app.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdl/characters.hpp"
#include "qdl/euler.hpp"
#include "qdl/gauss.hpp"
#include "qdl/moments.hpp"
#include "qdl/rational.hpp"
#include "qdl/smooth.hpp"

namespace qdl_cli {

namespace {

using namespace qdl;
using nlohmann::json;

constexpr double PI = 3.14159265358979323846264338327950288;

struct Check {
    std::string name;
    double residual;
    double tolerance;
    bool pass() const { return residual < tolerance; }
};

struct Report {
    std::string command;
    std::vector<Check> checks;
    json extra = json::object();

    void add(const std::string& name, double residual, double tol) {
        checks.push_back({name, residual, tol});
    }
    bool all_pass() const {
        for (const Check& c : checks)
            if (!c.pass()) return false;
        return true;
    }
    int print(bool as_json) const {
        if (as_json) {
            json j;
            j["command"] = command;
            j["status"] = all_pass() ? "ok" : "fail";
            j["checks"] = json::array();
            for (const Check& c : checks)
                j["checks"].push_back({{"name", c.name},
                                       {"residual", c.residual},
                                       {"tolerance", c.tolerance},
                                       {"status", c.pass() ? "pass" : "FAIL"}});
            for (auto& [k, v] : extra.items()) j[k] = v;
            std::printf("%s\n", j.dump(2).c_str());
        } else {
            for (const Check& c : checks)
                std::printf("%-40s %.3e %.1e %s\n", c.name.c_str(), c.residual, c.tolerance,
                            c.pass() ? "pass" : "FAIL");
        }
        return all_pass() ? 0 : 1;
    }
};

BumpProfile parse_profile(const std::string& name, double Z) {
    if (name == "reference") return {ProfileKind::reference, Z};
    if (name == "plateau-inner") return {ProfileKind::plateau_inner, Z};
    if (name == "plateau-outer") return {ProfileKind::plateau_outer, Z};
    throw CLI::ValidationError("unknown profile " + name);
}

int cmd_verify_identities(i64 plimit, double tol_z1, double tol_z4, bool as_json) {
    Report rep;
    rep.command = "verify-identities";

    double a4 = a_k_constant(4, plimit).value.real();
    double a4s = a4_simplified(plimit).value.real();
    rep.add("a4_two_routes", std::abs(a4 - a4s) / a4s, 1e-10);

    ShiftPoint half{0.5, 0.5, 0.0};
    double z1 = z1_product(half, plimit).value.real();
    rep.add("Z1(1/2,1/2)=4a4", std::abs(z1 - 4.0 * a4s) / a4s, tol_z1);

    i64 p4 = std::min<i64>(plimit, 100000);
    double z4 = z4_product(half, p4, true).value.real();
    double a4p = a4_simplified(p4).value.real();
    rep.add("Z4(1/2,1/2,0)=32a4/pi^2",
            std::abs(z4 - 32.0 * a4p / (PI * PI)) / (a4p / (PI * PI)), tol_z4);

    // exact rational constants (throw on mismatch; report as residual 0/1)
    double ok = 1.0;
    try {
        assemble_leading_constant();
        k0_residue_constant();
        ok = 0.0;
    } catch (const std::exception&) {
        ok = 1.0;
    }
    rep.add("rational_constant_chain", ok, 0.5);

    for (i64 d : {1, 3, 5, 7, 11, 13}) {
        QuadChar q(d);
        double L = lvalue_oracle(cplx(0.5, 0.0), q).real();
        double twoA = afe_A(8.0 * d, q, 1e-9).A_value;
        rep.add("afe_d=" + std::to_string(d), std::abs(L * L - twoA), 1e-6);
    }
    return rep.print(as_json);
}

int cmd_gauss(i64 n, i64 k, bool direct, bool as_json) {
    GaussSumValue closed = gauss_closed(k, n);
    if (as_json) {
        json j{{"command", "gauss"}, {"n", n}, {"k", k}, {"value", closed.value}};
        if (direct) {
            GaussSumValue dir = gauss_direct(k, n);
            j["direct"] = dir.value;
            j["residual"] = std::abs(dir.value - closed.value);
        }
        std::printf("%s\n", j.dump(2).c_str());
        return 0;
    }
    if (direct) {
        GaussSumValue dir = gauss_direct(k, n);
        std::printf("%.17g\n", closed.value);
        std::printf("direct %.17g residual %.3e\n", dir.value, std::abs(dir.value - closed.value));
        return std::abs(dir.value - closed.value) < 1e-6 * std::max(1.0, std::abs(closed.value)) ? 0 : 1;
    }
    std::printf("%.17g\n", closed.value);
    return 0;
}

int cmd_poisson(i64 n, double Z, int kmax, const BumpProfile& prof, double tol, bool as_json) {
    Report rep;
    rep.command = "poisson";
    rep.add("poisson_n=" + std::to_string(n) + "_Z=" + std::to_string(Z), poisson_check(n, Z, prof, kmax), tol);
    return rep.print(as_json);
}

int cmd_euler(const std::string& which, double alpha, double beta, double gamma, i64 a, i64 k,
              i64 plimit, bool as_json) {
    ShiftPoint sp{alpha, beta, gamma};
    EulerProductResult r;
    if (which == "a4") {
        r = a_k_constant(4, plimit);
    } else if (which == "z1") {
        r = z1_product(sp, plimit);
    } else if (which == "z2") {
        r = z2_value(sp, LocalFactorContext(a, k), plimit);
    } else if (which == "z3") {
        r = z3_product(sp, a, plimit);
    } else if (which == "z4") {
        r = z4_product(sp, plimit);
    } else {
        throw CLI::ValidationError("--which must be one of z1|z2|z3|z4|a4");
    }
    if (as_json) {
        json j{{"command", "euler"},
               {"which", which},
               {"value_re", r.value.real()},
               {"value_im", r.value.imag()},
               {"prime_limit", r.prime_limit},
               {"tail_bound", r.tail_bound}};
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("%.17g %.17g tail %.3e\n", r.value.real(), r.value.imag(), r.tail_bound);
    }
    return 0;
}

int cmd_lvalue(i64 d, double sre, double sim, bool as_json) {
    QuadChar q(d);
    cplx L = lvalue_oracle(cplx(sre, sim), q);
    if (as_json) {
        json j{{"command", "lvalue"}, {"d", d}, {"re", L.real()}, {"im", L.imag()}};
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("%.17g %.17g\n", L.real(), L.imag());
    }
    return 0;
}

int cmd_sweep(const SweepConfig& cfg, const std::string& out_path, const std::string& format,
              bool as_json) {
    SweepResult res = sweep_moments(cfg);
    EmitFormat fmt = (format == "json") ? EmitFormat::json : EmitFormat::csv;
    if (!out_path.empty()) {
        emit_results(res.records, cfg, fmt, out_path);
        if (as_json) {
            json j{{"command", "sweep"},
                   {"out", out_path},
                   {"records", res.records.size()},
                   {"oracle_checked", res.oracle_checked},
                   {"oracle_worst", res.oracle_worst},
                   {"warnings", res.warnings},
                   {"status", "ok"}};
            std::printf("%s\n", j.dump(2).c_str());
        } else {
            std::printf("wrote %zu records to %s (oracle checked %lld, worst %.3e, warnings %lld)\n",
                        res.records.size(), out_path.c_str(),
                        static_cast<long long>(res.oracle_checked), res.oracle_worst,
                        static_cast<long long>(res.warnings));
        }
    } else {
        std::fputs((fmt == EmitFormat::csv ? records_to_csv(res.records)
                                           : records_to_json(res.records, cfg))
                       .c_str(),
                   stdout);
    }
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"quadratic Dirichlet L-function fourth-moment laboratory"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    // verify-identities
    auto* vi = app.add_subcommand("verify-identities", "Euler-product and AFE identity suite");
    i64 vi_plimit = 100000;
    double vi_tol_z1 = 1e-8, vi_tol_z4 = 1e-6;
    vi->add_option("--plimit", vi_plimit, "prime limit")->check(CLI::PositiveNumber);
    vi->add_option("--tol-z1", vi_tol_z1, "tolerance for Z1 = 4 a4");
    vi->add_option("--tol-z4", vi_tol_z4, "tolerance for Z4 = 32 a4 / pi^2");

    // gauss
    auto* ga = app.add_subcommand("gauss", "Gauss sum G_k(n)");
    i64 ga_n = 9, ga_k = 0;
    bool ga_direct = false;
    ga->add_option("--n", ga_n, "odd positive modulus")->required()->check(CLI::PositiveNumber);
    ga->add_option("--k", ga_k, "twist")->required();
    ga->add_flag("--direct", ga_direct, "also run the O(n) direct sum");

    // poisson
    auto* po = app.add_subcommand("poisson", "Poisson summation residual");
    i64 po_n = 1;
    double po_z = 50.0, po_tol = 1e-8;
    int po_kmax = 600;
    std::string po_profile = "reference";
    double po_Z_sharp = 8.0;
    po->add_option("--n", po_n, "odd positive modulus")->required();
    po->add_option("--z", po_z, "scale Z")->required()->check(CLI::PositiveNumber);
    po->add_option("--kmax", po_kmax, "frequency cutoff");
    po->add_option("--tol", po_tol, "residual tolerance");
    po->add_option("--profile", po_profile, "reference|plateau-inner|plateau-outer");
    po->add_option("--zsharp", po_Z_sharp, "plateau sharpness Z");

    // sweep
    auto* sw = app.add_subcommand("sweep", "moment sweep over odd square-free d");
    SweepConfig cfg;
    std::string sw_out, sw_format = "csv";
    sw->add_option("--xmax", cfg.X_max, "sweep limit X")->required();
    sw->add_option("--threads", cfg.threads, "worker threads");
    sw->add_option("--afe-tol", cfg.afe_tol, "certified AFE tail target");
    sw->add_flag("--no-dyadic", [&cfg](std::int64_t) { cfg.dyadic = false; }, "only report at X = xmax");
    std::string sw_profile = "reference";
    double sw_Z = 8.0;
    sw->add_option("--profile", sw_profile, "smooth weight profile");
    sw->add_option("--zsharp", sw_Z, "plateau sharpness Z");
    sw->add_option("--out", sw_out, "output path (default: stdout)");
    sw->add_option("--format", sw_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    // euler
    auto* eu = app.add_subcommand("euler", "Euler products Z1..Z4 and a4");
    std::string eu_which = "z1";
    double eu_a = 0.5, eu_b = 0.5, eu_g = 0.0;
    i64 eu_ka = 1, eu_kk = 1, eu_plimit = 100000;
    eu->add_option("--which", eu_which, "z1|z2|z3|z4|a4")->required();
    eu->add_option("--alpha", eu_a, "Re(alpha)");
    eu->add_option("--beta", eu_b, "Re(beta)");
    eu->add_option("--gamma", eu_g, "Re(gamma)");
    eu->add_option("--a", eu_ka, "Mobius parameter a (z2, z3)");
    eu->add_option("--k", eu_kk, "twist k (z2)");
    eu->add_option("--plimit", eu_plimit, "prime limit")->check(CLI::PositiveNumber);

    // lvalue
    auto* lv = app.add_subcommand("lvalue", "L(s, chi_{8d}) via the Hurwitz-zeta oracle");
    i64 lv_d = 1;
    double lv_sre = 0.5, lv_sim = 0.0;
    lv->add_option("--d", lv_d, "odd positive square-free d")->required();
    lv->add_option("--sre", lv_sre, "Re(s)");
    lv->add_option("--sim", lv_sim, "Im(s)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (vi->parsed()) return cmd_verify_identities(vi_plimit, vi_tol_z1, vi_tol_z4, as_json);
        if (ga->parsed()) return cmd_gauss(ga_n, ga_k, ga_direct, as_json);
        if (po->parsed())
            return cmd_poisson(po_n, po_z, po_kmax, parse_profile(po_profile, po_Z_sharp), po_tol,
                               as_json);
        if (sw->parsed()) {
            if (cfg.X_max < 1) {
                std::fprintf(stderr, "sweep: --xmax must be >= 1\n");
                return 2;
            }
            cfg.profile = parse_profile(sw_profile, sw_Z);
            if (sw_out.empty()) {
                if (const char* dir = std::getenv("QDL_OUT_DIR")) {
                    sw_out = std::string(dir) + "/sweep." + sw_format;
                }
            }
            return cmd_sweep(cfg, sw_out, sw_format, as_json);
        }
        if (eu->parsed())
            return cmd_euler(eu_which, eu_a, eu_b, eu_g, eu_ka, eu_kk, eu_plimit, as_json);
        if (lv->parsed()) return cmd_lvalue(lv_d, lv_sre, lv_sim, as_json);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        if (msg.find("emit_results") != std::string::npos ||
            msg.find("cannot open") != std::string::npos) {
            std::fprintf(stderr, "io error: %s\n", msg.c_str());
            return 3;
        }
        std::fprintf(stderr, "error: %s\n", msg.c_str());
        return 1;
    }
    return 2;
}

}  // namespace qdl_cli
