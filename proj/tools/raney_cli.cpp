// Command-line front end for the raney laboratory. Talks to the library
// exclusively through the C interface in raney.h.

#include "raney.h"

#include <CLI11.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitArgument = 2;
constexpr int kExitNumeric = 3;

// Maps a library status to the process exit code, printing the message.
int fail(int status, const char* context) {
    std::cerr << "error: " << context << ": " << raney_last_error() << "\n";
    return status == RANEY_ERR_ARGUMENT ? kExitArgument : kExitNumeric;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Writes to the path when set, else to stdout.
int emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return kExitOk;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << out_path << "\n";
        return kExitArgument;
    }
    f << payload;
    return kExitOk;
}

struct ParamArgs {
    std::string p, r;       // direct (p, r)
    std::string theta;      // or family coordinates
    long q = 1;
    long m = 0;

    bool family_mode() const { return !theta.empty(); }

    // Creates the params handle from whichever coordinate set was given.
    int create(raney_params** out) const {
        if (family_mode()) return raney_params_create_family(theta.c_str(), q, m, out);
        return raney_params_create(p.c_str(), r.c_str(), out);
    }

    std::string describe() const {
        if (family_mode()) {
            return "theta=" + theta + " q=" + std::to_string(q) + " m=" + std::to_string(m);
        }
        return "p=" + p + " r=" + r;
    }
};

void add_param_flags(CLI::App* cmd, ParamArgs& args, bool family_only) {
    if (!family_only) {
        cmd->add_option("--p", args.p, "parameter p as a rational string, e.g. 2 or 3/2");
        cmd->add_option("--r", args.r, "parameter r as a rational string");
    }
    cmd->add_option("--theta", args.theta, "family coordinate theta as a rational string");
    cmd->add_option("--q", args.q, "family coordinate q (positive integer)");
    cmd->add_option("--m", args.m, "family coordinate m (non-negative integer)");
}

int check_param_choice(const ParamArgs& args, bool family_only) {
    if (family_only) {
        if (args.theta.empty()) {
            std::cerr << "error: this command requires --theta (with --q, --m)\n";
            return kExitArgument;
        }
        return kExitOk;
    }
    bool direct = !args.p.empty() || !args.r.empty();
    if (direct && args.family_mode()) {
        std::cerr << "error: give either --p/--r or --theta/--q/--m, not both\n";
        return kExitArgument;
    }
    if (direct && (args.p.empty() || args.r.empty())) {
        std::cerr << "error: --p and --r must be given together\n";
        return kExitArgument;
    }
    if (!direct && !args.family_mode()) {
        std::cerr << "error: parameters missing; give --p/--r or --theta/--q/--m\n";
        return kExitArgument;
    }
    return kExitOk;
}

std::string metadata(const std::string& command, const std::string& params,
                     const std::string& extra = "") {
    std::string head = "# raney " + std::string(raney_version()) + " " + command + "\n";
    head += "# " + params + "\n";
    if (!extra.empty()) head += "# " + extra + "\n";
    return head;
}

using ParamsPtr = std::unique_ptr<raney_params, decltype(&raney_params_destroy)>;
using CurvePtr = std::unique_ptr<raney_curve, decltype(&raney_curve_destroy)>;

int cmd_moments(const ParamArgs& pa, long nmax, const std::string& mode, double tol,
                const std::string& out_path) {
    if (mode != "exact" && mode != "wh" && mode != "quad") {
        std::cerr << "error: --mode must be exact, wh or quad\n";
        return kExitArgument;
    }
    raney_params* raw = nullptr;
    if (int rc = pa.create(&raw)) return fail(rc, "params");
    ParamsPtr params(raw, raney_params_destroy);

    CurvePtr curve(nullptr, raney_curve_destroy);
    if (mode == "quad") {
        raney_curve* c = nullptr;
        if (int rc = raney_curve_create(params.get(), &c)) return fail(rc, "curve");
        curve.reset(c);
    }

    std::ostringstream os;
    os << metadata("moments", pa.describe(),
                   "mode=" + mode + " nmax=" + std::to_string(nmax) + " tol=" + fmt(tol));
    os << "n,exact,exact_float,value,abs_dev,rel_dev\n";
    for (long n = 0; n <= nmax; ++n) {
        char* rat = nullptr;
        double exact = 0.0;
        if (int rc = raney_exact_moment(params.get(), n, &rat, &exact)) {
            return fail(rc, "exact moment");
        }
        std::string rat_s(rat);
        raney_string_free(rat);

        double value = exact;
        if (mode == "wh") {
            if (int rc = raney_wh_moment(params.get(), n, &value)) return fail(rc, "wh moment");
        } else if (mode == "quad") {
            if (int rc = raney_density_moment(curve.get(), n, tol, &value)) {
                return fail(rc, "quadrature moment");
            }
        }
        double abs_dev = std::abs(value - exact);
        double rel_dev = exact != 0.0 ? abs_dev / std::abs(exact) : abs_dev;
        os << n << "," << rat_s << "," << fmt(exact) << "," << fmt(value) << ","
           << fmt(abs_dev) << "," << fmt(rel_dev) << "\n";
    }
    return emit(out_path, os.str());
}

int cmd_density(const ParamArgs& pa, int npoints, const std::string& out_path) {
    raney_params* praw = nullptr;
    if (int rc = pa.create(&praw)) return fail(rc, "params");
    ParamsPtr params(praw, raney_params_destroy);

    raney_curve* craw = nullptr;
    if (int rc = raney_curve_create(params.get(), &craw)) return fail(rc, "curve");
    CurvePtr curve(craw, raney_curve_destroy);

    raney_profile* sraw = nullptr;
    if (int rc = raney_density_sample(curve.get(), npoints, &sraw)) return fail(rc, "sample");
    std::unique_ptr<raney_profile, decltype(&raney_profile_destroy)> profile(
        sraw, raney_profile_destroy);

    int n = 0;
    const double* x = nullptr;
    const double* rho = nullptr;
    double L = 0.0, mass = 0.0;
    raney_profile_size(profile.get(), &n);
    raney_profile_data(profile.get(), &x, &rho);
    raney_profile_info(profile.get(), &L, &mass, nullptr, nullptr);

    std::ostringstream os;
    os << metadata("density", pa.describe(), "points=" + std::to_string(npoints));
    os << "x,rho\n";
    for (int i = 0; i < n; ++i) os << fmt(x[i]) << "," << fmt(rho[i]) << "\n";
    os << "# L=" << fmt(L) << " mass=" << fmt(mass) << "\n";
    return emit(out_path, os.str());
}

int cmd_equilibrium(const ParamArgs& pa, std::vector<double> ys, int npoints, double tol,
                    const std::string& out_path) {
    if (ys.empty()) ys = {0.25, 0.5, 0.75};
    std::vector<double> resid(ys.size());
    if (int rc = raney_equilibrium_residuals(pa.theta.c_str(), pa.q, pa.m, ys.data(),
                                             static_cast<int>(ys.size()), npoints,
                                             resid.data())) {
        return fail(rc, "equilibrium residuals");
    }
    std::ostringstream os;
    os << metadata("equilibrium", pa.describe(),
                   "points=" + std::to_string(npoints) + " tol=" + fmt(tol));
    os << "y,residual\n";
    bool ok = true;
    for (size_t i = 0; i < ys.size(); ++i) {
        os << fmt(ys[i]) << "," << fmt(resid[i]) << "\n";
        if (std::abs(resid[i]) > tol) ok = false;
    }
    os << "# pass=" << (ok ? "true" : "false") << "\n";
    int rc = emit(out_path, os.str());
    if (rc != kExitOk) return rc;
    return ok ? kExitOk : kExitCheckFailure;
}

int cmd_wh(const ParamArgs& pa, std::uint64_t seed, const std::string& out_path) {
    char* json = nullptr;
    if (int rc = raney_wh_report(pa.theta.c_str(), pa.q, seed, &json)) {
        return fail(rc, "kernel report");
    }
    std::string payload(json);
    raney_string_free(json);
    payload += "\n";
    return emit(out_path, payload);
}

int cmd_mc(int N, int M, long trials, std::uint64_t seed, int bins, long max_moment,
           const std::string& out_path) {
    raney_mcrun* raw = nullptr;
    if (int rc = raney_mc_run(N, M, trials, seed, &raw)) return fail(rc, "monte carlo run");
    std::unique_ptr<raney_mcrun, decltype(&raney_mcrun_destroy)> run(raw, raney_mcrun_destroy);

    char* json = nullptr;
    if (int rc = raney_mc_report(run.get(), bins, max_moment, &json)) {
        return fail(rc, "monte carlo report");
    }
    std::string report(json);
    raney_string_free(json);
    report += "\n";

    // Histogram CSV re-derived from the raw values so the CSV is standalone.
    std::ostringstream csv;
    char seed_s[32];
    std::snprintf(seed_s, sizeof(seed_s), "%" PRIu64, seed);
    csv << metadata("mc",
                    "N=" + std::to_string(N) + " M=" + std::to_string(M) +
                        " trials=" + std::to_string(trials) + " seed=" + seed_s,
                    "bins=" + std::to_string(bins) + " max_moment=" + std::to_string(max_moment));
    csv << "bin_left,bin_right,count,density_est,density_model\n";
    {
        long count = 0;
        const double* values = nullptr;
        raney_mcrun_size(run.get(), &count);
        raney_mcrun_values(run.get(), &values);

        raney_params* mp = nullptr;
        std::string p_str = std::to_string(M + 1);
        if (int rc = raney_params_create(p_str.c_str(), "1", &mp)) return fail(rc, "model params");
        ParamsPtr mparams(mp, raney_params_destroy);
        raney_curve* mc = nullptr;
        if (int rc = raney_curve_create(mparams.get(), &mc)) return fail(rc, "model curve");
        CurvePtr mcurve(mc, raney_curve_destroy);

        double edge = 0.0;
        raney_params_edge(mparams.get(), &edge);
        double width = edge / bins;
        std::vector<long> counts(bins, 0);
        for (long i = 0; i < count; ++i) {
            int b = static_cast<int>(values[i] / width);
            if (b >= 0 && b < bins) ++counts[b];
        }
        for (int b = 0; b < bins; ++b) {
            double model = 0.0;
            raney_density_eval(mcurve.get(), (b + 0.5) * width, &model);
            double est = static_cast<double>(counts[b]) / (count * width);
            csv << fmt(b * width) << "," << fmt((b + 1) * width) << "," << counts[b] << ","
                << fmt(est) << "," << fmt(model) << "\n";
        }
    }

    if (out_path.empty()) {
        std::cout << csv.str() << report;
        return kExitOk;
    }
    if (int rc = emit(out_path, csv.str())) return rc;
    return emit(out_path + ".json", report);
}

int cmd_coeffs(const ParamArgs& pa, const std::string& out_path) {
    raney_potential* raw = nullptr;
    if (int rc = raney_potential_create(pa.theta.c_str(), pa.q, pa.m, &raw)) {
        return fail(rc, "potential coefficients");
    }
    std::unique_ptr<raney_potential, decltype(&raney_potential_destroy)> pot(
        raw, raney_potential_destroy);
    int n = 0;
    raney_potential_size(pot.get(), &n);
    std::vector<double> c(n), alpha(n);
    std::vector<int> poles(n);
    raney_potential_coeffs(pot.get(), c.data(), alpha.data(), poles.data());
    double L = 0.0;
    int warn = 0;
    raney_potential_info(pot.get(), &L, &warn);

    std::ostringstream os;
    os << metadata("coeffs", pa.describe(),
                   std::string("validity_warning=") + (warn ? "true" : "false"));
    os << "l,c_l,alpha_l_L\n";
    for (int l = 0; l < n; ++l) {
        os << l << "," << (poles[l] ? "pole" : fmt(c[l])) << "," << fmt(alpha[l] * L) << "\n";
    }
    return emit(out_path, os.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Raney density laboratory"};
    app.require_subcommand(1);

    ParamArgs pa;
    long nmax = 10;
    std::string mode = "exact";
    double tol = 1e-9;
    int points = 200;
    std::vector<double> ys;
    double eq_tol = 1e-3;
    std::uint64_t seed = 1;
    int N = 100, M = 1, bins = 60;
    long trials = 50, max_moment = 4;
    std::string out_path, format = "csv";

    auto* moments = app.add_subcommand("moments", "integer moments: exact, closed form, quadrature");
    add_param_flags(moments, pa, false);
    moments->add_option("--n", nmax, "highest moment order (default 10)");
    moments->add_option("--mode", mode, "exact | wh | quad (default exact)");
    moments->add_option("--tol", tol, "relative tolerance for quad mode");
    moments->add_option("--out", out_path, "output file (default stdout)");
    moments->add_option("--format", format, "csv (default)");

    auto* density = app.add_subcommand("density", "sample the density on its support");
    add_param_flags(density, pa, false);
    density->add_option("--points", points, "grid size, >= 16 (default 200)");
    density->add_option("--out", out_path, "output file (default stdout)");
    density->add_option("--format", format, "csv (default)");

    auto* equilibrium =
        app.add_subcommand("equilibrium", "residuals of the equilibrium condition");
    add_param_flags(equilibrium, pa, true);
    equilibrium->add_option("--y", ys, "evaluation points in (0,1); default 0.25 0.5 0.75");
    equilibrium->add_option("--points", points, "density grid size (default 400)")
        ->default_val(400);
    equilibrium->add_option("--tol", eq_tol, "pass/fail residual tolerance (default 1e-3)");
    equilibrium->add_option("--out", out_path, "output file (default stdout)");

    auto* wh = app.add_subcommand("wh", "kernel factorization checks (JSON report)");
    add_param_flags(wh, pa, true);
    wh->add_option("--seed", seed, "seed for the sample points");
    wh->add_option("--out", out_path, "output file (default stdout)");

    auto* mc = app.add_subcommand("mc", "Monte Carlo over Gaussian matrix products");
    mc->add_option("--N", N, "matrix size (default 100)");
    mc->add_option("--M", M, "number of factors (default 1)");
    mc->add_option("--trials", trials, "number of trials (default 50)");
    mc->add_option("--seed", seed, "master seed");
    mc->add_option("--bins", bins, "histogram bins (default 60)");
    mc->add_option("--moments", max_moment, "highest compared moment (default 4)");
    mc->add_option("--out", out_path, "CSV path; JSON report goes to <out>.json");

    auto* coeffs = app.add_subcommand("coeffs", "one-body potential coefficients");
    add_param_flags(coeffs, pa, true);
    coeffs->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitArgument;
    }

    if (moments->parsed()) {
        if (int rc = check_param_choice(pa, false)) return rc;
        return cmd_moments(pa, nmax, mode, tol, out_path);
    }
    if (density->parsed()) {
        if (int rc = check_param_choice(pa, false)) return rc;
        return cmd_density(pa, points, out_path);
    }
    if (equilibrium->parsed()) {
        if (int rc = check_param_choice(pa, true)) return rc;
        return cmd_equilibrium(pa, ys, points, eq_tol, out_path);
    }
    if (wh->parsed()) {
        if (int rc = check_param_choice(pa, true)) return rc;
        return cmd_wh(pa, seed, out_path);
    }
    if (mc->parsed()) {
        return cmd_mc(N, M, trials, seed, bins, max_moment, out_path);
    }
    if (coeffs->parsed()) {
        if (int rc = check_param_choice(pa, true)) return rc;
        return cmd_coeffs(pa, out_path);
    }
    return kExitArgument;
}
