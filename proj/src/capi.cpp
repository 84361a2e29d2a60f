#include "raney.h"

#include "raneylab/curve.hpp"
#include "raneylab/equilibrium.hpp"
#include "raneylab/exact.hpp"
#include "raneylab/params.hpp"
#include "raneylab/rmt.hpp"
#include "raneylab/wienerhopf.hpp"

#include <nlohmann/json.hpp>

#include <cstring>
#include <exception>
#include <new>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

using namespace raneylab;
using nlohmann::json;

namespace {

thread_local std::string g_last_error;

int set_error(int code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

// Runs the body, translating exceptions into status codes: domain/argument
// errors map to RANEY_ERR_ARGUMENT, everything else to RANEY_ERR_NUMERIC.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return set_error(RANEY_ERR_ARGUMENT, e.what());
    } catch (const std::domain_error& e) {
        return set_error(RANEY_ERR_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return set_error(RANEY_ERR_NUMERIC, "out of memory");
    } catch (const std::exception& e) {
        return set_error(RANEY_ERR_NUMERIC, e.what());
    }
}

int require(bool ok, const char* what) {
    if (ok) return RANEY_OK;
    return set_error(RANEY_ERR_ARGUMENT, what);
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Family coordinates with theta converted to double, as the kernel
// factorization and equilibrium routines take it.
struct FamilyReal {
    double theta;
    long q;
    long m;
};

FamilyReal family_of(const char* theta, long q, long m) {
    if (theta == nullptr) throw std::invalid_argument("theta string is null");
    Rational th = parse_rational(theta);
    if (th <= 0) throw std::invalid_argument("theta must be positive");
    if (q < 1) throw std::invalid_argument("q must be >= 1");
    if (m < 0) throw std::invalid_argument("m must be >= 0");
    return {to_double(th), q, m};
}

}  // namespace

struct raney_params {
    RaneyParams value;
};
struct raney_curve {
    CurveModel value;
};
struct raney_profile {
    DensityProfile value;
};
struct raney_potential {
    PotentialSpec value;
};
struct raney_mcrun {
    MCRun value;
};

extern "C" {

const char* raney_version(void) { return "1.0.0"; }

const char* raney_last_error(void) { return g_last_error.c_str(); }

void raney_string_free(char* s) { delete[] s; }

/* ---------------------------------------------------------------- params */

int raney_params_create(const char* p, const char* r, raney_params** out) {
    return guarded([&]() -> int {
        if (int rc = require(p && r && out, "null argument")) return rc;
        auto h = new raney_params{make_params(parse_rational(p), parse_rational(r))};
        *out = h;
        return RANEY_OK;
    });
}

int raney_params_create_family(const char* theta, long q, long m, raney_params** out) {
    return guarded([&]() -> int {
        if (int rc = require(theta && out, "null argument")) return rc;
        auto h = new raney_params{make_params_family(parse_rational(theta), q, m)};
        *out = h;
        return RANEY_OK;
    });
}

void raney_params_destroy(raney_params* h) { delete h; }

int raney_params_edge(const raney_params* h, double* L) {
    return guarded([&]() -> int {
        if (int rc = require(h && L, "null argument")) return rc;
        *L = support_edge(h->value).L;
        return RANEY_OK;
    });
}

int raney_params_has_family(const raney_params* h, int* has_family, long* q, long* m) {
    return guarded([&]() -> int {
        if (int rc = require(h && has_family, "null argument")) return rc;
        *has_family = h->value.family.has_value() ? 1 : 0;
        if (h->value.family) {
            if (q) *q = h->value.family->q;
            if (m) *m = h->value.family->m;
        }
        return RANEY_OK;
    });
}

int raney_exact_moment(const raney_params* h, long n, char** rational_out,
                       double* value_out) {
    return guarded([&]() -> int {
        if (int rc = require(h != nullptr, "null handle")) return rc;
        if (int rc = require(n >= 0, "moment order must be >= 0")) return rc;
        Rational v = raney_exact(h->value, n);
        if (rational_out) *rational_out = dup_string(to_string(v));
        if (value_out) *value_out = to_double(v);
        return RANEY_OK;
    });
}

int raney_wh_moment(const raney_params* h, long n, double* value_out) {
    return guarded([&]() -> int {
        if (int rc = require(h && value_out, "null argument")) return rc;
        if (int rc = require(n >= 0, "moment order must be >= 0")) return rc;
        const auto& fam = h->value.family;
        if (int rc = require(fam.has_value(), "params have no family coordinates (theta, q, m)"))
            return rc;
        auto spec = potential_coefficients(fam->theta, fam->q, fam->m);
        *value_out = raney_moment_general(spec, n);
        return RANEY_OK;
    });
}

/* ----------------------------------------------------------------- curve */

int raney_curve_create(const raney_params* params, raney_curve** out) {
    return guarded([&]() -> int {
        if (int rc = require(params && out, "null argument")) return rc;
        *out = new raney_curve{make_curve_model(params->value)};
        return RANEY_OK;
    });
}

void raney_curve_destroy(raney_curve* h) { delete h; }

int raney_density_eval(const raney_curve* h, double x, double* rho) {
    return guarded([&]() -> int {
        if (int rc = require(h && rho, "null argument")) return rc;
        if (int rc = require(x > 0.0 && x < h->value.L, "x outside the open support (0, L)"))
            return rc;
        *rho = density(h->value, x);
        return RANEY_OK;
    });
}

int raney_density_moment(const raney_curve* h, long n, double tol, double* out) {
    return guarded([&]() -> int {
        if (int rc = require(h && out, "null argument")) return rc;
        if (int rc = require(n >= 0 && tol > 0.0, "require n >= 0 and tol > 0")) return rc;
        *out = density_moment(h->value, n, tol);
        return RANEY_OK;
    });
}

int raney_density_sample(const raney_curve* h, int npoints, raney_profile** out) {
    return guarded([&]() -> int {
        if (int rc = require(h && out, "null argument")) return rc;
        *out = new raney_profile{sample_density(h->value, npoints)};
        return RANEY_OK;
    });
}

void raney_profile_destroy(raney_profile* h) { delete h; }

int raney_profile_size(const raney_profile* h, int* n) {
    return guarded([&]() -> int {
        if (int rc = require(h && n, "null argument")) return rc;
        *n = static_cast<int>(h->value.grid.size());
        return RANEY_OK;
    });
}

int raney_profile_data(const raney_profile* h, const double** x, const double** rho) {
    return guarded([&]() -> int {
        if (int rc = require(h != nullptr, "null handle")) return rc;
        if (x) *x = h->value.grid.data();
        if (rho) *rho = h->value.values.data();
        return RANEY_OK;
    });
}

int raney_profile_info(const raney_profile* h, double* L, double* mass,
                       double* exponent_at_zero, double* exponent_at_one) {
    return guarded([&]() -> int {
        if (int rc = require(h != nullptr, "null handle")) return rc;
        if (L) *L = h->value.edge.L;
        if (mass) *mass = h->value.mass;
        if (exponent_at_zero) *exponent_at_zero = h->value.endpoint_exponent_at_zero;
        if (exponent_at_one) *exponent_at_one = h->value.endpoint_exponent_at_one;
        return RANEY_OK;
    });
}

/* ----------------------------------------------------- potential / coeffs */

int raney_potential_create(const char* theta, long q, long m, raney_potential** out) {
    return guarded([&]() -> int {
        if (int rc = require(theta && out, "null argument")) return rc;
        *out = new raney_potential{potential_coefficients(parse_rational(theta), q, m)};
        return RANEY_OK;
    });
}

void raney_potential_destroy(raney_potential* h) { delete h; }

int raney_potential_size(const raney_potential* h, int* n) {
    return guarded([&]() -> int {
        if (int rc = require(h && n, "null argument")) return rc;
        *n = static_cast<int>(h->value.c.size());
        return RANEY_OK;
    });
}

int raney_potential_coeffs(const raney_potential* h, double* c, double* alpha,
                           int* pole_flags) {
    return guarded([&]() -> int {
        if (int rc = require(h != nullptr, "null handle")) return rc;
        const auto& spec = h->value;
        for (size_t l = 0; l < spec.c.size(); ++l) {
            if (c) c[l] = spec.c[l];
            if (alpha) alpha[l] = spec.alpha[l];
            if (pole_flags) pole_flags[l] = spec.c_pole[l] ? 1 : 0;
        }
        return RANEY_OK;
    });
}

int raney_potential_info(const raney_potential* h, double* L, int* validity_warning) {
    return guarded([&]() -> int {
        if (int rc = require(h != nullptr, "null handle")) return rc;
        if (L) *L = h->value.L;
        if (validity_warning) *validity_warning = h->value.validity_warning ? 1 : 0;
        return RANEY_OK;
    });
}

/* ------------------------------------------------------------ equilibrium */

int raney_equilibrium_residuals(const char* theta, long q, long m, const double* y,
                                int ny, int grid_points, double* residuals_out) {
    return guarded([&]() -> int {
        if (int rc = require(y && residuals_out, "null argument")) return rc;
        if (int rc = require(ny > 0, "need at least one evaluation point")) return rc;
        FamilyReal fam = family_of(theta, q, m);
        for (int i = 0; i < ny; ++i) {
            if (int rc = require(y[i] > 0.0 && y[i] < 1.0, "y must lie in (0, 1)")) return rc;
        }
        auto params = make_params_family(parse_rational(theta), q, m);
        auto model = make_curve_model(params);
        auto unit = rescale_to_unit(sample_density(model, grid_points));
        auto spec = potential_coefficients(parse_rational(theta), q, m);
        for (int i = 0; i < ny; ++i) {
            residuals_out[i] = equilibrium_residual(unit, fam.theta, q, spec, y[i]);
        }
        return RANEY_OK;
    });
}

int raney_jacobi_residuals(long theta, const double* y, int ny, int grid_points,
                           double* residuals_out) {
    return guarded([&]() -> int {
        if (int rc = require(y && residuals_out, "null argument")) return rc;
        if (int rc = require(theta >= 1, "theta must be a positive integer")) return rc;
        if (int rc = require(ny > 0 && grid_points >= 16, "need ny > 0, grid_points >= 16"))
            return rc;
        auto model = make_jacobi_curve_model(theta);
        DensityEvaluator rho(model);
        DensityProfile prof;
        prof.params = make_params(Rational(theta) + 1, Rational(1));  // placeholder family
        prof.edge.L = 1.0;
        // rho ~ x^{-theta/(theta+1)} at the origin, (1-x)^{-1/2} at the edge.
        prof.endpoint_exponent_at_zero = -static_cast<double>(theta) / (theta + 1.0);
        prof.endpoint_exponent_at_one = -0.5;
        for (int j = 0; j < grid_points; ++j) {
            double s = std::sin(0.5 * std::numbers::pi * (j + 1.0) / (grid_points + 1.0));
            double x = s * s;
            prof.grid.push_back(x);
            prof.values.push_back(rho(x));
        }
        for (int i = 0; i < ny; ++i) {
            if (int rc = require(y[i] > 0.0 && y[i] < 1.0, "y must lie in (0, 1)")) return rc;
            residuals_out[i] = jacobi_residual(prof, static_cast<double>(theta), 1, y[i]);
        }
        return RANEY_OK;
    });
}

/* --------------------------------------------------------- kernel report */

int raney_wh_report(const char* theta, long q, uint64_t seed, char** json_out) {
    return guarded([&]() -> int {
        if (int rc = require(theta && json_out, "null argument")) return rc;
        FamilyReal fam = family_of(theta, q, 0);
        auto wh = make_wh(fam.theta, q);

        // Factorization identity K = K+/K- at seeded strip points.
        SplitMix64 rng{seed};
        double fact_dev = 0.0;
        const double s = (q - 1.0) / q;
        for (int i = 0; i < 20; ++i) {
            // Stay inside the analyticity strip and away from the sinh poles.
            double re = 4.0 * rng.uniform() - 2.0;
            double im = (0.8 * rng.uniform() - 0.4) * (s < 0.5 ? 1.0 : 1.0 - s);
            Complex z(re, im);
            Complex lhs = kernel_K(wh, z);
            Complex rhs = factor_plus(wh, z) / factor_minus(wh, z);
            fact_dev = std::max(fact_dev, std::abs(lhs - rhs) / std::abs(lhs));
        }

        double fourier_dev = 0.0;
        for (double re : {-0.9, 0.3, 1.7}) {
            fourier_dev = std::max(fourier_dev, fourier_kernel_check(fam.theta, q, Complex(re, 0.05)));
        }

        Complex A = residue_A(wh);
        auto ratios = asymptotic_check(wh, -std::numbers::pi / 4.0, {1.0e2, 1.0e3});

        json report;
        report["theta"] = fam.theta;
        report["q"] = q;
        report["c"] = wh.c;
        report["L"] = wh.edge.L;
        report["factorization_max_rel_dev"] = fact_dev;
        report["fourier_kernel_max_dev"] = fourier_dev;
        report["residue"] = {{"re", A.real()}, {"im", A.imag()}};
        json asym = json::array();
        for (size_t i = 0; i < ratios.size(); ++i) {
            asym.push_back({{"radius", i == 0 ? 1.0e2 : 1.0e3},
                            {"minus_ratio", ratios[i].minus_ratio},
                            {"plus_ratio", ratios[i].plus_ratio}});
        }
        report["asymptotic_ratios"] = asym;
        *json_out = dup_string(report.dump(2));
        return RANEY_OK;
    });
}

/* ------------------------------------------------------------ monte carlo */

int raney_mc_run(int N, int M, long trials, uint64_t seed, raney_mcrun** out) {
    return guarded([&]() -> int {
        if (int rc = require(out != nullptr, "null argument")) return rc;
        if (int rc = require(N >= 2 && M >= 1 && trials >= 1,
                             "require N >= 2, M >= 1, trials >= 1"))
            return rc;
        *out = new raney_mcrun{run_mc(N, M, trials, seed)};
        return RANEY_OK;
    });
}

void raney_mcrun_destroy(raney_mcrun* h) { delete h; }

int raney_mcrun_size(const raney_mcrun* h, long* count) {
    return guarded([&]() -> int {
        if (int rc = require(h && count, "null argument")) return rc;
        *count = static_cast<long>(h->value.scaled_values.size());
        return RANEY_OK;
    });
}

int raney_mcrun_values(const raney_mcrun* h, const double** values) {
    return guarded([&]() -> int {
        if (int rc = require(h && values, "null argument")) return rc;
        *values = h->value.scaled_values.data();
        return RANEY_OK;
    });
}

int raney_mc_report(const raney_mcrun* h, int nbins, long max_moment, char** json_out) {
    return guarded([&]() -> int {
        if (int rc = require(h && json_out, "null argument")) return rc;
        if (int rc = require(nbins >= 1 && max_moment >= 0,
                             "require nbins >= 1, max_moment >= 0"))
            return rc;
        auto params = make_params(Rational(h->value.M + 1), Rational(1));
        auto model = make_curve_model(params);
        MCReport rep = compare_to_density(h->value, model, nbins, max_moment);

        json report;
        report["N"] = h->value.N;
        report["M"] = h->value.M;
        report["trials"] = h->value.trials;
        report["seed"] = h->value.seed;
        report["edge"] = rep.edge;
        report["ks_distance"] = rep.ks_distance;
        json moments = json::array();
        for (const auto& row : rep.moments) {
            moments.push_back({{"n", row.n},
                               {"empirical", row.empirical},
                               {"std_error", row.std_error},
                               {"exact", row.exact}});
        }
        report["moments"] = moments;
        json hist = json::array();
        for (const auto& bin : rep.histogram) {
            hist.push_back({{"left", bin.left},
                            {"right", bin.right},
                            {"count", bin.count},
                            {"density_est", bin.density_est},
                            {"density_model", bin.density_model}});
        }
        report["histogram"] = hist;
        *json_out = dup_string(report.dump(2));
        return RANEY_OK;
    });
}

}  // extern "C"
