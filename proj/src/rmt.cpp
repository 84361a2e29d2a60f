#include "raneylab/rmt.hpp"

#include "raneylab/exact.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace raneylab {

std::uint64_t SplitMix64::next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    // 53-bit mantissa in (0, 1): never exactly 0, safe under log().
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller; both normals feed the real and imaginary parts.
Complex standard_complex_gaussian(SplitMix64& rng) {
    double u1 = rng.uniform();
    double u2 = rng.uniform();
    double r = std::sqrt(-std::log(u1));  // includes the 1/sqrt(2) scaling
    double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

namespace {

std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g{master ^ (0xd1b54a32d192ed03ULL + index * 0x9e3779b97f4a7c15ULL)};
    return g.next();
}

}  // namespace

int hermitian_eigen(std::vector<Complex>& a, int n, std::vector<double>& evals,
                    std::vector<Complex>* vecs) {
    auto A = [&](int i, int j) -> Complex& { return a[static_cast<size_t>(i) * n + j]; };
    std::vector<Complex> v;
    if (vecs) {
        v.assign(static_cast<size_t>(n) * n, Complex(0.0, 0.0));
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;
    }
    auto V = [&](int i, int j) -> Complex& { return v[static_cast<size_t>(i) * n + j]; };

    const int max_sweeps = 60;
    int sweeps = 0;
    for (; sweeps < max_sweeps; ++sweeps) {
        double off = 0.0, diag = 0.0;
        for (int p = 0; p < n; ++p) {
            diag += std::abs(A(p, p).real());
            for (int q = p + 1; q < n; ++q) off += std::norm(A(p, q));
        }
        if (std::sqrt(off) <= 1e-13 * (diag + 1.0)) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                Complex apq = A(p, q);
                double napq = std::abs(apq);
                if (napq < 1e-300) continue;
                double app = A(p, p).real(), aqq = A(q, q).real();
                double tau = (aqq - app) / (2.0 * napq);
                double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                Complex ph = apq / napq;

                A(p, p) = app - t * napq;
                A(q, q) = aqq + t * napq;
                A(p, q) = 0.0;
                for (int k = 0; k < p; ++k) {
                    Complex akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * std::conj(ph) * akq;
                    A(k, q) = s * ph * akp + c * akq;
                }
                for (int k = p + 1; k < q; ++k) {
                    Complex apk = A(p, k), akq = A(k, q);
                    A(p, k) = c * apk - s * ph * std::conj(akq);
                    A(k, q) = s * ph * std::conj(apk) + c * akq;
                }
                for (int k = q + 1; k < n; ++k) {
                    Complex apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * ph * aqk;
                    A(q, k) = s * std::conj(ph) * apk + c * aqk;
                }
                if (vecs) {
                    // Columns p, q of V rotate by the same unitary.
                    for (int k = 0; k < n; ++k) {
                        Complex vkp = V(k, p), vkq = V(k, q);
                        V(k, p) = c * vkp - s * std::conj(ph) * vkq;
                        V(k, q) = s * ph * vkp + c * vkq;
                    }
                }
            }
        }
    }
    if (sweeps == max_sweeps) throw std::runtime_error("hermitian_eigen: sweep cap reached");
    evals.resize(n);
    for (int i = 0; i < n; ++i) evals[i] = A(i, i).real();
    if (vecs) *vecs = std::move(v);
    return sweeps;
}

std::vector<double> sample_product(int N, int M, std::uint64_t seed) {
    if (N < 2 || M < 1) throw std::invalid_argument("sample_product: require N >= 2, M >= 1");
    SplitMix64 rng{seed};

    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(N, N);
    for (int f = 0; f < M; ++f) {
        Eigen::MatrixXcd X(N, N);
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) X(i, j) = standard_complex_gaussian(rng);
        }
        prod = prod * X;
    }
    Eigen::MatrixXcd W = prod * prod.adjoint();

    std::vector<Complex> a(static_cast<size_t>(N) * N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) a[static_cast<size_t>(i) * N + j] = W(i, j);
    }
    std::vector<double> evals;
    hermitian_eigen(a, N, evals);
    double scale = std::pow(static_cast<double>(N), M);
    for (double& e : evals) e /= scale;
    std::sort(evals.begin(), evals.end());
    return evals;
}

MCRun run_mc(int N, int M, long trials, std::uint64_t seed) {
    if (trials < 0) throw std::invalid_argument("run_mc: trials must be non-negative");
    MCRun run;
    run.N = N;
    run.M = M;
    run.trials = trials;
    run.seed = seed;
    run.scaled_values.reserve(static_cast<size_t>(N) * trials);
    for (long t = 0; t < trials; ++t) {
        std::vector<double> vals = sample_product(N, M, derive_stream(seed, static_cast<std::uint64_t>(t)));
        run.scaled_values.insert(run.scaled_values.end(), vals.begin(), vals.end());
    }
    std::sort(run.scaled_values.begin(), run.scaled_values.end());
    return run;
}

MCReport compare_to_density(const MCRun& run, const CurveModel& model, int nbins,
                            long max_moment) {
    MCReport report;
    report.edge = model.L;
    if (run.scaled_values.empty()) {
        report.empty = true;
        return report;
    }
    std::vector<double> vals = run.scaled_values;
    std::sort(vals.begin(), vals.end());
    const size_t count = vals.size();

    for (long n = 0; n <= max_moment; ++n) {
        MomentRow row;
        row.n = n;
        double sum = 0.0, sumsq = 0.0;
        for (double val : vals) {
            double p = std::pow(val, static_cast<double>(n));
            sum += p;
            sumsq += p * p;
        }
        row.empirical = sum / count;
        double var = std::max(0.0, sumsq / count - row.empirical * row.empirical);
        row.std_error = std::sqrt(var / count);
        row.exact = to_double(raney_exact(model.params, n));
        report.moments.push_back(row);
    }

    DensityEvaluator rho(model);

    if (nbins > 0) {
        double width = model.L / nbins;
        report.histogram.resize(nbins);
        for (int b = 0; b < nbins; ++b) {
            report.histogram[b].left = b * width;
            report.histogram[b].right = (b + 1) * width;
            report.histogram[b].density_model = rho((b + 0.5) * width);
        }
        for (double val : vals) {
            int b = static_cast<int>(val / width);
            if (b >= 0 && b < nbins) ++report.histogram[b].count;
        }
        for (int b = 0; b < nbins; ++b) {
            report.histogram[b].density_est =
                static_cast<double>(report.histogram[b].count) / (count * width);
        }
    }

    // Model CDF on an edge-clustered grid, normalized to unit total mass.
    const int ncdf = 1200;
    std::vector<double> xg(ncdf), cg(ncdf);
    for (int j = 0; j < ncdf; ++j) {
        double s = std::sin(0.5 * std::numbers::pi * (j + 1.0) / (ncdf + 1.0));
        xg[j] = model.L * s * s;
    }
    double g0 = origin_exponent(model);
    std::vector<double> dens(ncdf);
    for (int j = 0; j < ncdf; ++j) dens[j] = rho(xg[j]);
    cg[0] = xg[0] * dens[0] / (g0 + 1.0);  // power-law cap below the first node
    for (int j = 1; j < ncdf; ++j) {
        cg[j] = cg[j - 1] + 0.5 * (dens[j - 1] + dens[j]) * (xg[j] - xg[j - 1]);
    }
    double total = cg[ncdf - 1] + (model.L - xg[ncdf - 1]) * dens[ncdf - 1] * (2.0 / 3.0);
    auto model_cdf = [&](double x) {
        if (x <= 0.0) return 0.0;
        if (x >= xg[ncdf - 1]) {
            double tail = x >= model.L
                              ? (model.L - xg[ncdf - 1]) * dens[ncdf - 1] * (2.0 / 3.0)
                              : (model.L - xg[ncdf - 1]) * dens[ncdf - 1] * (2.0 / 3.0) *
                                    (1.0 - std::pow((model.L - x) / (model.L - xg[ncdf - 1]), 1.5));
            return std::min(1.0, (cg[ncdf - 1] + tail) / total);
        }
        if (x <= xg[0]) return cg[0] * std::pow(x / xg[0], g0 + 1.0) / total;
        size_t hi = std::upper_bound(xg.begin(), xg.end(), x) - xg.begin();
        size_t lo = hi - 1;
        double t = (x - xg[lo]) / (xg[hi] - xg[lo]);
        return ((1.0 - t) * cg[lo] + t * cg[hi]) / total;
    };

    double ks = 0.0;
    for (size_t i = 0; i < count; ++i) {
        double F = model_cdf(vals[i]);
        ks = std::max(ks, std::abs(F - static_cast<double>(i) / count));
        ks = std::max(ks, std::abs(F - static_cast<double>(i + 1) / count));
    }
    report.ks_distance = ks;
    return report;
}

}  // namespace raneylab
