#pragma once

#include "raneylab/curve.hpp"

#include <cstdint>
#include <vector>

namespace raneylab {

/// Deterministic splittable generator (SplitMix64): the master seed derives an
/// independent substream per trial, so runs are bit-reproducible and trials
/// are order-independent.
struct SplitMix64 {
    std::uint64_t state = 0;
    std::uint64_t next();
    double uniform();  // in (0, 1)
};

/// One standard complex Gaussian entry (unit variance per complex entry),
/// Box-Muller from two uniforms of the given stream.
Complex standard_complex_gaussian(SplitMix64& rng);

/// In-place cyclic Jacobi eigensolver for an n x n Hermitian matrix stored
/// row-major in a (full matrix, upper triangle authoritative). Returns the
/// number of sweeps; throws std::runtime_error past the sweep cap. If vecs is
/// non-null it receives the unitary eigenvector matrix (columns).
int hermitian_eigen(std::vector<Complex>& a, int n, std::vector<double>& evals,
                    std::vector<Complex>* vecs = nullptr);

struct MCRun {
    int N = 0;
    int M = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    std::vector<double> scaled_values;  // length N * trials, all >= 0
};

/// One trial: product P of M independent N x N standard complex Gaussian
/// matrices; eigenvalues of P P^dagger divided by N^M.
std::vector<double> sample_product(int N, int M, std::uint64_t seed);

MCRun run_mc(int N, int M, long trials, std::uint64_t seed);

struct MomentRow {
    long n = 0;
    double empirical = 0.0;
    double std_error = 0.0;
    double exact = 0.0;
};

struct HistogramBin {
    double left = 0.0, right = 0.0;
    long count = 0;
    double density_est = 0.0;
    double density_model = 0.0;
};

struct MCReport {
    bool empty = false;
    double edge = 0.0;  // upper support edge (M+1)^{M+1}/M^M
    std::vector<MomentRow> moments;
    std::vector<HistogramBin> histogram;
    double ks_distance = 0.0;
};

/// Empirical moments vs the exact integer moments, a histogram over [0, L],
/// and the Kolmogorov-Smirnov distance against the CDF of the curve density.
MCReport compare_to_density(const MCRun& run, const CurveModel& model, int nbins,
                            long max_moment);

}  // namespace raneylab
