#pragma once

#include "raneylab/params.hpp"
#include "raneylab/rational.hpp"

#include <mutex>
#include <unordered_map>
#include <vector>

namespace raneylab {

/// Raney number R_{p,r}(k) = r/(pk+r) * prod_{j=1..k} (pk+r-k+j)/j, exact.
Rational raney_exact(const RaneyParams& params, long k);

/// Generalized binomial C(x, n) = prod_{j=1..n} (x-n+j)/j for rational x.
Rational binomial_rational(const Rational& x, long n);

struct BinomialMoment {
    Rational binomial;  // C(pn+r, n)
    double moment;      // A^{-n} * binomial, A = p^p (p-1)^{-(p-1)}
};

/// Moments of the Jacobi Muttalib-Borodin family, (p, r) = (theta/q+1, 1/q-1).
BinomialMoment binomial_moment(const JacobiParams& jp, long n);

/// Memoizing view of a Raney sequence for repeated moment comparisons.
/// Safe for concurrent readers.
class RaneySequence {
public:
    explicit RaneySequence(RaneyParams params) : params_(std::move(params)) {}
    const RaneyParams& params() const { return params_; }
    Rational at(long k) const;

private:
    RaneyParams params_;
    mutable std::mutex mu_;
    mutable std::unordered_map<long, Rational> cache_;
};

}  // namespace raneylab
