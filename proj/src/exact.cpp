#include "raneylab/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace raneylab {

Rational binomial_rational(const Rational& x, long n) {
    if (n < 0) throw std::domain_error("binomial order must be non-negative");
    Rational acc(1);
    for (long j = 1; j <= n; ++j) {
        acc *= (x - n + j);
        acc /= j;
    }
    return acc;
}

Rational raney_exact(const RaneyParams& params, long k) {
    if (k < 0) throw std::domain_error("Raney index must be non-negative");
    Rational top = params.p * k + params.r;
    Rational acc = params.r / top;
    for (long j = 1; j <= k; ++j) {
        acc *= (top - k + j);
        acc /= j;
    }
    return acc;
}

BinomialMoment binomial_moment(const JacobiParams& jp, long n) {
    if (n < 0) throw std::domain_error("moment order must be non-negative");
    Rational top = jp.p() * n + jp.r();
    BinomialMoment out;
    out.binomial = binomial_rational(top, n);
    double pd = to_double(jp.p());
    double logA = pd * std::log(pd) - (pd - 1.0) * std::log(pd - 1.0);
    out.moment = std::exp(std::log(to_double(out.binomial)) - n * logA);
    if (n == 0) out.moment = 1.0;
    return out;
}

Rational RaneySequence::at(long k) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(k);
        if (it != cache_.end()) return it->second;
    }
    Rational v = raney_exact(params_, k);
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(k, std::move(v)).first->second;
}

}  // namespace raneylab
