#include "raneylab/params.hpp"

#include <cmath>
#include <stdexcept>

namespace raneylab {

namespace {

std::optional<FamilyCoords> derive_family(const Rational& p, const Rational& r) {
    // r = m + 1/q with integers m >= 0, q >= 1 forces q = den(r) and
    // num(r) = m*q + 1 (gcd(m*q+1, q) = 1, so the form survives reduction).
    BigInt num = rat_num(r);
    BigInt den = rat_den(r);
    if (num < 1) return std::nullopt;
    if ((num - 1) % den != 0) return std::nullopt;
    BigInt m = (num - 1) / den;
    FamilyCoords fc;
    fc.q = den.convert_to<long>();
    fc.m = m.convert_to<long>();
    fc.theta = Rational(fc.q) * (p - 1);
    return fc;
}

}  // namespace

RaneyParams make_params(const Rational& p, const Rational& r) {
    if (p <= 1) throw std::domain_error("Raney parameter p must satisfy p > 1, got " + to_string(p));
    if (r <= 0) throw std::domain_error("Raney parameter r must satisfy r > 0, got " + to_string(r));
    if (r > p) throw std::domain_error("Raney parameter r must satisfy r <= p, got r = " +
                                       to_string(r) + ", p = " + to_string(p));
    RaneyParams out;
    out.p = p;
    out.r = r;
    out.family = derive_family(p, r);
    return out;
}

RaneyParams make_params_family(const Rational& theta, long q, long m) {
    if (theta <= 0) throw std::domain_error("theta must be positive");
    if (q < 1) throw std::domain_error("q must be a positive integer");
    if (m < 0) throw std::domain_error("m must be a non-negative integer");
    Rational p = theta / q + 1;
    Rational r = Rational(1, q) + m;
    return make_params(p, r);
}

JacobiParams make_jacobi_params(const Rational& theta, long q) {
    if (theta <= 0) throw std::domain_error("theta must be positive");
    if (q < 1) throw std::domain_error("q must be a positive integer");
    JacobiParams jp;
    jp.theta = theta;
    jp.q = q;
    // -1 < r <= p - 1 always holds here: r = 1/q - 1 > -1 and p - 1 = theta/q > 0 >= r.
    return jp;
}

SupportEdge support_edge(const RaneyParams& params) {
    // Critical point of v^A - z v^B + z: u_c = p/(p-1), z_c = p * u_c^{p-1}
    // which simplifies to p^p (p-1)^{-(p-1)}.
    double pd = to_double(params.p);
    SupportEdge edge;
    edge.L = std::exp(pd * std::log(pd) - (pd - 1.0) * std::log(pd - 1.0));
    return edge;
}

double support_edge_family(const Rational& theta, long q) {
    double t = to_double(theta) / static_cast<double>(q);
    return t * std::pow(1.0 + 1.0 / t, 1.0 + t);
}

}  // namespace raneylab
