#pragma once

#include "raneylab/rational.hpp"

#include <optional>

namespace raneylab {

/// Family coordinates (theta, q, m) with r = m + 1/q and theta = q*(p-1).
struct FamilyCoords {
    Rational theta;  // > 0
    long q = 1;      // >= 1
    long m = 0;      // >= 0
};

/// Validated (p, r) pair indexing a Raney density. p > 1, 0 < r <= p.
struct RaneyParams {
    Rational p;
    Rational r;
    std::optional<FamilyCoords> family;  // present when r = m + 1/q
};

/// Parameters of the Jacobi-type binomial moment family: (p, r) = (theta/q + 1, 1/q - 1).
struct JacobiParams {
    Rational theta;  // > 0
    long q = 1;      // >= 1
    Rational p() const { return theta / q + 1; }
    Rational r() const { return Rational(1, q) - 1; }
};

struct SupportEdge {
    double L = 0.0;  // p^p (p-1)^{-(p-1)}
};

/// Validates (p, r) and derives family coordinates when they exist.
/// Throws std::domain_error for p <= 1, r <= 0 or r > p.
RaneyParams make_params(const Rational& p, const Rational& r);

/// Builds params from family coordinates (p, r) = (theta/q + 1, m + 1/q).
RaneyParams make_params_family(const Rational& theta, long q, long m);

/// Validates Jacobi family parameters (theta > 0, q >= 1).
JacobiParams make_jacobi_params(const Rational& theta, long q);

/// Upper support endpoint L = p^p (p-1)^{-(p-1)} (branch point of the curve).
SupportEdge support_edge(const RaneyParams& params);

/// Same edge expressed through family coordinates, (theta/q)(1+q/theta)^{1+theta/q}.
double support_edge_family(const Rational& theta, long q);

}  // namespace raneylab
