#include "raneylab/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace raneylab {

namespace {

template <int N>
struct GaussRule {
    std::array<double, N> nodes{};    // on [-1, 1]
    std::array<double, N> weights{};
};

// Nodes by Newton iteration on P_N; matches tabulated values to full precision.
template <int N>
GaussRule<N> make_rule() {
    GaussRule<N> rule;
    for (int i = 0; i < N; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= N; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = N * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const GaussRule<20>& rule20() {
    static const GaussRule<20> r = make_rule<20>();
    return r;
}
const GaussRule<10>& rule10() {
    static const GaussRule<10> r = make_rule<10>();
    return r;
}

struct PanelEval {
    double value20;
    double value10;
};

PanelEval eval_panel(const Integrand& f, double a, double b, long& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s20 = 0.0, s10 = 0.0;
    for (int i = 0; i < 20; ++i) s20 += rule20().weights[i] * f(mid + half * rule20().nodes[i]);
    for (int i = 0; i < 10; ++i) s10 += rule10().weights[i] * f(mid + half * rule10().nodes[i]);
    evals += 30;
    return {s20 * half, s10 * half};
}

// Adaptive bisection on [a, b]; tol is absolute for the whole interval.
QuadResult integrate_adaptive(const Integrand& f, double a, double b, double tol) {
    struct Panel {
        double a, b, value, err;
    };
    QuadResult res;
    if (a == b) return res;
    PanelEval pe = eval_panel(f, a, b, res.evaluations);
    std::vector<Panel> panels{{a, b, pe.value20, std::abs(pe.value20 - pe.value10)}};
    const long max_evals = 4'000'000;
    while (true) {
        double total = 0.0, err = 0.0;
        size_t worst = 0;
        for (size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].err;
            if (panels[i].err > panels[worst].err) worst = i;
        }
        if (err <= std::max(tol, 1e-16 * std::abs(total)) || panels[worst].err == 0.0) {
            res.value = total;
            res.error_estimate = err;
            return res;
        }
        if (res.evaluations > max_evals) {
            throw std::runtime_error("integrate: evaluation budget exhausted (err=" +
                                     std::to_string(err) + ")");
        }
        Panel w = panels[worst];
        double m = 0.5 * (w.a + w.b);
        PanelEval l = eval_panel(f, w.a, m, res.evaluations);
        PanelEval r = eval_panel(f, m, w.b, res.evaluations);
        panels[worst] = {w.a, m, l.value20, std::abs(l.value20 - l.value10)};
        panels.push_back({m, w.b, r.value20, std::abs(r.value20 - r.value10)});
    }
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, double tol, EndpointExponents exps) {
    if (!(a < b)) throw std::invalid_argument("integrate: require a < b");
    if (exps.ga <= -1.0 || exps.gb <= -1.0) {
        throw std::invalid_argument("integrate: endpoint exponents must exceed -1");
    }
    if (exps.ga == 0.0 && exps.gb == 0.0) return integrate_adaptive(f, a, b, tol);

    const double mid = 0.5 * (a + b);
    QuadResult total;
    auto accumulate = [&total](const QuadResult& part) {
        total.value += part.value;
        total.error_estimate += part.error_estimate;
        total.evaluations += part.evaluations;
    };

    if (exps.ga != 0.0) {
        const double k = std::max(1.0, 2.0 / (1.0 + exps.ga));
        const double scale = mid - a;
        auto g = [&](double u) { return f(a + scale * std::pow(u, k)) * scale * k * std::pow(u, k - 1.0); };
        accumulate(integrate_adaptive(g, 0.0, 1.0, 0.5 * tol));
    } else {
        accumulate(integrate_adaptive(f, a, mid, 0.5 * tol));
    }
    if (exps.gb != 0.0) {
        const double k = std::max(1.0, 2.0 / (1.0 + exps.gb));
        const double scale = b - mid;
        auto g = [&](double u) { return f(b - scale * std::pow(u, k)) * scale * k * std::pow(u, k - 1.0); };
        accumulate(integrate_adaptive(g, 0.0, 1.0, 0.5 * tol));
    } else {
        accumulate(integrate_adaptive(f, mid, b, 0.5 * tol));
    }
    return total;
}

QuadResult pv_integrate(const Integrand& f, double a, double b, double s, double tol,
                        EndpointExponents exps) {
    if (!(a < s && s < b)) throw std::invalid_argument("pv_integrate: require a < s < b");
    const double fs = f(s);
    const double h = 0.5 * std::min(s - a, b - s);

    QuadResult total;
    total.evaluations = 1;

    // Symmetric window around s: odd part of the subtracted integrand cancels.
    auto window = [&](double u) { return (f(s + u) - f(s - u)) / u; };
    QuadResult w = integrate_adaptive(window, 0.0, h, 0.5 * tol);
    total.value += w.value;
    total.error_estimate += w.error_estimate;
    total.evaluations += 2 * w.evaluations;

    auto sub = [&](double y) { return (f(y) - fs) / (y - s); };
    if (a < s - h) {
        QuadResult l = integrate(sub, a, s - h, 0.25 * tol, {exps.ga, 0.0});
        total.value += l.value;
        total.error_estimate += l.error_estimate;
        total.evaluations += l.evaluations;
    }
    if (s + h < b) {
        QuadResult r = integrate(sub, s + h, b, 0.25 * tol, {0.0, exps.gb});
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.evaluations += r.evaluations;
    }
    total.value += fs * std::log((b - s) / (s - a));
    return total;
}

}  // namespace raneylab
