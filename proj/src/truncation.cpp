#include "quadlog/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadlog/errors.hpp"

namespace quadlog {

namespace {

// -log(1-g) + g/(2(1-g)): the right-tail factor as a function of the gap.
double right_factor(double gap) { return -std::log1p(-gap) + gap / (2.0 * (1.0 - gap)); }

double right_factor_derivative(double gap) {
    return 1.0 / (1.0 - gap) + 1.0 / (2.0 * (1.0 - gap) * (1.0 - gap));
}

// The admissible gap for the right Neumann expansion, 1 - 2k/(2k+1).
double max_right_gap(double norm_a_inv) { return 1.0 / (2.0 * norm_a_inv + 1.0); }

constexpr double kRoundingSlack = 1.0 + 8.0 * std::numeric_limits<double>::epsilon();

}  // namespace

double theta_lower_bound(const SpectralParams& params, bool spd) {
    if (!(params.rho_a > 0.0)) throw PreconditionViolated("spectral radius must be positive");
    double theta = std::abs(std::log(params.rho_a));
    if (spd) {
        if (!params.rho_a_inv) throw PreconditionViolated("SPD tightening needs rho(A^{-1})");
        theta = std::max(theta, std::abs(std::log(*params.rho_a_inv)));
    }
    if (!(theta > 0.0))
        throw DegenerateSpectrum("rho(A) = 1 gives no lower bound on ||log A||");
    return theta;
}

double tail_bound_left(double a, double norm_a_minus_i) {
    if (!(norm_a_minus_i > 0.0)) throw PreconditionViolated("||A - I|| must be positive");
    if (a < 0.0 || a > kRoundingSlack / (2.0 * norm_a_minus_i))
        throw PreconditionViolated("a outside (0, 1/(2||A-I||)]");
    return 1.5 * a * norm_a_minus_i;
}

double tail_bound_right_gap(double gap, double norm_a_minus_i, double norm_a_inv) {
    if (!(norm_a_inv > 0.0)) throw PreconditionViolated("||A^{-1}|| must be positive");
    if (gap < 0.0 || gap > kRoundingSlack * max_right_gap(norm_a_inv))
        throw PreconditionViolated("b outside [2k/(2k+1), 1)");
    return right_factor(gap) * norm_a_minus_i * norm_a_inv;
}

double tail_bound_right(double b, double norm_a_minus_i, double norm_a_inv) {
    if (!(b <= 1.0)) throw PreconditionViolated("b must not exceed 1");
    return tail_bound_right_gap(1.0 - b, norm_a_minus_i, norm_a_inv);
}

double truncation_bound(const TruncationInterval& interval, const SpectralParams& params) {
    return tail_bound_left(interval.a, params.norm_a_minus_i) +
           tail_bound_right_gap(interval.gap, params.norm_a_minus_i, params.norm_a_inv);
}

double epsilon_max(const SpectralParams& params) {
    if (!(params.theta > 0.0)) throw PreconditionViolated("theta must be positive");
    return (3.0 / params.theta) * params.norm_a_minus_i * params.norm_a_inv / (1.0 + params.norm_a_inv);
}

double solve_gap_exact(const SpectralParams& params, double eps) {
    if (!(eps > 0.0)) throw PreconditionViolated("eps must be positive");
    const double target =
        eps * params.theta / (2.0 * params.norm_a_minus_i * params.norm_a_inv);
    // bracket s in [s_lo, 1), i.e. gap in (0, hi]
    const double s_lo = std::min(0.5, 2.0 * params.norm_a_inv / (2.0 * params.norm_a_inv + 1.0));
    const double hi_gap = 1.0 - s_lo;
    if (!(right_factor(hi_gap) >= target))
        throw NoRoot("interval equation has no root in the bracket [s_lo, 1)");

    // Bisection on log(gap); the factor behaves like 1.5 gap near 0.
    double lo = std::log(std::min(hi_gap, target / 1.5) * 1e-3);
    double hi = std::log(hi_gap);
    while (right_factor(std::exp(lo)) > target) lo -= 10.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (right_factor(std::exp(mid)) < target)
            lo = mid;
        else
            hi = mid;
    }
    double gap = std::exp(0.5 * (lo + hi));
    for (int it = 0; it < 4; ++it) {
        const double step = (right_factor(gap) - target) / right_factor_derivative(gap);
        const double next = gap - step;
        if (!(next > 0.0 && next <= hi_gap)) break;
        gap = next;
    }
    return gap;
}

double solve_s_exact(const SpectralParams& params, double eps) { return 1.0 - solve_gap_exact(params, eps); }

double s_tilde_gap(const SpectralParams& params, double eps) {
    return params.theta * eps / (3.0 * params.norm_a_minus_i * params.norm_a_inv);
}

double s_tilde(const SpectralParams& params, double eps) { return 1.0 - s_tilde_gap(params, eps); }

double left_abscissa(double a) { return std::asinh(0.5 * (std::log(a) - std::log1p(-a))); }

double right_abscissa_from_gap(double gap) { return std::asinh(0.5 * (std::log1p(-gap) - std::log(gap))); }

TruncationInterval select_interval(const SpectralParams& params, double eps, SMode s_mode) {
    if (!(params.norm_a_minus_i > 0.0)) throw AIsIdentity("||A - I|| = 0: log(A) = 0, no interval needed");
    if (!(params.theta > 0.0)) throw DegenerateSpectrum("theta must be positive");
    if (!(eps > 0.0)) throw PreconditionViolated("eps must be positive");

    TruncationInterval iv;
    const double eps_max = epsilon_max(params);
    iv.clamped = eps >= eps_max;
    iv.eps_effective = iv.clamped ? eps_max / 2.0 : eps;
    const double e = iv.eps_effective;

    const double nai = params.norm_a_minus_i;
    const double ninv = params.norm_a_inv;
    iv.a = std::min(params.theta * e / (3.0 * nai), 1.0 / (2.0 * nai));

    const double floor_gap = max_right_gap(ninv);
    double s_gap = 0.0;
    if (s_mode == SMode::linearized) {
        s_gap = s_tilde_gap(params, e);
    } else {
        const double target = e * params.theta / (2.0 * nai * ninv);
        const double s_lo = std::min(0.5, 2.0 * ninv / (2.0 * ninv + 1.0));
        // a root below s_lo lies below 2k/(2k+1) too, so the floor decides b
        s_gap = right_factor(1.0 - s_lo) < target ? floor_gap : solve_gap_exact(params, e);
    }
    iv.gap = std::min(s_gap, floor_gap);
    iv.b = 1.0 - iv.gap;
    iv.l = left_abscissa(iv.a);
    iv.r = right_abscissa_from_gap(iv.gap);
    if (!(iv.a < iv.b) || !(iv.l < iv.r))
        throw PreconditionViolated("interval selection produced a >= b; inconsistent parameters");
    return iv;
}

}  // namespace quadlog
