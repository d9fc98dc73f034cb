#pragma once

#include "quadlog/linalg.hpp"

namespace quadlog {

/// Finite DE integration interval [l, r] and the t-space cut points behind it.
///
/// t = (tanh(sinh x) + 1) / 2 maps x = l to t = a and x = r to t = b. Since b
/// sits within ~1e-20 of 1 for tight tolerances, the gap 1 - b is carried
/// explicitly and every b-side formula is evaluated from it.
struct TruncationInterval {
    double a = 0.0;
    double b = 0.0;
    double gap = 0.0;  // 1 - b, exact
    double l = 0.0;
    double r = 0.0;
    double eps_effective = 0.0;
    bool clamped = false;
};

struct ToleranceConfig {
    double eps = 1e-8;   // interval truncation
    double zeta = 1e-8;  // quadrature error
    int m0 = 16;
    int max_evals = 1921;
};

enum class SMode { linearized, exact };

/// |log rho(A)|, or max{|log rho(A)|, |log rho(A^{-1})|} when `spd`.
/// Throws DegenerateSpectrum when the result would be zero.
double theta_lower_bound(const SpectralParams& params, bool spd);

/// (3a/2) ||A - I||, bound on ||(A-I) int_0^a F(t) dt|| for a <= 1/(2||A-I||).
double tail_bound_left(double a, double norm_a_minus_i);

/// (-log b + (1-b)/(2b)) ||A-I|| ||A^{-1}|| for b in [2k/(2k+1), 1), k = ||A^{-1}||.
double tail_bound_right(double b, double norm_a_minus_i, double norm_a_inv);

/// tail_bound_right expressed through gap = 1 - b.
double tail_bound_right_gap(double gap, double norm_a_minus_i, double norm_a_inv);

/// Sum of both tail bounds: an upper bound on the truncation error of `interval`.
double truncation_bound(const TruncationInterval& interval, const SpectralParams& params);

/// Largest tolerance for which the interval construction is well-posed.
double epsilon_max(const SpectralParams& params);

/// Root s of (1/theta)(-log s + (1-s)/(2s)) ||A-I|| ||A^{-1}|| = eps/2.
double solve_s_exact(const SpectralParams& params, double eps);
/// 1 - solve_s_exact, computed without cancellation.
double solve_gap_exact(const SpectralParams& params, double eps);

/// First-order approximation 1 - theta eps / (3 ||A-I|| ||A^{-1}||).
double s_tilde(const SpectralParams& params, double eps);
double s_tilde_gap(const SpectralParams& params, double eps);

TruncationInterval select_interval(const SpectralParams& params, double eps,
                                   SMode s_mode = SMode::linearized);

/// asinh(atanh(2a - 1)) with atanh written as (log a - log(1 - a)) / 2.
double left_abscissa(double a);
/// asinh(atanh(2b - 1)) from gap = 1 - b.
double right_abscissa_from_gap(double gap);

}  // namespace quadlog
