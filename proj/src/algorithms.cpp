#include "quadlog/algorithms.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "quadlog/errors.hpp"
#include "quadlog/quadrature.hpp"

namespace quadlog {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Matrix minus_identity(const Matrix& a) {
    Matrix s = a;
    s.add_identity(-1.0);
    return s;
}

bool is_identity(const Matrix& a) { return minus_identity(a).max_abs() == 0.0; }

LogmResult zero_result(const Matrix& a, StopReason stop) {
    LogmResult r;
    r.X = Matrix(a.n());
    r.evals = 0;
    r.stop = stop;
    return r;
}

void require_square_nonempty(const Matrix& a) {
    if (a.empty()) throw InvalidArgument("matrix must have positive order");
}

}  // namespace

std::string_view to_string(StopReason stop) {
    switch (stop) {
        case StopReason::converged: return "converged";
        case StopReason::eval_limit: return "eval_limit";
        case StopReason::fixed_m: return "fixed_m";
    }
    return "unknown";
}

LogmResult logm_de(const Matrix& a, int m, double eps, EstimationMode mode) {
    require_square_nonempty(a);
    if (m < 2) throw InvalidArgument("logm_de needs m >= 2");
    if (is_identity(a)) return zero_result(a, StopReason::fixed_m);

    const SpectralParams params = estimate_params(a, mode);
    const TruncationInterval iv = select_interval(params, eps, SMode::linearized);
    const QuadratureState st = trapezoid_de(a, iv.l, iv.r, m);

    LogmResult r;
    r.X = minus_identity(a) * st.T;
    r.evals = st.evals;
    r.interval = iv;
    r.stop = StopReason::fixed_m;
    r.params = params;
    return r;
}

AdaptiveReport logm_de_adaptive(const Matrix& a, const ToleranceConfig& cfg, EstimationMode mode) {
    require_square_nonempty(a);
    if (cfg.m0 < 2) throw InvalidArgument("m0 must be at least 2");
    if (!(cfg.zeta > 0.0) || !(cfg.eps > 0.0)) throw InvalidArgument("tolerances must be positive");
    AdaptiveReport report;
    if (is_identity(a)) {
        report.final = zero_result(a, StopReason::converged);
        report.final.err_estimate = 0.0;
        return report;
    }
    const auto start = Clock::now();
    const SpectralParams params = estimate_params(a, mode);
    const TruncationInterval iv = select_interval(params, cfg.eps, SMode::linearized);

    QuadratureState st = trapezoid_de(a, iv.l, iv.r, cfg.m0);
    report.levels.push_back({st.m, st.evals, std::nullopt, seconds_since(start)});

    StopReason stop = StopReason::eval_limit;
    std::optional<double> estimate;
    while (2 * static_cast<long>(st.m) - 1 <= cfg.max_evals) {
        QuadratureState next = refine(st, a);
        Matrix diff = next.T;
        diff -= st.T;
        estimate = diff.frobenius_norm() / 3.0 / params.theta;
        st = std::move(next);
        report.levels.push_back({st.m, st.evals, estimate, seconds_since(start)});
        if (*estimate <= cfg.zeta) {
            stop = StopReason::converged;
            break;
        }
    }

    LogmResult& r = report.final;
    r.X = minus_identity(a) * st.T;
    r.evals = static_cast<std::size_t>(st.m);
    r.interval = iv;
    r.err_estimate = estimate.value_or(std::numeric_limits<double>::infinity());
    r.stop = stop;
    r.params = params;
    return report;
}

LogmResult logm_gl(const Matrix& a, int m) {
    require_square_nonempty(a);
    if (m < 1) throw InvalidArgument("logm_gl needs m >= 1");
    if (is_identity(a)) return zero_result(a, StopReason::fixed_m);
    LogmResult r;
    r.X = minus_identity(a) * gl_sum(a, gl_nodes(m));
    r.evals = static_cast<std::size_t>(m);
    r.stop = StopReason::fixed_m;
    return r;
}

AdaptiveReport logm_gl_adaptive(const Matrix& a, const ToleranceConfig& cfg, EstimationMode mode) {
    require_square_nonempty(a);
    if (cfg.m0 < 1) throw InvalidArgument("m0 must be positive");
    if (!(cfg.zeta > 0.0)) throw InvalidArgument("zeta must be positive");
    AdaptiveReport report;
    if (is_identity(a)) {
        report.final = zero_result(a, StopReason::converged);
        report.final.err_estimate = 0.0;
        return report;
    }
    const auto start = Clock::now();
    const SpectralParams params = estimate_params(a, mode);

    int m = cfg.m0;
    Matrix g = gl_sum(a, gl_nodes(m));
    std::size_t total = static_cast<std::size_t>(m);
    report.levels.push_back({m, total, std::nullopt, seconds_since(start)});

    StopReason stop = StopReason::eval_limit;
    std::optional<double> estimate;
    while (total + 2 * static_cast<std::size_t>(m) <= static_cast<std::size_t>(cfg.max_evals)) {
        m *= 2;
        Matrix next = gl_sum(a, gl_nodes(m));
        total += static_cast<std::size_t>(m);
        Matrix diff = next;
        diff -= g;
        estimate = diff.frobenius_norm() / params.theta;
        g = std::move(next);
        report.levels.push_back({m, total, estimate, seconds_since(start)});
        if (*estimate <= cfg.zeta) {
            stop = StopReason::converged;
            break;
        }
    }

    LogmResult& r = report.final;
    r.X = minus_identity(a) * g;
    r.evals = total;
    r.err_estimate = estimate.value_or(std::numeric_limits<double>::infinity());
    r.stop = stop;
    r.params = params;
    return report;
}

ActionResult logm_action_de(const Matrix& a, std::span<const double> v, int m, double eps,
                            EstimationMode mode) {
    require_square_nonempty(a);
    if (v.size() != a.n()) throw DimensionMismatch("vector length differs from matrix order");
    if (m < 2) throw InvalidArgument("logm_action_de needs m >= 2");
    ActionResult out;
    if (is_identity(a)) {
        out.y.assign(a.n(), 0.0);
        return out;
    }
    const SpectralParams params = estimate_params(a, mode);
    const TruncationInterval iv = select_interval(params, eps, SMode::linearized);
    const TrapezoidRule rule = trapezoid_rule(iv.l, iv.r, m);

    Vector acc(a.n(), 0.0);
    for (std::size_t i = 0; i < rule.abscissas.size(); ++i) {
        const Vector fv = f_de_action(rule.abscissas[i], a, v);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += rule.weights[i] * fv[k];
    }
    out.y = minus_identity(a) * std::span<const double>(acc);
    out.evals = rule.abscissas.size();
    out.interval = iv;
    return out;
}

}  // namespace quadlog
