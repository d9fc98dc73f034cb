#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "quadlog/linalg.hpp"
#include "quadlog/matrix.hpp"
#include "quadlog/truncation.hpp"

namespace quadlog {

/// 2^-53, the default interval truncation tolerance for fixed-m DE.
inline constexpr double kUnitRoundoff = 0x1p-53;

inline constexpr int kDeDefaultMaxEvals = 1921;
inline constexpr int kGlDefaultMaxEvals = 2032;

enum class StopReason { converged, eval_limit, fixed_m };

std::string_view to_string(StopReason stop);

struct LogmResult {
    Matrix X;
    /// Integrand evaluations (linear systems solved).
    std::size_t evals = 0;
    /// DE paths only.
    std::optional<TruncationInterval> interval;
    /// Adaptive paths only.
    std::optional<double> err_estimate;
    StopReason stop = StopReason::fixed_m;
    /// Absent when A = I short-circuits.
    std::optional<SpectralParams> params;
};

struct AdaptiveLevel {
    int m = 0;               // abscissas at this level
    std::size_t evals = 0;   // cumulative integrand evaluations
    std::optional<double> estimate;
    double elapsed_seconds = 0.0;
};

struct AdaptiveReport {
    std::vector<AdaptiveLevel> levels;
    LogmResult final;
};

/// Fixed-m DE formula on the interval selected for tolerance `eps`.
LogmResult logm_de(const Matrix& a, int m, double eps = kUnitRoundoff,
                   EstimationMode mode = EstimationMode::exact());

/// Trapezoid refinement m -> 2m - 1 until (1/3)||T_{k+1} - T_k||_F / theta <= zeta.
AdaptiveReport logm_de_adaptive(const Matrix& a, const ToleranceConfig& cfg,
                                EstimationMode mode = EstimationMode::exact());

/// m-point Gauss-Legendre rule on the u-form of the integral.
LogmResult logm_gl(const Matrix& a, int m);

/// Node doubling m -> 2m (no reuse) until ||G_{k+1} - G_k||_F / theta <= zeta.
/// cfg.eps is ignored.
AdaptiveReport logm_gl_adaptive(const Matrix& a, const ToleranceConfig& cfg,
                                EstimationMode mode = EstimationMode::exact());

struct ActionResult {
    Vector y;
    std::size_t evals = 0;
    std::optional<TruncationInterval> interval;
};

/// log(A) v by the fixed-m DE formula using m linear solves and one matvec.
ActionResult logm_action_de(const Matrix& a, std::span<const double> v, int m,
                            double eps = kUnitRoundoff, EstimationMode mode = EstimationMode::exact());

}  // namespace quadlog
