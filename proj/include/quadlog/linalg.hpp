#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "quadlog/matrix.hpp"

namespace quadlog {

/// Pivots smaller than this in magnitude are treated as exact zeros.
inline constexpr double kPivotDropTolerance = 1e-300;

/// LU factorization with partial pivoting, P A = L U.
class LuFactorization {
public:
    /// Throws SingularMatrix when a pivot falls below kPivotDropTolerance.
    explicit LuFactorization(const Matrix& a);

    std::size_t n() const noexcept { return lu_.n(); }

    Vector solve(std::span<const double> b) const;
    Matrix solve(const Matrix& b) const;
    /// Solves A^T x = b.
    Vector solve_transpose(std::span<const double> b) const;
    Matrix inverse() const;

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

Vector lu_solve(const Matrix& a, std::span<const double> b);
Matrix lu_solve(const Matrix& a, const Matrix& b);

/// How spectral quantities are estimated.
///
/// Exact mode uses the Jacobi eigensolver (on A for symmetric input, on
/// A^T A for norms) and a tightly converged power iteration for the
/// spectral radius of nonsymmetric input. Approximate mode stops power
/// iterations at relative tolerance `tol`, which is all the interval
/// selection needs.
struct EstimationMode {
    bool approximate = false;
    double tol = 0.01;

    static constexpr EstimationMode exact() { return {}; }
    static constexpr EstimationMode rough(double tol = 0.01) { return {true, tol}; }

    bool operator==(const EstimationMode&) const = default;
};

/// Default iteration cap for approximate power iterations.
inline std::size_t default_iteration_cap(std::size_t n) { return 10 * n + 100; }

double two_norm(const Matrix& a, EstimationMode mode = EstimationMode::exact());

/// ||A^{-1}||_2 without forming the inverse in approximate mode.
double inverse_two_norm(const Matrix& a, EstimationMode mode = EstimationMode::exact());

struct SpectralRadius {
    double value = 0.0;
    /// Iterates rotate in a plane: the dominant eigenvalues form a complex pair.
    bool complex_pair = false;
    std::size_t iterations = 0;
};

SpectralRadius spectral_radius(const Matrix& a, EstimationMode mode = EstimationMode::exact());

struct SymEig {
    Vector values;   // ascending
    Matrix vectors;  // column k belongs to values[k]
};

/// Cyclic Jacobi. Throws NotSymmetric unless ||A - A^T||_F <= 1e-12 ||A||_F.
SymEig sym_eig(const Matrix& a);

/// Matrix exponential by scaling and squaring of a degree-20 Taylor polynomial.
Matrix expm(const Matrix& x);

/// Q diag(log lambda) Q^T, evaluated in extended precision.
Matrix eig_logm_spd(const Matrix& a);

/// Symmetric (to 1e-12 relative) with a successful Cholesky factorization.
bool is_spd(const Matrix& a);

struct SpectralParams {
    double rho_a = 0.0;
    double norm_a_minus_i = 0.0;
    double norm_a_inv = 0.0;
    /// Only filled for SPD input, where rho(A^{-1}) = ||A^{-1}||_2.
    std::optional<double> rho_a_inv;
    /// Lower bound on ||log A||_2.
    double theta = 0.0;
    bool spd = false;
    EstimationMode mode;
};

/// Computes rho(A), ||A-I||_2, ||A^{-1}||_2, detects SPD input and fills theta.
SpectralParams estimate_params(const Matrix& a, EstimationMode mode = EstimationMode::exact());

}  // namespace quadlog
