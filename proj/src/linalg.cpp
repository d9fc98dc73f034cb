#include "quadlog/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "quadlog/errors.hpp"
#include "quadlog/truncation.hpp"

namespace quadlog {

// ---------------------------------------------------------------------------
// LU

LuFactorization::LuFactorization(const Matrix& a) : lu_(a), perm_(a.n()) {
    const std::size_t n = a.n();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (!(best >= kPivotDropTolerance))
            throw SingularMatrix("LU pivot " + std::to_string(k) + " below drop tolerance");
        if (p != k) {
            std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
            std::swap(perm_[k], perm_[p]);
        }
        const double pivot = lu_(k, k);
        auto rk = lu_.row(k);
        for (std::size_t i = k + 1; i < n; ++i) {
            auto ri = lu_.row(i);
            const double l = ri[k] / pivot;
            ri[k] = l;
            if (l == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) ri[j] -= l * rk[j];
        }
    }
}

Vector LuFactorization::solve(std::span<const double> b) const {
    const std::size_t n = lu_.n();
    if (b.size() != n) throw DimensionMismatch("right-hand side length differs from matrix order");
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i) {
        auto ri = lu_.row(i);
        double s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= ri[j] * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        auto ri = lu_.row(i);
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= ri[j] * x[j];
        x[i] = s / ri[i];
    }
    return x;
}

Matrix LuFactorization::solve(const Matrix& b) const {
    const std::size_t n = lu_.n();
    if (b.n() != n) throw DimensionMismatch("right-hand side order differs from matrix order");
    // Row-oriented substitution on all columns at once.
    Matrix x(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto src = b.row(perm_[i]);
        std::copy(src.begin(), src.end(), x.row(i).begin());
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = x.row(i);
        for (std::size_t k = 0; k < i; ++k) {
            const double l = lu_(i, k);
            if (l == 0.0) continue;
            auto xk = x.row(k);
            for (std::size_t j = 0; j < n; ++j) xi[j] -= l * xk[j];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        auto xi = x.row(i);
        for (std::size_t k = i + 1; k < n; ++k) {
            const double u = lu_(i, k);
            if (u == 0.0) continue;
            auto xk = x.row(k);
            for (std::size_t j = 0; j < n; ++j) xi[j] -= u * xk[j];
        }
        const double d = lu_(i, i);
        for (std::size_t j = 0; j < n; ++j) xi[j] /= d;
    }
    return x;
}

Vector LuFactorization::solve_transpose(std::span<const double> b) const {
    // A^T = U^T L^T P, so solve U^T y = b, L^T z = y, x = P^T z.
    const std::size_t n = lu_.n();
    if (b.size() != n) throw DimensionMismatch("right-hand side length differs from matrix order");
    Vector y(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        double s = y[i];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * y[j];
        y[i] = s / lu_(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu_(j, i) * y[j];
        y[i] = s;
    }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = y[i];
    return x;
}

Matrix LuFactorization::inverse() const { return solve(Matrix::identity(lu_.n())); }

Vector lu_solve(const Matrix& a, std::span<const double> b) { return LuFactorization(a).solve(b); }

Matrix lu_solve(const Matrix& a, const Matrix& b) { return LuFactorization(a).solve(b); }

// ---------------------------------------------------------------------------
// Jacobi eigensolver

namespace {

template <class Real>
struct JacobiResult {
    std::vector<Real> values;   // ascending
    std::vector<Real> vectors;  // row-major, column k is eigenvector k
};

template <class Real>
JacobiResult<Real> jacobi(std::vector<Real> a, std::size_t n, Real rel_tol) {
    auto at = [n](std::vector<Real>& m, std::size_t i, std::size_t j) -> Real& { return m[i * n + j]; };

    std::vector<Real> v(n * n, Real(0));
    for (std::size_t i = 0; i < n; ++i) at(v, i, i) = Real(1);

    Real fro = 0;
    for (Real x : a) fro += x * x;
    fro = std::sqrt(fro);

    constexpr int kMaxSweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        Real off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += 2 * at(a, i, j) * at(a, i, j);
        if (std::sqrt(off) <= rel_tol * fro) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Real apq = at(a, p, q);
                if (apq == Real(0)) continue;
                const Real app = at(a, p, p);
                const Real aqq = at(a, q, q);
                // skip rotations that cannot change the diagonal
                if (std::abs(apq) < std::numeric_limits<Real>::epsilon() * Real(1e-3) *
                                        std::min(std::abs(app), std::abs(aqq))) {
                    at(a, p, q) = at(a, q, p) = Real(0);
                    continue;
                }
                const Real tau = (aqq - app) / (2 * apq);
                Real t;
                if (std::abs(tau) > Real(1e30))
                    t = Real(1) / (2 * tau);
                else
                    t = (tau >= 0 ? Real(1) : Real(-1)) / (std::abs(tau) + std::sqrt(tau * tau + 1));
                const Real c = Real(1) / std::sqrt(t * t + 1);
                const Real s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const Real akp = at(a, k, p);
                    const Real akq = at(a, k, q);
                    at(a, k, p) = c * akp - s * akq;
                    at(a, k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Real apk = at(a, p, k);
                    const Real aqk = at(a, q, k);
                    at(a, p, k) = c * apk - s * aqk;
                    at(a, q, k) = s * apk + c * aqk;
                }
                at(a, p, q) = at(a, q, p) = Real(0);
                for (std::size_t k = 0; k < n; ++k) {
                    const Real vkp = at(v, k, p);
                    const Real vkq = at(v, k, q);
                    at(v, k, p) = c * vkp - s * vkq;
                    at(v, k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) throw NoConvergence("Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return at(a, x, x) < at(a, y, y); });
    JacobiResult<Real> out;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = at(a, order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] = at(v, i, order[k]);
    }
    return out;
}

void require_symmetric(const Matrix& a) {
    if (!is_symmetric(a, 1e-12)) throw NotSymmetric("matrix is not symmetric to 1e-12 relative");
}

template <class Real>
std::vector<Real> symmetrized(const Matrix& a) {
    const std::size_t n = a.n();
    std::vector<Real> s(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s[i * n + j] = (static_cast<Real>(a(i, j)) + static_cast<Real>(a(j, i))) / 2;
    return s;
}

// ---------------------------------------------------------------------------
// Power iteration

using Apply = std::function<Vector(const Vector&)>;

struct PowerOptions {
    double tol;
    std::size_t cap;
    // operator is symmetric positive semidefinite: Rayleigh quotient suffices
    bool psd;
    // stop on the relative change of the estimate alone
    bool change_only = false;
};

// The nonsymmetric estimate fits z = c1 y + c0 x over three successive
// iterates x, y = Bx, z = By. The roots of mu^2 - c1 mu - c0 approximate the
// two dominant eigenvalues, which covers a complex-conjugate dominant pair
// where plain ratios oscillate forever. Once x and y are nearly parallel the
// fit is ill-conditioned and the plain ratio takes over.
SpectralRadius power_iteration(const Apply& apply, std::size_t n, const PowerOptions& opt) {
    Vector x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double prev = std::numeric_limits<double>::quiet_NaN();
    int hits = 0;
    SpectralRadius out;
    for (std::size_t it = 1; it <= opt.cap; ++it) {
        Vector y = apply(x);
        double est = 0.0;
        bool pair = false;
        Vector next;
        double residual = 0.0;
        if (opt.psd) {
            est = std::abs(dot(x, y));
            for (std::size_t i = 0; i < n; ++i) residual = std::hypot(residual, y[i] - est * x[i]);
            residual /= std::max(est, std::numeric_limits<double>::min());
            next = std::move(y);
        } else {
            Vector z = apply(y);
            const double xx = dot(x, x), xy = dot(x, y), yy = dot(y, y);
            const double xz = dot(x, z), yz = dot(y, z);
            const double det = xx * yy - xy * xy;
            if (det > 1e-6 * xx * yy) {
                const double c0 = (yy * xz - xy * yz) / det;
                const double c1 = (xx * yz - xy * xz) / det;
                for (std::size_t i = 0; i < n; ++i) residual = std::hypot(residual, z[i] - c1 * y[i] - c0 * x[i]);
                residual /= std::max(norm2(z), std::numeric_limits<double>::min());
                const double disc = c1 * c1 + 4.0 * c0;
                if (disc < 0.0) {
                    est = std::sqrt(-c0);
                    pair = true;
                } else {
                    const double sq = std::sqrt(disc);
                    est = std::max(std::abs(c1 + sq), std::abs(c1 - sq)) / 2.0;
                }
            } else {
                est = norm2(y) / norm2(x);
                const double mu = xy / xx;
                for (std::size_t i = 0; i < n; ++i) residual = std::hypot(residual, y[i] - mu * x[i]);
                residual /= std::max(norm2(y), std::numeric_limits<double>::min());
            }
            next = std::move(z);
        }
        const double nn = norm2(next);
        if (nn == 0.0) {
            out = {0.0, false, it};
            return out;
        }
        for (auto& v : next) v /= nn;
        x = std::move(next);
        out = {est, pair, it};
        if (std::abs(est - prev) <= opt.tol * std::abs(est) && (opt.change_only || residual <= opt.tol)) {
            if (++hits >= 2) return out;
        } else {
            hits = 0;
        }
        prev = est;
    }
    throw NoConvergence("power iteration exceeded " + std::to_string(opt.cap) + " iterations");
}

Matrix gram(const Matrix& a) { return a.transpose() * a; }

double largest_abs(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

PowerOptions approx_options(std::size_t n, EstimationMode mode) {
    return {mode.tol, default_iteration_cap(n), true};
}

// Exact mode for nonsymmetric spectral radius: converge to near roundoff.
constexpr double kExactPowerTol = 1e-13;
std::size_t exact_cap(std::size_t n) { return std::max<std::size_t>(50000, 100 * n); }

}  // namespace

SymEig sym_eig(const Matrix& a) {
    require_symmetric(a);
    const std::size_t n = a.n();
    auto r = jacobi<double>(symmetrized<double>(a), n, 1e-14);
    return {std::move(r.values), Matrix(n, std::move(r.vectors))};
}

double two_norm(const Matrix& a, EstimationMode mode) {
    if (a.max_abs() == 0.0) throw InvalidArgument("two_norm of the zero matrix");
    const std::size_t n = a.n();
    if (!mode.approximate) {
        if (is_symmetric(a, 1e-14)) return largest_abs(sym_eig(a).values);
        return std::sqrt(std::max(0.0, sym_eig(gram(a)).values.back()));
    }
    const Matrix at = a.transpose();
    auto apply = [&](const Vector& x) { return at * std::span<const double>(a * std::span<const double>(x)); };
    return std::sqrt(power_iteration(apply, n, approx_options(n, mode)).value);
}

double inverse_two_norm(const Matrix& a, EstimationMode mode) {
    const std::size_t n = a.n();
    if (!mode.approximate) {
        if (is_symmetric(a, 1e-14)) {
            const auto values = sym_eig(a).values;
            double smallest = std::numeric_limits<double>::infinity();
            for (double v : values) smallest = std::min(smallest, std::abs(v));
            if (smallest == 0.0) throw SingularMatrix("symmetric matrix has a zero eigenvalue");
            return 1.0 / smallest;
        }
        return two_norm(LuFactorization(a).inverse(), mode);
    }
    const LuFactorization lu(a);
    // (A^T A)^{-1} = A^{-1} A^{-T}
    auto apply = [&](const Vector& x) { return lu.solve(lu.solve_transpose(x)); };
    return std::sqrt(power_iteration(apply, n, approx_options(n, mode)).value);
}

SpectralRadius spectral_radius(const Matrix& a, EstimationMode mode) {
    if (a.max_abs() == 0.0) throw InvalidArgument("spectral radius of the zero matrix");
    const std::size_t n = a.n();
    if (!mode.approximate && is_symmetric(a, 1e-14)) return {largest_abs(sym_eig(a).values), false, 0};
    auto apply = [&](const Vector& x) { return a * std::span<const double>(x); };
    PowerOptions opt{mode.tol, default_iteration_cap(n), false};
    if (!mode.approximate) opt = {kExactPowerTol, exact_cap(n), false, true};
    return power_iteration(apply, n, opt);
}

// ---------------------------------------------------------------------------
// expm

Matrix expm(const Matrix& x) {
    const std::size_t n = x.n();
    if (!x.all_finite()) throw InvalidArgument("expm input must be finite");
    const double norm = x.norm1();
    int sigma = 0;
    if (norm > 0.0) sigma = std::max(0, static_cast<int>(std::ceil(std::log2(norm))) + 1);
    const Matrix scaled = std::ldexp(1.0, -sigma) * x;

    // Horner on the degree-20 Taylor polynomial.
    constexpr int kDegree = 20;
    Matrix p = Matrix::identity(n);
    for (int k = kDegree; k >= 1; --k) {
        p = scaled * p;
        p *= 1.0 / k;
        p.add_identity(1.0);
    }
    for (int s = 0; s < sigma; ++s) {
        p = p * p;
        if (p.max_abs() > 1e300) throw Overflow("expm: entry exceeds 1e300 during squaring");
    }
    if (p.max_abs() > 1e300) throw Overflow("expm: entry exceeds 1e300");
    return p;
}

// ---------------------------------------------------------------------------
// SPD logarithm oracle

Matrix eig_logm_spd(const Matrix& a) {
    require_symmetric(a);
    using Real = long double;
    const std::size_t n = a.n();
    auto r = jacobi<Real>(symmetrized<Real>(a), n, Real(1e-18));
    for (Real v : r.values)
        if (!(v > 0)) throw NotSPD("eigenvalue <= 0 in eig_logm_spd");
    std::vector<Real> logs(n);
    for (std::size_t k = 0; k < n; ++k) logs[k] = std::log(r.values[k]);
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Real s = 0;
            for (std::size_t k = 0; k < n; ++k) s += r.vectors[i * n + k] * logs[k] * r.vectors[j * n + k];
            out(i, j) = out(j, i) = static_cast<double>(s);
        }
    return out;
}

bool is_spd(const Matrix& a) {
    if (!is_symmetric(a, 1e-12)) return false;
    const std::size_t n = a.n();
    std::vector<double> l(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
        if (!(d > 0.0)) return false;
        const double ljj = std::sqrt(d);
        l[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = 0.5 * (a(i, j) + a(j, i));
            for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
            l[i * n + j] = s / ljj;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

SpectralParams estimate_params(const Matrix& a, EstimationMode mode) {
    SpectralParams p;
    p.mode = mode;
    Matrix shifted = a;
    shifted.add_identity(-1.0);

    if (!mode.approximate && is_symmetric(a, 1e-12)) {
        const auto values = sym_eig(a).values;
        double smallest = std::numeric_limits<double>::infinity();
        for (double v : values) {
            p.rho_a = std::max(p.rho_a, std::abs(v));
            p.norm_a_minus_i = std::max(p.norm_a_minus_i, std::abs(v - 1.0));
            smallest = std::min(smallest, std::abs(v));
        }
        if (smallest == 0.0) throw SingularMatrix("symmetric matrix has a zero eigenvalue");
        p.norm_a_inv = 1.0 / smallest;
        p.spd = values.front() > 0.0;
    } else {
        p.rho_a = spectral_radius(a, mode).value;
        p.norm_a_minus_i = shifted.max_abs() == 0.0 ? 0.0 : two_norm(shifted, mode);
        p.norm_a_inv = inverse_two_norm(a, mode);
        p.spd = mode.approximate && is_spd(a);
    }
    if (p.spd) p.rho_a_inv = p.norm_a_inv;
    p.theta = theta_lower_bound(p, p.spd);
    return p;
}

}  // namespace quadlog
