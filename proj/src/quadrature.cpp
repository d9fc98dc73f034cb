#include "quadlog/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "quadlog/errors.hpp"
#include "quadlog/linalg.hpp"
#include "quadlog/parallel.hpp"

namespace quadlog {

namespace {

Matrix shifted_identity(const Matrix& a) {
    Matrix s = a;
    s.add_identity(-1.0);
    return s;
}

// c (A - I) + 2I
Matrix system_matrix(double c, const Matrix& a_minus_i) {
    Matrix m = c * a_minus_i;
    m.add_identity(2.0);
    return m;
}

Matrix inverse_of(const Matrix& m) { return LuFactorization(m).inverse(); }

Matrix f_de_shifted(double x, const Matrix& a_minus_i) {
    const double w = de_weight(x);
    if (w == 0.0) return Matrix(a_minus_i.n());
    Matrix inv = inverse_of(system_matrix(de_shift(x), a_minus_i));
    inv *= w;
    return inv;
}

// Evaluates fn at every index, then accumulates weight[i] * fn(i) in index
// order. Evaluation runs in blocks so at most one block of matrices is alive.
template <class Fn>
Matrix weighted_sum(std::size_t n, std::span<const double> weights, Fn&& fn) {
    Matrix sum(n);
    const std::size_t count = weights.size();
    const std::size_t block = std::max<std::size_t>(64, 4 * thread_count());
    // tiny systems do not amortize thread start-up
    const std::size_t min_per_thread = n >= 16 ? 1 : (n >= 6 ? 16 : count + 1);
    std::vector<Matrix> values;
    for (std::size_t start = 0; start < count; start += block) {
        const std::size_t len = std::min(block, count - start);
        values.assign(len, Matrix());
        parallel_for(len, [&](std::size_t i) { values[i] = fn(start + i); }, min_per_thread);
        for (std::size_t i = 0; i < len; ++i) sum.add_scaled(weights[start + i], values[i]);
    }
    return sum;
}

}  // namespace

double de_weight(double x) {
    const double s = std::sinh(x);
    const double e = std::exp(-2.0 * std::abs(s));
    if (e == 0.0) return 0.0;
    const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
    return std::cosh(x) * sech2;
}

double de_shift(double x) { return 2.0 / (1.0 + std::exp(-2.0 * std::sinh(x))); }

Matrix f_de(double x, const Matrix& a) { return f_de_shifted(x, shifted_identity(a)); }

Vector f_de_action(double x, const Matrix& a, std::span<const double> v) {
    if (v.size() != a.n()) throw DimensionMismatch("vector length differs from matrix order");
    Vector y = LuFactorization(system_matrix(de_shift(x), shifted_identity(a))).solve(v);
    const double w = de_weight(x);
    for (auto& e : y) e *= w;
    return y;
}

Matrix f_gl(double u, const Matrix& a) { return inverse_of(system_matrix(1.0 + u, shifted_identity(a))); }

TrapezoidRule trapezoid_rule(double l, double r, int m) {
    if (m < 2) throw InvalidArgument("trapezoid rule needs m >= 2");
    if (!(l < r)) throw InvalidArgument("trapezoid rule needs l < r");
    const double h = (r - l) / (m - 1);
    TrapezoidRule rule;
    rule.abscissas.resize(m);
    rule.weights.assign(m, h);
    for (int i = 0; i < m - 1; ++i) rule.abscissas[i] = l + i * h;
    rule.abscissas[m - 1] = r;
    rule.weights.front() = rule.weights.back() = h / 2.0;
    return rule;
}

QuadratureState trapezoid_de(const Matrix& a, double l, double r, int m) {
    const TrapezoidRule rule = trapezoid_rule(l, r, m);
    const Matrix ami = shifted_identity(a);
    QuadratureState st;
    st.T = weighted_sum(a.n(), rule.weights,
                        [&](std::size_t i) { return f_de_shifted(rule.abscissas[i], ami); });
    st.h = (r - l) / (m - 1);
    st.m = m;
    st.l = l;
    st.r = r;
    st.evals = static_cast<std::size_t>(m);
    return st;
}

QuadratureState refine(const QuadratureState& state, const Matrix& a) {
    const Matrix ami = shifted_identity(a);
    const double half = state.h / 2.0;
    const std::size_t count = static_cast<std::size_t>(state.m - 1);
    std::vector<double> weights(count, half);
    Matrix midpoints = weighted_sum(a.n(), weights, [&](std::size_t k) {
        const double i = static_cast<double>(k + 1);
        return f_de_shifted(state.l + (2.0 * i - 1.0) * half, ami);
    });
    QuadratureState next = state;
    next.T *= 0.5;
    next.T += midpoints;
    next.h = half;
    next.m = 2 * state.m - 1;
    next.evals = state.evals + count;
    return next;
}

GLRule gl_nodes(int m) {
    if (m < 1 || m > 4096) throw InvalidArgument("gl_nodes needs 1 <= m <= 4096");
    using Real = long double;
    const Real pi = std::numbers::pi_v<Real>;
    GLRule rule;
    rule.nodes.assign(m, 0.0);
    rule.weights.assign(m, 0.0);

    // P_m(cos t) and the combination x P_m - P_{m-1}, which is
    // (x^2 - 1) P_m'(x) / m.
    auto legendre = [m](Real x, Real& pm, Real& pm1) {
        Real p0 = 1, p1 = x;
        if (m == 1) {
            pm = p1;
            pm1 = p0;
            return;
        }
        for (int k = 2; k <= m; ++k) {
            const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        pm = p1;
        pm1 = p0;
    };

    // Newton in the angle t (x = cos t) keeps 1 - x^2 = sin^2 t accurate
    // next to the endpoints. Roots i = 1..m/2 lie in (0, 1); mirror the rest.
    const int half = m / 2;
    for (int i = 1; i <= half; ++i) {
        Real t = pi * (i - Real(0.25)) / (m + Real(0.5));
        bool converged = false;
        Real prev = std::numeric_limits<Real>::infinity();
        for (int it = 0; it < 100; ++it) {
            Real pm, pm1;
            const Real x = std::cos(t);
            const Real st = std::sin(t);
            legendre(x, pm, pm1);
            // dP_m/dt = -sin t P_m'(x) = m (x P_m - P_{m-1}) / sin t
            const Real dpdt = m * (x * pm - pm1) / st;
            const Real dt = pm / dpdt;
            // near x = 1 the rounding of cos t limits how small dt gets
            if (std::abs(dt) >= prev && prev < Real(1e-13)) {
                converged = true;
                break;
            }
            t -= dt;
            prev = std::abs(dt);
            if (prev <= Real(1e-18) * std::max(Real(1), t)) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NoConvergence("Legendre root " + std::to_string(i) + " did not converge");
        Real pm, pm1;
        const Real x = std::cos(t);
        const Real st = std::sin(t);
        legendre(x, pm, pm1);
        const Real d = m * (x * pm - pm1);  // = -sin^2 t P_m'(x)
        const Real w = 2 * st * st / (d * d);
        const int hi = m - i;  // ascending index of +x
        const int lo = i - 1;  // ascending index of -x
        rule.nodes[hi] = static_cast<double>(x);
        rule.nodes[lo] = -static_cast<double>(x);
        rule.weights[hi] = rule.weights[lo] = static_cast<double>(w);
    }
    if (m % 2 == 1) {
        // middle root x = 0: w = 2 / P_m'(0)^2 and P_m'(0) = m P_{m-1}(0)
        Real pm, pm1;
        legendre(0, pm, pm1);
        const Real d = m * pm1;
        rule.nodes[half] = 0.0;
        rule.weights[half] = static_cast<double>(2 / (d * d));
    }
    return rule;
}

Matrix gl_sum(const Matrix& a, const GLRule& rule) {
    const Matrix ami = shifted_identity(a);
    return weighted_sum(a.n(), rule.weights, [&](std::size_t i) {
        return inverse_of(system_matrix(1.0 + rule.nodes[i], ami));
    });
}

}  // namespace quadlog
