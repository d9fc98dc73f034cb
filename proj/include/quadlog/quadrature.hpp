#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "quadlog/matrix.hpp"

namespace quadlog {

/// cosh(x) sech^2(sinh x), the Jacobian of u = tanh(sinh x).
double de_weight(double x);

/// 1 + tanh(sinh x), evaluated without cancellation as x -> -inf.
double de_shift(double x);

/// F_DE(x) = de_weight(x) [de_shift(x) (A - I) + 2I]^{-1}
Matrix f_de(double x, const Matrix& a);

/// F_DE(x) v through one linear solve.
Vector f_de_action(double x, const Matrix& a, std::span<const double> v);

/// F_GL(u) = [(1 + u)(A - I) + 2I]^{-1}
Matrix f_gl(double u, const Matrix& a);

/// Running trapezoid sum of F_DE on [l, r]. T excludes the (A - I) factor.
struct QuadratureState {
    Matrix T;
    double h = 0.0;
    int m = 0;
    double l = 0.0;
    double r = 0.0;
    std::size_t evals = 0;
};

/// m-point trapezoid rule, h = (r - l)/(m - 1).
QuadratureState trapezoid_de(const Matrix& a, double l, double r, int m);

/// Halves the mesh, reusing state.T: m -> 2m - 1, evals += m - 1.
QuadratureState refine(const QuadratureState& state, const Matrix& a);

/// Trapezoid weights of the m-point rule on [l, r] and its abscissas.
struct TrapezoidRule {
    std::vector<double> abscissas;
    std::vector<double> weights;
};
TrapezoidRule trapezoid_rule(double l, double r, int m);

struct GLRule {
    std::vector<double> nodes;    // ascending in (-1, 1)
    std::vector<double> weights;  // positive
};

/// m-point Gauss-Legendre rule, 1 <= m <= 4096.
GLRule gl_nodes(int m);

/// sum_i w_i F_GL(u_i), accumulated in node order.
Matrix gl_sum(const Matrix& a, const GLRule& rule);

}  // namespace quadlog
