#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "quadlog/linalg.hpp"
#include "quadlog/matrix.hpp"
#include "quadlog/testmats.hpp"

namespace quadlog::test {

inline double rel_fro(const Matrix& x, const Matrix& ref) { return (x - ref).frobenius_norm() / ref.frobenius_norm(); }

inline double rel_diff(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

inline Matrix random_matrix(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Matrix a(n);
    for (auto& v : a.data()) v = u(rng);
    return a;
}

inline Matrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
    Matrix a = random_matrix(n, rng);
    Matrix s = a + a.transpose();
    s *= 0.5;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) s(i, j) = s(j, i);
    return s;
}

inline Matrix diag(std::vector<double> d) { return Matrix::diagonal(d); }

/// V diag(lambda) V^{-1} with V = I + c R, R random, giving a mildly
/// conditioned eigenbasis.
struct Diagonalizable {
    Matrix a;
    Matrix v;
    Matrix v_inv;
    std::vector<double> lambda;
};

inline Diagonalizable random_diagonalizable(std::vector<double> lambda, std::mt19937_64& rng, double c = 0.3) {
    const std::size_t n = lambda.size();
    Matrix v = random_matrix(n, rng);
    v *= c / std::sqrt(static_cast<double>(n));
    v.add_identity(1.0);
    Matrix v_inv = LuFactorization(v).inverse();
    Matrix a = v * Matrix::diagonal(lambda) * v_inv;
    return {std::move(a), std::move(v), std::move(v_inv), std::move(lambda)};
}

}  // namespace quadlog::test
