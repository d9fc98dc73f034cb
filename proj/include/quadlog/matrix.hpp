#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace quadlog {

using Vector = std::vector<double>;

/// Dense real square matrix, row-major. Entries are finite on construction.
class Matrix {
public:
    Matrix() = default;
    /// n x n zero matrix.
    explicit Matrix(std::size_t n);
    /// Takes ownership of `entries` (row-major, size n*n). Throws on NaN/Inf.
    Matrix(std::size_t n, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);

    std::size_t n() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    Matrix transpose() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    /// this += s * other
    Matrix& add_scaled(double s, const Matrix& other);
    /// this += s * I
    Matrix& add_identity(double s);

    double frobenius_norm() const;
    /// Maximum absolute column sum.
    double norm1() const;
    double max_abs() const;
    bool all_finite() const;

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> v);

double norm2(std::span<const double> v);
double dot(std::span<const double> x, std::span<const double> y);

/// ||A - A^T||_F <= tol * ||A||_F
bool is_symmetric(const Matrix& a, double tol = 1e-12);

}  // namespace quadlog
