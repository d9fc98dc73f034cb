#include "quadlog/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quadlog/errors.hpp"

namespace quadlog {

Matrix::Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

Matrix::Matrix(std::size_t n, std::vector<double> entries) : n_(n), data_(std::move(entries)) {
    if (data_.size() != n * n)
        throw DimensionMismatch("matrix of order " + std::to_string(n) + " needs " +
                                std::to_string(n * n) + " entries, got " +
                                std::to_string(data_.size()));
    if (!all_finite()) throw InvalidArgument("matrix entries must be finite");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& r : rows) {
        if (r.size() != n_) throw DimensionMismatch("matrix must be square");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    if (!all_finite()) throw InvalidArgument("matrix entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    if (!m.all_finite()) throw InvalidArgument("matrix entries must be finite");
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (other.n_ != n_) throw DimensionMismatch("matrix orders differ");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (other.n_ != n_) throw DimensionMismatch("matrix orders differ");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (auto& x : data_) x *= s;
    return *this;
}

Matrix& Matrix::add_scaled(double s, const Matrix& other) {
    if (other.n_ != n_) throw DimensionMismatch("matrix orders differ");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * other.data_[k];
    return *this;
}

Matrix& Matrix::add_identity(double s) {
    for (std::size_t i = 0; i < n_; ++i) data_[i * n_ + i] += s;
    return *this;
}

double Matrix::frobenius_norm() const { return norm2(data_); }

double Matrix::norm1() const {
    double best = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.n() != b.n()) throw DimensionMismatch("matrix orders differ");
    const std::size_t n = a.n();
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto ci = c.row(i);
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            auto bk = b.row(k);
            for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

Vector operator*(const Matrix& a, std::span<const double> v) {
    if (v.size() != a.n()) throw DimensionMismatch("vector length differs from matrix order");
    Vector y(a.n(), 0.0);
    for (std::size_t i = 0; i < a.n(); ++i) y[i] = dot(a.row(i), v);
    return y;
}

double norm2(std::span<const double> v) {
    // scaled to survive entries near the overflow threshold
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double x : v) {
        const double y = x / scale;
        s += y * y;
    }
    return scale * std::sqrt(s);
}

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

bool is_symmetric(const Matrix& a, double tol) {
    const std::size_t n = a.n();
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = a(i, j) - a(j, i);
            off += 2.0 * d * d;
        }
    return std::sqrt(off) <= tol * a.frobenius_norm();
}

}  // namespace quadlog
