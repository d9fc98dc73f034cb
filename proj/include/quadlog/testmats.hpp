#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "quadlog/linalg.hpp"
#include "quadlog/matrix.hpp"

namespace quadlog {

/// Eigenvalues d_i = kappa^{-1/2} kappa^{(i-1)/(n-1)} of gen_spd, ascending.
Vector spd_spectrum(std::size_t n, double kappa);

/// Q diag(spd_spectrum(n, kappa)) Q^T with Q from Householder QR of a
/// matrix of uniform [0,1) entries drawn from std::mt19937_64(seed).
/// The result is exactly symmetric.
Matrix gen_spd(std::size_t n, double kappa, std::uint64_t seed);

/// Orthogonal factor of the Householder QR of `m`.
Matrix householder_q(const Matrix& m);

/// A_ij = 1 / (i - j + 1/2)
Matrix gen_parter(std::size_t n);
/// Upper Hessenberg, A_ij = n + 1 - max(i, j) for j >= i - 1.
Matrix gen_frank(std::size_t n);
/// Vandermonde with nodes p_i = i (1-based): A_ij = i^{j-1}.
Matrix gen_vand(std::size_t n);

/// Real coordinate or array Matrix Market data; symmetric and
/// skew-symmetric storage is expanded. Throws ParseError with the line
/// number, DimensionMismatch for non-square data.
Matrix read_matrix_market(std::istream& in);
Matrix read_matrix_market(const std::filesystem::path& path);

/// Dense `array real general` format, 17 significant digits.
void write_matrix_market(std::ostream& out, const Matrix& a);
void write_matrix_market(const std::filesystem::path& path, const Matrix& a);

struct ScaledMatrix {
    Matrix matrix;
    double scale = 1.0;  // matrix = scale * A, log A = log(matrix) - log(scale) I
};

/// (10 / rho(A)) A.
ScaledMatrix precondition_scale(const Matrix& a, EstimationMode mode = EstimationMode::exact());

struct MatrixSpec {
    enum class Kind { spd, parter, frank, vand, identity, file };
    Kind kind = Kind::spd;
    std::size_t n = 0;
    double kappa = 0.0;
    std::uint64_t seed = 0;
    std::filesystem::path path;
    /// Short display name (alias when one was used).
    std::string name;
};

/// Parses `kind:key=value,...` (spd:n=50,kappa=1e4,seed=7, parter:n=10,
/// frank:n=10, vand:n=10, identity:n=4, file:path.mtx), a path to a .mtx
/// file, or a corpus alias: spd1, spd2, spd3, parter, frank, vand, and
/// bcsstk02, bcsstk03, ck104 (looked up as <alias>.mtx under data_dir).
MatrixSpec parse_matrix_spec(std::string_view text, const std::filesystem::path& data_dir = {});

Matrix build_matrix(const MatrixSpec& spec);

}  // namespace quadlog
