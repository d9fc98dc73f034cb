#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadlog/algorithms.hpp"
#include "quadlog/testmats.hpp"

namespace quadlog {

enum class Method { de, gl, de_adaptive, gl_adaptive };

std::string_view to_string(Method method);
/// Accepts de, gl, de-adaptive, gl-adaptive.
Method parse_method(std::string_view text);

/// Abscissa count of the DE self-reference used for nonsymmetric matrices.
inline constexpr int kSelfReferenceM = 3841;

/// Preconditioned corpus entry: matrix = scale * A with rho(matrix) = 10.
struct CorpusMatrix {
    std::string name;
    Matrix scaled;
    double scale = 1.0;
    bool spd = false;
};

CorpusMatrix prepare_matrix(const MatrixSpec& spec, EstimationMode scale_mode = EstimationMode::exact());

struct Reference {
    Matrix X;
    /// "eig-spd" or "de:3841"
    std::string label;
};

/// eig_logm_spd for SPD input, otherwise the m = 3841 DE result.
Reference compute_reference(const CorpusMatrix& m);

double relative_error_fro(const Matrix& x, const Matrix& reference);

/// Shortest round-trip decimal, or "NA".
std::string format_number(std::optional<double> v);

struct ConvergenceRow {
    std::string matrix;
    Method method = Method::de;
    int m = 0;
    std::optional<double> rel_err_fro;  // empty when the evaluation failed
};

struct ConvergenceStudy {
    std::vector<std::pair<std::string, std::string>> references;  // matrix -> label
    std::vector<ConvergenceRow> rows;
};

/// For each matrix, method (de or gl) and m: rows in that nesting order.
ConvergenceStudy run_convergence_study(const std::vector<CorpusMatrix>& matrices,
                                       const std::vector<int>& m_list, const std::vector<Method>& methods);

/// `# reference=<label> matrix=<name>` lines, then `matrix,method,m,rel_err_fro`.
void write_convergence_csv(std::ostream& out, const ConvergenceStudy& study);

struct AdaptiveRow {
    std::string matrix;
    Method algorithm = Method::de_adaptive;
    double zeta = 0.0;
    std::size_t evals = 0;
    std::optional<double> rel_err_fro;
    std::string stop;
    std::optional<double> estimate;
};

struct AdaptiveStudyConfig {
    std::vector<double> zetas{1e-8, 1e-11};
    int m0 = 16;
    int de_max_evals = kDeDefaultMaxEvals;
    int gl_max_evals = kGlDefaultMaxEvals;
    EstimationMode mode = EstimationMode::exact();
};

/// Both adaptive algorithms at every zeta (eps = zeta for the DE interval).
std::vector<AdaptiveRow> run_adaptive_study(const std::vector<CorpusMatrix>& matrices,
                                            const AdaptiveStudyConfig& cfg);

/// Same as above against precomputed references (one per matrix).
std::vector<AdaptiveRow> run_adaptive_study(const std::vector<CorpusMatrix>& matrices,
                                            const std::vector<Reference>& references,
                                            const AdaptiveStudyConfig& cfg);

/// `matrix,algorithm,zeta,evals,rel_err_fro,stop`
void write_adaptive_csv(std::ostream& out, const std::vector<AdaptiveRow>& rows);

/// Flat key=value record describing one logm run.
struct LogmStats {
    std::string matrix;
    Method method = Method::de;
    std::size_t n = 0;
    double scale = 1.0;
    LogmResult result;
    double wall_time_s = 0.0;
};

void write_stats(std::ostream& out, const LogmStats& stats);

}  // namespace quadlog
