#include "quadlog/study.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>

#include "quadlog/errors.hpp"

namespace quadlog {

std::string_view to_string(Method method) {
    switch (method) {
        case Method::de: return "de";
        case Method::gl: return "gl";
        case Method::de_adaptive: return "de-adaptive";
        case Method::gl_adaptive: return "gl-adaptive";
    }
    return "unknown";
}

Method parse_method(std::string_view text) {
    if (text == "de") return Method::de;
    if (text == "gl") return Method::gl;
    if (text == "de-adaptive") return Method::de_adaptive;
    if (text == "gl-adaptive") return Method::gl_adaptive;
    throw InvalidArgument("unknown method '" + std::string(text) + "'");
}

CorpusMatrix prepare_matrix(const MatrixSpec& spec, EstimationMode scale_mode) {
    CorpusMatrix out;
    out.name = spec.name;
    const Matrix a = build_matrix(spec);
    auto scaled = precondition_scale(a, scale_mode);
    out.scaled = std::move(scaled.matrix);
    out.scale = scaled.scale;
    out.spd = is_spd(out.scaled);
    return out;
}

Reference compute_reference(const CorpusMatrix& m) {
    if (m.spd) return {eig_logm_spd(m.scaled), "eig-spd"};
    return {logm_de(m.scaled, kSelfReferenceM, kUnitRoundoff).X, "de:" + std::to_string(kSelfReferenceM)};
}

double relative_error_fro(const Matrix& x, const Matrix& reference) {
    Matrix d = x;
    d -= reference;
    return d.frobenius_norm() / reference.frobenius_norm();
}

std::string format_number(std::optional<double> v) {
    if (!v) return "NA";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, *v);
    return std::string(buf, res.ptr);
}

ConvergenceStudy run_convergence_study(const std::vector<CorpusMatrix>& matrices,
                                       const std::vector<int>& m_list, const std::vector<Method>& methods) {
    ConvergenceStudy study;
    for (const auto& cm : matrices) {
        const Reference ref = compute_reference(cm);
        study.references.emplace_back(cm.name, ref.label);
        for (Method method : methods) {
            if (method != Method::de && method != Method::gl)
                throw InvalidArgument("convergence study runs de and gl only");
            for (int m : m_list) {
                ConvergenceRow row{cm.name, method, m, std::nullopt};
                try {
                    const LogmResult r =
                        method == Method::de ? logm_de(cm.scaled, m, kUnitRoundoff) : logm_gl(cm.scaled, m);
                    row.rel_err_fro = relative_error_fro(r.X, ref.X);
                } catch (const Error&) {
                    // recorded as NA
                }
                study.rows.push_back(std::move(row));
            }
        }
    }
    return study;
}

void write_convergence_csv(std::ostream& out, const ConvergenceStudy& study) {
    for (const auto& [name, label] : study.references)
        out << "# reference=" << label << " matrix=" << name << '\n';
    out << "matrix,method,m,rel_err_fro\n";
    for (const auto& row : study.rows)
        out << row.matrix << ',' << to_string(row.method) << ',' << row.m << ','
            << format_number(row.rel_err_fro) << '\n';
}

std::vector<AdaptiveRow> run_adaptive_study(const std::vector<CorpusMatrix>& matrices,
                                            const AdaptiveStudyConfig& cfg) {
    std::vector<Reference> refs;
    refs.reserve(matrices.size());
    for (const auto& cm : matrices) refs.push_back(compute_reference(cm));
    return run_adaptive_study(matrices, refs, cfg);
}

std::vector<AdaptiveRow> run_adaptive_study(const std::vector<CorpusMatrix>& matrices,
                                            const std::vector<Reference>& references,
                                            const AdaptiveStudyConfig& cfg) {
    if (references.size() != matrices.size()) throw DimensionMismatch("one reference per matrix required");
    std::vector<AdaptiveRow> rows;
    for (std::size_t k = 0; k < matrices.size(); ++k) {
        const auto& cm = matrices[k];
        for (Method algorithm : {Method::de_adaptive, Method::gl_adaptive}) {
            for (double zeta : cfg.zetas) {
                AdaptiveRow row;
                row.matrix = cm.name;
                row.algorithm = algorithm;
                row.zeta = zeta;
                try {
                    ToleranceConfig tc;
                    tc.eps = zeta;
                    tc.zeta = zeta;
                    tc.m0 = cfg.m0;
                    tc.max_evals = algorithm == Method::de_adaptive ? cfg.de_max_evals : cfg.gl_max_evals;
                    const AdaptiveReport rep = algorithm == Method::de_adaptive
                                                   ? logm_de_adaptive(cm.scaled, tc, cfg.mode)
                                                   : logm_gl_adaptive(cm.scaled, tc, cfg.mode);
                    row.evals = rep.final.evals;
                    row.rel_err_fro = relative_error_fro(rep.final.X, references[k].X);
                    row.stop = std::string(to_string(rep.final.stop));
                    row.estimate = rep.final.err_estimate;
                } catch (const Error&) {
                    row.stop = "error";
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

void write_adaptive_csv(std::ostream& out, const std::vector<AdaptiveRow>& rows) {
    out << "matrix,algorithm,zeta,evals,rel_err_fro,stop\n";
    for (const auto& row : rows)
        out << row.matrix << ',' << to_string(row.algorithm) << ',' << format_number(row.zeta) << ','
            << row.evals << ',' << format_number(row.rel_err_fro) << ',' << row.stop << '\n';
}

void write_stats(std::ostream& out, const LogmStats& s) {
    const LogmResult& r = s.result;
    out << "matrix=" << s.matrix << '\n';
    out << "method=" << to_string(s.method) << '\n';
    out << "n=" << s.n << '\n';
    out << "scale=" << format_number(s.scale) << '\n';
    out << "evals=" << r.evals << '\n';
    out << "l=" << format_number(r.interval ? std::optional(r.interval->l) : std::nullopt) << '\n';
    out << "r=" << format_number(r.interval ? std::optional(r.interval->r) : std::nullopt) << '\n';
    out << "eps_effective="
        << format_number(r.interval ? std::optional(r.interval->eps_effective) : std::nullopt) << '\n';
    out << "clamped=" << (r.interval ? (r.interval->clamped ? "true" : "false") : "NA") << '\n';
    out << "theta=" << format_number(r.params ? std::optional(r.params->theta) : std::nullopt) << '\n';
    out << "estimate=" << format_number(r.err_estimate) << '\n';
    out << "stop=" << to_string(r.stop) << '\n';
    out << "wall_time_s=" << format_number(s.wall_time_s) << '\n';
}

}  // namespace quadlog
