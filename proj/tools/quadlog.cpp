// quadlog: principal matrix logarithm by DE and Gauss-Legendre quadrature.
//
//   quadlog logm --input spd:n=50,kappa=1e1,seed=1 --method de-adaptive --zeta 1e-8
//   quadlog study convergence --matrix spd3 --m-list 16,31,61,121,241,481 --out conv.csv
//   quadlog study adaptive --matrices spd1,spd2,spd3,parter,frank,vand --out table.csv
//   quadlog genmat --spec frank:n=10 --out frank.mtx
//
// Exit codes: 0 success, 1 runtime error, 2 adaptive run hit its evaluation
// limit, 64 usage error, 65 malformed input data.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadlog/algorithms.hpp"
#include "quadlog/errors.hpp"
#include "quadlog/study.hpp"
#include "quadlog/testmats.hpp"

namespace {

using namespace quadlog;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitEvalLimit = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

EstimationMode parse_param_mode(const std::string& text) {
    if (text == "exact") return EstimationMode::exact();
    if (text == "approximate") return EstimationMode::rough();
    const std::string prefix = "approximate:";
    if (text.rfind(prefix, 0) == 0) {
        try {
            const double tol = std::stod(text.substr(prefix.size()));
            if (tol > 0.0) return EstimationMode::rough(tol);
        } catch (const std::exception&) {
        }
    }
    throw UsageError("--param-mode must be exact, approximate or approximate:<tol>");
}

// "-" selects stdout.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw UsageError("cannot open " + path + " for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct LogmOptions {
    std::string input;
    std::string method = "de-adaptive";
    int m = 121;
    std::optional<double> eps;
    double zeta = 1e-8;
    int m0 = 16;
    std::optional<int> max_evals;
    std::string param_mode = "exact";
    bool no_scale = false;
    std::string data_dir = ".";
    std::string out = "-";
    std::string stats_out;
};

int run_logm(const LogmOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    const Method method = [&] {
        try {
            return parse_method(o.method);
        } catch (const InvalidArgument& e) {
            throw UsageError(e.what());
        }
    }();
    const EstimationMode mode = parse_param_mode(o.param_mode);
    const MatrixSpec spec = parse_matrix_spec(o.input, o.data_dir);
    const Matrix a = build_matrix(spec);

    Matrix work = a;
    double scale = 1.0;
    const bool identity = [&] {
        Matrix d = a;
        d.add_identity(-1.0);
        return d.max_abs() == 0.0;
    }();
    if (!o.no_scale && !identity) {
        auto s = precondition_scale(a, mode);
        work = std::move(s.matrix);
        scale = s.scale;
    }

    ToleranceConfig cfg;
    cfg.zeta = o.zeta;
    cfg.eps = o.eps.value_or(o.zeta);
    cfg.m0 = o.m0;

    LogmResult result;
    switch (method) {
        case Method::de: result = logm_de(work, o.m, o.eps.value_or(kUnitRoundoff), mode); break;
        case Method::gl: result = logm_gl(work, o.m); break;
        case Method::de_adaptive:
            cfg.max_evals = o.max_evals.value_or(kDeDefaultMaxEvals);
            result = logm_de_adaptive(work, cfg, mode).final;
            break;
        case Method::gl_adaptive:
            cfg.max_evals = o.max_evals.value_or(kGlDefaultMaxEvals);
            result = logm_gl_adaptive(work, cfg, mode).final;
            break;
    }

    // log(c A) = log(A) + log(c) I for c > 0
    Matrix x = result.X;
    if (scale != 1.0) x.add_identity(-std::log(scale));

    Output out(o.out);
    write_matrix_market(out.stream(), x);

    LogmStats stats;
    stats.matrix = spec.name;
    stats.method = method;
    stats.n = a.n();
    stats.scale = scale;
    stats.result = std::move(result);
    stats.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.stats_out.empty()) {
        write_stats(std::cerr, stats);
    } else {
        Output so(o.stats_out);
        write_stats(so.stream(), stats);
    }
    return stats.result.stop == StopReason::eval_limit ? kExitEvalLimit : kExitOk;
}

std::vector<CorpusMatrix> prepare_all(const std::vector<std::string>& names, const std::string& data_dir) {
    std::vector<CorpusMatrix> out;
    for (const auto& name : names) out.push_back(prepare_matrix(parse_matrix_spec(name, data_dir)));
    return out;
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Principal matrix logarithm by double-exponential and Gauss-Legendre quadrature"};
    app.require_subcommand(1);

    LogmOptions lo;
    auto* logm = app.add_subcommand("logm", "Compute log(A); writes Matrix Market to --out");
    logm->add_option("--input", lo.input, "Matrix Market file, generator spec or corpus alias")->required();
    logm->add_option("--method", lo.method, "de | gl | de-adaptive | gl-adaptive")->capture_default_str();
    logm->add_option("--m", lo.m, "Abscissa/node count for de and gl")->capture_default_str();
    logm->add_option("--eps", lo.eps, "Interval truncation tolerance (de: 2^-53, de-adaptive: zeta)");
    logm->add_option("--zeta", lo.zeta, "Adaptive stopping tolerance")->capture_default_str();
    logm->add_option("--m0", lo.m0, "Initial abscissa count for adaptive methods")->capture_default_str();
    logm->add_option("--max-evals", lo.max_evals, "Evaluation limit (de-adaptive 1921, gl-adaptive 2032)");
    logm->add_option("--param-mode", lo.param_mode, "exact | approximate[:tol]")->capture_default_str();
    logm->add_flag("--no-scale", lo.no_scale, "Skip the (10/rho(A)) A preconditioning");
    logm->add_option("--data-dir", lo.data_dir, "Directory holding bcsstk02/bcsstk03/ck104 .mtx files")
        ->capture_default_str();
    logm->add_option("--out", lo.out, "Output file for log(A), - for stdout")->capture_default_str();
    logm->add_option("--stats-out", lo.stats_out, "key=value stats record (default: stderr)");

    auto* study = app.add_subcommand("study", "Reproduce the convergence and adaptive comparisons");
    study->require_subcommand(1);

    std::vector<std::string> conv_matrices{"spd1"};
    std::vector<std::string> conv_m{"2,4,8,16,31,32,48,61,64,112,121,128,241,256,481,512,961,1024,1921"};
    std::vector<std::string> conv_methods{"de,gl"};
    std::string conv_out = "-";
    std::string conv_data = ".";
    auto* conv = study->add_subcommand("convergence", "Relative error against m for DE and GL");
    conv->add_option("--matrix", conv_matrices, "Matrices (repeatable or comma-separated)")->capture_default_str();
    conv->add_option("--m-list", conv_m, "Comma-separated abscissa counts")->capture_default_str();
    conv->add_option("--methods", conv_methods, "de,gl")->capture_default_str();
    conv->add_option("--out", conv_out, "CSV output, - for stdout")->capture_default_str();
    conv->add_option("--data-dir", conv_data, "Directory of corpus .mtx files")->capture_default_str();

    std::vector<std::string> ad_matrices{"spd1,spd2,spd3,parter,frank,vand"};
    std::vector<std::string> ad_zetas{"1e-8,1e-11"};
    std::string ad_out = "-";
    std::string ad_data = ".";
    std::string ad_mode = "exact";
    int ad_m0 = 16;
    auto* adaptive = study->add_subcommand("adaptive", "Evaluation counts of both adaptive algorithms");
    adaptive->add_option("--matrices", ad_matrices, "Matrices (comma-separated)")->capture_default_str();
    adaptive->add_option("--zetas", ad_zetas, "Stopping tolerances")->capture_default_str();
    adaptive->add_option("--m0", ad_m0, "Initial abscissa count")->capture_default_str();
    adaptive->add_option("--param-mode", ad_mode, "exact | approximate[:tol]")->capture_default_str();
    adaptive->add_option("--out", ad_out, "CSV output, - for stdout")->capture_default_str();
    adaptive->add_option("--data-dir", ad_data, "Directory of corpus .mtx files")->capture_default_str();

    std::string gen_spec;
    std::string gen_out = "-";
    auto* genmat = app.add_subcommand("genmat", "Write a generated matrix in Matrix Market format");
    genmat->add_option("--spec", gen_spec, "Generator spec, e.g. spd:n=50,kappa=1e4,seed=7")->required();
    genmat->add_option("--out", gen_out, "Output file, - for stdout")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*logm) return run_logm(lo);
        if (*conv) {
            std::vector<int> ms;
            for (const auto& tok : split_list(conv_m)) {
                try {
                    ms.push_back(std::stoi(tok));
                } catch (const std::exception&) {
                    throw UsageError("bad --m-list entry '" + tok + "'");
                }
            }
            std::vector<Method> methods;
            for (const auto& tok : split_list(conv_methods)) {
                const Method m = parse_method(tok);
                if (m != Method::de && m != Method::gl) throw UsageError("--methods accepts de and gl");
                methods.push_back(m);
            }
            const auto study_result =
                run_convergence_study(prepare_all(split_list(conv_matrices), conv_data), ms, methods);
            Output out(conv_out);
            write_convergence_csv(out.stream(), study_result);
            return kExitOk;
        }
        if (*adaptive) {
            AdaptiveStudyConfig cfg;
            cfg.zetas.clear();
            for (const auto& tok : split_list(ad_zetas)) {
                try {
                    cfg.zetas.push_back(std::stod(tok));
                } catch (const std::exception&) {
                    throw UsageError("bad --zetas entry '" + tok + "'");
                }
            }
            cfg.m0 = ad_m0;
            cfg.mode = parse_param_mode(ad_mode);
            const auto rows = run_adaptive_study(prepare_all(split_list(ad_matrices), ad_data), cfg);
            Output out(ad_out);
            write_adaptive_csv(out.stream(), rows);
            return kExitOk;
        }
        if (*genmat) {
            const MatrixSpec spec = parse_matrix_spec(gen_spec);
            Output out(gen_out);
            write_matrix_market(out.stream(), build_matrix(spec));
            return kExitOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "quadlog: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "quadlog: " << e.what() << '\n';
        return kExitData;
    } catch (const DimensionMismatch& e) {
        std::cerr << "quadlog: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "quadlog: " << e.what() << '\n';
        return kExitError;
    }
    return kExitUsage;
}
