#include "quadlog/testmats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "quadlog/errors.hpp"

namespace quadlog {

Vector spd_spectrum(std::size_t n, double kappa) {
    if (n < 2) throw InvalidArgument("gen_spd needs n >= 2");
    if (!(kappa > 1.0)) throw InvalidArgument("gen_spd needs kappa > 1");
    Vector d(n);
    const double base = std::pow(kappa, -0.5);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = base * std::pow(kappa, static_cast<double>(i) / static_cast<double>(n - 1));
    return d;
}

Matrix householder_q(const Matrix& m) {
    const std::size_t n = m.n();
    Matrix r = m;
    std::vector<Vector> reflectors;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        Vector v(n - k);
        for (std::size_t i = k; i < n; ++i) v[i - k] = r(i, k);
        const double alpha = norm2(v);
        if (alpha == 0.0) {
            reflectors.emplace_back();
            continue;
        }
        v[0] += v[0] >= 0.0 ? alpha : -alpha;
        const double vn = norm2(v);
        for (auto& x : v) x /= vn;
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < n; ++i) s += v[i - k] * r(i, j);
            for (std::size_t i = k; i < n; ++i) r(i, j) -= 2.0 * s * v[i - k];
        }
        reflectors.push_back(std::move(v));
    }
    // Q = H_0 H_1 ... H_{n-2}, applied right to left onto I
    Matrix q = Matrix::identity(n);
    for (std::size_t k = reflectors.size(); k-- > 0;) {
        const Vector& v = reflectors[k];
        if (v.empty()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < n; ++i) s += v[i - k] * q(i, j);
            for (std::size_t i = k; i < n; ++i) q(i, j) -= 2.0 * s * v[i - k];
        }
    }
    return q;
}

Matrix gen_spd(std::size_t n, double kappa, std::uint64_t seed) {
    const Vector d = spd_spectrum(n, kappa);
    std::mt19937_64 rng(seed);
    Matrix m(n);
    // column-major fill, 53 random bits per entry
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = static_cast<double>(rng() >> 11) * 0x1p-53;
    const Matrix q = householder_q(m);
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += q(i, k) * d[k] * q(j, k);
            a(i, j) = a(j, i) = s;
        }
    return a;
}

Matrix gen_parter(std::size_t n) {
    if (n < 2) throw InvalidArgument("parter needs n >= 2");
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 1.0 / (static_cast<double>(i) - static_cast<double>(j) + 0.5);
    return a;
}

Matrix gen_frank(std::size_t n) {
    if (n < 2) throw InvalidArgument("frank needs n >= 2");
    Matrix a(n);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            if (j + 1 >= i) a(i - 1, j - 1) = static_cast<double>(n + 1 - std::max(i, j));
    return a;
}

Matrix gen_vand(std::size_t n) {
    if (n < 2) throw InvalidArgument("vand needs n >= 2");
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        double p = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = p;
            p *= static_cast<double>(i + 1);
        }
    }
    return a;
}

// ---------------------------------------------------------------------------
// Matrix Market

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool blank_or_comment(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '%';
}

}  // namespace

Matrix read_matrix_market(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty input", 1);
    ++lineno;

    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner", lineno);
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix") throw ParseError("unsupported object '" + object + "'", lineno);
    if (format != "coordinate" && format != "array")
        throw ParseError("unsupported format '" + format + "'", lineno);
    if (field != "real" && field != "integer" && field != "double")
        throw ParseError("unsupported field '" + field + "'", lineno);
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric")
        throw ParseError("unsupported symmetry '" + symmetry + "'", lineno);
    const bool coordinate = format == "coordinate";
    const double mirror_sign = symmetry == "skew-symmetric" ? -1.0 : 1.0;
    const bool mirrored = symmetry != "general";

    do {
        if (!std::getline(in, line)) throw ParseError("missing size line", lineno + 1);
        ++lineno;
    } while (blank_or_comment(line));

    long rows = 0, cols = 0, entries = 0;
    {
        std::istringstream size(line);
        if (!(size >> rows >> cols)) throw ParseError("malformed size line", lineno);
        if (coordinate && !(size >> entries)) throw ParseError("coordinate size line needs nnz", lineno);
        if (rows <= 0 || cols <= 0 || entries < 0) throw ParseError("nonpositive dimensions", lineno);
    }
    if (rows != cols)
        throw DimensionMismatch("matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                                ", expected square");
    const std::size_t n = static_cast<std::size_t>(rows);
    std::vector<double> data(n * n, 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return data[i * n + j]; };

    auto next_data_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!blank_or_comment(line)) return true;
        }
        return false;
    };

    if (coordinate) {
        for (long k = 0; k < entries; ++k) {
            if (!next_data_line())
                throw ParseError("expected " + std::to_string(entries) + " entries, got " + std::to_string(k),
                                 lineno);
            std::istringstream ls(line);
            long i = 0, j = 0;
            double v = 0.0;
            if (!(ls >> i >> j >> v)) throw ParseError("malformed entry", lineno);
            if (i < 1 || j < 1 || i > rows || j > cols) throw ParseError("index out of range", lineno);
            if (!std::isfinite(v)) throw ParseError("non-finite value", lineno);
            if (mirrored && j > i) throw ParseError("symmetric storage must be lower triangular", lineno);
            at(i - 1, j - 1) += v;
            if (mirrored && i != j) at(j - 1, i - 1) += mirror_sign * v;
        }
    } else {
        // column-major; symmetric storage lists the lower triangle only
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = mirrored ? j : 0; i < n; ++i) {
                if (mirror_sign < 0 && i == j) continue;
                if (!next_data_line()) throw ParseError("too few array entries", lineno);
                std::istringstream ls(line);
                double v = 0.0;
                if (!(ls >> v)) throw ParseError("malformed value", lineno);
                if (!std::isfinite(v)) throw ParseError("non-finite value", lineno);
                at(i, j) = v;
                if (mirrored && i != j) at(j, i) = mirror_sign * v;
            }
        }
    }
    if (next_data_line()) throw ParseError("trailing data after the last entry", lineno);
    return Matrix(n, std::move(data));
}

Matrix read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const Matrix& a) {
    const std::size_t n = a.n();
    out << "%%MatrixMarket matrix array real general\n" << n << ' ' << n << '\n';
    const auto flags = out.flags();
    const auto prec = out.precision();
    out << std::setprecision(17);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) out << a(i, j) << '\n';
    out.flags(flags);
    out.precision(prec);
}

void write_matrix_market(const std::filesystem::path& path, const Matrix& a) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    write_matrix_market(out, a);
}

ScaledMatrix precondition_scale(const Matrix& a, EstimationMode mode) {
    const double rho = spectral_radius(a, mode).value;
    if (!(rho > 0.0)) throw InvalidArgument("spectral radius must be positive");
    const double scale = 10.0 / rho;
    return {scale * a, scale};
}

// ---------------------------------------------------------------------------
// Matrix specs

namespace {

double parse_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ParseError("bad value for " + std::string(key) + ": '" + std::string(v) + "'");
    return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ParseError("bad value for " + std::string(key) + ": '" + std::string(v) + "'");
    return out;
}

std::map<std::string, std::string, std::less<>> parse_options(std::string_view body) {
    std::map<std::string, std::string, std::less<>> opts;
    while (!body.empty()) {
        const auto comma = body.find(',');
        const std::string_view item = body.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw ParseError("expected key=value, got '" + std::string(item) + "'");
        opts.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return opts;
}

}  // namespace

MatrixSpec parse_matrix_spec(std::string_view text, const std::filesystem::path& data_dir) {
    MatrixSpec spec;
    spec.name = std::string(text);

    static const std::map<std::string, double, std::less<>> spd_aliases = {
        {"spd1", 1e1}, {"spd2", 1e4}, {"spd3", 1e7}};
    if (auto it = spd_aliases.find(text); it != spd_aliases.end()) {
        spec.kind = MatrixSpec::Kind::spd;
        spec.n = 50;
        spec.kappa = it->second;
        spec.seed = 1;
        return spec;
    }
    if (text == "bcsstk02" || text == "bcsstk03" || text == "ck104") {
        spec.kind = MatrixSpec::Kind::file;
        spec.path = data_dir / (std::string(text) + ".mtx");
        return spec;
    }

    const auto colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    const std::string_view body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    if (kind == "file") {
        spec.kind = MatrixSpec::Kind::file;
        spec.path = std::filesystem::path(std::string(body));
        spec.name = spec.path.stem().string();
        return spec;
    }

    static const std::map<std::string, MatrixSpec::Kind, std::less<>> kinds = {
        {"spd", MatrixSpec::Kind::spd},     {"parter", MatrixSpec::Kind::parter},
        {"frank", MatrixSpec::Kind::frank}, {"vand", MatrixSpec::Kind::vand},
        {"identity", MatrixSpec::Kind::identity}};
    const auto k = kinds.find(kind);
    if (k == kinds.end()) {
        if (colon == std::string_view::npos && (text.ends_with(".mtx") || std::filesystem::exists(text))) {
            spec.kind = MatrixSpec::Kind::file;
            spec.path = std::filesystem::path(std::string(text));
            spec.name = spec.path.stem().string();
            return spec;
        }
        throw ParseError("unknown matrix kind '" + std::string(kind) + "'");
    }
    spec.kind = k->second;
    if (spec.kind != MatrixSpec::Kind::spd) spec.n = 10;

    for (const auto& [key, value] : parse_options(body)) {
        if (key == "n")
            spec.n = static_cast<std::size_t>(parse_uint(key, value));
        else if (key == "kappa" && spec.kind == MatrixSpec::Kind::spd)
            spec.kappa = parse_double(key, value);
        else if (key == "seed" && spec.kind == MatrixSpec::Kind::spd)
            spec.seed = parse_uint(key, value);
        else
            throw ParseError("unknown option '" + key + "' for " + std::string(kind));
    }
    if (spec.kind == MatrixSpec::Kind::spd && (spec.n == 0 || spec.kappa == 0.0))
        throw ParseError("spd spec needs n and kappa");
    if (spec.kind == MatrixSpec::Kind::identity ? spec.n < 1 : spec.n < 2)
        throw ParseError("matrix order too small");
    return spec;
}

Matrix build_matrix(const MatrixSpec& spec) {
    switch (spec.kind) {
        case MatrixSpec::Kind::spd: return gen_spd(spec.n, spec.kappa, spec.seed);
        case MatrixSpec::Kind::parter: return gen_parter(spec.n);
        case MatrixSpec::Kind::frank: return gen_frank(spec.n);
        case MatrixSpec::Kind::vand: return gen_vand(spec.n);
        case MatrixSpec::Kind::identity: return Matrix::identity(spec.n);
        case MatrixSpec::Kind::file: return read_matrix_market(spec.path);
    }
    throw InvalidArgument("unknown matrix kind");
}

}  // namespace quadlog
