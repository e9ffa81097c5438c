// io.cpp — JSON/CSV serialization of inter-stage artifacts.

#include "lossyrom/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lossyrom::io {

namespace {

std::vector<double> doubles_from_json(const json& j) {
    return j.get<std::vector<double>>();
}

std::string method_name(InversionMethod m) {
    switch (m) {
        case InversionMethod::grid_direct: return "grid_direct";
        case InversionMethod::simple: return "simple";
        default: return "optimized";
    }
}

InversionMethod method_from_name(const std::string& name) {
    if (name == "grid_direct") return InversionMethod::grid_direct;
    if (name == "simple") return InversionMethod::simple;
    if (name == "optimized") return InversionMethod::optimized;
    throw std::runtime_error("unknown inversion method '" + name + "'");
}

}  // namespace

// ============================================================================
// JSON conversions
// ============================================================================

json to_json(const std::vector<cplx>& v) {
    json arr = json::array();
    for (const cplx& z : v) arr.push_back(json::array({z.real(), z.imag()}));
    return arr;
}

std::vector<cplx> complex_vector_from_json(const json& j) {
    std::vector<cplx> v;
    v.reserve(j.size());
    for (const json& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw std::runtime_error(
                "complex entries must be [re, im] pairs");
        v.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return v;
}

json to_json(const SampledFunction& f) {
    return json{{"t_max", f.t_max}, {"values", f.values}};
}

SampledFunction sampled_from_json(const json& j) {
    return SampledFunction(j.at("t_max").get<double>(),
                           doubles_from_json(j.at("values")));
}

json to_json(const PiecewiseLinear& f) {
    return json{{"nodes", f.nodes}, {"values", f.values}};
}

PiecewiseLinear piecewise_linear_from_json(const json& j) {
    return PiecewiseLinear(doubles_from_json(j.at("nodes")),
                           doubles_from_json(j.at("values")));
}

json to_json(const PiecewiseConstant& f) {
    return json{{"breaks", f.breaks}, {"values", f.values}};
}

PiecewiseConstant piecewise_constant_from_json(const json& j) {
    return PiecewiseConstant(doubles_from_json(j.at("breaks")),
                             doubles_from_json(j.at("values")));
}

json to_json(const MediumProfile& m) {
    return json{{"t_max", m.t_max},
                {"zeta", to_json(m.zeta)},
                {"loss", to_json(m.loss)},
                {"zeta0", m.zeta0}};
}

MediumProfile medium_from_json(const json& j) {
    // the validating constructor recomputes zeta0 and re-checks the margins
    return MediumProfile(j.at("t_max").get<double>(),
                         sampled_from_json(j.at("zeta")),
                         sampled_from_json(j.at("loss")));
}

json to_json(const FourierMedium& m) {
    return json{{"t_max", m.t_max},
                {"zeta_cos", m.zeta_cos},
                {"zeta_sin", m.zeta_sin},
                {"loss_cos", m.loss_cos},
                {"loss_sin", m.loss_sin}};
}

FourierMedium fourier_from_json(const json& j) {
    FourierMedium m;
    m.t_max = j.at("t_max").get<double>();
    m.zeta_cos = doubles_from_json(j.at("zeta_cos"));
    m.zeta_sin = doubles_from_json(j.at("zeta_sin"));
    m.loss_cos = doubles_from_json(j.at("loss_cos"));
    m.loss_sin = doubles_from_json(j.at("loss_sin"));
    return m;
}

json to_json(const TransferSamples& s) {
    return json{{"omega_max", s.omega_max},
                {"s_points", to_json(s.s_points)},
                {"values", to_json(s.values)}};
}

TransferSamples transfer_from_json(const json& j) {
    TransferSamples s;
    s.omega_max = j.at("omega_max").get<double>();
    s.s_points = complex_vector_from_json(j.at("s_points"));
    s.values = complex_vector_from_json(j.at("values"));
    if (s.s_points.size() != s.values.size())
        throw std::runtime_error(
            "transfer samples: s_points/values size mismatch");
    return s;
}

json to_json(const SpectralData& d) {
    return json{{"n_pairs", d.n_pairs},
                {"poles", to_json(d.poles)},
                {"residues", to_json(d.residues)},
                {"zeta0", d.zeta0}};
}

SpectralData spectral_from_json(const json& j) {
    SpectralData d;
    d.n_pairs = j.at("n_pairs").get<std::size_t>();
    d.poles = complex_vector_from_json(j.at("poles"));
    d.residues = complex_vector_from_json(j.at("residues"));
    d.zeta0 = j.at("zeta0").get<double>();
    validate(d);
    return d;
}

json to_json(const TailModel& t) {
    return json{{"t_max", t.t_max},
                {"zeta0", t.zeta0},
                {"r0", t.r0},
                {"j_start", t.j_start}};
}

TailModel tail_from_json(const json& j) {
    TailModel t;
    t.t_max = j.at("t_max").get<double>();
    t.zeta0 = j.at("zeta0").get<double>();
    t.r0 = j.at("r0").get<double>();
    t.j_start = j.at("j_start").get<std::size_t>();
    return t;
}

json to_json(const RomMatrix& r) {
    return json{{"n_pairs", r.n_pairs},
                {"alphas", r.alphas},
                {"betas", r.betas},
                {"beta_squares", r.beta_squares},
                {"gamma_hat_1", r.gamma_hat_1}};
}

RomMatrix rom_matrix_from_json(const json& j) {
    RomMatrix r;
    r.n_pairs = j.at("n_pairs").get<std::size_t>();
    r.alphas = doubles_from_json(j.at("alphas"));
    r.betas = doubles_from_json(j.at("betas"));
    r.beta_squares = doubles_from_json(j.at("beta_squares"));
    r.gamma_hat_1 = j.at("gamma_hat_1").get<double>();
    if (r.alphas.size() != 2 * r.n_pairs ||
        r.betas.size() + 1 != 2 * r.n_pairs ||
        r.beta_squares.size() != r.betas.size())
        throw std::runtime_error("ROM matrix: inconsistent band sizes");
    return r;
}

json to_json(const RomCoefficients& c) {
    return json{{"gammas", c.gammas},
                {"gamma_hats", c.gamma_hats},
                {"r_primary", c.r_primary},
                {"r_dual", c.r_dual}};
}

RomCoefficients rom_coefficients_from_json(const json& j) {
    RomCoefficients c;
    c.gammas = doubles_from_json(j.at("gammas"));
    c.gamma_hats = doubles_from_json(j.at("gamma_hats"));
    c.r_primary = doubles_from_json(j.at("r_primary"));
    c.r_dual = doubles_from_json(j.at("r_dual"));
    if (c.gamma_hats.size() != c.gammas.size() ||
        c.r_primary.size() != c.gammas.size() ||
        c.r_dual.size() != c.gammas.size())
        throw std::runtime_error("ROM coefficients: inconsistent sizes");
    return c;
}

json to_json(const StaggeredGrid& g) {
    return json{{"t_max", g.t_max},
                {"h", g.h},
                {"h_hat", g.h_hat},
                {"t_primary", g.t_primary},
                {"t_dual", g.t_dual}};
}

StaggeredGrid grid_from_json(const json& j) {
    StaggeredGrid g;
    g.t_max = j.at("t_max").get<double>();
    g.h = doubles_from_json(j.at("h"));
    g.h_hat = doubles_from_json(j.at("h_hat"));
    g.t_primary = doubles_from_json(j.at("t_primary"));
    g.t_dual = doubles_from_json(j.at("t_dual"));
    if (g.h_hat.size() != g.h.size() ||
        g.t_primary.size() != g.h.size() + 1 ||
        g.t_dual.size() != g.h.size() + 1)
        throw std::runtime_error("staggered grid: inconsistent sizes");
    return g;
}

json to_json(const InversionResult& r) {
    return json{{"zeta_est", to_json(r.zeta_est)},
                {"loss_est", to_json(r.loss_est)},
                {"r_frak", to_json(r.r_frak)},
                {"r_frak_hat", to_json(r.r_frak_hat)},
                {"method", method_name(r.method)},
                {"reg", r.reg},
                {"system_residual", r.system_residual},
                {"mean_loss_est", r.mean_loss_est}};
}

InversionResult inversion_from_json(const json& j) {
    InversionResult r;
    r.zeta_est = piecewise_linear_from_json(j.at("zeta_est"));
    r.loss_est = piecewise_constant_from_json(j.at("loss_est"));
    r.r_frak = piecewise_constant_from_json(j.at("r_frak"));
    r.r_frak_hat = piecewise_constant_from_json(j.at("r_frak_hat"));
    r.method = method_from_name(j.at("method").get<std::string>());
    r.reg = j.at("reg").get<double>();
    r.system_residual = j.at("system_residual").get<double>();
    r.mean_loss_est = j.at("mean_loss_est").get<double>();
    return r;
}

// ============================================================================
// Files
// ============================================================================

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() +
                                 "' for writing");
    out << j.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() +
                                 "' for reading");
    try {
        return json::parse(in);
    } catch (const json::parse_error& err) {
        throw std::runtime_error("malformed JSON in '" + path.string() +
                                 "': " + err.what());
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::string& stage,
               const std::string& config_hash,
               const std::vector<CsvColumn>& columns) {
    if (columns.empty())
        throw std::invalid_argument("write_csv: no columns");
    const std::size_t rows = columns.front().data.size();
    for (const CsvColumn& c : columns)
        if (c.data.size() != rows)
            throw std::invalid_argument("write_csv: column '" + c.name +
                                        "' has mismatched length");
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() +
                                 "' for writing");
    out << "# produced-by=lossyrom stage=" << stage << " config=" << config_hash
        << '\n';
    for (std::size_t k = 0; k < columns.size(); ++k)
        out << (k ? "," : "") << columns[k].name;
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t k = 0; k < columns.size(); ++k)
            out << (k ? "," : "") << format_double(columns[k].data[r]);
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace lossyrom::io
