// pipeline.cpp — stage orchestration, artifact plumbing and the manifest.

#include "lossyrom/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "lossyrom/forward.hpp"
#include "lossyrom/grid.hpp"
#include "lossyrom/invert.hpp"
#include "lossyrom/io.hpp"
#include "lossyrom/log.hpp"
#include "lossyrom/ratfit.hpp"
#include "lossyrom/rom.hpp"

namespace lossyrom {

namespace {

namespace fs = std::filesystem;
using io::json;

// Raised when an input file or a producer-stage artifact is absent; mapped
// to exit code 2.
struct MissingFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ============================================================================
// Enum names
// ============================================================================

const char* kind_name(ProfileKind k) {
    switch (k) {
        case ProfileKind::constant: return "constant";
        case ProfileKind::smooth: return "smooth";
        case ProfileKind::discontinuous: return "discontinuous";
        default: return "fourier";
    }
}

ProfileKind kind_from_name(const std::string& name) {
    if (name == "constant") return ProfileKind::constant;
    if (name == "smooth") return ProfileKind::smooth;
    if (name == "discontinuous") return ProfileKind::discontinuous;
    if (name == "fourier") return ProfileKind::fourier;
    throw std::runtime_error("unknown profile kind '" + name + "'");
}

const char* extraction_name(ExtractionMode m) {
    return m == ExtractionMode::exact ? "exact" : "ratfit";
}

ExtractionMode extraction_from_name(const std::string& name) {
    if (name == "exact") return ExtractionMode::exact;
    if (name == "ratfit") return ExtractionMode::ratfit;
    throw std::runtime_error("unknown extraction mode '" + name + "'");
}

// ============================================================================
// Config (de)serialization
// ============================================================================

json bumps_to_json(const std::vector<Bump>& bumps) {
    json arr = json::array();
    for (const Bump& b : bumps)
        arr.push_back(json{{"center", b.center},
                           {"height", b.height},
                           {"width", b.width}});
    return arr;
}

std::vector<Bump> bumps_from_json(const json& j) {
    std::vector<Bump> bumps;
    for (const json& e : j) {
        Bump b;
        b.center = e.at("center").get<double>();
        b.height = e.at("height").get<double>();
        b.width = e.at("width").get<double>();
        bumps.push_back(b);
    }
    return bumps;
}

json medium_spec_to_json(const ExperimentConfig& cfg) {
    if (!cfg.medium_file.empty()) return json{{"file", cfg.medium_file}};
    const ProfileParams& p = cfg.profile;
    json j{{"kind", kind_name(cfg.kind)},
           {"t_max", p.t_max},
           {"n_cells", p.n_cells},
           {"zeta_base", p.zeta_base},
           {"loss_base", p.loss_base}};
    switch (cfg.kind) {
        case ProfileKind::smooth:
            j["zeta_bumps"] = bumps_to_json(p.zeta_bumps);
            j["loss_bumps"] = bumps_to_json(p.loss_bumps);
            break;
        case ProfileKind::discontinuous:
            j["zeta_breaks"] = p.zeta_breaks;
            j["zeta_levels"] = p.zeta_levels;
            j["loss_breaks"] = p.loss_breaks;
            j["loss_levels"] = p.loss_levels;
            break;
        case ProfileKind::fourier:
            j["fourier"] = io::to_json(p.fourier);
            break;
        default:
            break;
    }
    return j;
}

void medium_spec_from_json(const json& j, ExperimentConfig& cfg) {
    if (j.contains("file")) {
        cfg.medium_file = j.at("file").get<std::string>();
        return;
    }
    ProfileParams& p = cfg.profile;
    cfg.kind = kind_from_name(j.value("kind", std::string("constant")));
    p.t_max = j.value("t_max", p.t_max);
    p.n_cells = j.value("n_cells", p.n_cells);
    p.zeta_base = j.value("zeta_base", p.zeta_base);
    p.loss_base = j.value("loss_base", p.loss_base);
    if (j.contains("zeta_bumps")) p.zeta_bumps = bumps_from_json(j["zeta_bumps"]);
    if (j.contains("loss_bumps")) p.loss_bumps = bumps_from_json(j["loss_bumps"]);
    if (j.contains("zeta_breaks"))
        p.zeta_breaks = j["zeta_breaks"].get<std::vector<double>>();
    if (j.contains("zeta_levels"))
        p.zeta_levels = j["zeta_levels"].get<std::vector<double>>();
    if (j.contains("loss_breaks"))
        p.loss_breaks = j["loss_breaks"].get<std::vector<double>>();
    if (j.contains("loss_levels"))
        p.loss_levels = j["loss_levels"].get<std::vector<double>>();
    if (j.contains("fourier")) p.fourier = io::fourier_from_json(j["fourier"]);
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    if (j.contains("medium")) medium_spec_from_json(j.at("medium"), cfg);
    cfg.n = j.value("n", cfg.n);
    cfg.omega_max = j.value("omega_max", cfg.omega_max);
    cfg.n_samples = j.value("n_samples", cfg.n_samples);
    cfg.fd_cells = j.value("fd_cells", cfg.fd_cells);
    if (j.contains("extraction"))
        cfg.extraction = extraction_from_name(j["extraction"].get<std::string>());
    if (j.contains("noise")) {
        cfg.noise_level = j["noise"].value("level", cfg.noise_level);
        cfg.noise_seed = j["noise"].value("seed", cfg.noise_seed);
    }
    cfg.reg = j.value("reg", cfg.reg);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.out_dir = j.value("out", cfg.out_dir);
    if (j.contains("optimizer")) {
        const json& o = j["optimizer"];
        cfg.run_optimizer = o.value("enabled", cfg.run_optimizer);
        cfg.optimizer.fd_cells = o.value("fd_cells", cfg.optimizer.fd_cells);
        cfg.optimizer.max_iter = o.value("max_iter", cfg.optimizer.max_iter);
        cfg.optimizer.tol = o.value("tol", cfg.optimizer.tol);
        cfg.optimizer.delta = o.value("delta", cfg.optimizer.delta);
    }
    if (cfg.n < 1) throw std::runtime_error("config: n must be >= 1");
    if (cfg.omega_max < 0.0)
        throw std::runtime_error("config: omega_max must be positive");
    return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    json j{{"medium", medium_spec_to_json(cfg)},
           {"n", cfg.n},
           {"omega_max", cfg.omega_max},
           {"n_samples", cfg.n_samples},
           {"fd_cells", cfg.fd_cells},
           {"extraction", extraction_name(cfg.extraction)},
           {"noise", json{{"level", cfg.noise_level}, {"seed", cfg.noise_seed}}},
           {"reg", cfg.reg},
           {"threads", cfg.threads},
           {"out", cfg.out_dir},
           {"optimizer", json{{"enabled", cfg.run_optimizer},
                              {"fd_cells", cfg.optimizer.fd_cells},
                              {"max_iter", cfg.optimizer.max_iter},
                              {"tol", cfg.optimizer.tol},
                              {"delta", cfg.optimizer.delta}}}};
    return j;
}

std::string config_hash(const ExperimentConfig& cfg) {
    // The hash identifies the experiment; where the artifacts land and how
    // many workers computed them must not change the stamped outputs.
    json j = config_to_json(cfg);
    j.erase("out");
    j.erase("threads");
    return io::fnv1a_hex(j.dump());
}

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::forward: return "forward";
        case Stage::fit: return "fit";
        case Stage::rom: return "rom";
        case Stage::grid: return "grid";
        case Stage::invert: return "invert";
        default: return "optimize";
    }
}

namespace {

// ============================================================================
// Stage runner
// ============================================================================

struct StageContext {
    const ExperimentConfig& cfg;
    fs::path out;
    std::string hash;
    json manifest;

    explicit StageContext(const ExperimentConfig& cfg_)
        : cfg(cfg_), out(cfg_.out_dir), hash(config_hash(cfg_)) {}

    void load_manifest() {
        const fs::path path = out / "manifest.json";
        if (fs::exists(path)) {
            try {
                manifest = io::read_json_file(path);
            } catch (const std::exception&) {
                manifest = json::object();  // corrupt manifest: start over
            }
        }
        if (!manifest.is_object()) manifest = json::object();
        if (!manifest.contains("stages") || !manifest["stages"].is_object())
            manifest["stages"] = json::object();
    }

    void save_manifest() {
        io::write_json_file(out / "manifest.json", manifest);
    }

    json require_artifact(const char* file, const char* producer) const {
        const fs::path path = out / file;
        if (!fs::exists(path))
            throw MissingFileError(std::string(file) + " not found in '" +
                                   out.string() + "'; run the `" + producer +
                                   "` subcommand first");
        return io::read_json_file(path);
    }

    MediumProfile resolve_medium() const {
        if (!cfg.medium_file.empty()) {
            const fs::path path = cfg.medium_file;
            if (!fs::exists(path))
                throw MissingFileError("medium file '" + path.string() +
                                       "' not found");
            return io::medium_from_json(io::read_json_file(path));
        }
        return make_profile(cfg.kind, cfg.profile);
    }

    MediumProfile medium_artifact() const {
        return io::medium_from_json(require_artifact("medium.json", "forward"));
    }

    bool have_medium_artifact() const {
        return fs::exists(out / "medium.json");
    }

    double resolve_t_max() const {
        if (have_medium_artifact())
            return io::read_json_file(out / "medium.json")
                .at("t_max")
                .get<double>();
        return cfg.profile.t_max;
    }

    // ------------------------------------------------------------------ forward
    void stage_forward(json& entry) {
        const MediumProfile medium = resolve_medium();
        io::write_json_file(out / "medium.json", io::to_json(medium));

        const double omega = cfg.omega_max > 0.0
                                 ? cfg.omega_max
                                 : default_omega_max(cfg.n, medium.t_max);
        const FdOperator op = assemble_fd(medium, cfg.fd_cells);
        TransferSamples samples =
            sample_transfer(op, omega, cfg.n_samples, cfg.threads);
        if (cfg.noise_level > 0.0)
            samples = add_noise(samples, cfg.noise_level, cfg.noise_seed);
        io::write_json_file(out / "transfer.json", io::to_json(samples));

        std::vector<double> omegas, re_d, im_d;
        omegas.reserve(samples.s_points.size());
        for (std::size_t k = 0; k < samples.s_points.size(); ++k) {
            omegas.push_back(samples.s_points[k].imag());
            re_d.push_back(samples.values[k].real());
            im_d.push_back(samples.values[k].imag());
        }
        io::write_csv(out / "transfer.csv", "forward", hash,
                      {{"omega_per_traveltime", omegas},
                       {"Re_D_impedance", re_d},
                       {"Im_D_impedance", im_d}});

        entry["omega_max"] = omega;
        entry["n_samples"] = samples.s_points.size();
        entry["fd_cells"] = cfg.fd_cells;
        entry["noise_level"] = cfg.noise_level;
        entry["noise_seed"] = cfg.noise_seed;
        entry["mean_loss_true"] = mean_loss(medium);
    }

    // ---------------------------------------------------------------------- fit
    void stage_fit(json& entry) {
        const MediumProfile medium = medium_artifact();
        json artifact;
        artifact["mode"] = extraction_name(cfg.extraction);
        if (cfg.extraction == ExtractionMode::exact) {
            const FdOperator op = assemble_fd(medium, cfg.fd_cells);
            const SpectralData data = exact_spectral_data(op, cfg.n);
            artifact["data"] = io::to_json(data);
            artifact["tail"] = nullptr;
        } else {
            const TransferSamples samples = io::transfer_from_json(
                require_artifact("transfer.json", "forward"));
            const TailModel tail =
                estimate_r0(samples, medium.t_max, medium.zeta0);
            const RationalFit fit = fit_poles_residues(samples, tail, cfg.n);
            artifact["data"] = io::to_json(fit.data);
            artifact["full"] = io::to_json(fit.full);
            artifact["tail"] = io::to_json(tail);
            entry["r0_estimate"] = tail.r0;
            entry["rel_misfit"] = fit.rel_misfit;
            entry["sweeps"] = fit.iterations;
            entry["poles_flipped"] = fit.poles_flipped;
        }
        io::write_json_file(out / "spectral.json", artifact);
        entry["n_pairs"] = cfg.n;
    }

    // ---------------------------------------------------------------------- rom
    void stage_rom(json& entry) {
        const json artifact = require_artifact("spectral.json", "fit");
        const SpectralData data = io::spectral_from_json(artifact.at("data"));
        const RomMatrix matrix = lanczos(data);
        const RomCoefficients coeffs = extract_coefficients(matrix);
        io::write_json_file(out / "rom.json",
                            json{{"matrix", io::to_json(matrix)},
                                 {"coefficients", io::to_json(coeffs)}});

        entry["gamma_min"] =
            *std::min_element(coeffs.gammas.begin(), coeffs.gammas.end());
        entry["gamma_hat_min"] = *std::min_element(coeffs.gamma_hats.begin(),
                                                   coeffs.gamma_hats.end());
        entry["beta_square_max"] = *std::max_element(
            matrix.beta_squares.begin(), matrix.beta_squares.end());
        if (have_medium_artifact()) {
            const double r0_ref = mean_loss(medium_artifact());
            double dev = 0.0, dual = 0.0;
            for (double r : coeffs.r_primary)
                dev = std::max(dev, std::abs(r - r0_ref));
            for (double r : coeffs.r_dual) dual = std::max(dual, std::abs(r));
            entry["r0_reference"] = r0_ref;
            entry["r_primary_max_dev_from_r0"] = dev;
            entry["r_dual_max_abs"] = dual;
        }
    }

    // --------------------------------------------------------------------- grid
    void stage_grid(json& entry) {
        const double t_max = resolve_t_max();
        const StaggeredGrid g = spectrally_matched_grid(cfg.n, t_max);
        io::write_json_file(out / "grid.json", io::to_json(g));

        const std::size_t n = g.h.size();
        std::vector<double> index(n), tp(n), td(n);
        for (std::size_t j = 0; j < n; ++j) {
            index[j] = double(j + 1);
            tp[j] = g.t_primary[j + 1];
            td[j] = g.t_dual[j + 1];
        }
        io::write_csv(out / "grid.csv", "grid", hash,
                      {{"cell_index", index},
                       {"h_traveltime", g.h},
                       {"h_hat_traveltime", g.h_hat},
                       {"t_primary_traveltime", tp},
                       {"t_dual_traveltime", td}});
        entry["n"] = n;
        entry["t_max"] = t_max;
        entry["width_sum"] =
            std::accumulate(g.h.begin(), g.h.end(), 0.0);
    }

    // ------------------------------------------------------------------- invert
    void stage_invert(json& entry) {
        const json rom_artifact = require_artifact("rom.json", "rom");
        const RomCoefficients coeffs =
            io::rom_coefficients_from_json(rom_artifact.at("coefficients"));
        const StaggeredGrid g =
            io::grid_from_json(require_artifact("grid.json", "grid"));

        const PiecewiseLinear zeta_est = impedance_from_rom(coeffs, g);
        const EigenBasis basis = eigenbasis(
            [&zeta_est](double t) { return zeta_est(t); }, g.t_max, g.h.size());
        const InversionResult direct = loss_direct(coeffs, g, basis, cfg.reg);
        const InversionResult simple = loss_simple(coeffs, g);
        io::write_json_file(out / "inversion.json",
                            json{{"direct", io::to_json(direct)},
                                 {"simple", io::to_json(simple)}});

        const std::size_t n_plot = 2001;
        std::vector<double> t(n_plot), zv(n_plot), ld(n_plot), ls(n_plot),
            rf(n_plot), rfh(n_plot);
        for (std::size_t k = 0; k < n_plot; ++k) {
            const double tk = g.t_max * double(k) / double(n_plot - 1);
            t[k] = tk;
            zv[k] = direct.zeta_est(tk);
            ld[k] = direct.loss_est(tk);
            ls[k] = simple.loss_est(tk);
            rf[k] = direct.r_frak(tk);
            rfh[k] = direct.r_frak_hat(tk);
        }
        io::write_csv(out / "inversion.csv", "invert", hash,
                      {{"T_traveltime", t},
                       {"zeta_estimate", zv},
                       {"loss_direct_per_traveltime", ld},
                       {"loss_simple_per_traveltime", ls},
                       {"r_frak_per_traveltime", rf},
                       {"r_frak_hat_per_traveltime", rfh}});

        entry["reg"] = cfg.reg;
        entry["system_residual"] = direct.system_residual;
        entry["mean_loss_direct"] = direct.mean_loss_est;
        entry["mean_loss_simple"] = simple.mean_loss_est;
    }

    // ----------------------------------------------------------------- optimize
    void stage_optimize(json& entry) {
        const json rom_artifact = require_artifact("rom.json", "rom");
        const RomCoefficients coeffs =
            io::rom_coefficients_from_json(rom_artifact.at("coefficients"));
        const MediumProfile medium = medium_artifact();
        const StaggeredGrid g =
            io::grid_from_json(require_artifact("grid.json", "grid"));

        // Constant initialization: boundary impedance and the mean loss
        // implied by the data-side coefficients.
        FourierMedium init;
        init.t_max = medium.t_max;
        init.zeta_cos = {medium.zeta0};
        init.loss_cos = {loss_simple(coeffs, g).mean_loss_est};

        GnSettings settings = cfg.optimizer;
        settings.threads = cfg.threads;
        const OptState state = gauss_newton(coeffs, init, cfg.n, settings);

        io::write_json_file(
            out / "optimize.json",
            json{{"medium", io::to_json(state.medium)},
                 {"objective", state.objective},
                 {"iterations", state.iteration},
                 {"converged", state.converged},
                 {"line_search_warning", state.line_search_warning},
                 {"rom_search", io::to_json(state.rom_search)}});

        std::vector<double> iter, obj, step;
        for (const TraceRow& row : state.trace) {
            iter.push_back(double(row.iteration));
            obj.push_back(row.objective);
            step.push_back(row.step_norm);
        }
        io::write_csv(out / "optimize_trace.csv", "optimize", hash,
                      {{"iteration", iter},
                       {"objective", obj},
                       {"step_norm", step}});

        entry["objective"] = state.objective;
        entry["iterations"] = state.iteration;
        entry["converged"] = state.converged;
        entry["line_search_warning"] = state.line_search_warning;
    }

    void run_stage(Stage s, json& entry) {
        switch (s) {
            case Stage::forward: stage_forward(entry); break;
            case Stage::fit: stage_fit(entry); break;
            case Stage::rom: stage_rom(entry); break;
            case Stage::grid: stage_grid(entry); break;
            case Stage::invert: stage_invert(entry); break;
            default: stage_optimize(entry); break;
        }
    }
};

}  // namespace

int run_stages(const ExperimentConfig& cfg, const std::vector<Stage>& stages) {
    StageContext ctx(cfg);
    std::error_code ec;
    fs::create_directories(ctx.out, ec);
    if (ec) {
        log::error("cannot create output directory '" + ctx.out.string() +
                   "': " + ec.message());
        return kExitError;
    }
    ctx.load_manifest();
    ctx.manifest["config"] = config_to_json(cfg);
    ctx.manifest["config_hash"] = ctx.hash;

    for (Stage s : stages) {
        const char* name = stage_name(s);
        log::info(std::string("stage ") + name + " ...");
        json entry = json::object();
        const auto t0 = std::chrono::steady_clock::now();
        try {
            ctx.run_stage(s, entry);
        } catch (const std::exception& err) {
            entry["status"] = "failed";
            entry["error"] = err.what();
            ctx.manifest["stages"][name] = entry;
            ctx.manifest["status"] = "failed";
            ctx.manifest["failed_stage"] = name;
            ctx.manifest["error"] = err.what();
            ctx.save_manifest();
            log::error(std::string("stage ") + name + " failed: " + err.what());
            return dynamic_cast<const MissingFileError*>(&err) != nullptr
                       ? kExitMissingFile
                       : kExitError;
        }
        const std::chrono::duration<double> dt =
            std::chrono::steady_clock::now() - t0;
        entry["status"] = "ok";
        entry["seconds"] = dt.count();
        ctx.manifest["stages"][name] = entry;
        ctx.manifest["status"] = "ok";
        ctx.manifest.erase("failed_stage");
        ctx.manifest.erase("error");
        ctx.save_manifest();
        log::info(std::string("stage ") + name + " done in " +
                  io::format_double(dt.count()) + " s");
    }
    return kExitOk;
}

int run_pipeline(const ExperimentConfig& cfg) {
    std::vector<Stage> stages = {Stage::forward, Stage::fit, Stage::rom,
                                 Stage::grid, Stage::invert};
    if (cfg.run_optimizer) stages.push_back(Stage::optimize);
    return run_stages(cfg, stages);
}

}  // namespace lossyrom
