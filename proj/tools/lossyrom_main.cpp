// lossyrom_main.cpp — command line driver: stage subcommands over a shared
// artifact directory, configured by JSON plus flag overrides.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lossyrom/io.hpp"
#include "lossyrom/log.hpp"
#include "lossyrom/pipeline.hpp"

namespace {

using namespace lossyrom;

// Flag values start at sentinels so that only flags the user actually passed
// override the configuration file.
struct CliOptions {
    std::string config_path;
    std::string out_dir;
    long long n = -1;
    double omega_max = -1.0;
    long long samples = -1;
    long long fd_cells = -1;
    std::string extraction;
    double noise = -1.0;
    long long seed = -1;
    double reg = -1.0;
    long long max_iter = -1;
    long long threads = -1;
};

ExperimentConfig build_config(const CliOptions& opt) {
    ExperimentConfig cfg;
    if (!opt.config_path.empty()) {
        if (!std::filesystem::exists(opt.config_path))
            throw std::runtime_error("config file '" + opt.config_path +
                                     "' not found");
        cfg = config_from_json(io::read_json_file(opt.config_path));
    }
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (opt.n >= 0) cfg.n = std::size_t(opt.n);
    if (opt.omega_max >= 0.0) cfg.omega_max = opt.omega_max;
    if (opt.samples >= 0) cfg.n_samples = std::size_t(opt.samples);
    if (opt.fd_cells >= 0) cfg.fd_cells = std::size_t(opt.fd_cells);
    if (!opt.extraction.empty()) {
        if (opt.extraction == "exact") {
            cfg.extraction = ExtractionMode::exact;
        } else if (opt.extraction == "ratfit") {
            cfg.extraction = ExtractionMode::ratfit;
        } else {
            throw std::runtime_error("unknown extraction mode '" +
                                     opt.extraction + "'");
        }
    }
    if (opt.noise >= 0.0) cfg.noise_level = opt.noise;
    if (opt.seed >= 0) cfg.noise_seed = std::uint64_t(opt.seed);
    if (opt.reg >= 0.0) cfg.reg = opt.reg;
    if (opt.max_iter >= 0) cfg.optimizer.max_iter = std::size_t(opt.max_iter);
    if (opt.threads >= 1) cfg.threads = unsigned(opt.threads);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "lossyrom — reduced order model inversion for lossy layered media"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "experiment config JSON");
    app.add_option("--out", opt.out_dir, "artifact directory");
    app.add_option("--n", opt.n, "ROM order");
    app.add_option("--omega-max", opt.omega_max, "measurement band edge");
    app.add_option("--samples", opt.samples, "transfer sample count");
    app.add_option("--fd-cells", opt.fd_cells, "forward solver cells");
    app.add_option("--extraction", opt.extraction,
                   "pole extraction mode: exact or ratfit");
    app.add_option("--noise", opt.noise, "relative noise level");
    app.add_option("--seed", opt.seed, "noise RNG seed");
    app.add_option("--reg", opt.reg, "inversion regularization weight");
    app.add_option("--max-iter", opt.max_iter, "optimizer iteration cap");
    app.add_option("--threads", opt.threads, "worker thread cap");

    struct SubSpec {
        const char* name;
        const char* help;
    };
    const std::vector<SubSpec> subs = {
        {"forward", "sample the transfer function of the configured medium"},
        {"fit", "extract spectral data (rational fit or exact)"},
        {"rom", "build the ROM matrix and cell coefficients"},
        {"grid", "emit the spectrally matched grid"},
        {"invert", "estimate impedance and loss on the grid"},
        {"optimize", "Gauss-Newton refinement against the data ROM"},
        {"full", "run the whole pipeline"},
    };
    for (const SubSpec& s : subs) app.add_subcommand(s.name, s.help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err);
    }

    try {
        const ExperimentConfig cfg = build_config(opt);
        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "full") return run_pipeline(cfg);
        Stage stage = Stage::forward;
        if (sub == "fit") stage = Stage::fit;
        else if (sub == "rom") stage = Stage::rom;
        else if (sub == "grid") stage = Stage::grid;
        else if (sub == "invert") stage = Stage::invert;
        else if (sub == "optimize") stage = Stage::optimize;
        return run_stages(cfg, {stage});
    } catch (const std::exception& err) {
        log::error(err.what());
        const std::string what = err.what();
        return what.find("not found") != std::string::npos ? kExitMissingFile
                                                           : kExitError;
    }
}
