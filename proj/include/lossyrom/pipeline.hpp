// pipeline.hpp — experiment orchestration: the stage graph
// forward -> fit -> rom -> grid -> invert -> optimize, artifact layout in the
// output directory, and the run manifest with timings and diagnostics.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lossyrom/media.hpp"
#include "lossyrom/optim.hpp"

namespace lossyrom {

struct ExperimentConfig {
    // The probed medium: either an inline profile description or a JSON
    // file holding a sampled profile (medium_file wins when nonempty).
    ProfileKind kind = ProfileKind::constant;
    ProfileParams profile;
    std::string medium_file;

    std::size_t n = 10;           // ROM order
    double omega_max = 0.0;       // 0 -> default band for n
    std::size_t n_samples = 10000;
    std::size_t fd_cells = 3000;
    ExtractionMode extraction = ExtractionMode::ratfit;
    double noise_level = 0.0;
    std::uint64_t noise_seed = 1;
    double reg = 0.0;
    bool run_optimizer = false;
    GnSettings optimizer;
    unsigned threads = 1;
    std::string out_dir = "out";
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Fingerprint of the configuration, stamped into every CSV header.
std::string config_hash(const ExperimentConfig& cfg);

enum class Stage { forward, fit, rom, grid, invert, optimize };
const char* stage_name(Stage s);

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitMissingFile = 2;

// Runs the listed stages in order against cfg.out_dir.  Each stage reads
// the artifacts of its producers from the directory (so pipelines are
// resumable) and manifest.json is rewritten after every stage — including
// a failing one, which records the stage and message.  Returns a process
// exit code; a missing input file or stage dependency yields
// kExitMissingFile.
int run_stages(const ExperimentConfig& cfg, const std::vector<Stage>& stages);

// The full pipeline: forward, fit, rom, grid, invert, plus optimize when
// cfg.run_optimizer is set.
int run_pipeline(const ExperimentConfig& cfg);

}  // namespace lossyrom
