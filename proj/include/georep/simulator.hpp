#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "georep/deteval.hpp"
#include "georep/geomodel.hpp"
#include "georep/partition.hpp"
#include "georep/rng.hpp"

namespace georep {

// Location-dependent detector quality surface on [0, 1]:
//   base - lat_gradient * |lat|/90            polar degradation
//   + spherical harmonics, degrees 1..L       smooth regional variation
//   + piecewise-constant 20-degree lon blocks  terrain patchiness
// Harmonic coefficients and block levels are drawn from the "field"
// substream, so one seed pins the whole surface.
struct FieldParams {
    double base = 0.85;
    double lat_gradient = 0.30;
    int smooth_degree = 4;
    double smooth_amp = 0.05;
    double lon_patch_amp = 0.08;
    double noise_sd = 0.02;      // per-scene detection-probability noise
    double run_noise_sd = 0.02;  // per-run offset shared by all scenes of a run
};

class PerformanceField {
public:
    PerformanceField(const FieldParams& params, const RngStream& root);

    // Clamped to [0, 1]; identical seed gives an identical surface.
    double value(double lat_deg, double lon_deg) const;

    const FieldParams& params() const noexcept { return params_; }

private:
    FieldParams params_;
    std::vector<double> coeffs_;  // packed l = 1..L, m = -l..l
    std::array<double, 18> patch_{};
};

// q(n) = q_inf - (q_inf - q0) * exp(-n / tau); strictly increasing toward
// q_inf.
struct LearningCurve {
    double q0 = 0.35;
    double q_inf = 0.75;
    double tau = 250.0;

    double q(double n) const {
        return q_inf - (q_inf - q0) * std::exp(-n / tau);
    }
};

struct WorldParams {
    int n_scenes = 5000;
    double craters_mean = 8.0;  // Poisson craters per scene
    int width_px = 256;
    int height_px = 256;
    double gsd_m = 100.0;
};

struct SyntheticWorld {
    SceneSet scenes;
    std::vector<GroundTruthBox> gts;
};

// Scene centers with latitude density proportional to cos(lat); crater
// diameters log-uniform in [0.2, 25.5] km, boxes placed uniformly inside the
// scene. Deterministic per (seed, n_scenes).
SyntheticWorld gen_world(const WorldParams& params, const RngStream& root);

struct DetectParams {
    double jitter_px = 3.0;    // per-coordinate Gaussian box jitter
    double fp_rate = 0.5;      // Poisson false positives per scene at p = 0
    double score_noise = 0.2;  // score = clamp(p - score_noise * u)
    double fp_min_px = 4.0;
    double fp_max_px = 48.0;
};

// Exp4's latitudinal spatial-dependence knob: multiplies the learning-curve
// quality by exp(-|lat - center|/decay).
struct ProximityEffect {
    bool active = false;
    double center_lat_deg = 0.0;
    double decay_deg = 30.0;

    double factor(double lat_deg) const {
        if (!active) return 1.0;
        return std::exp(-std::fabs(lat_deg - center_lat_deg) / decay_deg);
    }
};

// Simulated detector pass over the world. Per ground-truth crater the
// detection probability is p = clamp(q(n) * m * f(lat, lon) + eps_run +
// eps_scene); detected boxes are jittered per coordinate and scored
// clamp(p - score_noise * u). False positives arrive per scene as
// Poisson(fp_rate * (1 - p)) uniform boxes sharing the score formula.
//
// Every draw comes from a substream labeled by scene under run_stream, with a
// fixed draw count per crater, so runs sharing a run label stay aligned draw
// for draw across train sizes (detection sets grow monotonically with n).
// Passing the same run_stream reproduces a run bit for bit; labeling streams
// by replicate index makes replicates independent.
std::vector<Detection> gen_detections(const SyntheticWorld& world,
                                      const PerformanceField& field,
                                      const LearningCurve& curve,
                                      double train_size,
                                      const DetectParams& detect,
                                      const ProximityEffect& proximity,
                                      const RngStream& run_stream);

// --- experiment configuration ----------------------------------------------

struct Exp1Config {
    std::vector<double> sizes = {100, 200, 400, 800, 1200, 1600, 2000, 2400, 2800};
    int replicates = 10;
    int n_scenes = 400;
};

struct Exp2Config {
    int runs_per_group = 20;
    double train_size = 2000;
    int n_scenes = 400;
    double low_run_noise_sd = 0.02;
    double high_run_noise_sd = 0.08;
};

struct Exp3Config {
    double train_size = 2000;
};

struct Exp4Config {
    std::vector<std::pair<double, double>> train_strips = {{60, 70}, {0, 10}, {-40, -30}};
    double train_size = 2000;
    int n_scenes = 2000;
    double proximity_decay_deg = 30.0;
    int n_perm = 999;
    bool include_training_strip = true;
};

struct Exp5Config {
    std::vector<std::pair<double, double>> train_strips = {{100, 120}, {200, 220}};
    double train_size = 2000;
    int n_scenes = 2000;
    int n_perm = 999;
};

struct SimConfig {
    WorldParams world;
    FieldParams field;
    LearningCurve curve;
    DetectParams detect;
    Exp1Config exp1;
    Exp2Config exp2;
    Exp3Config exp3;
    Exp4Config exp4;
    Exp5Config exp5;

    nlohmann::json to_json() const;
    // Partial configs merge onto the defaults. Unknown keys, wrong types, and
    // out-of-range values raise ConfigError naming the JSON pointer.
    static SimConfig from_json(const nlohmann::json& j);
};

// --- experiment runner -------------------------------------------------------

struct ExperimentResult {
    int experiment = 0;
    std::uint64_t seed = 0;
    nlohmann::json stats;  // stats.json body
    std::string summary_md;

    SyntheticWorld world;
    std::vector<std::pair<std::string, std::vector<Detection>>> detection_files;
    PartitionScheme map_scheme;
    std::vector<RegionScore> map_scores;
    std::vector<std::pair<std::string, std::string>> extra_files;  // name -> text
};

// Replays experiment k (1..5) deterministically; throws ConfigError on an
// unknown k. Heavy per-run work parallelizes without affecting results.
ExperimentResult run_experiment(int k, const SimConfig& config, std::uint64_t seed,
                                int threads = 1);

// Writes manifest.json, annotations.json, detections_*.json, map.geojson,
// map.csv, stats.json, summary.md and experiment-specific CSVs.
void write_report(const ExperimentResult& result,
                  const std::filesystem::path& out_dir);

}  // namespace georep
