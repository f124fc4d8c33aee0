#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "gossim/conductance.hpp"
#include "gossim/gossip.hpp"
#include "gossim/mobility.hpp"

namespace gossim {

inline constexpr const char* kVersion = "gossim 0.1.0";

enum class ExperimentKind { Spread, Conductance, Density, Sweep, Increment, Connectivity };

const char* to_string(ExperimentKind kind);

enum class CutChoice { Sweep, Bisect, Random, Exhaustive };

const char* to_string(CutChoice choice);
CutFamily to_family(CutChoice choice);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Sweep;
    std::vector<int> n_values;
    double r = 0.0;  // 0 = per-n default radius sqrt(8 log n / (pi n))
    Boundary boundary = Boundary::Square;
    std::vector<MobilitySpec> models;
    double epsilon = 0.05;
    std::int64_t rounds = 1000;  // replications per grid point
    int sources = 10;            // sampled sources for the spreading-time sup
    std::int64_t samples = 2000; // Monte-Carlo samples (conductance and friends)
    GossipMode mode = GossipMode::PushPull;
    CutChoice cuts = CutChoice::Sweep;
    int workers = 0;             // 0 = hardware concurrency
    std::uint64_t seed = 1;
    std::int64_t max_slots = 0;  // 0 = auto cap from the Theorem-1 bound
    std::string out_path;        // empty = stdout

    double radius_for(int n) const;

    // Throws ConfigError naming the offending field.
    void validate() const;
};

struct ResultRow {
    std::string experiment;
    std::string model;
    int n = 0;
    double r = 0.0;
    double param = 0.0;
    std::string metric;
    double value = 0.0;
    double std_error = std::numeric_limits<double>::quiet_NaN();  // NaN = absent
    std::int64_t rounds = 0;
    std::uint64_t seed = 0;
};

// Model descriptor string, e.g. "velocity vmax=0.1" or "partial k=100".
MobilitySpec parse_model_spec(const std::string& text);
std::string model_spec_text(const MobilitySpec& spec);

// Parse the structured text config (sections [experiment], [world], [models];
// grammar documented in the README). Unknown keys are errors; messages carry
// the line number.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

// Canonical config text such that parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& config);
std::uint64_t config_hash(const ExperimentConfig& config);

std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

// Deterministic CSV with header
// experiment,model,n,r,param,metric,value,std_error,rounds,seed
void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_csv(const std::vector<ResultRow>& rows, const std::string& path);

// Companion manifest: versions, config hash, master seed, row count.
void write_manifest(const std::string& path, const ExperimentConfig& config,
                    std::size_t row_count);

// Trajectory dump: run_id,source,seed,slot,informed_count (one row per slot).
void write_trajectories_csv(std::span<const SpreadTrajectory> runs, std::ostream& out);

// Per-cut estimate dump: model,n,r,param,cut_id,quotient_kind,mean,std_error,samples.
void write_estimates_csv(std::ostream& out, const std::string& model_label, int n,
                         double r, double param,
                         std::span<const ConductanceEstimate> estimates,
                         bool with_header = true);

// All replicated runs for one (model, n) grid point, seeded from the master
// seed; shared by the sweep experiments and the CLI trajectory dump.
std::vector<SpreadTrajectory> run_spread_point(const ExperimentConfig& config,
                                               const MobilitySpec& model, int n,
                                               std::int64_t point_index);

std::int64_t auto_max_slots(const ExperimentConfig& config, const MobilitySpec& model,
                            int n, double r);

int resolve_workers(int workers);

// Index-parallel loop; ordering-independent by construction (each item writes
// only its own slot). workers <= 0 uses hardware concurrency.
void parallel_for(std::int64_t count, int workers,
                  const std::function<void(std::int64_t)>& fn);

}  // namespace gossim
