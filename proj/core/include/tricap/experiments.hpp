#pragma once

#include "tricap/cahn_hilliard.hpp"
#include "tricap/config.hpp"
#include "tricap/diagnostics.hpp"
#include "tricap/io.hpp"
#include "tricap/sharp.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace tricap {

struct RunResult {
    ExperimentKind experiment = ExperimentKind::Custom;
    std::filesystem::path out_dir;
    std::map<std::string, double> scalars;  // named summary values
    SampleSeries profile;                   // hexagon / reference-1d q(s)
    std::optional<AngleMeasurement> angles; // lens final measurement
    CsvTable series;                        // in-memory copy of series.csv

    double scalar(const std::string& name) const;
};

/// Runs the configured experiment, writing manifest, time-series CSV,
/// snapshots, and a diagnostic summary into config.out_dir. Solver failures
/// propagate as exceptions.
RunResult run_experiment(const ExperimentConfig& config);

/// Initial phase fields used by the experiments (exposed for tests).
CHState hexagon_sector_state(std::shared_ptr<const Domain> dom, double epsilon);
CHState half_lens_state(std::shared_ptr<const Domain> dom, double epsilon, double radius);
CHState full_lens_state(std::shared_ptr<const Domain> dom, double epsilon, double radius);

/// The 1D sharp reference configured like the hexagon run.
Junction1DConfig reference_config(const ExperimentConfig& config);

} // namespace tricap
