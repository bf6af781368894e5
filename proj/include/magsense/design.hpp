#pragma once

#include <functional>
#include <string>
#include <vector>

#include "magsense/transducer.hpp"

namespace magsense::design {

using transducer::Constraint;
using transducer::FeasibilityReport;
using transducer::SensingUnitSpec;
using transducer::SensorSpec;

/// One grid point of the sweep space.
struct DesignCandidate {
    std::size_t index = 0;
    SensingUnitSpec unit;
    std::string material_name;

    double magnet_diameter() const { return unit.magnet.diameter; }
    double magnet_length() const { return unit.magnet.length; }
};

struct DesignMetrics {
    double sensitivity_fx_gauss_per_n = 0.0;  // grasp axis
    double sensitivity_fz_gauss_per_n = 0.0;  // longitudinal axis
    double max_field_sensitivity_gauss_per_m = 0.0;
    double force_range_fx_n = 0.0;
    double force_range_fz_n = 0.0;
    double neighbor_leak_gauss = 0.0;  // grasp-axis component
    FeasibilityReport feasibility;
    Constraint binding_fx = Constraint::none;
    Constraint binding_fz = Constraint::none;
    std::string error;  // set when the candidate failed to evaluate

    bool evaluated() const { return error.empty(); }
    bool feasible() const { return evaluated() && feasibility.feasible(); }
};

/// Cartesian sweep grid. The candidate count is the product of all lists.
struct SweepConfig {
    std::vector<double> magnet_diameters{1e-3, 3e-3, 5e-3};
    std::vector<double> magnet_lengths{1.5e-3, 2.5e-3, 3.5e-3, 4.5e-3, 6e-3};
    std::vector<double> beam_thicknesses;  // filled by defaults() when empty
    std::vector<double> beam_lengths;
    std::vector<double> beam_widths{10e-3, 15e-3, 20e-3};
    std::vector<flexure::MaterialSpec> materials;
    double gap = 1.5e-3;
    double deflection_cap = 0.5e-3;
    double neighbor_gap = 1.5e-3;
    double magnet_remanence = 1.2;
    double demag_multiplier = 0.995;
    SensorSpec sensor;
    std::uint64_t seed = 0;
    int parallelism = 1;

    void fill_default_grids();
    std::size_t candidate_count() const;
    void validate() const;
};

struct SweepResult {
    std::vector<DesignCandidate> candidates;
    std::vector<DesignMetrics> metrics;
};

using SweepProgress = std::function<void(std::size_t done, std::size_t total)>;

/// Evaluates every grid point. Candidate failures are recorded per candidate,
/// never abort the sweep. Results are ordered by grid index regardless of the
/// parallel schedule.
SweepResult sweep(const SweepConfig& config, const SweepProgress& progress = {});

/// Builds the sensing unit for one grid point (shared by sweep and tests).
DesignCandidate make_candidate(const SweepConfig& config, std::size_t index);

/// Indices of the non-dominated candidates under maximize {force range,
/// force sensitivity} on the grasp axis, restricted to feasible candidates.
/// Ties broken by candidate index.
std::vector<std::size_t> pareto_front(const SweepResult& result);

struct SelectionRequirements {
    double min_sensitivity_gauss_per_n = 1.0;
    double min_force_range_n = 50.0;
    double max_deflection_m = 0.5e-3;
    double min_gap_m = 1.5e-3;
};

struct SelectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The feasible candidate maximizing grasp-axis force sensitivity subject to
/// the requirements. Throws SelectionError (listing nearest misses) when no
/// candidate qualifies.
std::size_t select_design(const SweepResult& result, const SelectionRequirements& req);

}  // namespace magsense::design
