#pragma once

#include <string>
#include <vector>

#include "magsense/hysteresis.hpp"
#include "magsense/transducer.hpp"

namespace magsense::models {

enum class Split { train, eval };
const char* split_name(Split s);
Split split_from_name(const std::string& name);

struct DatasetRow {
    double time_s = 0.0;
    double fx_gt_n = 0.0;
    double fz_gt_n = 0.0;
    double bx_g = 0.0;
    double by_g = 0.0;
    double bz_g = 0.0;
    bool saturated = false;
    Split split = Split::train;
};

struct Dataset {
    std::vector<DatasetRow> rows;
    std::string design_id;
    std::uint64_t seed = 0;
    double reading_rate_hz = 1000.0;
    double ground_truth_rate_hz = 100.0;
    std::string effects_summary;
    std::size_t saturated_count = 0;

    // Rows aligned with a fresh ground-truth sample (the 100 Hz ticks).
    bool ground_truth_fresh(std::size_t row) const {
        const std::size_t stride =
            static_cast<std::size_t>(reading_rate_hz / ground_truth_rate_hz);
        return stride == 0 || row % stride == 0;
    }
    std::size_t count(Split s) const;
};

/// Amplitude-modulated unilateral sinusoid force profile. Forces stay in
/// [0, amplitude]; the two axes run slightly detuned modulation periods so
/// combined loadings cover the 2D force domain.
struct ForceProfile {
    double base_frequency_hz = 0.5;
    double fx_amplitude_n = 0.0;
    double fz_amplitude_n = 0.0;
    double duration_s = 100.0;
    double fx_modulation_period_s = 7.3;
    double fz_modulation_period_s = 11.7;
};

struct ExternalFieldWindow {
    double t_start_s = 0.0;
    double t_end_s = 0.0;
    Vec3 field_gauss = Vec3::Zero();
};

struct EffectsConfig {
    bool noise = true;
    BoucWenConfig hysteresis;  // identity by default
    std::vector<ExternalFieldWindow> external_field;
};

/// Forward-simulates the sensing chain over the profile. Ground truth is
/// sampled at the ground-truth rate and held (zero-order) for the readings;
/// hysteresis acts on the beam deflection signals before field evaluation;
/// scheduled external field is added before quantization. The final
/// (1 - train_fraction) of the time span is the eval split.
Dataset synthesize_dataset(const transducer::SensingUnitSpec& unit,
                           const transducer::SensorSpec& sensor, const ForceProfile& profile,
                           const EffectsConfig& effects, std::uint64_t seed,
                           double train_fraction = 0.8);

void write_dataset_csv(const std::string& path, const Dataset& ds,
                       const std::string& manifest_hash);
Dataset read_dataset_csv(const std::string& path);

}  // namespace magsense::models
