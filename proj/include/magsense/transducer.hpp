#pragma once

#include <array>
#include <optional>
#include <string>

#include "magsense/beam.hpp"
#include "magsense/magnet.hpp"

namespace magsense::transducer {

using flexure::BeamSpec;
using magnetics::FieldVector;
using magnetics::MagnetSpec;

/// 3D hall-effect sensor: range, quantization step, noise, rate.
struct SensorSpec {
    double range_gauss = 2000.0;
    double resolution_gauss = 0.1;
    double noise_sigma_gauss = 0.1;  // per axis, pre-quantization
    double sample_rate_hz = 1000.0;

    void validate() const;
};

/// Quantized sensor output. gauss = counts * resolution exactly.
struct SensorReading {
    std::array<long long, 3> counts{0, 0, 0};
    std::array<bool, 3> saturated{false, false, false};
    double resolution_gauss = 0.1;

    Vec3 gauss() const {
        return Vec3(counts[0] * resolution_gauss, counts[1] * resolution_gauss,
                    counts[2] * resolution_gauss);
    }
    bool any_saturated() const { return saturated[0] || saturated[1] || saturated[2]; }
};

/// Round-half-away-from-zero quantization to the resolution grid, clamped to
/// +-range with per-axis saturation flags.
SensorReading quantize(const FieldVector& b, const SensorSpec& sensor);

/// One finger-edge sensing unit.
///
/// Default frame (all lengths in meters):
///   x  grasp / lateral axis (the gripper closing direction)
///   y  finger axis
///   z  longitudinal / ground axis
/// The magnet sits at the origin with its magnetization along +z; the sensor
/// sits on the magnet axis at z = -(M_L/2 + M_G). The lateral flexure carries
/// the sensor (axis z, deflects along x under F_x); the longitudinal flexure
/// carries the magnet (axis y, deflects along z under F_z, tilting the magnet
/// about x by its edge slope). Positive F_z opens the magnet-sensor gap.
struct SensingUnitSpec {
    BeamSpec lateral_beam;       // carries the sensor, responds to F_x
    BeamSpec longitudinal_beam;  // carries the magnet, responds to F_z
    MagnetSpec magnet;
    double gap = 1.5e-3;  // M_G, magnet face to sensing point [m]
    bool allow_small_gap = false;
    Pose magnet_mount;  // applied on top of the default placement
    Pose sensor_mount;
    double min_clearance = 0.5e-3;  // geometric margin kept under full deflection

    void validate() const;

    Pose nominal_magnet_pose() const;
    Pose nominal_sensor_pose() const;
    // Poses for a given tip deflection (foreshortening and tip tilt follow
    // the linear cantilever shape). The dataset path drives these directly
    // with hysteretic deflection signals.
    Pose magnet_pose_for_deflection(double w_tip) const;
    Pose sensor_pose_for_deflection(double w_tip) const;
    // Poses under the applied load.
    Pose loaded_magnet_pose(double f_z) const;
    Pose loaded_sensor_pose(double f_x) const;
    // Mirror unit's magnet when the gripper is closed: placed along +x at the
    // given face-to-face gap, at the sensor's height, magnetization flipped.
    std::pair<MagnetSpec, Pose> neighbor_magnet(double neighbor_gap) const;
};

enum class Constraint { none, yield, fatigue, deflection, clearance, saturation, interference };
const char* constraint_name(Constraint c);

struct FeasibilityReport {
    bool yield_ok = true;
    bool fatigue_ok = true;
    bool geometric_ok = true;
    bool signal_range_ok = true;
    bool interference_ok = true;
    Constraint binding_constraint = Constraint::none;
    // Margin per family: 1 - value/limit, >= 0 when the family passes.
    double yield_margin = 1.0;
    double fatigue_margin = 1.0;
    double geometric_margin = 1.0;
    double signal_margin = 1.0;
    double interference_margin = 1.0;

    bool feasible() const {
        return yield_ok && fatigue_ok && geometric_ok && signal_range_ok && interference_ok;
    }
};

/// Full forward chain: forces -> beam kinematics -> field -> noise -> counts.
SensorReading forward_reading(const SensingUnitSpec& unit, double f_x, double f_z,
                              const SensorSpec& sensor,
                              std::optional<std::uint64_t> noise_seed = std::nullopt,
                              std::uint64_t noise_stream = 0);

/// Un-quantized field at the sensor, in the sensor frame [T].
FieldVector forward_field(const SensingUnitSpec& unit, double f_x, double f_z);

struct ForceSensitivity {
    Vec3 dreading_dfx_gauss_per_n;  // reading gradient wrt F_x
    Vec3 dreading_dfz_gauss_per_n;  // reading gradient wrt F_z
    double lateral() const { return dreading_dfx_gauss_per_n.norm(); }
    double longitudinal() const { return dreading_dfz_gauss_per_n.norm(); }
};

/// Chain-rule force sensitivity at nominal: field gradient at the sensor times
/// beam tip compliance, per force axis.
ForceSensitivity force_sensitivity(const SensingUnitSpec& unit);

struct ForceRange {
    double max_fx = 0.0;
    double max_fz = 0.0;
    Constraint binding_fx = Constraint::none;
    Constraint binding_fz = Constraint::none;
};

/// Per-axis admissible force by bisection until the first constraint binds.
ForceRange force_range(const SensingUnitSpec& unit, const SensorSpec& sensor,
                       double bisect_tol_n = 1e-3);

/// Evaluates every constraint family at load (f_x, f_z).
FeasibilityReport check_constraints(const SensingUnitSpec& unit, const SensorSpec& sensor,
                                    double f_x, double f_z, double neighbor_gap = 1.5e-3);

}  // namespace magsense::transducer
