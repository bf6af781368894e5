#pragma once

#include "magsense/transducer.hpp"

namespace magsense::magnetics {

/// Interference budget for one sensing unit.
struct InterferenceReport {
    FieldVector earth_offset;        // ambient background at the sensor
    FieldVector neighbor_offset;     // closed-gripper mirror magnet, delta B_xe
    Vec3 misalignment_spread_gauss = Vec3::Zero();  // per-axis std of the nominal reading
    FieldVector demag_delta;         // field change across the demag bound

    // The paper gates the grasp-axis leak against the sensor resolution.
    double neighbor_grasp_axis_gauss() const { return std::abs(neighbor_offset.gauss().x()); }
};

struct InterferenceOptions {
    // Ambient field default: 0.5 uT along the longitudinal axis.
    Vec3 earth_field_tesla = Vec3(0.0, 0.0, 0.5e-6);
    bool perturb_rotation = false;        // translation-only misalignment by default
    double rotation_sigma_rad = 1e-3;     // used only when perturb_rotation
};

InterferenceReport interference_budget(const transducer::SensingUnitSpec& unit,
                                       double neighbor_gap, double misalignment_sigma,
                                       int trials, std::uint64_t seed,
                                       const InterferenceOptions& options = {});

}  // namespace magsense::magnetics
