#pragma once

#include <vector>

#include "magsense/magnet.hpp"

namespace magsense::magnetics {

enum class MotionAxis { x, y, z };

/// Sampled field-change sensitivity S = dB/dX at the sensor as the magnet
/// moves along one axis. One row per sample; columns are the field axes in
/// the sensor frame [T/m].
struct SensitivityProfile {
    std::vector<double> offset;            // magnet displacement [m]
    std::vector<Vec3> field;               // field at each offset [T]
    std::vector<Vec3> sensitivity;         // dB/dX per field axis [T/m]
    double max_abs_sensitivity = 0.0;      // max |S| component over the range [T/m]

    double max_abs_sensitivity_gauss_per_m() const {
        return max_abs_sensitivity * kGaussPerTesla;
    }
};

/// Central-difference sensitivity of field() along the motion axis. The
/// magnet starts at the origin (axis +z) and is displaced by offsets spanning
/// [range_lo, range_hi]; the sensor stays at sensor_pose.
SensitivityProfile sensitivity_profile(const MagnetSpec& magnet, const Pose& sensor_pose,
                                       MotionAxis axis, double range_lo, double range_hi,
                                       int steps);

}  // namespace magsense::magnetics
