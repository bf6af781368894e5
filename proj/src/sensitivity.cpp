#include "magsense/sensitivity.hpp"

#include <stdexcept>

namespace magsense::magnetics {

SensitivityProfile sensitivity_profile(const MagnetSpec& magnet, const Pose& sensor_pose,
                                       MotionAxis axis, double range_lo, double range_hi,
                                       int steps) {
    magnet.validate();
    sensor_pose.validate();
    if (steps < 3) throw std::invalid_argument("sensitivity_profile: need at least 3 steps");
    if (!(range_hi > range_lo))
        throw std::invalid_argument("sensitivity_profile: empty displacement range");

    Vec3 dir = Vec3::Zero();
    dir[static_cast<int>(axis)] = 1.0;

    SensitivityProfile out;
    out.offset.resize(steps);
    out.field.resize(steps);
    out.sensitivity.resize(steps);

    const double h = (range_hi - range_lo) / (steps - 1);
    for (int i = 0; i < steps; ++i) {
        const double s = range_lo + i * h;
        out.offset[i] = s;
        Pose magnet_pose;
        magnet_pose.translation = s * dir;
        // field() raises a domain error itself if the displacement drives the
        // magnet into the sensor.
        const FieldVector b = field(magnet, magnet_pose, sensor_pose.translation);
        out.field[i] = (sensor_pose.rotation.transpose() * b.tesla).eval();
    }
    for (int i = 0; i < steps; ++i) {
        Vec3 d;
        if (i == 0)
            d = (out.field[1] - out.field[0]) / h;
        else if (i == steps - 1)
            d = (out.field[steps - 1] - out.field[steps - 2]) / h;
        else
            d = (out.field[i + 1] - out.field[i - 1]) / (2.0 * h);
        out.sensitivity[i] = d;
        out.max_abs_sensitivity = std::max(out.max_abs_sensitivity, d.cwiseAbs().maxCoeff());
    }
    return out;
}

}  // namespace magsense::magnetics
