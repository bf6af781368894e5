#include "magsense/interference.hpp"

#include "magsense/rng.hpp"

namespace magsense::magnetics {

InterferenceReport interference_budget(const transducer::SensingUnitSpec& unit,
                                       double neighbor_gap, double misalignment_sigma,
                                       int trials, std::uint64_t seed,
                                       const InterferenceOptions& options) {
    unit.validate();
    if (!(neighbor_gap > 0.0))
        throw std::invalid_argument("interference_budget: neighbor gap must be positive");
    if (trials < 1) throw std::invalid_argument("interference_budget: need at least one trial");
    if (misalignment_sigma < 0.0)
        throw std::invalid_argument("interference_budget: misalignment sigma must be >= 0");

    InterferenceReport rep;
    rep.earth_offset = FieldVector(options.earth_field_tesla);

    const Pose magnet_pose = unit.nominal_magnet_pose();
    const Pose sensor_pose = unit.nominal_sensor_pose();

    const auto [nspec, npose] = unit.neighbor_magnet(neighbor_gap);
    rep.neighbor_offset = field(nspec, npose, sensor_pose.translation)
                              .rotated(sensor_pose.rotation.transpose());

    // Demagnetization bound: extremes of the multiplier interval.
    {
        MagnetSpec lo = unit.magnet;
        lo.demag_multiplier = 0.99;
        MagnetSpec hi = unit.magnet;
        hi.demag_multiplier = 1.0;
        rep.demag_delta = field(lo, magnet_pose, sensor_pose.translation) -
                          field(hi, magnet_pose, sensor_pose.translation);
    }

    // Placement misalignment Monte Carlo: Gaussian perturbation of the sensor
    // and magnet positions. Per-trial counter-based streams keep the result
    // independent of evaluation order.
    Vec3 sum = Vec3::Zero(), sum_sq = Vec3::Zero();
    for (int t = 0; t < trials; ++t) {
        RandomStream rng(seed, static_cast<std::uint64_t>(t));
        Pose mp = magnet_pose;
        Pose sp = sensor_pose;
        for (int i = 0; i < 3; ++i) mp.translation[i] += rng.normal(0.0, misalignment_sigma);
        for (int i = 0; i < 3; ++i) sp.translation[i] += rng.normal(0.0, misalignment_sigma);
        if (options.perturb_rotation) {
            mp.rotation = Pose::rot_x(rng.normal(0.0, options.rotation_sigma_rad)) *
                          Pose::rot_y(rng.normal(0.0, options.rotation_sigma_rad)) * mp.rotation;
        }
        const Vec3 g =
            field(unit.magnet, mp, sp.translation).rotated(sp.rotation.transpose()).gauss();
        sum += g;
        sum_sq += g.cwiseProduct(g);
    }
    const Vec3 mean = sum / trials;
    const Vec3 var = (sum_sq / trials - mean.cwiseProduct(mean)).cwiseMax(0.0);
    rep.misalignment_spread_gauss = var.cwiseSqrt();
    return rep;
}

}  // namespace magsense::magnetics
