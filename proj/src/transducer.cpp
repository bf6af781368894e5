#include "magsense/transducer.hpp"

#include <cmath>
#include <stdexcept>

#include "magsense/rng.hpp"

namespace magsense::transducer {

void SensorSpec::validate() const {
    if (!(resolution_gauss > 0.0) || !(range_gauss > 0.0))
        throw std::invalid_argument("SensorSpec: range and resolution must be positive");
    if (noise_sigma_gauss < 0.0)
        throw std::invalid_argument("SensorSpec: noise sigma must be non-negative");
    if (!(sample_rate_hz > 0.0))
        throw std::invalid_argument("SensorSpec: sample rate must be positive");
}

SensorReading quantize(const FieldVector& b, const SensorSpec& sensor) {
    sensor.validate();
    if (!b.all_finite()) throw std::invalid_argument("quantize: non-finite field");
    SensorReading r;
    r.resolution_gauss = sensor.resolution_gauss;
    const long long max_counts =
        static_cast<long long>(std::floor(sensor.range_gauss / sensor.resolution_gauss));
    const Vec3 g = b.gauss();
    for (int i = 0; i < 3; ++i) {
        // round half away from zero
        long long c = static_cast<long long>(std::llround(g[i] / sensor.resolution_gauss));
        if (c > max_counts) {
            c = max_counts;
            r.saturated[i] = true;
        } else if (c < -max_counts) {
            c = -max_counts;
            r.saturated[i] = true;
        }
        r.counts[i] = c;
    }
    return r;
}

void SensingUnitSpec::validate() const {
    lateral_beam.validate();
    longitudinal_beam.validate();
    magnet.validate();
    if (gap < 1.5e-3 && !allow_small_gap)
        throw std::invalid_argument(
            "SensingUnitSpec: gap below the 1.5 mm structural minimum (set allow_small_gap to "
            "override)");
    if (!(gap > 0.0)) throw std::invalid_argument("SensingUnitSpec: gap must be positive");
    magnet_mount.validate();
    sensor_mount.validate();
}

Pose SensingUnitSpec::nominal_magnet_pose() const {
    Pose p = magnet_mount;
    return p;
}

Pose SensingUnitSpec::nominal_sensor_pose() const {
    Pose p = sensor_mount;
    p.translation += Vec3(0.0, 0.0, -(magnet.length / 2.0 + gap));
    return p;
}

Pose SensingUnitSpec::magnet_pose_for_deflection(double w_tip) const {
    // Longitudinal flexure: deflection along z, foreshortening along the beam
    // axis (y), tip rotation about x tilting the magnetization toward y. For
    // the linear cantilever shape theta = 3 w / 2L and u = 3 w^2 / 5L.
    const double len = longitudinal_beam.length;
    const double theta = 1.5 * w_tip / len;
    const double shorten = 0.6 * w_tip * w_tip / len;
    Pose p = nominal_magnet_pose();
    p.translation += Vec3(0.0, -shorten, w_tip);
    p.rotation = Pose::rot_x(theta) * p.rotation;
    return p;
}

Pose SensingUnitSpec::sensor_pose_for_deflection(double w_tip) const {
    // Lateral flexure: deflection along x, foreshortening along the beam axis
    // (z, the sensor post), which pulls the sensor toward the root.
    const double shorten = 0.6 * w_tip * w_tip / lateral_beam.length;
    Pose p = nominal_sensor_pose();
    p.translation += Vec3(w_tip, 0.0, -shorten);
    return p;
}

Pose SensingUnitSpec::loaded_magnet_pose(double f_z) const {
    return magnet_pose_for_deflection(flexure::tip_deflection(f_z, longitudinal_beam));
}

Pose SensingUnitSpec::loaded_sensor_pose(double f_x) const {
    return sensor_pose_for_deflection(flexure::tip_deflection(f_x, lateral_beam));
}

std::pair<MagnetSpec, Pose> SensingUnitSpec::neighbor_magnet(double neighbor_gap) const {
    if (!(neighbor_gap > 0.0))
        throw std::invalid_argument("neighbor_magnet: gap must be positive");
    Pose p;
    p.translation = Vec3(magnet.diameter + neighbor_gap, 0.0, nominal_sensor_pose().translation.z());
    p.rotation = Pose::rot_x(kPi);  // mirrored unit: magnetization flipped
    return {magnet, p};
}

const char* constraint_name(Constraint c) {
    switch (c) {
        case Constraint::none: return "none";
        case Constraint::yield: return "yield";
        case Constraint::fatigue: return "fatigue";
        case Constraint::deflection: return "deflection";
        case Constraint::clearance: return "clearance";
        case Constraint::saturation: return "saturation";
        case Constraint::interference: return "interference";
    }
    return "unknown";
}

FieldVector forward_field(const SensingUnitSpec& unit, double f_x, double f_z) {
    if (!std::isfinite(f_x) || !std::isfinite(f_z))
        throw std::invalid_argument("forward_field: non-finite force");
    const Pose magnet_pose = unit.loaded_magnet_pose(f_z);
    const Pose sensor_pose = unit.loaded_sensor_pose(f_x);
    const FieldVector b_world = magnetics::field(unit.magnet, magnet_pose, sensor_pose.translation);
    return b_world.rotated(sensor_pose.rotation.transpose());
}

SensorReading forward_reading(const SensingUnitSpec& unit, double f_x, double f_z,
                              const SensorSpec& sensor, std::optional<std::uint64_t> noise_seed,
                              std::uint64_t noise_stream) {
    FieldVector b = forward_field(unit, f_x, f_z);
    if (noise_seed.has_value() && sensor.noise_sigma_gauss > 0.0) {
        RandomStream rng(*noise_seed, noise_stream);
        const double sigma_t = gauss_to_tesla(sensor.noise_sigma_gauss);
        b.tesla += Vec3(rng.normal(0.0, sigma_t), rng.normal(0.0, sigma_t),
                        rng.normal(0.0, sigma_t));
    }
    return quantize(b, sensor);
}

ForceSensitivity force_sensitivity(const SensingUnitSpec& unit) {
    unit.validate();
    const Pose mp = unit.nominal_magnet_pose();
    const Pose sp = unit.nominal_sensor_pose();
    // Central differences of the field wrt relative sensor motion.
    const double h = 1e-7;
    const auto grad = [&](const Vec3& dir) {
        const Vec3 bp = magnetics::field(unit.magnet, mp, sp.translation + h * dir).tesla;
        const Vec3 bm = magnetics::field(unit.magnet, mp, sp.translation - h * dir).tesla;
        return Vec3((bp - bm) / (2.0 * h));
    };
    // F_x moves the sensor along +x; F_z moves the magnet along +z, which is
    // a relative sensor motion along -z.
    const Vec3 s_x = grad(Vec3(1, 0, 0));
    const Vec3 s_z = -grad(Vec3(0, 0, 1));
    ForceSensitivity out;
    out.dreading_dfx_gauss_per_n =
        s_x * unit.lateral_beam.tip_compliance() * kGaussPerTesla;
    out.dreading_dfz_gauss_per_n =
        s_z * unit.longitudinal_beam.tip_compliance() * kGaussPerTesla;
    return out;
}

namespace {

struct AxisCheck {
    bool ok;
    Constraint binding;
    double margin;
};

double beam_stress_at_root(const BeamSpec& beam, double load) {
    return flexure::bending_stress(beam, std::abs(load), 0.0);
}

// Constraint families for a single-axis load on one beam.
AxisCheck check_beam(const BeamSpec& beam, double load) {
    const double sigma = beam_stress_at_root(beam, load);
    const double yield_limit = beam.material.yield_strength / beam.material.safety_factor;
    if (sigma > yield_limit)
        return {false, Constraint::yield, 1.0 - sigma / yield_limit};
    // Unilateral contact loading: the stress cycles 0 -> sigma.
    const auto fat = flexure::fatigue_admissible(sigma, 0.0, beam.material);
    if (!fat.admissible) return {false, Constraint::fatigue, -1.0};
    const double defl = std::abs(flexure::tip_deflection(load, beam));
    if (defl > beam.max_deflection_cap)
        return {false, Constraint::deflection,
                beam.max_deflection_cap > 0.0 ? 1.0 - defl / beam.max_deflection_cap : -1.0};
    double margin = 1.0 - sigma / yield_limit;
    if (beam.max_deflection_cap > 0.0)
        margin = std::min(margin, 1.0 - defl / beam.max_deflection_cap);
    else if (defl > 0.0)
        margin = -1.0;
    return {true, Constraint::none, margin};
}

}  // namespace

FeasibilityReport check_constraints(const SensingUnitSpec& unit, const SensorSpec& sensor,
                                    double f_x, double f_z, double neighbor_gap) {
    FeasibilityReport rep;

    // Mechanical screens per beam.
    const AxisCheck lat = check_beam(unit.lateral_beam, f_x);
    const AxisCheck lon = check_beam(unit.longitudinal_beam, f_z);
    for (const AxisCheck* c : {&lat, &lon}) {
        if (c->binding == Constraint::yield) rep.yield_ok = false;
        if (c->binding == Constraint::fatigue) rep.fatigue_ok = false;
        if (c->binding == Constraint::deflection) rep.geometric_ok = false;
    }

    const double yield_limit_lat =
        unit.lateral_beam.material.yield_strength / unit.lateral_beam.material.safety_factor;
    const double yield_limit_lon = unit.longitudinal_beam.material.yield_strength /
                                   unit.longitudinal_beam.material.safety_factor;
    rep.yield_margin = std::min(1.0 - beam_stress_at_root(unit.lateral_beam, f_x) / yield_limit_lat,
                                1.0 - beam_stress_at_root(unit.longitudinal_beam, f_z) / yield_limit_lon);
    rep.fatigue_margin = rep.fatigue_ok ? 1.0 : -1.0;

    // Geometric: deflections within the cap and the sensor keeps clearance to
    // the magnet face under the worst combined excursion.
    const double dx = std::abs(flexure::tip_deflection(f_x, unit.lateral_beam));
    const double dz = std::abs(flexure::tip_deflection(f_z, unit.longitudinal_beam));
    const double cap_lat = unit.lateral_beam.max_deflection_cap;
    const double cap_lon = unit.longitudinal_beam.max_deflection_cap;
    double geo_margin = 1.0;
    if (cap_lat > 0.0) geo_margin = std::min(geo_margin, 1.0 - dx / cap_lat);
    else if (dx > 0.0) geo_margin = -1.0;
    if (cap_lon > 0.0) geo_margin = std::min(geo_margin, 1.0 - dz / cap_lon);
    else if (dz > 0.0) geo_margin = -1.0;
    const double gap_under_load = unit.gap - (f_z < 0.0 ? dz : 0.0);
    if (gap_under_load < unit.min_clearance) {
        rep.geometric_ok = false;
        geo_margin = std::min(geo_margin, gap_under_load / unit.min_clearance - 1.0);
    }
    if (geo_margin < 0.0) rep.geometric_ok = false;
    rep.geometric_margin = geo_margin;

    // Signal integrity: the reading must stay inside the sensor range at the
    // nominal state and at the loaded state.
    const Vec3 b0 = forward_field(unit, 0.0, 0.0).gauss().cwiseAbs();
    const Vec3 bf = forward_field(unit, f_x, f_z).gauss().cwiseAbs();
    const double worst = std::max(b0.maxCoeff(), bf.maxCoeff());
    rep.signal_margin = 1.0 - worst / sensor.range_gauss;
    if (rep.signal_margin < 0.0) rep.signal_range_ok = false;

    // Interference: closed-gripper neighbor leak on the grasp axis must stay
    // under 3 sensor resolutions; the axial component is a gripper-state
    // constant handled by bias calibration.
    const auto [nspec, npose] = unit.neighbor_magnet(neighbor_gap);
    const Vec3 leak =
        magnetics::field(nspec, npose, unit.nominal_sensor_pose().translation).gauss();
    const double leak_limit = 3.0 * sensor.resolution_gauss;
    rep.interference_margin = 1.0 - std::abs(leak.x()) / leak_limit;
    if (rep.interference_margin < 0.0) rep.interference_ok = false;

    // Binding constraint: the failing family with the smallest margin.
    rep.binding_constraint = Constraint::none;
    double worst_margin = 0.0;
    const auto consider = [&](bool ok, Constraint c, double margin) {
        if (!ok && margin <= worst_margin) {
            worst_margin = margin;
            rep.binding_constraint = c;
        }
    };
    consider(rep.yield_ok, Constraint::yield, rep.yield_margin);
    consider(rep.fatigue_ok, Constraint::fatigue, rep.fatigue_margin);
    const Constraint geo_kind =
        gap_under_load < unit.min_clearance ? Constraint::clearance : Constraint::deflection;
    consider(rep.geometric_ok, geo_kind, rep.geometric_margin);
    consider(rep.signal_range_ok, Constraint::saturation, rep.signal_margin);
    consider(rep.interference_ok, Constraint::interference, rep.interference_margin);
    return rep;
}

namespace {

bool axis_admissible(const SensingUnitSpec& unit, const SensorSpec& sensor, bool lateral,
                     double f, Constraint* binding) {
    const double fx = lateral ? f : 0.0;
    const double fz = lateral ? 0.0 : f;
    const FeasibilityReport rep = check_constraints(unit, sensor, fx, fz);
    if (binding) *binding = rep.binding_constraint;
    return rep.feasible();
}

std::pair<double, Constraint> bisect_axis(const SensingUnitSpec& unit, const SensorSpec& sensor,
                                          bool lateral, double tol) {
    Constraint binding = Constraint::none;
    if (!axis_admissible(unit, sensor, lateral, 0.0, &binding)) return {0.0, binding};
    double lo = 0.0, hi = 1.0;
    while (axis_admissible(unit, sensor, lateral, hi, &binding)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9) return {lo, Constraint::none};
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (axis_admissible(unit, sensor, lateral, mid, nullptr))
            lo = mid;
        else
            hi = mid;
    }
    axis_admissible(unit, sensor, lateral, hi, &binding);
    return {lo, binding};
}

}  // namespace

ForceRange force_range(const SensingUnitSpec& unit, const SensorSpec& sensor, double bisect_tol_n) {
    unit.validate();
    sensor.validate();
    ForceRange out;
    std::tie(out.max_fx, out.binding_fx) = bisect_axis(unit, sensor, true, bisect_tol_n);
    std::tie(out.max_fz, out.binding_fz) = bisect_axis(unit, sensor, false, bisect_tol_n);
    return out;
}

}  // namespace magsense::transducer
