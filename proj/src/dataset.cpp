#include "magsense/dataset.hpp"

#include <cmath>
#include <sstream>

#include "magsense/csv.hpp"
#include "magsense/rng.hpp"

namespace magsense::models {

const char* split_name(Split s) { return s == Split::train ? "train" : "eval"; }

Split split_from_name(const std::string& name) {
    if (name == "train") return Split::train;
    if (name == "eval") return Split::eval;
    throw std::invalid_argument("unknown split: " + name);
}

std::size_t Dataset::count(Split s) const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.split == s;
    return n;
}

namespace {

double modulated_amplitude(double peak, double t, double period) {
    if (peak == 0.0) return 0.0;
    return peak * (0.55 + 0.45 * std::sin(2.0 * kPi * t / period));
}

double unilateral_sine(double amplitude, double f, double t, double phase) {
    return amplitude * 0.5 * (1.0 - std::cos(2.0 * kPi * f * t + phase));
}

}  // namespace

Dataset synthesize_dataset(const transducer::SensingUnitSpec& unit,
                           const transducer::SensorSpec& sensor, const ForceProfile& profile,
                           const EffectsConfig& effects, std::uint64_t seed,
                           double train_fraction) {
    unit.validate();
    sensor.validate();
    if (!(profile.duration_s > 0.0))
        throw std::invalid_argument("synthesize_dataset: duration must be positive");
    const double ratio = sensor.sample_rate_hz / 100.0;
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
        throw std::invalid_argument(
            "synthesize_dataset: reading rate must be a multiple of the ground-truth rate");
    if (train_fraction <= 0.0 || train_fraction >= 1.0)
        throw std::invalid_argument("synthesize_dataset: train fraction must be in (0, 1)");

    Dataset ds;
    ds.seed = seed;
    ds.reading_rate_hz = sensor.sample_rate_hz;
    ds.ground_truth_rate_hz = 100.0;
    const std::size_t n = static_cast<std::size_t>(std::llround(profile.duration_s * ds.reading_rate_hz));
    const std::size_t gt_stride = static_cast<std::size_t>(std::llround(ratio));
    const double dt = 1.0 / ds.reading_rate_hz;

    // Ground-truth forces, held between ground-truth ticks.
    std::vector<double> fx(n), fz(n);
    double fx_hold = 0.0, fz_hold = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % gt_stride == 0) {
            const double t = i * dt;
            fx_hold = unilateral_sine(
                modulated_amplitude(profile.fx_amplitude_n, t, profile.fx_modulation_period_s),
                profile.base_frequency_hz, t, 0.0);
            fz_hold = unilateral_sine(
                modulated_amplitude(profile.fz_amplitude_n, t, profile.fz_modulation_period_s),
                profile.base_frequency_hz, t, 0.6 * kPi);
        }
        fx[i] = fx_hold;
        fz[i] = fz_hold;
    }

    // Deflection signals, then hysteresis before the field evaluation.
    const double c_lat = unit.lateral_beam.tip_compliance();
    const double c_lon = unit.longitudinal_beam.tip_compliance();
    std::vector<double> w_lat(n), w_lon(n);
    for (std::size_t i = 0; i < n; ++i) {
        w_lat[i] = c_lat * fx[i];
        w_lon[i] = c_lon * fz[i];
    }
    if (!effects.hysteresis.is_identity()) {
        w_lat = hysteresis_apply(w_lat, effects.hysteresis);
        w_lon = hysteresis_apply(w_lon, effects.hysteresis);
    }

    const double sigma_t = gauss_to_tesla(sensor.noise_sigma_gauss);
    ds.rows.resize(n);
    const std::size_t train_rows = static_cast<std::size_t>(train_fraction * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = i * dt;
        const Pose mp = unit.magnet_pose_for_deflection(w_lon[i]);
        const Pose sp = unit.sensor_pose_for_deflection(w_lat[i]);
        FieldVector b = magnetics::field(unit.magnet, mp, sp.translation)
                            .rotated(sp.rotation.transpose());
        for (const auto& win : effects.external_field)
            if (t >= win.t_start_s && t < win.t_end_s)
                b.tesla += win.field_gauss / kGaussPerTesla;
        if (effects.noise && sigma_t > 0.0) {
            RandomStream rng(seed, i);
            b.tesla += Vec3(rng.normal(0.0, sigma_t), rng.normal(0.0, sigma_t),
                            rng.normal(0.0, sigma_t));
        }
        const auto reading = transducer::quantize(b, sensor);
        DatasetRow& row = ds.rows[i];
        row.time_s = t;
        row.fx_gt_n = fx[i];
        row.fz_gt_n = fz[i];
        const Vec3 g = reading.gauss();
        row.bx_g = g.x();
        row.by_g = g.y();
        row.bz_g = g.z();
        row.saturated = reading.any_saturated();
        row.split = i < train_rows ? Split::train : Split::eval;
        ds.saturated_count += row.saturated;
    }

    std::ostringstream id;
    id << "unit-d" << unit.magnet.diameter << "-l" << unit.magnet.length << "-seed" << seed;
    ds.design_id = id.str();
    std::ostringstream fx_summary;
    fx_summary << "noise=" << (effects.noise ? 1 : 0)
               << " hysteresis_alpha=" << effects.hysteresis.alpha
               << " external_windows=" << effects.external_field.size();
    ds.effects_summary = fx_summary.str();
    return ds;
}

void write_dataset_csv(const std::string& path, const Dataset& ds,
                       const std::string& manifest_hash) {
    io::CsvWriter csv(path, manifest_hash);
    csv.comment("design_id=" + ds.design_id);
    csv.comment("seed=" + std::to_string(ds.seed));
    csv.comment("reading_rate_hz=" + io::format_double(ds.reading_rate_hz) +
                " ground_truth_rate_hz=" + io::format_double(ds.ground_truth_rate_hz));
    csv.comment("effects: " + ds.effects_summary);
    csv.header({"time_s", "fx_gt_n", "fz_gt_n", "bx_g", "by_g", "bz_g", "saturated", "split"});
    for (const auto& r : ds.rows) {
        csv.field(r.time_s);
        csv.field(r.fx_gt_n);
        csv.field(r.fz_gt_n);
        csv.field(r.bx_g);
        csv.field(r.by_g);
        csv.field(r.bz_g);
        csv.field(static_cast<long long>(r.saturated));
        csv.field(std::string(split_name(r.split)));
        csv.end_row();
    }
}

Dataset read_dataset_csv(const std::string& path) {
    io::CsvReader csv(path);
    Dataset ds;
    for (const auto& c : csv.comments()) {
        if (c.rfind("design_id=", 0) == 0) ds.design_id = c.substr(10);
        if (c.rfind("seed=", 0) == 0) ds.seed = std::stoull(c.substr(5));
    }
    const auto& header = csv.header();
    const std::vector<std::string> expected{"time_s", "fx_gt_n", "fz_gt_n", "bx_g",
                                            "by_g",   "bz_g",    "saturated", "split"};
    if (header != expected) throw std::runtime_error("read_dataset_csv: unexpected columns in " + path);
    for (const auto& row : csv.rows()) {
        DatasetRow r;
        r.time_s = std::stod(row[0]);
        r.fx_gt_n = std::stod(row[1]);
        r.fz_gt_n = std::stod(row[2]);
        r.bx_g = std::stod(row[3]);
        r.by_g = std::stod(row[4]);
        r.bz_g = std::stod(row[5]);
        r.saturated = row[6] != "0";
        r.split = split_from_name(row[7]);
        ds.rows.push_back(r);
    }
    if (ds.rows.size() >= 2)
        ds.reading_rate_hz = std::round(1.0 / (ds.rows[1].time_s - ds.rows[0].time_s));
    return ds;
}

}  // namespace magsense::models
