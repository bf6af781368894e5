#include "magsense/design.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "magsense/sensitivity.hpp"

namespace magsense::design {

void SweepConfig::fill_default_grids() {
    if (beam_thicknesses.empty())
        for (double t = 1e-3; t <= 8.001e-3; t += 0.5e-3) beam_thicknesses.push_back(t);
    if (beam_lengths.empty())
        for (double l = 15e-3; l <= 45.001e-3; l += 5e-3) beam_lengths.push_back(l);
}

std::size_t SweepConfig::candidate_count() const {
    return magnet_diameters.size() * magnet_lengths.size() * beam_thicknesses.size() *
           beam_lengths.size() * beam_widths.size() * materials.size();
}

void SweepConfig::validate() const {
    if (candidate_count() < 1) throw std::invalid_argument("SweepConfig: empty grid");
    if (materials.empty()) throw std::invalid_argument("SweepConfig: no materials");
    sensor.validate();
}

DesignCandidate make_candidate(const SweepConfig& config, std::size_t index) {
    // Row-major decomposition: material, diameter, length, thickness, beam
    // length, width (fastest).
    std::size_t rest = index;
    const auto pick = [&rest](const auto& v) {
        const std::size_t i = rest % v.size();
        rest /= v.size();
        return v[i];
    };
    const double width = pick(config.beam_widths);
    const double beam_l = pick(config.beam_lengths);
    const double thick = pick(config.beam_thicknesses);
    const double mag_l = pick(config.magnet_lengths);
    const double mag_d = pick(config.magnet_diameters);
    const flexure::MaterialSpec mat = pick(config.materials);

    DesignCandidate c;
    c.index = index;
    c.material_name = mat.name;

    flexure::BeamSpec beam;
    beam.material = mat;
    beam.length = beam_l;
    beam.thickness = thick;
    beam.width = width;
    beam.max_deflection_cap = config.deflection_cap;
    c.unit.lateral_beam = beam;
    c.unit.longitudinal_beam = beam;
    c.unit.magnet = magnetics::MagnetSpec::cylinder_spec(mag_d, mag_l, config.magnet_remanence);
    c.unit.magnet.demag_multiplier = config.demag_multiplier;
    c.unit.gap = config.gap;
    return c;
}

namespace {

DesignMetrics evaluate_candidate(const SweepConfig& config, const DesignCandidate& c) {
    DesignMetrics m;
    try {
        const auto sens = transducer::force_sensitivity(c.unit);
        m.sensitivity_fx_gauss_per_n = sens.lateral();
        m.sensitivity_fz_gauss_per_n = sens.longitudinal();

        // Field-change sensitivity over the grasp-axis motion range.
        const auto profile = magnetics::sensitivity_profile(
            c.unit.magnet, c.unit.nominal_sensor_pose(), magnetics::MotionAxis::x,
            -config.deflection_cap, config.deflection_cap, 21);
        m.max_field_sensitivity_gauss_per_m = profile.max_abs_sensitivity_gauss_per_m();

        const auto [nspec, npose] = c.unit.neighbor_magnet(config.neighbor_gap);
        m.neighbor_leak_gauss = std::abs(
            magnetics::field(nspec, npose, c.unit.nominal_sensor_pose().translation).gauss().x());

        m.feasibility = transducer::check_constraints(c.unit, config.sensor, 0.0, 0.0,
                                                      config.neighbor_gap);
        if (m.feasibility.feasible()) {
            const auto range = transducer::force_range(c.unit, config.sensor);
            m.force_range_fx_n = range.max_fx;
            m.force_range_fz_n = range.max_fz;
            m.binding_fx = range.binding_fx;
            m.binding_fz = range.binding_fz;
        }
    } catch (const std::exception& e) {
        m.error = e.what();
    }
    return m;
}

}  // namespace

SweepResult sweep(const SweepConfig& config_in, const SweepProgress& progress) {
    SweepConfig config = config_in;
    config.fill_default_grids();
    config.validate();

    const std::size_t total = config.candidate_count();
    SweepResult result;
    result.candidates.resize(total);
    result.metrics.resize(total);
    for (std::size_t i = 0; i < total; ++i) result.candidates[i] = make_candidate(config, i);

    const int workers = std::max(1, config.parallelism);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            result.metrics[i] = evaluate_candidate(config, result.candidates[i]);
            const std::size_t d = ++done;
            if (progress && d % 500 == 0) progress(d, total);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (progress) progress(total, total);
    return result;
}

std::vector<std::size_t> pareto_front(const SweepResult& result) {
    std::vector<std::size_t> feasible;
    for (std::size_t i = 0; i < result.metrics.size(); ++i)
        if (result.metrics[i].feasible()) feasible.push_back(i);
    std::vector<std::size_t> front;
    for (const std::size_t i : feasible) {
        const auto& mi = result.metrics[i];
        bool dominated = false;
        for (const std::size_t j : feasible) {
            if (i == j) continue;
            const auto& mj = result.metrics[j];
            const bool geq = mj.force_range_fx_n >= mi.force_range_fx_n &&
                             mj.sensitivity_fx_gauss_per_n >= mi.sensitivity_fx_gauss_per_n;
            const bool gt = mj.force_range_fx_n > mi.force_range_fx_n ||
                            mj.sensitivity_fx_gauss_per_n > mi.sensitivity_fx_gauss_per_n;
            if (geq && gt) {
                dominated = true;
                break;
            }
            // Exact ties keep the lower index only.
            if (mj.force_range_fx_n == mi.force_range_fx_n &&
                mj.sensitivity_fx_gauss_per_n == mi.sensitivity_fx_gauss_per_n && j < i) {
                dominated = true;
                break;
            }
        }
        if (!dominated) front.push_back(i);
    }
    return front;
}

std::size_t select_design(const SweepResult& result, const SelectionRequirements& req) {
    std::size_t best = result.metrics.size();
    double best_sens = -1.0;
    for (std::size_t i = 0; i < result.metrics.size(); ++i) {
        const auto& m = result.metrics[i];
        const auto& c = result.candidates[i];
        if (!m.feasible()) continue;
        if (c.unit.gap < req.min_gap_m) continue;
        if (c.unit.lateral_beam.max_deflection_cap > req.max_deflection_m) continue;
        if (m.sensitivity_fx_gauss_per_n < req.min_sensitivity_gauss_per_n) continue;
        if (std::min(m.force_range_fx_n, m.force_range_fz_n) < req.min_force_range_n) continue;
        if (m.sensitivity_fx_gauss_per_n > best_sens) {
            best_sens = m.sensitivity_fx_gauss_per_n;
            best = i;
        }
    }
    if (best == result.metrics.size()) {
        // Report the nearest misses to make infeasible requirements debuggable.
        std::ostringstream msg;
        msg << "select_design: no candidate meets the requirements (min sensitivity "
            << req.min_sensitivity_gauss_per_n << " G/N, min range " << req.min_force_range_n
            << " N). Nearest misses:";
        double best_range = -1.0, best_s = -1.0;
        std::size_t by_range = result.metrics.size(), by_sens = result.metrics.size();
        for (std::size_t i = 0; i < result.metrics.size(); ++i) {
            const auto& m = result.metrics[i];
            if (!m.feasible()) continue;
            const double r = std::min(m.force_range_fx_n, m.force_range_fz_n);
            if (r > best_range) {
                best_range = r;
                by_range = i;
            }
            if (m.sensitivity_fx_gauss_per_n > best_s) {
                best_s = m.sensitivity_fx_gauss_per_n;
                by_sens = i;
            }
        }
        if (by_range < result.metrics.size())
            msg << " max feasible range " << best_range << " N (candidate " << by_range << ");";
        if (by_sens < result.metrics.size())
            msg << " max feasible sensitivity " << best_s << " G/N (candidate " << by_sens << ")";
        throw SelectionError(msg.str());
    }
    return best;
}

}  // namespace magsense::design
