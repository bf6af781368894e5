#include "magsense/hysteresis.hpp"

#include <cmath>

namespace magsense::models {

double BoucWenConfig::state_bound() const {
    if (alpha == 0.0) return 0.0;
    if (beta + gamma <= 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(alpha / (beta + gamma), 1.0 / n);
}

void BoucWenConfig::validate() const {
    if (alpha < 0.0 || n < 1.0)
        throw HysteresisError("BoucWenConfig: need alpha >= 0 and n >= 1");
    if (alpha > 0.0 && beta + gamma <= 0.0)
        throw HysteresisError("BoucWenConfig: unstable parameterization, beta + gamma must be > 0");
    if (std::abs(gamma) > beta)
        throw HysteresisError("BoucWenConfig: |gamma| <= beta required for a bounded loop");
}

std::vector<double> hysteresis_apply(std::span<const double> signal, const BoucWenConfig& cfg) {
    cfg.validate();
    std::vector<double> out(signal.begin(), signal.end());
    if (cfg.is_identity() || signal.size() < 2) return out;

    const double bound = cfg.state_bound();
    double z = 0.0;
    out[0] = signal[0];
    for (std::size_t i = 1; i < signal.size(); ++i) {
        const double dx = signal[i] - signal[i - 1];
        // Rate-independent explicit update; substep large increments so the
        // state cannot overshoot its bound.
        const int substeps = std::max(1, static_cast<int>(std::ceil(std::abs(dx) / (0.05 * bound))));
        const double step = dx / substeps;
        for (int s = 0; s < substeps; ++s) {
            const double zn1 = std::pow(std::abs(z), cfg.n - 1.0);
            const double zn = zn1 * std::abs(z);
            const double sgn = step >= 0.0 ? 1.0 : -1.0;
            z += step * (cfg.alpha - cfg.beta * sgn * zn1 * z - cfg.gamma * zn);
        }
        if (!std::isfinite(z) || std::abs(z) > 10.0 * bound + 1e-300)
            throw HysteresisError("hysteresis_apply: state diverged");
        out[i] = signal[i] - z;
    }
    return out;
}

BoucWenConfig default_deflection_hysteresis() {
    // z saturates at 0.15/3750 = 4e-5 m, i.e. 8% of a 0.5 mm full swing.
    BoucWenConfig cfg;
    cfg.alpha = 0.15;
    cfg.beta = 2500.0;
    cfg.gamma = 1250.0;
    cfg.n = 1.0;
    return cfg;
}

}  // namespace magsense::models
