#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace magsense::models {

/// Bouc-Wen hysteretic operator on a uniformly sampled signal. The internal
/// state z follows dz/dx = alpha - beta sgn(dx) |z|^(n-1) z - gamma |z|^n and
/// the output is y = x - z. All parameters zero gives the identity map.
struct BoucWenConfig {
    double alpha = 0.0;
    double beta = 0.0;   // [1/m] when x is a displacement in meters
    double gamma = 0.0;  // [1/m]
    double n = 1.0;

    bool is_identity() const { return alpha == 0.0; }
    // Saturation amplitude of the internal state (alpha/(beta+gamma))^(1/n).
    double state_bound() const;
    void validate() const;
};

struct HysteresisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> hysteresis_apply(std::span<const double> signal, const BoucWenConfig& cfg);

/// Default loop parameters for millimeter-scale deflection signals: the state
/// saturates at ~8% of a 0.5 mm swing.
BoucWenConfig default_deflection_hysteresis();

}  // namespace magsense::models
