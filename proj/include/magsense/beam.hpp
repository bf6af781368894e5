#pragma once

#include <vector>

#include "magsense/material.hpp"

namespace magsense::flexure {

/// Rectangular-section cantilever flexure. Section properties are always
/// derived from the geometry, never stored.
struct BeamSpec {
    MaterialSpec material;
    double length = 0.0;     // L [m]
    double thickness = 0.0;  // t [m], in the bending direction
    double width = 0.0;      // b_w [m]
    double max_deflection_cap = 5e-4;  // [m]

    double second_moment() const { return width * thickness * thickness * thickness / 12.0; }
    double area() const { return width * thickness; }
    double flexural_rigidity() const { return material.youngs_modulus * second_moment(); }
    // Tip compliance under a point load, L^3 / 3EI [m/N].
    double tip_compliance() const {
        return length * length * length / (3.0 * flexural_rigidity());
    }

    void validate() const;
    // Slender-beam validity heuristic (t/L <= 0.2).
    bool slender() const { return thickness / length <= 0.2; }
};

enum class LoadType {
    tip_point,        // point load P at the free end (default)
    distributed_ramp  // q(x) = 2P (L - x) / L^2, resultant P, root-heavy ramp
};

const char* load_type_name(LoadType t);

/// Sampled solution of the flexure boundary-value problem.
struct BeamState {
    std::vector<double> x;  // strictly increasing grid, 0..L
    std::vector<double> w;  // vertical deflection [m]
    std::vector<double> u;  // horizontal (axial) displacement [m]
    std::vector<double> n;  // axial force [N]
    std::vector<double> q;  // distributed load [N/m]
    LoadType load_type = LoadType::tip_point;
    int iterations = 0;
    double residual = 0.0;

    double tip_deflection() const { return w.back(); }
    double tip_displacement_axial() const { return u.back(); }
};

struct VonKarmanOptions {
    int grid_points = 201;      // >= 101
    double tolerance = 1e-10;   // relative fixed-point tolerance on w
    int max_iterations = 100;
    LoadType load = LoadType::tip_point;
    bool axial_tip_pinned = false;  // free tip (N == 0) unless pinned
    bool paper_literal_stretch = false;  // Eq.-2-as-printed comparison mode
};

// Closed-form end slope of the clamped cantilever under tip load, P L^2 / 2EI.
double tip_slope(double load, const BeamSpec& beam);

// Closed-form end deflection, P L^3 / 3EI.
double tip_deflection(double load, const BeamSpec& beam);

// Bending stress at section x for tip load P: P (L - x) (t/2) / I.
double bending_stress(const BeamSpec& beam, double load, double x);

// Foreshortening of the beam tip, u(L) = -1/2 int (w')^2 dx, by trapezoid.
double axial_shortening(const BeamState& state);

/// Bending solution with membrane coupling. Fixed point on N(x): bending is
/// solved in moment form with the current axial force, then the membrane
/// strain updates N. The first iterate (N = 0) is the linear solution.
BeamState solve_von_karman(const BeamSpec& beam, double load,
                           const VonKarmanOptions& options = {});

/// Independent slope oracle: composite-Simpson integration of the
/// moment-curvature relation M(x)/EI for the configured load type.
double tip_slope_ode_oracle(double load, const BeamSpec& beam, int grid_points = 2001,
                            LoadType type = LoadType::tip_point);

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace magsense::flexure
