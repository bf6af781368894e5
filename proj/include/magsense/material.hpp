#pragma once

#include <optional>
#include <string>
#include <vector>

namespace magsense::flexure {

/// Elastic and fatigue constants for one flexure material.
struct MaterialSpec {
    std::string name;
    double youngs_modulus = 0.0;       // E [Pa]
    double yield_strength = 0.0;       // sigma_y [Pa]
    double fatigue_strength_coeff = 0.0;  // Basquin sigma'_f [Pa]
    double fatigue_exponent = 0.0;        // Basquin b (< 0)
    std::optional<double> endurance_limit;  // [Pa]; absent for materials without one
    double safety_factor = 1.5;

    void validate() const;
};

struct FatigueResult {
    bool admissible = false;
    double cycles = 0.0;  // N_f; infinity() when below the endurance limit
    bool infinite_life = false;
};

/// Stress-amplitude fatigue screen. With an endurance limit present the check
/// is sigma_a * safety_factor <= endurance_limit; otherwise Basquin
/// N_f = 1/2 (sigma_a / sigma'_f)^(1/b) against `life_threshold` cycles.
FatigueResult fatigue_admissible(double sigma_max, double sigma_min, const MaterialSpec& material,
                                 double life_threshold = 1e7);

/// Loads the JSON material library (see data/materials.json for the schema).
std::vector<MaterialSpec> load_material_library(const std::string& path);

const MaterialSpec& find_material(const std::vector<MaterialSpec>& lib, const std::string& name);

}  // namespace magsense::flexure
