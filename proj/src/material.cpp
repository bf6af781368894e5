#include "magsense/material.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace magsense::flexure {

void MaterialSpec::validate() const {
    if (!(youngs_modulus > 0.0)) throw std::invalid_argument("MaterialSpec: E must be positive");
    if (!(yield_strength > 0.0))
        throw std::invalid_argument("MaterialSpec: yield strength must be positive");
    if (safety_factor < 1.0)
        throw std::invalid_argument("MaterialSpec: safety factor must be >= 1");
    if (!endurance_limit.has_value()) {
        if (!(fatigue_strength_coeff > 0.0) || !(fatigue_exponent < 0.0))
            throw std::invalid_argument(
                "MaterialSpec: need either an endurance limit or Basquin coefficients "
                "(sigma'_f > 0, b < 0)");
    }
}

FatigueResult fatigue_admissible(double sigma_max, double sigma_min, const MaterialSpec& material,
                                 double life_threshold) {
    if (sigma_max < sigma_min)
        throw std::invalid_argument("fatigue_admissible: sigma_max < sigma_min");
    const double sigma_a = (sigma_max - sigma_min) / 2.0;
    FatigueResult r;
    if (sigma_a == 0.0) {
        r.admissible = true;
        r.infinite_life = true;
        r.cycles = std::numeric_limits<double>::infinity();
        return r;
    }
    if (material.endurance_limit.has_value()) {
        r.admissible = sigma_a * material.safety_factor <= *material.endurance_limit;
        r.infinite_life = r.admissible;
        r.cycles = r.admissible ? std::numeric_limits<double>::infinity() : 0.0;
        return r;
    }
    if (!(material.fatigue_strength_coeff > 0.0) || !(material.fatigue_exponent < 0.0))
        throw std::invalid_argument("fatigue_admissible: material has no fatigue model");
    // Basquin: sigma_a = sigma'_f (2 N_f)^b  =>  N_f = 1/2 (sigma_a/sigma'_f)^(1/b)
    r.cycles = 0.5 * std::pow(sigma_a / material.fatigue_strength_coeff,
                              1.0 / material.fatigue_exponent);
    r.admissible = r.cycles >= life_threshold;
    return r;
}

std::vector<MaterialSpec> load_material_library(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open material library: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    std::vector<MaterialSpec> out;
    for (const auto& rec : doc.at("materials")) {
        MaterialSpec m;
        m.name = rec.at("name").get<std::string>();
        m.youngs_modulus = rec.at("youngs_modulus_pa").get<double>();
        m.yield_strength = rec.at("yield_strength_pa").get<double>();
        m.fatigue_strength_coeff = rec.value("fatigue_strength_coeff_pa", 0.0);
        m.fatigue_exponent = rec.value("fatigue_exponent", 0.0);
        if (rec.contains("endurance_limit_pa") && !rec.at("endurance_limit_pa").is_null())
            m.endurance_limit = rec.at("endurance_limit_pa").get<double>();
        m.safety_factor = rec.value("safety_factor", 1.5);
        m.validate();
        out.push_back(std::move(m));
    }
    return out;
}

const MaterialSpec& find_material(const std::vector<MaterialSpec>& lib, const std::string& name) {
    for (const auto& m : lib)
        if (m.name == name) return m;
    throw std::runtime_error("material not in library: " + name);
}

}  // namespace magsense::flexure
