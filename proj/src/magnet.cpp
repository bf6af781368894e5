#include "magsense/magnet.hpp"

#include <cmath>
#include <stdexcept>

namespace magsense::magnetics {

const char* shape_name(MagnetShape s) {
    switch (s) {
        case MagnetShape::cylinder: return "cylinder";
        case MagnetShape::cube: return "cube";
        case MagnetShape::sphere: return "sphere";
        case MagnetShape::tube: return "tube";
    }
    return "unknown";
}

MagnetShape shape_from_name(const std::string& name) {
    if (name == "cylinder") return MagnetShape::cylinder;
    if (name == "cube") return MagnetShape::cube;
    if (name == "sphere") return MagnetShape::sphere;
    if (name == "tube") return MagnetShape::tube;
    throw std::invalid_argument("unknown magnet shape: " + name);
}

void MagnetSpec::validate() const {
    if (!(diameter > 0.0) || !(length > 0.0))
        throw std::invalid_argument("MagnetSpec: dimensions must be positive");
    if (!(remanence > 0.0))
        throw std::invalid_argument("MagnetSpec: remanence must be positive");
    if (demag_multiplier < 0.99 || demag_multiplier > 1.0)
        throw std::invalid_argument("MagnetSpec: demag_multiplier outside [0.99, 1.0]");
    if (shape == MagnetShape::tube) {
        if (!(inner_diameter > 0.0) || inner_diameter >= diameter)
            throw std::invalid_argument("MagnetSpec: tube bore must satisfy 0 < bore < diameter");
    } else if (inner_diameter != 0.0) {
        throw std::invalid_argument("MagnetSpec: inner_diameter only valid for tubes");
    }
    if (shape == MagnetShape::sphere && std::abs(length - diameter) > 1e-15)
        throw std::invalid_argument("MagnetSpec: sphere requires length == diameter");
    if (!std::isfinite(diameter) || !std::isfinite(length) || !std::isfinite(remanence))
        throw std::invalid_argument("MagnetSpec: non-finite field");
}

double MagnetSpec::volume() const {
    const double r = diameter / 2.0;
    switch (shape) {
        case MagnetShape::cylinder: return kPi * r * r * length;
        case MagnetShape::cube: return diameter * diameter * length;
        case MagnetShape::sphere: return 4.0 / 3.0 * kPi * r * r * r;
        case MagnetShape::tube: {
            const double ri = inner_diameter / 2.0;
            return kPi * (r * r - ri * ri) * length;
        }
    }
    return 0.0;
}

double MagnetSpec::bounding_radius() const {
    const double r = diameter / 2.0;
    const double hl = length / 2.0;
    if (shape == MagnetShape::sphere) return r;
    if (shape == MagnetShape::cube) {
        // Half space diagonal of the d x d x length box.
        return 0.5 * std::sqrt(2.0 * diameter * diameter + length * length);
    }
    return std::sqrt(r * r + hl * hl);
}

MagnetSpec MagnetSpec::cylinder_spec(double d, double l, double br) {
    return MagnetSpec{MagnetShape::cylinder, d, l, 0.0, br, 1.0};
}
MagnetSpec MagnetSpec::cube_spec(double edge, double br) {
    return MagnetSpec{MagnetShape::cube, edge, edge, 0.0, br, 1.0};
}
MagnetSpec MagnetSpec::sphere_spec(double d, double br) {
    return MagnetSpec{MagnetShape::sphere, d, d, 0.0, br, 1.0};
}
MagnetSpec MagnetSpec::tube_spec(double d, double l, double bore, double br) {
    return MagnetSpec{MagnetShape::tube, d, l, bore, br, 1.0};
}

bool point_inside_or_near(const MagnetSpec& m, const Vec3& p, double clearance) {
    const double r = m.diameter / 2.0;
    const double hl = m.length / 2.0;
    const double rho = std::hypot(p.x(), p.y());
    switch (m.shape) {
        case MagnetShape::sphere:
            return p.norm() <= r + clearance;
        case MagnetShape::cube:
            return std::abs(p.x()) <= r + clearance && std::abs(p.y()) <= r + clearance &&
                   std::abs(p.z()) <= hl + clearance;
        case MagnetShape::cylinder:
            return rho <= r + clearance && std::abs(p.z()) <= hl + clearance;
        case MagnetShape::tube:
            return rho <= r + clearance && rho + clearance >= m.inner_diameter / 2.0 &&
                   std::abs(p.z()) <= hl + clearance;
    }
    return false;
}

double cel(double kc, double p, double c, double s) {
    // Bulirsch (1969) iterative form; converges quadratically.
    if (kc == 0.0) return std::numeric_limits<double>::quiet_NaN();
    constexpr double errtol = 1e-11;
    double k = std::abs(kc);
    double em = 1.0;
    if (p > 0.0) {
        p = std::sqrt(p);
        s = s / p;
    } else {
        double f = kc * kc;
        double q = 1.0 - f;
        double g = 1.0 - p;
        f = f - p;
        q = q * (s - c * p);
        p = std::sqrt(f / g);
        c = (c - s) / g;
        s = -q / (g * g * p) + c * p;
    }
    double f = c;
    c = c + s / p;
    double g = k / p;
    s = 2.0 * (s + f * g);
    p = g + p;
    g = em;
    em = k + em;
    double kk = k;
    while (std::abs(g - k) > g * errtol) {
        k = 2.0 * std::sqrt(kk);
        kk = k * em;
        f = c;
        c = c + s / p;
        g = kk / p;
        s = 2.0 * (s + f * g);
        p = g + p;
        g = em;
        em = k + em;
    }
    return kPi / 2.0 * (s + c * em) / (em * (em + p));
}

namespace {

// Derby & Olbert closed form for an axially magnetized cylinder of radius a
// and half-length b, evaluated at cylindrical (rho, z). Returns (B_rho, B_z).
std::pair<double, double> cylinder_field_cyl(double br_eff, double a, double b, double rho,
                                             double z) {
    // The gamma^2 parameter of cel vanishes at rho == a; nudge off the wall
    // extension line. Relative error introduced is ~1e-9.
    if (std::abs(rho - a) < 1e-9 * a) rho = a * (1.0 + 1e-9);

    const double b0 = br_eff / kPi;
    const double zp = z + b;
    const double zm = z - b;
    const double rp = rho + a;
    const double rm = rho - a;  // may be negative
    const double sp = std::sqrt(zp * zp + rp * rp);
    const double sm = std::sqrt(zm * zm + rp * rp);
    const double alpha_p = a / sp;
    const double alpha_m = a / sm;
    const double beta_p = zp / sp;
    const double beta_m = zm / sm;
    const double gamma = (a - rho) / (a + rho);
    const double kp = std::sqrt((zp * zp + rm * rm) / (zp * zp + rp * rp));
    const double km = std::sqrt((zm * zm + rm * rm) / (zm * zm + rp * rp));

    const double b_rho = b0 * (alpha_p * cel(kp, 1.0, 1.0, -1.0) - alpha_m * cel(km, 1.0, 1.0, -1.0));
    const double b_z = b0 * a / (a + rho) *
                       (beta_p * cel(kp, gamma * gamma, 1.0, gamma) -
                        beta_m * cel(km, gamma * gamma, 1.0, gamma));
    return {b_rho, b_z};
}

Vec3 cylinder_field_local(double br_eff, double a, double b, const Vec3& p) {
    const double rho = std::hypot(p.x(), p.y());
    auto [b_rho, b_z] = cylinder_field_cyl(br_eff, a, b, rho, p.z());
    if (rho < 1e-15) return Vec3(0.0, 0.0, b_z);
    return Vec3(b_rho * p.x() / rho, b_rho * p.y() / rho, b_z);
}

// Uniformly magnetized rectangular prism via the surface-charge closed form.
// Half dimensions (a, b, c); magnetization along +z.
Vec3 prism_field_local(double br_eff, double a, double b, double c, const Vec3& p) {
    const double u[2] = {p.x() + a, p.x() - a};
    const double v[2] = {p.y() + b, p.y() - b};
    const double w[2] = {p.z() - c, p.z() + c};  // top face first, bottom second

    Vec3 out = Vec3::Zero();
    double face_sign = 1.0;
    for (int f = 0; f < 2; ++f, face_sign = -face_sign) {
        const double wf = w[f];
        double ix = 0.0, iy = 0.0, iz = 0.0;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double r = std::sqrt(u[i] * u[i] + v[j] * v[j] + wf * wf);
                const double corner_sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                ix -= corner_sign * std::log(v[j] + r);
                iy -= corner_sign * std::log(u[i] + r);
                iz += corner_sign * std::atan2(u[i] * v[j], wf * r);
            }
        }
        out.x() += face_sign * ix;
        out.y() += face_sign * iy;
        out.z() += face_sign * iz;
    }
    return out * (br_eff / (4.0 * kPi));
}

// Uniformly magnetized sphere: exactly a point dipole outside.
Vec3 sphere_field_local(double br_eff, double radius, const Vec3& p) {
    const double r = p.norm();
    const Vec3 rhat = p / r;
    const double coeff = br_eff * radius * radius * radius / 3.0;
    const Vec3 mhat(0.0, 0.0, 1.0);
    return coeff * (3.0 * mhat.dot(rhat) * rhat - mhat) / (r * r * r);
}

}  // namespace

double cylinder_on_axis(double br_eff, double radius, double length, double z) {
    const double zl = z + length;
    return br_eff / 2.0 *
           (zl / std::sqrt(zl * zl + radius * radius) - z / std::sqrt(z * z + radius * radius));
}

FieldVector field_local(const MagnetSpec& magnet, const Vec3& p) {
    magnet.validate();
    if (!p.allFinite()) throw std::invalid_argument("field: non-finite observation point");
    if (point_inside_or_near(magnet, p))
        throw std::domain_error("field: observation point inside or on the magnet body");

    const double br = magnet.effective_remanence();
    const double a = magnet.diameter / 2.0;
    const double hl = magnet.length / 2.0;
    switch (magnet.shape) {
        case MagnetShape::cylinder:
            return FieldVector(cylinder_field_local(br, a, hl, p));
        case MagnetShape::cube:
            return FieldVector(prism_field_local(br, a, a, hl, p));
        case MagnetShape::sphere:
            return FieldVector(sphere_field_local(br, a, p));
        case MagnetShape::tube: {
            const Vec3 outer = cylinder_field_local(br, a, hl, p);
            const Vec3 inner = cylinder_field_local(br, magnet.inner_diameter / 2.0, hl, p);
            return FieldVector(outer - inner);
        }
    }
    throw std::logic_error("field: unhandled shape");
}

FieldVector field(const MagnetSpec& magnet, const Pose& magnet_pose, const Vec3& point) {
    if (!point.allFinite()) throw std::invalid_argument("field: non-finite observation point");
    const Vec3 local = magnet_pose.to_local(point);
    const FieldVector b_local = field_local(magnet, local);
    return b_local.rotated(magnet_pose.rotation);
}

FieldVector field_of_many(std::span<const std::pair<MagnetSpec, Pose>> sources, const Vec3& point) {
    FieldVector total;
    for (const auto& [spec, pose] : sources) total = total + field(spec, pose, point);
    return total;
}

}  // namespace magsense::magnetics
