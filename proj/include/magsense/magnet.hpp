#pragma once

#include <span>
#include <utility>

#include "magsense/geometry.hpp"

namespace magsense::magnetics {

enum class MagnetShape { cylinder, cube, sphere, tube };

const char* shape_name(MagnetShape s);
MagnetShape shape_from_name(const std::string& name);

/// Axially magnetized permanent magnet. The magnetization axis is local +z;
/// diameter is the lateral extent (cube edge for cubes), length the axial one.
struct MagnetSpec {
    MagnetShape shape = MagnetShape::cylinder;
    double diameter = 0.0;        // M_D [m]
    double length = 0.0;          // M_L [m]
    double inner_diameter = 0.0;  // tube bore [m], 0 for other shapes
    double remanence = 1.2;       // Br [T]
    double demag_multiplier = 1.0;

    void validate() const;

    // Effective remanence after the demagnetization knockdown.
    double effective_remanence() const { return remanence * demag_multiplier; }
    double volume() const;
    // Equivalent point-dipole moment m = Br_eff * V / mu0 [A m^2].
    double dipole_moment() const { return effective_remanence() * volume() / kMu0; }
    // Radius of the bounding sphere, for inside/outside checks.
    double bounding_radius() const;

    static MagnetSpec cylinder_spec(double d, double l, double br = 1.2);
    static MagnetSpec cube_spec(double edge, double br = 1.2);
    static MagnetSpec sphere_spec(double d, double br = 1.2);
    static MagnetSpec tube_spec(double d, double l, double bore, double br = 1.2);
};

// Signed distance heuristics used by the exterior precondition.
bool point_inside_or_near(const MagnetSpec& m, const Vec3& local_point, double clearance = 1e-6);

/// Exact exterior flux density of the magnet at `point` (world frame, tesla).
/// Throws std::domain_error when the point is inside or on the body.
FieldVector field(const MagnetSpec& magnet, const Pose& magnet_pose, const Vec3& point);

/// Sum of fields of several sources.
FieldVector field_of_many(std::span<const std::pair<MagnetSpec, Pose>> sources, const Vec3& point);

/// Field in the magnet's local frame for a local observation point.
FieldVector field_local(const MagnetSpec& magnet, const Vec3& local_point);

// Closed-form on-axis flux density of an axially magnetized cylinder at
// distance z above the near face (z >= 0).
double cylinder_on_axis(double br_eff, double radius, double length, double z_above_face);

// Bulirsch's general complete elliptic integral cel(kc, p, c, s).
double cel(double kc, double p, double c, double s);

}  // namespace magsense::magnetics
