#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace magsense {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kMu0 = 4.0e-7 * 3.14159265358979323846;  // vacuum permeability [T m/A]
constexpr double kPi = 3.14159265358979323846;
constexpr double kGaussPerTesla = 1.0e4;

inline double tesla_to_gauss(double t) { return t * kGaussPerTesla; }
inline double gauss_to_tesla(double g) { return g / kGaussPerTesla; }

/// Rigid transform: world point = rotation * local point + translation.
struct Pose {
    Vec3 translation = Vec3::Zero();
    Mat3 rotation = Mat3::Identity();

    // Orthonormality check to 1e-12, det +1.
    void validate() const {
        const Mat3 err = rotation.transpose() * rotation - Mat3::Identity();
        if (err.cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("Pose: rotation matrix not orthonormal");
        if (std::abs(rotation.determinant() - 1.0) > 1e-12)
            throw std::invalid_argument("Pose: rotation determinant must be +1");
        if (!translation.allFinite())
            throw std::invalid_argument("Pose: non-finite translation");
    }

    Vec3 to_world(const Vec3& local) const { return rotation * local + translation; }
    Vec3 to_local(const Vec3& world) const { return rotation.transpose() * (world - translation); }

    static Pose identity() { return Pose{}; }
    static Pose at(const Vec3& t) { return Pose{t, Mat3::Identity()}; }
    // Rotation about +x by angle [rad].
    static Mat3 rot_x(double a) {
        Mat3 r;
        r << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
        return r;
    }
    static Mat3 rot_y(double a) {
        Mat3 r;
        r << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
        return r;
    }
    static Mat3 rot_z(double a) {
        Mat3 r;
        r << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
        return r;
    }
};

/// Magnetic flux density at a point, SI tesla. gauss() converts (1 T = 1e4 G).
struct FieldVector {
    Vec3 tesla = Vec3::Zero();

    FieldVector() = default;
    explicit FieldVector(const Vec3& t) : tesla(t) {}
    FieldVector(double bx, double by, double bz) : tesla(bx, by, bz) {}

    double bx() const { return tesla.x(); }
    double by() const { return tesla.y(); }
    double bz() const { return tesla.z(); }
    Vec3 gauss() const { return tesla * kGaussPerTesla; }
    double norm() const { return tesla.norm(); }
    bool all_finite() const { return tesla.allFinite(); }

    FieldVector rotated(const Mat3& r) const { return FieldVector(r * tesla); }
    FieldVector operator+(const FieldVector& o) const { return FieldVector(tesla + o.tesla); }
    FieldVector operator-(const FieldVector& o) const { return FieldVector(tesla - o.tesla); }
    FieldVector operator*(double s) const { return FieldVector(tesla * s); }
};

}  // namespace magsense
