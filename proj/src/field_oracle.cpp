#include "magsense/field_oracle.hpp"

#include <cmath>
#include <vector>

namespace magsense::magnetics {

namespace {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n.
GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    return rule;
}

// dB contribution of a point charge patch: q * (r - r') / |r - r'|^3.
inline Vec3 charge_kernel(const Vec3& obs, const Vec3& src, double q) {
    const Vec3 d = obs - src;
    const double r2 = d.squaredNorm();
    return q / (r2 * std::sqrt(r2)) * d;
}

// Charged annulus (or full disk when r_in == 0) at height z0, unit charge
// density; radial Gauss-Legendre x periodic trapezoid in angle.
Vec3 annulus_integral(const Vec3& obs, double r_in, double r_out, double z0, int n) {
    const GaussRule g = gauss_legendre(n);
    const int n_phi = 2 * n;
    Vec3 acc = Vec3::Zero();
    const double half = (r_out - r_in) / 2.0;
    const double mid = (r_out + r_in) / 2.0;
    for (int i = 0; i < n; ++i) {
        const double rho = mid + half * g.x[i];
        const double wr = half * g.w[i] * rho;
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * kPi * j / n_phi;
            const Vec3 src(rho * std::cos(phi), rho * std::sin(phi), z0);
            acc += charge_kernel(obs, src, wr * (2.0 * kPi / n_phi));
        }
    }
    return acc;
}

// Charged square [-a,a]^2 at height z0, unit charge density.
Vec3 square_integral(const Vec3& obs, double a, double z0, int n) {
    const GaussRule g = gauss_legendre(n);
    Vec3 acc = Vec3::Zero();
    for (int i = 0; i < n; ++i) {
        const double x = a * g.x[i];
        for (int j = 0; j < n; ++j) {
            const double y = a * g.x[j];
            acc += charge_kernel(obs, Vec3(x, y, z0), a * a * g.w[i] * g.w[j]);
        }
    }
    return acc;
}

// Sphere surface with sigma = cos(theta), radius R.
Vec3 sphere_integral(const Vec3& obs, double radius, int n) {
    const GaussRule g = gauss_legendre(n);
    const int n_phi = 2 * n;
    Vec3 acc = Vec3::Zero();
    for (int i = 0; i < n; ++i) {
        // Substitute c = cos(theta); dA = R^2 dc dphi.
        const double c = g.x[i];
        const double s = std::sqrt(1.0 - c * c);
        const double wt = g.w[i] * radius * radius * c;  // charge density = cos(theta)
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * kPi * j / n_phi;
            const Vec3 src(radius * s * std::cos(phi), radius * s * std::sin(phi), radius * c);
            acc += charge_kernel(obs, src, wt * (2.0 * kPi / n_phi));
        }
    }
    return acc;
}

Vec3 shape_integral(const MagnetSpec& m, const Vec3& p, int n) {
    const double hl = m.length / 2.0;
    const double r = m.diameter / 2.0;
    switch (m.shape) {
        case MagnetShape::cylinder:
            return annulus_integral(p, 0.0, r, hl, n) - annulus_integral(p, 0.0, r, -hl, n);
        case MagnetShape::tube:
            return annulus_integral(p, m.inner_diameter / 2.0, r, hl, n) -
                   annulus_integral(p, m.inner_diameter / 2.0, r, -hl, n);
        case MagnetShape::cube:
            return square_integral(p, r, hl, n) - square_integral(p, r, -hl, n);
        case MagnetShape::sphere:
            return sphere_integral(p, r, n);
    }
    throw std::logic_error("field_oracle: unhandled shape");
}

}  // namespace

FieldVector field_oracle(const MagnetSpec& magnet, const Vec3& p, double rel_tol, int max_order) {
    magnet.validate();
    if (point_inside_or_near(magnet, p))
        throw std::domain_error("field_oracle: observation point inside or on the magnet body");

    const double scale = magnet.effective_remanence() / (4.0 * kPi);
    Vec3 prev = Vec3::Zero();
    bool have_prev = false;
    for (int n = 8; n <= max_order; n *= 2) {
        const Vec3 cur = scale * shape_integral(magnet, p, n);
        if (have_prev) {
            const double diff = (cur - prev).cwiseAbs().maxCoeff();
            const double ref = std::max(cur.cwiseAbs().maxCoeff(), 1e-12);
            if (diff <= rel_tol * ref) return FieldVector(cur);
        }
        prev = cur;
        have_prev = true;
    }
    throw OracleError("field_oracle: quadrature did not converge at max refinement");
}

}  // namespace magsense::magnetics
