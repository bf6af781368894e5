// Scratch verification: analytic field vs oracle, and selection physics.
#include <cstdio>

#include "magsense/field_oracle.hpp"
#include "magsense/magnet.hpp"

using namespace magsense;
using namespace magsense::magnetics;

int main() {
    // 1. Analytic vs oracle across shapes at assorted exterior points.
    const MagnetSpec shapes[] = {
        MagnetSpec::cylinder_spec(2.5e-3, 2.5e-3),
        MagnetSpec::cube_spec(2.5e-3),
        MagnetSpec::sphere_spec(2.5e-3),
        MagnetSpec::tube_spec(2.5e-3, 2.5e-3, 1.0e-3),
    };
    const Vec3 pts[] = {
        {0.0, 0.0, 2.75e-3}, {1.0e-3, 0.5e-3, 2.2e-3}, {2.5e-3, 0.0, 0.0},
        {1.8e-3, 1.8e-3, 0.4e-3}, {-2.0e-3, 1.0e-3, -2.0e-3}, {0.3e-3, -0.2e-3, -2.4e-3},
        {5e-3, 4e-3, 3e-3}, {0.0, 2.6e-3, 0.0},
    };
    for (const auto& m : shapes) {
        double worst = 0.0;
        for (const auto& p : pts) {
            if (point_inside_or_near(m, p, 0.4e-3)) continue;
            const Vec3 a = field_local(m, p).tesla;
            const Vec3 o = field_oracle(m, p).tesla;
            const double rel = (a - o).norm() / o.norm();
            if (rel > worst) worst = rel;
        }
        std::printf("%-9s worst rel err vs oracle: %.3e\n", shape_name(m.shape), worst);
    }

    // 2. On-axis closed form check (1.5 mm above the face).
    {
        const auto m = MagnetSpec::cylinder_spec(2.5e-3, 2.5e-3);
        const Vec3 p(0, 0, m.length / 2.0 + 1.5e-3);
        const double bz = field_local(m, p).bz();
        const double ref = cylinder_on_axis(1.2, 1.25e-3, 2.5e-3, 1.5e-3);
        std::printf("on-axis: cel %.9e  closed-form %.9e  rel %.2e\n", bz, ref,
                    std::abs(bz - ref) / std::abs(ref));
    }

    // 3. Far field vs dipole (r = 10 D).
    {
        const auto m = MagnetSpec::cylinder_spec(2.5e-3, 2.5e-3);
        const Vec3 p(17e-3, 9e-3, 11e-3);
        const Vec3 a = field_local(m, p).tesla;
        const double c = m.effective_remanence() * m.volume() / (4.0 * kPi * kMu0) * kMu0;
        const Vec3 rhat = p.normalized();
        const Vec3 dip = c * (3.0 * rhat.z() * rhat - Vec3(0, 0, 1)) / std::pow(p.norm(), 3);
        std::printf("far-field rel diff vs dipole: %.3e\n", (a - dip).norm() / dip.norm());
    }

    // 4. Side-sensor sensitivity vs diameter: argmax check at M_G = 1.5 mm.
    //    Sensor in the midplane at x = -(D/2 + 1.5mm); S = |dBz/dx| there.
    std::printf("\nside-mount dBz/dx at gap 1.5mm (L = 6 mm):\n");
    for (double d_mm = 1.0; d_mm <= 6.01; d_mm += 1.0) {
        const auto m = MagnetSpec::cylinder_spec(d_mm * 1e-3, 6e-3);
        const double s = m.diameter / 2.0 + 1.5e-3;
        const double h = 1e-7;
        const double bz_p = field_local(m, Vec3(-(s + h), 0, 0)).bz();
        const double bz_m = field_local(m, Vec3(-(s - h), 0, 0)).bz();
        const double grad = (bz_p - bz_m) / (2 * h);
        const double bz0 = field_local(m, Vec3(-s, 0, 0)).bz();
        std::printf("  D=%.1f mm: |dBz/dx| = %10.1f G/mm   Bz(nominal) = %8.1f G\n", d_mm,
                    std::abs(grad) * 1e4 * 1e-3, bz0 * 1e4);
    }
    std::printf("\nsame, L = 2.5 mm:\n");
    for (double d_mm = 1.0; d_mm <= 6.01; d_mm += 1.0) {
        const auto m = MagnetSpec::cylinder_spec(d_mm * 1e-3, 2.5e-3);
        const double s = m.diameter / 2.0 + 1.5e-3;
        const double h = 1e-7;
        const double bz_p = field_local(m, Vec3(-(s + h), 0, 0)).bz();
        const double bz_m = field_local(m, Vec3(-(s - h), 0, 0)).bz();
        const double grad = (bz_p - bz_m) / (2 * h);
        const double bz0 = field_local(m, Vec3(-s, 0, 0)).bz();
        std::printf("  D=%.1f mm: |dBz/dx| = %10.1f G/mm   Bz(nominal) = %8.1f G\n", d_mm,
                    std::abs(grad) * 1e4 * 1e-3, bz0 * 1e4);
    }

    // 5. Neighbor leak: mirrored magnet (D=3, L=6) at 1.5 mm face gap; sensor in
    //    both midplanes. x component should vanish, z is the state bias.
    {
        const auto m = MagnetSpec::cylinder_spec(3e-3, 6e-3);
        const double s = m.diameter / 2.0 + 1.5e-3;
        const Vec3 sensor(-s, 0, 0);
        Pose neighbor_pose;
        neighbor_pose.translation = Vec3(m.diameter + 1.5e-3, 0, 0);
        neighbor_pose.rotation = Pose::rot_x(kPi);  // mirror flips magnetization
        const Vec3 b = field(m, neighbor_pose, sensor).gauss();
        std::printf("\nneighbor leak at sensor [G]: Bx=%.4e By=%.4e Bz=%.3f\n", b.x(), b.y(), b.z());
    }

    // 6. On-axis-below arrangement for comparison (study geometry, Fig-style):
    std::printf("\non-axis mount |dBx/dx| at face gap 1.5mm (L = 2.5 mm):\n");
    for (double d_mm : {1.0, 2.0, 3.0, 4.0, 5.0}) {
        const auto m = MagnetSpec::cylinder_spec(d_mm * 1e-3, 2.5e-3);
        const double z = -(m.length / 2.0 + 1.5e-3);
        const double h = 1e-7;
        const double bx_p = field_local(m, Vec3(h, 0, z)).bx();
        const double bx_m = field_local(m, Vec3(-h, 0, z)).bx();
        const double grad = (bx_p - bx_m) / (2 * h);
        const double bz0 = field_local(m, Vec3(0, 0, z)).bz();
        std::printf("  D=%.1f mm: |dBx/dx| = %10.1f G/mm   Bz(nominal) = %8.1f G\n", d_mm,
                    std::abs(grad) * 1e4 * 1e-3, bz0 * 1e4);
    }
    return 0;
}
