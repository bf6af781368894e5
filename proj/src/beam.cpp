#include "magsense/beam.hpp"

#include <cmath>
#include <stdexcept>

namespace magsense::flexure {

void BeamSpec::validate() const {
    material.validate();
    if (!(length > 0.0) || !(thickness > 0.0) || !(width > 0.0))
        throw std::invalid_argument("BeamSpec: dimensions must be positive");
    if (max_deflection_cap < 0.0)
        throw std::invalid_argument("BeamSpec: deflection cap must be non-negative");
}

const char* load_type_name(LoadType t) {
    return t == LoadType::tip_point ? "tip_point" : "distributed_ramp";
}

double tip_slope(double load, const BeamSpec& beam) {
    return load * beam.length * beam.length / (2.0 * beam.flexural_rigidity());
}

double tip_deflection(double load, const BeamSpec& beam) {
    return load * beam.length * beam.length * beam.length / (3.0 * beam.flexural_rigidity());
}

double bending_stress(const BeamSpec& beam, double load, double x) {
    if (x < 0.0 || x > beam.length)
        throw std::domain_error("bending_stress: section outside the beam");
    const double moment = load * (beam.length - x);
    return moment * (beam.thickness / 2.0) / beam.second_moment();
}

double axial_shortening(const BeamState& state) {
    const auto& x = state.x;
    const auto& w = state.w;
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("axial_shortening: need at least 3 grid points");
    // Central-difference slope, one-sided at the ends.
    std::vector<double> slope_sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s;
        if (i == 0)
            s = (w[1] - w[0]) / (x[1] - x[0]);
        else if (i == n - 1)
            s = (w[n - 1] - w[n - 2]) / (x[n - 1] - x[n - 2]);
        else
            s = (w[i + 1] - w[i - 1]) / (x[i + 1] - x[i - 1]);
        slope_sq[i] = s * s;
    }
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        integral += 0.5 * (slope_sq[i] + slope_sq[i + 1]) * (x[i + 1] - x[i]);
    return -0.5 * integral;
}

namespace {

// Cumulative trapezoid of f over the uniform grid, F(0) = 0.
std::vector<double> cumtrapz(const std::vector<double>& f, double h) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (f[i - 1] + f[i]) * h;
    return out;
}

// Moment of the ramp load q(s) = 2P(L-s)/L^2 about section x. With r = L - x
// and s = x + tau: M(x) = int_0^r 2P (r - tau)/L^2 tau dtau = P r^3 / (3 L^2).
double ramp_moment(double load, double length, double x) {
    const double r = length - x;
    return load * r * r * r / (3.0 * length * length);
}

double moment_at(double load, double length, double x, LoadType type) {
    return type == LoadType::tip_point ? load * (length - x) : ramp_moment(load, length, x);
}

}  // namespace

BeamState solve_von_karman(const BeamSpec& beam, double load, const VonKarmanOptions& options) {
    beam.validate();
    if (options.grid_points < 101)
        throw std::invalid_argument("solve_von_karman: need at least 101 grid points");
    if (!std::isfinite(load)) throw std::invalid_argument("solve_von_karman: non-finite load");

    const int n = options.grid_points;
    const double length = beam.length;
    const double h = length / (n - 1);
    const double ei = beam.flexural_rigidity();
    const double ea = beam.material.youngs_modulus * beam.area();

    BeamState st;
    st.load_type = options.load;
    st.x.resize(n);
    st.q.resize(n);
    for (int i = 0; i < n; ++i) {
        st.x[i] = i * h;
        st.q[i] = options.load == LoadType::distributed_ramp
                      ? 2.0 * load * (length - st.x[i]) / (length * length)
                      : 0.0;
    }
    st.w.assign(n, 0.0);
    st.u.assign(n, 0.0);
    st.n.assign(n, 0.0);

    std::vector<double> slope(n, 0.0), curvature(n, 0.0), w_prev(n, 0.0);
    double axial = 0.0;  // uniform membrane force for the pinned-tip case

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        // Bending in moment form with the current membrane force:
        //   EI w'' = M_ext(x) - N * (w(L_end corr)) ... for uniform N the
        //   correction integral is N * (w(L) - w(x)).
        for (int i = 0; i < n; ++i) {
            const double m_ext = moment_at(load, length, st.x[i], options.load);
            const double m_membrane = axial * (st.w[n - 1] - st.w[i]);
            curvature[i] = (m_ext - m_membrane) / ei;
        }
        slope = cumtrapz(curvature, h);
        std::vector<double> w_new = cumtrapz(slope, h);

        double diff = 0.0, scale = 0.0;
        for (int i = 0; i < n; ++i) {
            diff = std::max(diff, std::abs(w_new[i] - st.w[i]));
            scale = std::max(scale, std::abs(w_new[i]));
        }
        w_prev = st.w;
        st.w = std::move(w_new);
        st.iterations = iter;
        st.residual = scale > 0.0 ? diff / scale : diff;

        // Membrane update from the new shape.
        double slope_sq_int = 0.0;
        for (int i = 0; i + 1 < n; ++i)
            slope_sq_int += 0.5 * (slope[i] * slope[i] + slope[i + 1] * slope[i + 1]) * h;
        if (options.axial_tip_pinned) {
            // u(0) = u(L) = 0 forces a uniform tension N = EA/(2L) int (w')^2.
            axial = ea / (2.0 * length) * slope_sq_int;
        } else {
            axial = 0.0;  // axially free tip carries no membrane force
        }

        if (!std::isfinite(st.residual) || scale > 1e6 * length)
            throw SolverError("solve_von_karman: iteration diverged");
        if (st.residual <= options.tolerance) break;
        if (iter == options.max_iterations)
            throw SolverError("solve_von_karman: no convergence after max iterations, residual " +
                              std::to_string(st.residual));
    }

    st.n.assign(n, axial);

    // Axial displacement. Physical membrane relation u' = N/EA - (w')^2 / 2;
    // the literal mode integrates EA u'' = (EI/2)(w')^2 with u(0)=0, u'(L)=0.
    if (!options.paper_literal_stretch) {
        std::vector<double> uprime(n);
        for (int i = 0; i < n; ++i) uprime[i] = axial / ea - 0.5 * slope[i] * slope[i];
        st.u = cumtrapz(uprime, h);
    } else {
        std::vector<double> rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = 0.5 * ei * slope[i] * slope[i] / ea;
        std::vector<double> up = cumtrapz(rhs, h);  // u'(x) - u'(0)
        const double up0 = -up[n - 1];              // enforce u'(L) = 0
        for (int i = 0; i < n; ++i) up[i] += up0;
        st.u = cumtrapz(up, h);
    }
    return st;
}

double tip_slope_ode_oracle(double load, const BeamSpec& beam, int grid_points, LoadType type) {
    // theta(L) = int_0^L M(x)/EI dx, composite Simpson (grid made odd).
    int n = grid_points;
    if (n % 2 == 0) ++n;
    const double h = beam.length / (n - 1);
    const double ei = beam.flexural_rigidity();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m = moment_at(load, beam.length, i * h, type) / ei;
        const double wgt = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += wgt * m;
    }
    return acc * h / 3.0;
}

}  // namespace magsense::flexure
