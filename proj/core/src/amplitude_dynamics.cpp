#include "qst/amplitude_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/numeric/odeint.hpp>

namespace qst {

namespace {

using cplx = std::complex<double>;
using state_type = std::vector<cplx>;
constexpr cplx kI{0.0, 1.0};

void require_grid(const std::vector<double>& t) {
    if (t.empty()) throw std::invalid_argument("time grid is empty");
    if (t.front() != 0.0) throw std::invalid_argument("time grid must start at t = 0");
    for (std::size_t k = 1; k < t.size(); ++k)
        if (!(t[k] > t[k - 1]))
            throw std::invalid_argument("time grid must be strictly increasing");
}

AmplitudeTrajectory make_trajectory(const std::vector<double>& times, Eigen::MatrixXcd amps) {
    AmplitudeTrajectory traj;
    traj.times = times;
    traj.amplitudes = std::move(amps);
    traj.leaked_weight.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double norm2 = traj.amplitudes.col(static_cast<Eigen::Index>(k)).squaredNorm();
        if (norm2 > 1.0 + 1e-6)
            throw std::logic_error("trajectory norm grew above 1; the solver is broken");
        traj.leaked_weight[k] = 1.0 - norm2;
    }
    return traj;
}

// cos((N - m + 1) pi / (N + 1)), the mode factor attached to mode m; equals
// -cos(m pi / (N + 1))
double mode_cosine(int mode, int n) {
    return std::cos((n - mode + 1) * std::numbers::pi / (n + 1));
}

cplx mode_amplitude(int mode, double t, int n, double nu, double gamma, double lambda) {
    const double cosm = mode_cosine(mode, n);
    const cplx rot = 2.0 * std::numbers::sqrt2 * nu * cosm * kI;
    const cplx beta = lambda + rot;      // weights the sinh term
    const cplx beta_env = lambda - rot;  // decay/rotation envelope exponent
    const cplx delta = std::sqrt(beta * beta - 2.0 * gamma * lambda);
    const double prefactor =
        std::sqrt(2.0 / (n + 1)) * std::sin(mode * std::numbers::pi / (n + 1));

    if (std::abs(delta) * t < 1e-3) {
        // near-degenerate poles: even series in delta, sinh(z)/z -> 1
        const cplx z = 0.5 * delta * t;
        const cplx z2 = z * z;
        const cplx cosh_z = 1.0 + z2 * (0.5 + z2 / 24.0);
        const cplx sinh_over_delta = 0.5 * t * (1.0 + z2 * (1.0 / 6.0 + z2 / 120.0));
        return prefactor * std::exp(-0.5 * beta_env * t) * (cosh_z + beta * sinh_over_delta);
    }
    // two simple poles, both with non-positive real part; assembling the
    // residues directly keeps every exponential bounded for large lambda*t
    const cplx p1 = 0.5 * (-beta_env + delta);
    const cplx p2 = 0.5 * (-beta_env - delta);
    const cplx w = beta / delta;
    return prefactor * 0.5 * ((1.0 + w) * std::exp(p1 * t) + (1.0 - w) * std::exp(p2 * t));
}

// Integrates dy/dt = rhs(y) with an adaptive Dormand-Prince 5(4) pair,
// recording the first `rows` components at every grid point.
template <typename Rhs>
Eigen::MatrixXcd integrate_on_grid(Rhs rhs, state_type y0, int rows,
                                   const std::vector<double>& t_grid, double tol,
                                   const char* what) {
    namespace ode = boost::numeric::odeint;
    Eigen::MatrixXcd out(rows, static_cast<Eigen::Index>(t_grid.size()));
    Eigen::Index col = 0;
    auto observer = [&](const state_type& y, double) {
        for (int m = 0; m < rows; ++m) out(m, col) = y[m];
        ++col;
    };
    const double dt0 = std::min(1e-3, t_grid.back() / 1000.0);
    try {
        ode::integrate_times(ode::make_controlled<ode::runge_kutta_dopri5<state_type>>(tol, tol),
                             rhs, y0, t_grid.begin(), t_grid.end(), dt0, observer);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(what) +
                                 ": step-size control could not meet the tolerance (" +
                                 e.what() + ")");
    }
    return out;
}

}  // namespace

std::complex<double> AmplitudeTrajectory::amplitude(int generation, std::size_t k) const {
    if (generation < 1 || generation > generations())
        throw std::invalid_argument("generation index out of range");
    if (k >= size()) throw std::invalid_argument("time index out of range");
    return amplitudes(generation - 1, static_cast<Eigen::Index>(k));
}

std::size_t AmplitudeTrajectory::index_of_time(double t, double tol) const {
    const auto it = std::lower_bound(times.begin(), times.end(), t - tol);
    if (it != times.end() && std::abs(*it - t) <= tol)
        return static_cast<std::size_t>(it - times.begin());
    throw std::invalid_argument("t = " + std::to_string(t) + " is not a grid point");
}

std::vector<double> linspace(double t0, double t1, std::size_t n) {
    if (n < 2) throw std::invalid_argument("linspace needs at least 2 points");
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n - 1);
    out.back() = t1;
    return out;
}

Eigen::MatrixXd sine_transform_matrix(int generations) {
    if (generations < 1) throw std::invalid_argument("sine transform needs N >= 1");
    const int n = generations;
    const double norm = std::sqrt(2.0 / (n + 1));
    Eigen::MatrixXd s(n, n);
    for (int m = 1; m <= n; ++m)
        for (int l = 1; l <= n; ++l)
            s(m - 1, l - 1) = norm * std::sin(m * l * std::numbers::pi / (n + 1));
    return s;
}

std::complex<double> chain_mode_amplitude_analytic(int mode, double t,
                                                   const TreeSpec& spec,
                                                   const BathSpec& bath) {
    spec.validate();
    bath.validate();
    if (mode < 1 || mode > spec.generations)
        throw std::invalid_argument("mode index out of range");
    if (t < 0.0) throw std::invalid_argument("time must be >= 0");
    return mode_amplitude(mode, t, spec.generations, spec.coupling,
                          bath.coupling_constant, bath.spectral_width);
}

AmplitudeTrajectory amplitudes_analytic(const std::vector<double>& t_grid,
                                        const TreeSpec& spec, const BathSpec& bath) {
    spec.validate();
    bath.validate();
    require_grid(t_grid);
    const int n = spec.generations;
    Eigen::MatrixXcd modes(n, static_cast<Eigen::Index>(t_grid.size()));
    for (int l = 1; l <= n; ++l)
        for (std::size_t k = 0; k < t_grid.size(); ++k)
            modes(l - 1, static_cast<Eigen::Index>(k)) =
                mode_amplitude(l, t_grid[k], n, spec.coupling, bath.coupling_constant,
                               bath.spectral_width);
    Eigen::MatrixXcd amps = sine_transform_matrix(n) * modes;
    return make_trajectory(t_grid, std::move(amps));
}

AmplitudeTrajectory amplitudes_pseudomode_oracle(const std::vector<double>& t_grid,
                                                 const TreeSpec& spec,
                                                 const BathSpec& bath, double tol) {
    spec.validate();
    bath.validate();
    require_grid(t_grid);
    const int n = spec.generations;
    const double hop = std::numbers::sqrt2 * spec.coupling;
    const double lambda = bath.spectral_width;
    const double pump = 0.5 * bath.coupling_constant * lambda;  // kernel value at 0

    // y[0..n-1] = C_m, y[n..2n-1] = z_m (memory integrals)
    auto rhs = [n, hop, lambda, pump](const state_type& y, state_type& dy, double) {
        for (int m = 0; m < n; ++m) {
            const cplx left = m > 0 ? y[m - 1] : cplx{};
            const cplx right = m + 1 < n ? y[m + 1] : cplx{};
            dy[m] = -kI * hop * (left + right) - y[n + m];
            dy[n + m] = -lambda * y[n + m] + pump * y[m];
        }
    };
    state_type y0(2 * n, cplx{});
    y0[0] = 1.0;
    Eigen::MatrixXcd amps = integrate_on_grid(rhs, std::move(y0), n, t_grid, tol,
                                              "pseudomode integration");
    return make_trajectory(t_grid, std::move(amps));
}

Eigen::MatrixXcd fulltree_site_amplitudes(const std::vector<double>& t_grid,
                                          const TreeSpec& spec, const BathSpec& bath,
                                          double tol) {
    spec.validate();
    bath.validate();
    require_grid(t_grid);
    if (spec.generations > 10)
        throw std::invalid_argument("full-tree route rejects generations > 10 (resource guard)");
    const int d = spec.site_count();
    const double nu = spec.coupling;
    const double lambda = bath.spectral_width;
    const double pump = 0.5 * bath.coupling_constant * lambda;

    // y[0..d-1] = site amplitudes (site j at y[j-1]), y[d..2d-1] = per-site
    // memory integrals; every site talks to its parent and children only
    auto rhs = [d, nu, lambda, pump](const state_type& y, state_type& dy, double) {
        for (int j = 1; j <= d; ++j) {
            cplx sum{};
            if (j >= 2) sum += y[j / 2 - 1];
            if (2 * j <= d) sum += y[2 * j - 1];
            if (2 * j + 1 <= d) sum += y[2 * j];
            dy[j - 1] = -kI * nu * sum - y[d + j - 1];
            dy[d + j - 1] = -lambda * y[d + j - 1] + pump * y[j - 1];
        }
    };
    state_type y0(2 * d, cplx{});
    y0[0] = 1.0;
    return integrate_on_grid(rhs, std::move(y0), d, t_grid, tol, "full-tree integration");
}

AmplitudeTrajectory amplitudes_fulltree_oracle(const std::vector<double>& t_grid,
                                               const TreeSpec& spec,
                                               const BathSpec& bath, double tol) {
    const Eigen::MatrixXcd sites = fulltree_site_amplitudes(t_grid, spec, bath, tol);
    const int n = spec.generations;
    Eigen::MatrixXcd amps(n, sites.cols());
    double worst_residual = 0.0;
    for (Eigen::Index k = 0; k < sites.cols(); ++k) {
        Eigen::VectorXcd residual = sites.col(k);
        for (int m = 1; m <= n; ++m) {
            const int first = spec.first_site_of(m);
            const double norm = std::sqrt(static_cast<double>(spec.generation_size(m)));
            cplx acc{};
            for (int j = first; j < 2 * first; ++j) acc += residual(j - 1);
            const cplx column_amp = acc / norm;
            amps(m - 1, k) = column_amp;
            for (int j = first; j < 2 * first; ++j) residual(j - 1) -= column_amp / norm;
        }
        worst_residual = std::max(worst_residual, residual.norm());
    }
    if (worst_residual > 1e-8)
        throw std::runtime_error(
            "full-tree state left the column span (residual " +
            std::to_string(worst_residual) + "); the generation symmetry is broken");
    return make_trajectory(t_grid, std::move(amps));
}

}  // namespace qst
