#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qst/bath.hpp"
#include "qst/tree_model.hpp"

namespace qst {

// Column-state amplitudes C_m(t_k) on a monotone time grid starting at 0,
// together with the aggregate weight leaked into the reservoirs. Individual
// reservoir-mode amplitudes are never tracked; only their total matters for
// every observable. Amplitudes live in the frame rotating at the qubit
// frequency: the uniform on-site phase cancels in every reported observable
// (the protocol's phase correction absorbs what remains).
struct AmplitudeTrajectory {
    std::vector<double> times;
    Eigen::MatrixXcd amplitudes;        // N rows, one column per grid point
    std::vector<double> leaked_weight;  // 1 - sum_m |C_m(t_k)|^2

    int generations() const { return static_cast<int>(amplitudes.rows()); }
    std::size_t size() const { return times.size(); }

    // generation is 1-based, like site indexing
    std::complex<double> amplitude(int generation, std::size_t k) const;

    // index of the grid point equal to t (within tol); throws if absent
    std::size_t index_of_time(double t, double tol = 1e-9) const;
};

std::vector<double> linspace(double t0, double t1, std::size_t n);

// Orthogonal sine transform S_{ml} = sqrt(2/(N+1)) sin(m*l*pi/(N+1)); its own
// inverse, and it diagonalizes the uniform chain.
Eigen::MatrixXd sine_transform_matrix(int generations);

// Closed-form chain-mode amplitude: inverse Laplace transform with two simple
// poles per mode; the degenerate double-pole case goes through its
// sinh(z)/z -> 1 limit. Mode index is 1-based.
std::complex<double> chain_mode_amplitude_analytic(int mode, double t,
                                                   const TreeSpec& spec,
                                                   const BathSpec& bath);

// C_m(t) via the sine transform of the closed-form mode amplitudes, starting
// from C_1(0) = 1, C_m(0) = 0 otherwise.
AmplitudeTrajectory amplitudes_analytic(const std::vector<double>& t_grid,
                                        const TreeSpec& spec,
                                        const BathSpec& bath);

// Independent route #1: the memory-kernel convolution recast exactly as one
// auxiliary variable per chain mode,
//   dC_m/dt = -i sqrt(2) nu (C_{m-1} + C_{m+1}) - z_m
//   dz_m/dt = -lambda z_m + (gamma lambda / 2) C_m,   z_m(0) = 0,
// integrated with an adaptive Dormand-Prince 5(4) stepper
// (boost::numeric::odeint) at the given local tolerance. Output grid points
// are hit exactly; internal steps are independent of the grid.
AmplitudeTrajectory amplitudes_pseudomode_oracle(const std::vector<double>& t_grid,
                                                 const TreeSpec& spec,
                                                 const BathSpec& bath,
                                                 double tol = 1e-10);

// Independent route #2: all 2^N - 1 site amplitudes, each with its own
// auxiliary reservoir variable, projected onto the column basis afterwards.
// Throws if the integrated state develops weight outside the column span
// (residual above 1e-8) and rejects generations > 10 as a resource guard.
AmplitudeTrajectory amplitudes_fulltree_oracle(const std::vector<double>& t_grid,
                                               const TreeSpec& spec,
                                               const BathSpec& bath,
                                               double tol = 1e-10);

// Raw site amplitudes (D rows) behind the full-tree route.
Eigen::MatrixXcd fulltree_site_amplitudes(const std::vector<double>& t_grid,
                                          const TreeSpec& spec,
                                          const BathSpec& bath,
                                          double tol = 1e-10);

}  // namespace qst
