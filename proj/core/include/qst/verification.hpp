#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qst::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    double observed = 0.0;  // worst measured quantity
    double bound = 0.0;     // gate it was compared against
    std::string detail;
};

// General spin-flip concurrence from the eigenvalues of
// rho (sy x sy) conj(rho) (sy x sy); deliberately independent of the X-state
// shortcut it vouches for.
double wootters_concurrence(const Eigen::Matrix4cd& rho);

// Analytic, pseudomode and full-tree amplitudes agree pointwise on
// t in [0, t_max] for every (N, gamma, lambda) combination.
CheckResult check_cross_oracle(const std::vector<int>& generations,
                               const std::vector<double>& gammas,
                               const std::vector<double>& lambdas,
                               double nu, double t_max, std::size_t steps,
                               double tol);

// Bloch-sphere quadrature of the constructed fidelity against the closed
// form on a (p, |f|^2) grid.
CheckResult check_fidelity_quadrature(double tol);

// Averaged success probability against the Bloch average of the
// state-specific one.
CheckResult check_success_probability_bloch(double tol);

// Limit values of the closed forms.
std::vector<CheckResult> check_analytic_limits();

// X-state concurrence against the general spin-flip value on randomized
// protocol-shaped states.
CheckResult check_concurrence_oracle(int n_states, std::uint64_t seed, double tol);

// Invariant-subspace residual, sine-transform orthogonality, closed-system
// norm conservation, leaked-weight monotonicity.
std::vector<CheckResult> check_structural(int max_generations);

// Qualitative curve-family checks at nu = 1, lambda = 0.5, gamma = 1 for
// N = 4 and N = 8.
std::vector<CheckResult> check_figure_trends();

// Concurrence/success monotonicity in p and late-time decay of the
// natural-evolution concurrence.
std::vector<CheckResult> check_ed_trends();

// Two runs of every named preset produce byte-identical CSV.
CheckResult check_determinism();

// The oracle-equivalence suites (cross-oracle, fidelity quadrature, success
// average, analytic limits, concurrence oracle, structural checks).
std::vector<CheckResult> run_all(std::uint64_t seed);

}  // namespace qst::verify
