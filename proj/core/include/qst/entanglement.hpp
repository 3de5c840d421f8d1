#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qst/transfer_protocol.hpp"

namespace qst {

// Two-qubit density matrix of the idle qubit 0 and the target qubit r in the
// computational basis {|0,0>, |0,1>, |1,0>, |1,1>}. States produced here are
// X-shaped with an empty |1,1> population.
struct TwoQubitState {
    Eigen::Matrix4cd matrix;

    // Hermitian, unit trace, positive semidefinite, X-shaped, empty |1,1>
    void validate(double tol = 1e-9) const;
};

// Entanglement distribution: a shared pair between qubit 0 and the sender,
// weak measurement of strength p on the sender, evolution summarized by the
// transfer amplitude f, reversal of strength q on the target. Every matrix
// element comes from the success-branch amplitudes, normalized by their total
// weight. Throws ProtocolAbort when that weight vanishes.
TwoQubitState distribute(double theta, double phi, double p, double q,
                         std::complex<double> f);

// X-state concurrence 2 max{0, |rho_23| - sqrt(rho_11 rho_44)}.
double concurrence(const TwoQubitState& state);

struct EntanglementOutcome {
    TwoQubitState state;
    double concurrence;
    double success_probability;
};

// distribute() with the optimal reversal strength q = 1 - (1-p)|f|^2.
EntanglementOutcome optimal_ed(double theta, double phi, double p,
                               std::complex<double> f);

// Closed forms used for sweeps. The conditional concurrence is extended by
// continuity through |f| = 0, where the success probability vanishes and
// optimal_ed() would abort.
double optimal_concurrence_closed(double theta, double p, double f_abs);
double optimal_ed_success_probability(double theta, double p, double f_abs);
double natural_concurrence(double theta, double f_abs);

}  // namespace qst
