#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "qst/amplitude_dynamics.hpp"

namespace qst {

// Pure qubit state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct QubitState {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2pi)

    std::complex<double> amplitude0() const;
    std::complex<double> amplitude1() const;
};

// Thrown when a post-selected protocol conditions on an impossible outcome
// (zero success probability).
struct ProtocolAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WeakMeasurementResult {
    std::complex<double> amplitude0;
    std::complex<double> amplitude1;
    double success_probability;
};

// Partial collapse of strength p in [0, 1) on the sender: the |1> component
// is scaled by sqrt(1-p), then the state is renormalized.
WeakMeasurementResult weak_measurement(const QubitState& state, double p);

// q = 1 - (1-p)|f|^2. Lies in [0, 1] whenever |f| <= 1; |f| > 1 is rejected
// since it indicates a broken amplitude solver.
double optimal_qmr_strength(double p, std::complex<double> transfer_amplitude);

struct ProtocolParams {
    double wm_strength = 0.0;   // p in [0, 1)
    int target_site = 1;        // r
    int target_generation = 1;  // n with 2^{n-1} <= r <= 2^n - 1
    double qmr_strength = 0.0;  // q, optimal for the (p, f) in use
};

// Builds params with the generation derived from the site and the optimal
// reversal strength for the given transfer amplitude.
ProtocolParams optimal_protocol(double p, int target_site,
                                std::complex<double> transfer_amplitude);

// f = C_n(t_k) / sqrt(2^{n-1}): the amplitude for the excitation to sit on
// the specific target site within generation n.
std::complex<double> transfer_amplitude(const AmplitudeTrajectory& traj,
                                        int target_site, std::size_t time_index);

struct TransferOutcome {
    Eigen::Matrix2cd reduced_dm;        // target qubit, basis {|0>, |1>}
    double success_probability;         // both partial measurements succeed
    double fidelity;                    // against the original input state
    std::complex<double> transfer_amp;  // f used for this outcome
};

// Full pipeline at one grid time: weak measurement, evolution (already folded
// into the trajectory), optimal reversal on the target, phase correction,
// partial trace down to the target qubit.
TransferOutcome transfer(const QubitState& state, const ProtocolParams& params,
                         const AmplitudeTrajectory& traj, double t);

// Same pipeline with the transfer amplitude supplied directly.
TransferOutcome transfer_with_amplitude(const QubitState& state,
                                        const ProtocolParams& params,
                                        std::complex<double> f);

// Haar average of the post-selected fidelity in closed form,
//   F(x) = 1/2 + 1/x - ln(1+x)/x^2,  x = (1-p)(1-|f|^2),
// continued by its series through x = 0 (where F -> 1).
double average_fidelity_closed(double p, double f_abs);

// Bloch-sphere quadrature of the state-specific fidelity produced by the
// constructed reduced density matrix; independent check of the closed form.
double average_fidelity_numeric(double p, double f_abs);

// Haar-averaged fidelity without any measurements: 1/2 + |f|/3 + |f|^2/6.
double average_fidelity_natural(double f_abs);

// Haar average of the success probability:
//   (1-p)|f|^2 (2 + (1-p)(1-|f|^2)) / 2.
double average_success_probability(double p, double f_abs);

}  // namespace qst
