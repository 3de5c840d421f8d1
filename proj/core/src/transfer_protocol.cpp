#include "qst/transfer_protocol.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

namespace qst {

namespace {

using cplx = std::complex<double>;

// Reduced state of the target qubit on the success branch, with the common
// (1-p)|f|^2 scale divided out. pop0 collects the loss lump: weight still on
// other sites plus weight leaked to the reservoirs, all of it showing the
// target qubit in |0>.
struct TargetComponents {
    double pop0;
    double pop1;
    cplx coh01;
};

TargetComponents target_components(double theta, double phi, double p, double f_abs) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const double f2 = f_abs * f_abs;
    const double lump = s * s * (1.0 - p) * (1.0 - f2);
    return {c * c + lump, s * s, c * s * std::polar(1.0, -phi)};
}

// Fidelity of the normalized reduced state against the original input state.
// The phase correction has already aligned the coherence with phi, so the
// result depends on theta only; phi is kept to exercise the full expression.
double conditional_fidelity(double theta, double phi, double p, double f_abs) {
    const TargetComponents tc = target_components(theta, phi, p, f_abs);
    const double trace = tc.pop0 + tc.pop1;
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const double overlap = c * c * tc.pop0 + s * s * tc.pop1 +
                           2.0 * c * s * std::real(std::polar(1.0, phi) * tc.coh01);
    return overlap / trace;
}

void require_wm_strength(double p) {
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("weak-measurement strength must lie in [0, 1)");
}

}  // namespace

std::complex<double> QubitState::amplitude0() const { return std::cos(0.5 * theta); }

std::complex<double> QubitState::amplitude1() const {
    return std::polar(std::sin(0.5 * theta), phi);
}

WeakMeasurementResult weak_measurement(const QubitState& state, double p) {
    require_wm_strength(p);
    const cplx a0 = state.amplitude0();
    const cplx a1 = state.amplitude1() * std::sqrt(1.0 - p);
    const double prob = std::norm(a0) + std::norm(a1);
    const double inv = 1.0 / std::sqrt(prob);
    return {a0 * inv, a1 * inv, prob};
}

double optimal_qmr_strength(double p, std::complex<double> transfer_amplitude) {
    const double f2 = std::norm(transfer_amplitude);
    if (f2 > 1.0 + 1e-9)
        throw std::invalid_argument(
            "transfer amplitude magnitude exceeds 1; the amplitude solver is broken");
    return 1.0 - (1.0 - p) * std::min(f2, 1.0);
}

ProtocolParams optimal_protocol(double p, int target_site,
                                std::complex<double> transfer_amplitude) {
    require_wm_strength(p);
    ProtocolParams params;
    params.wm_strength = p;
    params.target_site = target_site;
    params.target_generation = generation_of_site(target_site);
    params.qmr_strength = optimal_qmr_strength(p, transfer_amplitude);
    return params;
}

std::complex<double> transfer_amplitude(const AmplitudeTrajectory& traj, int target_site,
                                        std::size_t time_index) {
    const int n = generation_of_site(target_site);
    if (n > traj.generations())
        throw std::invalid_argument("target site lies outside the simulated tree");
    const double gen_size = static_cast<double>(1 << (n - 1));
    return traj.amplitude(n, time_index) / std::sqrt(gen_size);
}

TransferOutcome transfer_with_amplitude(const QubitState& state,
                                        const ProtocolParams& params,
                                        std::complex<double> f) {
    require_wm_strength(params.wm_strength);
    if (params.target_generation != generation_of_site(params.target_site))
        throw std::invalid_argument("target generation does not contain the target site");
    const double q_expected = optimal_qmr_strength(params.wm_strength, f);
    if (std::abs(params.qmr_strength - q_expected) > 1e-9)
        throw std::invalid_argument("reversal strength is not optimal for this (p, f)");

    const double p = params.wm_strength;
    const double f_abs = std::abs(f);
    const double scale = (1.0 - p) * f_abs * f_abs;  // common success-branch weight
    const TargetComponents tc = target_components(state.theta, state.phi, p, f_abs);
    const double success = scale * (tc.pop0 + tc.pop1);
    if (success <= 0.0) throw ProtocolAbort("protocol aborted, zero success probability");

    const double trace = tc.pop0 + tc.pop1;
    TransferOutcome out;
    out.reduced_dm << tc.pop0 / trace, tc.coh01 / trace,
        std::conj(tc.coh01) / trace, tc.pop1 / trace;
    out.success_probability = success;
    out.fidelity = conditional_fidelity(state.theta, state.phi, p, f_abs);
    out.transfer_amp = f;
    return out;
}

TransferOutcome transfer(const QubitState& state, const ProtocolParams& params,
                         const AmplitudeTrajectory& traj, double t) {
    const std::size_t k = traj.index_of_time(t);
    return transfer_with_amplitude(state, params,
                                   transfer_amplitude(traj, params.target_site, k));
}

double average_fidelity_closed(double p, double f_abs) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    if (!(f_abs >= 0.0 && f_abs <= 1.0 + 1e-9))
        throw std::invalid_argument("|f| must lie in [0, 1]");
    const double x = (1.0 - p) * (1.0 - std::min(f_abs, 1.0) * std::min(f_abs, 1.0));
    if (x < 1e-3) {
        // series of 1/2 + (x - log(1+x))/x^2 about x = 0
        return 1.0 + x * (-1.0 / 3.0 + x * (0.25 + x * (-0.2 + x / 6.0)));
    }
    return 0.5 + 1.0 / x - std::log1p(x) / (x * x);
}

double average_fidelity_numeric(double p, double f_abs) {
    using boost::math::quadrature::gauss;
    // Haar measure: u = cos(theta) uniform on [-1, 1], phi uniform on [0, 2pi).
    // The integrand is phi-independent after the phase correction, but the
    // average is taken over the full sphere anyway.
    constexpr int n_phi = 16;
    double total = 0.0;
    for (int i = 0; i < n_phi; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / n_phi;
        auto integrand = [&](double u) {
            return conditional_fidelity(std::acos(u), phi, p, f_abs);
        };
        total += 0.5 * gauss<double, 64>::integrate(integrand, -1.0, 1.0);
    }
    return total / n_phi;
}

double average_fidelity_natural(double f_abs) {
    if (!(f_abs >= 0.0 && f_abs <= 1.0 + 1e-9))
        throw std::invalid_argument("|f| must lie in [0, 1]");
    const double f = std::min(f_abs, 1.0);
    return (f * (f + 2.0) + 3.0) / 6.0;  // = 1/2 + f/3 + f^2/6, exact at both ends
}

double average_success_probability(double p, double f_abs) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    const double f2 = f_abs * f_abs;
    return 0.5 * (1.0 - p) * f2 * (2.0 + (1.0 - p) * (1.0 - f2));
}

}  // namespace qst
