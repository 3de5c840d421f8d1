#pragma once

#include <cmath>
#include <stdexcept>

namespace qst {

// Lorentzian reservoir shared (in distribution) by every site: each qubit
// couples to its own independent copy.
struct BathSpec {
    double coupling_constant = 1.0;  // gamma >= 0, overall system-bath rate
    double spectral_width = 0.5;     // lambda > 0, width of the Lorentzian

    void validate() const {
        if (!(coupling_constant >= 0.0))
            throw std::invalid_argument("BathSpec: coupling constant must be >= 0");
        if (!(spectral_width > 0.0))
            throw std::invalid_argument("BathSpec: spectral width must be > 0");
    }
};

// Spectral density centred on the qubit frequency.
inline double lorentzian_spectral_density(double omega, double omega0, const BathSpec& bath) {
    const double g = bath.coupling_constant;
    const double l = bath.spectral_width;
    const double d = omega - omega0;
    return g * l * l / (2.0 * M_PI * (d * d + l * l));
}

// Reservoir correlation function f(tau) = (gamma*lambda/2) e^{-lambda*tau}
// for tau >= 0: the Fourier transform of the Lorentzian density against
// e^{i(omega0-omega)tau}. Exponential form makes the memory integral exactly
// reducible to one auxiliary variable per mode.
struct MemoryKernel {
    double coupling_constant;
    double spectral_width;

    double operator()(double tau) const {
        return 0.5 * coupling_constant * spectral_width * std::exp(-spectral_width * tau);
    }
    double at_zero() const { return 0.5 * coupling_constant * spectral_width; }
    // integral over [0, inf), the Markovian amplitude-decay rate
    double total_weight() const { return 0.5 * coupling_constant; }
};

inline MemoryKernel memory_kernel(const BathSpec& bath) {
    bath.validate();
    return {bath.coupling_constant, bath.spectral_width};
}

}  // namespace qst
