#include <cmath>
#include <complex>

#include <doctest.h>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qst/bath.hpp"

using namespace qst;

namespace {

// Quadrature of the spectral density against e^{i(omega0 - omega) tau},
// independent of the exponential closed form it checks. The integrand decays
// only like 1/omega^2, so the cut-off tail is added back through its leading
// integration-by-parts terms.
std::complex<double> kernel_by_quadrature(double tau, double omega0, const BathSpec& bath) {
    using boost::math::quadrature::gauss_kronrod;
    const double cutoff = 2.0e4;
    auto real_part = [&](double u) {
        return lorentzian_spectral_density(omega0 + u, omega0, bath) * std::cos(u * tau);
    };
    auto imag_part = [&](double u) {
        return lorentzian_spectral_density(omega0 + u, omega0, bath) * std::sin(u * tau);
    };
    // e^{i(omega0-omega)tau} = cos(u tau) - i sin(u tau) with u = omega - omega0;
    // the sine part integrates to zero by symmetry but is evaluated anyway
    double re = gauss_kronrod<double, 61>::integrate(real_part, -cutoff, cutoff, 15, 1e-12);
    const double im = -gauss_kronrod<double, 61>::integrate(imag_part, -cutoff, cutoff, 15, 1e-12);

    const double g = bath.coupling_constant;
    const double l = bath.spectral_width;
    if (tau == 0.0) {
        // exact tail of the plain Lorentzian
        re += g * l * l / M_PI *
              (M_PI / 2.0 - std::atan(cutoff / l)) / l;
    } else {
        // leading oscillatory tail from integration by parts, both ends
        re += -2.0 * g * l * l / (2.0 * M_PI) * std::sin(cutoff * tau) /
              (tau * (cutoff * cutoff + l * l));
    }
    return {re, im};
}

}  // namespace

TEST_SUITE_BEGIN("bath");

TEST_CASE("spec validation") {
    CHECK_THROWS_AS((BathSpec{-0.1, 0.5}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((BathSpec{1.0, 0.0}.validate()), std::invalid_argument);
    CHECK_NOTHROW((BathSpec{0.0, 0.5}.validate()));
}

TEST_CASE("kernel boundary values") {
    const auto kernel = memory_kernel({2.0, 0.5});
    CHECK(kernel.at_zero() == doctest::Approx(0.5));          // gamma*lambda/2
    CHECK(kernel.total_weight() == doctest::Approx(1.0));     // gamma/2
    CHECK(kernel(0.0) == doctest::Approx(kernel.at_zero()));
    CHECK(kernel(3.0) == doctest::Approx(0.5 * std::exp(-1.5)));
}

TEST_CASE("exponential form agrees with the spectral-density quadrature") {
    const double omega0 = 1.7;
    for (const auto& [gamma, lambda] : {std::pair{1.0, 0.5}, {2.0, 0.5}, {1.0, 5.0}}) {
        const BathSpec bath{gamma, lambda};
        const auto kernel = memory_kernel(bath);
        for (const double tau : {0.0, 0.3, 1.0, 2.5}) {
            const auto numeric = kernel_by_quadrature(tau, omega0, bath);
            CHECK(std::abs(numeric.real() - kernel(tau)) < 1e-6);
            CHECK(std::abs(numeric.imag()) < 1e-6);
        }
    }
}

TEST_CASE("kernel integral matches the quadrature of its own tail") {
    const auto kernel = memory_kernel({1.3, 0.8});
    // integrate f(tau) over [0, 60/lambda]; the truncated remainder is tiny
    using boost::math::quadrature::gauss_kronrod;
    const double integral = gauss_kronrod<double, 61>::integrate(
        [&](double tau) { return kernel(tau); }, 0.0, 60.0 / 0.8, 10, 1e-13);
    CHECK(integral == doctest::Approx(kernel.total_weight()).epsilon(1e-10));
}

TEST_SUITE_END();
