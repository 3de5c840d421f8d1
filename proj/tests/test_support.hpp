// Brute-force reconstructions used as oracles: they rebuild the post-selected
// state vector slot by slot (vacuum, each site, one aggregate reservoir slot)
// and trace it down by explicit outer products, staying independent of the
// closed-form component bookkeeping in the library.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qst/amplitude_dynamics.hpp"
#include "qst/tree_model.hpp"

namespace qst::testing {

using cplx = std::complex<double>;

// Site amplitudes for a column-state snapshot: every site of generation m
// carries C_m / sqrt(2^{m-1}).
inline Eigen::VectorXcd site_amplitudes_from_columns(const qst::TreeSpec& spec,
                                                     const Eigen::VectorXcd& column_amps) {
    const int d = spec.site_count();
    Eigen::VectorXcd sites = Eigen::VectorXcd::Zero(d);
    for (int m = 1; m <= spec.generations; ++m) {
        const int first = spec.first_site_of(m);
        const double norm = std::sqrt(static_cast<double>(spec.generation_size(m)));
        for (int j = first; j < 2 * first; ++j) sites(j - 1) = column_amps(m - 1) / norm;
    }
    return sites;
}

struct BruteTransfer {
    Eigen::Matrix2cd rho;        // target qubit, normalized
    double success_probability;  // total weight of the accepted branch
};

// Single-register pipeline: weak measurement on the sender, evolution given by
// the column amplitudes, optimal reversal and phase correction on the target.
// Slots: 0 = vacuum, 1..D = excitation on that site, D+1 = reservoir lump.
inline BruteTransfer brute_force_transfer(const qst::TreeSpec& spec,
                                          const Eigen::VectorXcd& column_amps,
                                          int target_site, double theta, double phi,
                                          double p) {
    const int d = spec.site_count();
    const Eigen::VectorXcd sites = site_amplitudes_from_columns(spec, column_amps);
    const double leaked = std::max(0.0, 1.0 - column_amps.squaredNorm());
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);

    std::vector<cplx> slots(d + 2, cplx{});
    slots[0] = c;
    for (int j = 1; j <= d; ++j)
        slots[j] = std::polar(s, phi) * std::sqrt(1.0 - p) * sites(j - 1);
    slots[d + 1] = std::polar(s, phi) * std::sqrt(1.0 - p) * std::sqrt(leaked);

    const cplx f = sites(target_site - 1);
    const double q = 1.0 - (1.0 - p) * std::norm(f);
    for (int slot = 0; slot <= d + 1; ++slot)
        if (slot != target_site) slots[slot] *= std::sqrt(1.0 - q);
    slots[target_site] *= std::polar(1.0, -std::arg(f));  // phase correction

    double pop0 = 0.0;
    for (int slot = 0; slot <= d + 1; ++slot)
        if (slot != target_site) pop0 += std::norm(slots[slot]);
    const double pop1 = std::norm(slots[target_site]);
    const cplx coh = slots[0] * std::conj(slots[target_site]);

    const double total = pop0 + pop1;
    BruteTransfer out;
    out.rho << pop0 / total, coh / total, std::conj(coh) / total, pop1 / total;
    out.success_probability = total;
    return out;
}

struct BruteDistribution {
    Eigen::Matrix4cd rho;  // (idle qubit, target qubit), normalized
    double success_probability;
};

// Two-register pipeline for entanglement distribution. The shared pair is
// cos(theta/2)|0,1> + e^{i phi}|1,0> between the idle qubit and the sender;
// the reversal strength q is applied as given.
inline BruteDistribution brute_force_distribute(const qst::TreeSpec& spec,
                                                const Eigen::VectorXcd& column_amps,
                                                int target_site, double theta, double phi,
                                                double p, double q) {
    const int d = spec.site_count();
    const Eigen::VectorXcd sites = site_amplitudes_from_columns(spec, column_amps);
    const double leaked = std::max(0.0, 1.0 - column_amps.squaredNorm());
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);

    // amplitude[a][slot]: idle qubit in |a|, network slot as above
    Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(2, d + 2);
    for (int j = 1; j <= d; ++j) amp(0, j) = c * std::sqrt(1.0 - p) * sites(j - 1);
    amp(0, d + 1) = c * std::sqrt(1.0 - p) * std::sqrt(leaked);
    amp(1, 0) = std::polar(s, phi);
    for (int a = 0; a < 2; ++a)
        for (int slot = 0; slot <= d + 1; ++slot)
            if (slot != target_site) amp(a, slot) *= std::sqrt(1.0 - q);

    // rest configuration: identical when neither state leaves an excitation
    // outside the target, otherwise identified by the excited slot
    auto rest = [&](int slot) { return (slot == target_site || slot == 0) ? 0 : slot; };
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < 2; ++a)
        for (int slot = 0; slot <= d + 1; ++slot)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int slot2 = 0; slot2 <= d + 1; ++slot2) {
                    if (rest(slot) != rest(slot2)) continue;
                    const int i = 2 * a + (slot == target_site ? 1 : 0);
                    const int i2 = 2 * a2 + (slot2 == target_site ? 1 : 0);
                    rho(i, i2) += amp(a, slot) * std::conj(amp(a2, slot2));
                }
    const double total = rho.trace().real();
    return {rho / total, total};
}

}  // namespace qst::testing
