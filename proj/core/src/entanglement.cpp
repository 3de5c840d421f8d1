#include "qst/entanglement.hpp"

#include <cmath>
#include <stdexcept>

namespace qst {

namespace {

using cplx = std::complex<double>;

struct EdComponents {
    Eigen::Matrix4cd unnormalized;
    double total_weight;
};

// Success-branch amplitudes of the two-register state, traced down to
// (qubit 0, target qubit). Basis order {|00>, |01>, |10>, |11>}.
//   amp(|01>) = cos(theta/2) sqrt(1-p) f            (target excited, untouched)
//   amp(|10>) = e^{i phi} sin(theta/2) sqrt(1-q)    (idle qubit excited)
//   |00> population: weight that stayed on other sites or leaked, times (1-q).
EdComponents distribute_components(double theta, double phi, double p, double q,
                                   cplx f) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const double f2 = std::norm(f);

    const double pop00 = c * c * (1.0 - p) * (1.0 - q) * (1.0 - f2);
    const double pop01 = c * c * (1.0 - p) * f2;
    const double pop10 = s * s * (1.0 - q);
    const cplx coh = c * s * std::sqrt((1.0 - p) * (1.0 - q)) * f * std::polar(1.0, -phi);

    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = pop00;
    m(1, 1) = pop01;
    m(2, 2) = pop10;
    m(1, 2) = coh;
    m(2, 1) = std::conj(coh);
    return {m, pop00 + pop01 + pop10};
}

EdComponents checked_components(double theta, double phi, double p, double q, cplx f) {
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("measurement strengths must lie in [0, 1]");
    if (std::norm(f) > 1.0 + 1e-9)
        throw std::invalid_argument(
            "transfer amplitude magnitude exceeds 1; the amplitude solver is broken");
    EdComponents ed = distribute_components(theta, phi, p, q, f);
    if (ed.total_weight <= 0.0)
        throw ProtocolAbort("aborted, zero success probability");
    return ed;
}

}  // namespace

void TwoQubitState::validate(double tol) const {
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("two-qubit state is not Hermitian");
    if (std::abs(matrix.trace() - cplx{1.0, 0.0}) > tol)
        throw std::invalid_argument("two-qubit state trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(matrix);
    if (solver.eigenvalues().minCoeff() < -tol)
        throw std::invalid_argument("two-qubit state is not positive semidefinite");
    // X shape with empty |11>: everything off the diagonal except (1,2)/(2,1)
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b || (a == 1 && b == 2) || (a == 2 && b == 1)) continue;
            if (std::abs(matrix(a, b)) > tol)
                throw std::invalid_argument("two-qubit state is not X-shaped");
        }
    if (std::abs(matrix(3, 3)) > tol)
        throw std::invalid_argument("two-qubit state has population in |1,1>");
}

TwoQubitState distribute(double theta, double phi, double p, double q,
                         std::complex<double> f) {
    const EdComponents ed = checked_components(theta, phi, p, q, f);
    return {ed.unnormalized / ed.total_weight};
}

double concurrence(const TwoQubitState& state) {
    const auto& m = state.matrix;
    const double cross = std::sqrt(std::max(0.0, m(0, 0).real() * m(3, 3).real()));
    return 2.0 * std::max(0.0, std::abs(m(1, 2)) - cross);
}

EntanglementOutcome optimal_ed(double theta, double phi, double p,
                               std::complex<double> f) {
    const double q = optimal_qmr_strength(p, f);
    const EdComponents ed = checked_components(theta, phi, p, q, f);
    EntanglementOutcome out{{ed.unnormalized / ed.total_weight}, 0.0, ed.total_weight};
    out.concurrence = concurrence(out.state);
    return out;
}

double optimal_concurrence_closed(double theta, double p, double f_abs) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const double f2 = f_abs * f_abs;
    // 2 c s (1-p)|f|^2 / P_ed with the common (1-p)|f|^2 factor cancelled, so
    // the |f| -> 0 limit is well defined
    return std::max(0.0, 2.0 * c * s / (1.0 + (1.0 - p) * (1.0 - f2) * c * c));
}

double optimal_ed_success_probability(double theta, double p, double f_abs) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    const double c = std::cos(0.5 * theta);
    const double f2 = f_abs * f_abs;
    return (1.0 - p) * f2 * (1.0 + (1.0 - p) * (1.0 - f2) * c * c);
}

double natural_concurrence(double theta, double f_abs) {
    return 2.0 * std::cos(0.5 * theta) * std::sin(0.5 * theta) * f_abs;
}

}  // namespace qst
