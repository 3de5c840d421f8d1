#include "qst/tree_model.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qst {

void TreeSpec::validate() const {
    if (generations < 1)
        throw std::invalid_argument("TreeSpec: generations must be >= 1, got " +
                                    std::to_string(generations));
    if (generations > 24)
        throw std::invalid_argument("TreeSpec: generations > 24 would need " +
                                    std::to_string((1u << generations) - 1) +
                                    " sites; dense storage is not meant for that");
    if (!(coupling > 0.0))
        throw std::invalid_argument("TreeSpec: coupling must be > 0");
}

int generation_of_site(int site) {
    if (site < 1) throw std::invalid_argument("site index must be >= 1");
    return std::bit_width(static_cast<unsigned>(site));
}

Eigen::MatrixXcd EffectiveChain::matrix() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(length, length);
    for (int i = 0; i < length; ++i) m(i, i) = onsite;
    for (int i = 0; i + 1 < length; ++i) {
        m(i, i + 1) = hopping;
        m(i + 1, i) = hopping;
    }
    return m;
}

SingleExcitationHamiltonian build_tree_hamiltonian(const TreeSpec& spec) {
    spec.validate();
    const int d = spec.site_count();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) h(i, i) = spec.qubit_frequency;
    for (int j = 1; 2 * j + 1 <= d; ++j) {
        h(j - 1, 2 * j - 1) = spec.coupling;  // j <-> 2j
        h(2 * j - 1, j - 1) = spec.coupling;
        h(j - 1, 2 * j) = spec.coupling;      // j <-> 2j+1
        h(2 * j, j - 1) = spec.coupling;
    }
    return {d, std::move(h)};
}

ColumnBasis build_column_basis(const TreeSpec& spec) {
    spec.validate();
    const int d = spec.site_count();
    const int n = spec.generations;
    Eigen::MatrixXcd vectors = Eigen::MatrixXcd::Zero(d, n);
    for (int m = 1; m <= n; ++m) {
        const double amp = 1.0 / std::sqrt(static_cast<double>(spec.generation_size(m)));
        const int first = spec.first_site_of(m);
        for (int j = first; j < 2 * first; ++j) vectors(j - 1, m - 1) = amp;
    }
    return {std::move(vectors)};
}

EffectiveChain reduce_to_chain(const SingleExcitationHamiltonian& hamiltonian,
                               const ColumnBasis& basis, double tol) {
    if (hamiltonian.dimension != basis.dimension())
        throw std::invalid_argument("reduce_to_chain: Hamiltonian and basis dimensions differ");
    const int n = basis.generations();
    const Eigen::MatrixXcd sandwich =
        basis.vectors.adjoint() * hamiltonian.matrix * basis.vectors;

    EffectiveChain chain;
    chain.length = n;
    chain.onsite = sandwich(0, 0).real();
    chain.hopping = n >= 2 ? sandwich(0, 1).real() : 0.0;

    const Eigen::MatrixXcd expected = chain.matrix();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double dev = std::abs(sandwich(a, b) - expected(a, b));
            if (dev > tol)
                throw std::runtime_error(
                    "reduce_to_chain: projected element (" + std::to_string(a + 1) + "," +
                    std::to_string(b + 1) + ") deviates from the uniform chain by " +
                    std::to_string(dev));
        }
    return chain;
}

bool verify_invariant_subspace(const SingleExcitationHamiltonian& hamiltonian,
                               const ColumnBasis& basis, double tol) {
    if (hamiltonian.dimension != basis.dimension())
        throw std::invalid_argument("verify_invariant_subspace: dimensions differ");
    const int n = basis.generations();
    for (int m = 0; m < n; ++m) {
        Eigen::VectorXcd image = hamiltonian.matrix * basis.vectors.col(m);
        for (int mm = std::max(0, m - 1); mm <= std::min(n - 1, m + 1); ++mm) {
            const auto v = basis.vectors.col(mm);
            image -= v.dot(image) * v;  // v.dot conjugates the left argument
        }
        if (image.norm() > tol) return false;
    }
    return true;
}

}  // namespace qst
