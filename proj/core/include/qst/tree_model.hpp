#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qst {

// Complete binary-tree spin network with N generations and 2^N - 1 sites.
// Site indices are 1-based: site j couples to its children 2j and 2j+1, the
// root is site 1, and generation m spans sites [2^{m-1}, 2^m - 1]. Internal
// storage maps site j to row/column j-1.
struct TreeSpec {
    int generations = 1;           // N >= 1
    double qubit_frequency = 1.0;  // on-site transition frequency
    double coupling = 1.0;         // parent-child hopping, > 0

    int site_count() const { return (1 << generations) - 1; }
    int first_site_of(int generation) const { return 1 << (generation - 1); }
    int generation_size(int generation) const { return 1 << (generation - 1); }

    void validate() const;  // throws std::invalid_argument
};

// Generation m containing site r, i.e. 2^{m-1} <= r <= 2^m - 1.
int generation_of_site(int site);

// Hamiltonian restricted to the single-excitation sector: D x D Hermitian,
// uniform diagonal, one matrix element per tree edge.
struct SingleExcitationHamiltonian {
    int dimension = 0;
    Eigen::MatrixXcd matrix;
};

// Column states: |C_m| is the normalized equal-weight superposition of all
// generation-m sites; stored as columns of a D x N matrix.
struct ColumnBasis {
    Eigen::MatrixXcd vectors;

    int generations() const { return static_cast<int>(vectors.cols()); }
    int dimension() const { return static_cast<int>(vectors.rows()); }
};

// Uniform nearest-neighbor chain the tree reduces to on the column-state
// span: length N, on-site energy equal to the qubit frequency, hopping
// sqrt(2) * coupling.
struct EffectiveChain {
    int length = 0;
    double onsite = 0.0;
    double hopping = 0.0;

    Eigen::MatrixXcd matrix() const;  // dense tridiagonal form
};

SingleExcitationHamiltonian build_tree_hamiltonian(const TreeSpec& spec);

ColumnBasis build_column_basis(const TreeSpec& spec);

// Sandwiches H between the column states and checks that the result is a
// uniform tridiagonal chain. Throws std::runtime_error when any element
// deviates by more than tol, which signals a construction bug.
EffectiveChain reduce_to_chain(const SingleExcitationHamiltonian& hamiltonian,
                               const ColumnBasis& basis, double tol = 1e-10);

// True iff H|C_m> stays inside span{|C_{m-1}>, |C_m>, |C_{m+1}>} for every m
// (residual norm below tol after projection).
bool verify_invariant_subspace(const SingleExcitationHamiltonian& hamiltonian,
                               const ColumnBasis& basis, double tol = 1e-10);

}  // namespace qst
