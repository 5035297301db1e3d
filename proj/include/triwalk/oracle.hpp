#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "triwalk/lattice.hpp"
#include "triwalk/walk.hpp"

namespace triwalk::oracle {

// Dense construction is capped at side 8 (12N = 768 dimensions).
inline constexpr int kMaxSide = 8;

struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DenseUnitary {
    int dim = 0;
    Eigen::MatrixXcd matrix;
};

// Basis convention matches WalkState: index = (anc*6 + j)*N + site for the
// extended space, j*N + site for the coin x position space.

// Individual factors, exposed so each can be checked against its definition.
Eigen::MatrixXcd shift_matrix(const LatticeSpec& spec);                          // S
Eigen::MatrixXcd coin_matrix(const LatticeSpec& spec);                           // G x I_P
Eigen::MatrixXcd marked_coin_matrix(const LatticeSpec& spec, const SiteIndex& t);// C'
Eigen::MatrixXcd target_reflection(const LatticeSpec& spec, const SiteIndex& t); // R_t
Eigen::MatrixXcd ancilla_kron(const Eigen::Matrix2cd& a, int dim);               // a x I
Eigen::MatrixXcd controlled_on_one(const Eigen::MatrixXcd& payload);             // |0><0| x I + |1><1| x payload

DenseUnitary build_standard(const LatticeSpec& spec);                            // U, 6N
DenseUnitary build_marked(const LatticeSpec& spec, const SiteIndex& target);     // U', 6N
DenseUnitary build_tulsi(const LatticeSpec& spec, const TulsiParams& params);    // U'', 12N

// Dense re-run of the search loop: per-step overlap probability with the
// effective target, steps+1 entries. Must match the sparse driver pointwise.
std::vector<double> reference_search_curve(const LatticeSpec& spec, const TulsiParams& params,
                                           int steps);

}  // namespace triwalk::oracle
