#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

#include "triwalk/lattice.hpp"

namespace triwalk {

using Matrix6cd = Eigen::Matrix<std::complex<double>, 6, 6>;
using Vector6cd = Eigen::Matrix<std::complex<double>, 6, 1>;

// Reduction of the evolution operator to one wavevector block.
struct ReducedOperator {
    WaveVector k;
    Matrix6cd matrix;
    double theta = 0.0;  // nontrivial eigenphase, in [0, pi]
};

// Thrown when the rotating eigenpair cannot be separated from the fixed
// eigenvalues; only possible at k = 0, so it signals an enumeration bug.
struct DegenerateMode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// cos(theta_k) = (cos k~1 + cos k~2 + cos(k~1 - k~2)) / 3
double dispersion_cos(const WaveVector& k);
// theta_k = arccos of the above, in [0, pi]
double dispersion(const WaveVector& k);

ReducedOperator reduced_operator(const WaveVector& k);

// Eigenvectors of the rotating pair, phase-fixed so <u_C|nu> is real and
// positive, plus the target-decomposition coefficients for the given angle.
struct ModeDecomposition {
    WaveVector k;
    Vector6cd nu_plus;   // eigenvector for e^{+i theta}
    Vector6cd nu_minus;  // eigenvector for e^{-i theta}
    // Eigenvectors for the +1 / -1 pairs, phases as returned by the solver;
    // orthogonal to both the uniform coin vector and the target.
    std::array<Vector6cd, 2> nu_plus_one;
    std::array<Vector6cd, 2> nu_minus_one;
    double a_k = 0.0;
    double b_k = 0.0;
    double a0 = 0.0;  // cos(delta)
};

ModeDecomposition eigenmodes(const ReducedOperator& op, double delta = 0.0);

// (1/2) * sum over k != 0 of 1 / (1 - cos theta_k), deterministic pairwise sum.
double lattice_sum_exact(const LatticeSpec& spec);

// Diagnostic companion of the exact sum: midpoint rule on the side x side
// k~ grid with the cells inside the eps-ball around k~ = 0 dropped,
// eps = 2*pi*sqrt(2/N). Order-of-magnitude only.
double lattice_sum_quadrature(const LatticeSpec& spec);

// A = (1/a0) * sqrt( sum a_k^2/(1 - cos theta_k) + sum b_k^2/4 ) with the
// closed-form coefficients a_k = cos(delta)/sqrt(2), b_k = -sin(delta)/sqrt(2).
// Fixed only up to a constant; used for scaling diagnostics, never as an
// absolute iteration count.
double alpha_estimate(const LatticeSpec& spec, double delta);

struct SpectrumSummary {
    int side = 0;
    int n_sites = 0;
    double delta = 0.0;
    double exact_sum = 0.0;
    double quadrature_estimate = 0.0;
    double alpha = 0.0;
    double scaling_ratio = 0.0;  // alpha / sqrt(N log2 N)
};

SpectrumSummary compute_spectrum_summary(const LatticeSpec& spec, double delta);

}  // namespace triwalk
