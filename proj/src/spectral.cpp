#include "triwalk/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace triwalk {

namespace {

constexpr double kClusterTol = 1e-8;

// Pairwise (cascade) summation over a contiguous range; deterministic.
double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

double sqrt_n_log2_n(const LatticeSpec& spec) {
    const double n = static_cast<double>(spec.n_sites);
    return std::sqrt(n * std::log2(n));
}

}  // namespace

double dispersion_cos(const WaveVector& k) {
    return (std::cos(k.ktilde1) + std::cos(k.ktilde2) + std::cos(k.ktilde1 - k.ktilde2)) / 3.0;
}

double dispersion(const WaveVector& k) {
    const double c = std::clamp(dispersion_cos(k), -1.0, 1.0);
    return std::acos(c);
}

ReducedOperator reduced_operator(const WaveVector& k) {
    // Row phases of S_k * G: the shift is diagonal per k with one phase per
    // outgoing direction.
    const double row_phase[6] = {-k.ktilde1,           -k.ktilde1 + k.ktilde2,
                                 k.ktilde2,            k.ktilde1,
                                 k.ktilde1 - k.ktilde2, -k.ktilde2};
    ReducedOperator op;
    op.k = k;
    for (int j = 0; j < 6; ++j) {
        const std::complex<double> phase = std::polar(1.0, row_phase[j]);
        for (int l = 0; l < 6; ++l)
            op.matrix(j, l) = phase * ((l == opposite_direction(j)) ? -2.0 / 3.0 : 1.0 / 3.0);
    }
    op.theta = dispersion(k);
    return op;
}

ModeDecomposition eigenmodes(const ReducedOperator& op, double delta) {
    if (op.theta < 1e-9)
        throw DegenerateMode("rotating pair collapses onto +1; eigenmodes requires k != 0");

    Eigen::ComplexEigenSolver<Matrix6cd> solver(op.matrix);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed on reduced operator");

    ModeDecomposition dec;
    dec.k = op.k;
    int n_plus = 0, n_minus = 0;
    bool have_plus = false, have_minus = false;
    for (int i = 0; i < 6; ++i) {
        const std::complex<double> lambda = solver.eigenvalues()(i);
        const Vector6cd v = solver.eigenvectors().col(i);
        if (std::abs(lambda - 1.0) <= kClusterTol) {
            if (n_plus < 2) dec.nu_plus_one[n_plus] = v;
            ++n_plus;
        } else if (std::abs(lambda + 1.0) <= kClusterTol) {
            if (n_minus < 2) dec.nu_minus_one[n_minus] = v;
            ++n_minus;
        } else if (lambda.imag() > 0.0) {
            dec.nu_plus = v;
            have_plus = true;
        } else {
            dec.nu_minus = v;
            have_minus = true;
        }
    }
    if (n_plus != 2 || n_minus != 2 || !have_plus || !have_minus)
        throw DegenerateMode("eigenvalue multiset is not {+1,+1,-1,-1,e^{+-i theta}}");

    // Rescale the rotating eigenvectors by a unit phase so that <u_C|nu> is
    // real and positive; the +-1 eigenvectors are orthogonal to u_C and are
    // left as returned.
    const auto fix_phase = [](Vector6cd& v) {
        std::complex<double> z = v.sum() / std::sqrt(6.0);
        if (std::abs(z) < 1e-12)
            throw DegenerateMode("rotating eigenvector has no overlap with the uniform coin");
        v *= std::conj(z) / std::abs(z);
    };
    fix_phase(dec.nu_plus);
    fix_phase(dec.nu_minus);

    const double overlap = (dec.nu_plus.sum() / std::sqrt(6.0)).real();  // = |<u_C|nu>|
    dec.a0 = std::cos(delta);
    dec.a_k = std::cos(delta) * overlap;
    dec.b_k = -std::sin(delta) * overlap;
    return dec;
}

double lattice_sum_exact(const LatticeSpec& spec) {
    std::vector<double> terms;
    terms.reserve(spec.n_sites - 1);
    for (const WaveVector& k : enumerate_wavevectors(spec)) {
        if (k.k1 == 0 && k.k2 == 0) continue;
        terms.push_back(1.0 / (1.0 - dispersion_cos(k)));
    }
    return 0.5 * pairwise_sum(terms.data(), terms.size());
}

double lattice_sum_quadrature(const LatticeSpec& spec) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double eps = two_pi * std::sqrt(2.0 / spec.n_sites);
    const double h = two_pi / spec.side;
    std::vector<double> terms;
    terms.reserve(spec.n_sites);
    for (int i = 0; i < spec.side; ++i) {
        for (int j = 0; j < spec.side; ++j) {
            const double x = (i + 0.5) * h;
            const double y = (j + 0.5) * h;
            const double dx = std::min(x, two_pi - x);
            const double dy = std::min(y, two_pi - y);
            if (std::hypot(dx, dy) < eps) continue;
            const double c = (std::cos(x) + std::cos(y) + std::cos(x - y)) / 3.0;
            terms.push_back(1.0 / (1.0 - c));
        }
    }
    // Midpoint cell weight h^2 against the sum->integral density N/(2 pi)^2
    // cancels to 1 per cell.
    return 0.5 * pairwise_sum(terms.data(), terms.size());
}

double alpha_estimate(const LatticeSpec& spec, double delta) {
    const double c = std::cos(delta);
    const double s = std::sin(delta);
    if (c <= 1e-12)
        throw std::invalid_argument("alpha_estimate requires cos(delta) > 0");
    const double sum = lattice_sum_exact(spec);
    const double rotating_part = c * c * sum;
    const double fixed_part = s * s * (spec.n_sites - 1) / 8.0;
    return std::sqrt(rotating_part + fixed_part) / c;
}

SpectrumSummary compute_spectrum_summary(const LatticeSpec& spec, double delta) {
    SpectrumSummary out;
    out.side = spec.side;
    out.n_sites = spec.n_sites;
    out.delta = delta;
    out.exact_sum = lattice_sum_exact(spec);
    out.quadrature_estimate = lattice_sum_quadrature(spec);
    out.alpha = alpha_estimate(spec, delta);
    out.scaling_ratio = out.alpha / sqrt_n_log2_n(spec);
    return out;
}

}  // namespace triwalk
