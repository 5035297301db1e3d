#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "triwalk/spectral.hpp"
#include "triwalk/walk.hpp"

using namespace triwalk;

namespace {

double unitarity_residual(const Matrix6cd& m) {
    return (m.adjoint() * m - Matrix6cd::Identity()).cwiseAbs().maxCoeff();
}

// greedy multiset match on the unit circle
double multiset_distance(std::vector<std::complex<double>> expected,
                         std::vector<std::complex<double>> actual) {
    double worst = 0.0;
    for (const auto& e : expected) {
        double best = 1e18;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < actual.size(); ++i)
            if (std::abs(actual[i] - e) < best) {
                best = std::abs(actual[i] - e);
                best_i = i;
            }
        worst = std::max(worst, best);
        actual.erase(actual.begin() + best_i);
    }
    return worst;
}

}  // namespace

TEST_CASE("dispersion values") {
    LatticeSpec spec(6);
    CHECK(dispersion(make_wavevector(spec, 0, 0)) == 0.0);
    CHECK(dispersion_cos(make_wavevector(spec, 3, 3)) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(dispersion(make_wavevector(spec, 3, 0)) ==
          doctest::Approx(std::acos(-1.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("dispersion minimum is -1/2 on the corner of the Brillouin zone") {
    // dense continuous scan
    double min_cos = 1.0;
    const int grid = 600;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            WaveVector k;
            k.ktilde1 = 2.0 * std::numbers::pi * i / grid;
            k.ktilde2 = 2.0 * std::numbers::pi * j / grid;
            min_cos = std::min(min_cos, dispersion_cos(k));
        }
    CHECK(min_cos >= -0.5 - 1e-12);
    CHECK(min_cos == doctest::Approx(-0.5).epsilon(1e-6));

    WaveVector corner;
    corner.ktilde1 = 2.0 * std::numbers::pi / 3.0;
    corner.ktilde2 = 4.0 * std::numbers::pi / 3.0;
    CHECK(dispersion_cos(corner) == doctest::Approx(-0.5).epsilon(1e-14));

    // cos theta stays strictly below 1 away from k = 0
    for (int side : {2, 5, 9}) {
        LatticeSpec spec(side);
        for (const WaveVector& k : enumerate_wavevectors(spec)) {
            if (k.k1 == 0 && k.k2 == 0) continue;
            CHECK(1.0 - dispersion_cos(k) > 0.0);
        }
    }
}

TEST_CASE("reduced operator at k = 0 fixes the uniform coin state") {
    LatticeSpec spec(4);
    const ReducedOperator op = reduced_operator(make_wavevector(spec, 0, 0));
    CHECK(op.theta == 0.0);
    const Vector6cd u = Vector6cd::Constant(1.0 / std::sqrt(6.0));
    CHECK(((op.matrix * u) - u).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(unitarity_residual(op.matrix) < 1e-12);
}

TEST_CASE("reduced operators are unitary with unit determinant modulus") {
    LatticeSpec spec(7);
    for (const WaveVector& k : enumerate_wavevectors(spec)) {
        const ReducedOperator op = reduced_operator(k);
        CHECK(unitarity_residual(op.matrix) < 1e-12);
        CHECK(std::abs(std::abs(op.matrix.determinant()) - 1.0) < 1e-12);
    }
}

TEST_CASE("eigenvalue multiset follows the characteristic polynomial") {
    for (int side : {4, 6}) {
        LatticeSpec spec(side);
        for (const WaveVector& k : enumerate_wavevectors(spec)) {
            const ReducedOperator op = reduced_operator(k);
            Eigen::ComplexEigenSolver<Matrix6cd> es(op.matrix, false);
            const std::vector<std::complex<double>> expected = {
                1.0, 1.0, -1.0, -1.0, std::polar(1.0, op.theta), std::polar(1.0, -op.theta)};
            std::vector<std::complex<double>> actual(es.eigenvalues().data(),
                                                     es.eigenvalues().data() + 6);
            CHECK(multiset_distance(expected, actual) < 1e-10);
        }
    }
}

TEST_CASE("eigenmodes phase fixing and coefficients") {
    LatticeSpec spec(12);
    const double delta = 0.9;
    for (const WaveVector& k : enumerate_wavevectors(spec)) {
        if (k.k1 == 0 && k.k2 == 0) continue;
        const ModeDecomposition dec = eigenmodes(reduced_operator(k), delta);

        const std::complex<double> zp = dec.nu_plus.sum() / std::sqrt(6.0);
        const std::complex<double> zm = dec.nu_minus.sum() / std::sqrt(6.0);
        // real and positive after fixing, modulus 1/sqrt(2)
        CHECK(std::abs(zp.imag()) < 1e-12);
        CHECK(zp.real() > 0.0);
        CHECK(std::abs(zp.real() - 1.0 / std::sqrt(2.0)) < 1e-10);
        CHECK(std::abs(zm.imag()) < 1e-12);
        CHECK(std::abs(zm.real() - 1.0 / std::sqrt(2.0)) < 1e-10);

        // +-1 eigenvectors carry no uniform-coin component
        for (const auto& v : dec.nu_plus_one) CHECK(std::abs(v.sum()) / std::sqrt(6.0) < 1e-10);
        for (const auto& v : dec.nu_minus_one) CHECK(std::abs(v.sum()) / std::sqrt(6.0) < 1e-10);

        CHECK(dec.a_k == doctest::Approx(std::cos(delta) / std::sqrt(2.0)).epsilon(1e-10));
        CHECK(dec.b_k == doctest::Approx(-std::sin(delta) / std::sqrt(2.0)).epsilon(1e-10));
        CHECK(dec.a0 == doctest::Approx(std::cos(delta)).epsilon(1e-14));
    }

    // delta = 0
    const ModeDecomposition plain = eigenmodes(reduced_operator(make_wavevector(spec, 1, 5)), 0.0);
    CHECK(plain.a_k == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(plain.b_k == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(eigenmodes(reduced_operator(make_wavevector(spec, 0, 0))), DegenerateMode);
}

TEST_CASE("lattice sum: exact value at side 2 and growth") {
    CHECK(lattice_sum_exact(LatticeSpec(2)) == doctest::Approx(9.0 / 8.0).epsilon(1e-14));
    CHECK(lattice_sum_exact(LatticeSpec(4)) > lattice_sum_exact(LatticeSpec(2)));
}

TEST_CASE("lattice sum scales like N log N") {
    double lo = 1e18, hi = 0.0;
    for (int side : {8, 16, 32, 64}) {
        LatticeSpec spec(side);
        const double n = spec.n_sites;
        const double ratio = lattice_sum_exact(spec) / (n * std::log2(n));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 3.0);
}

TEST_CASE("quadrature diagnostic tracks the exact sum") {
    for (int side : {8, 16}) {
        LatticeSpec spec(side);
        const double exact = lattice_sum_exact(spec);
        const double quad = lattice_sum_quadrature(spec);
        CHECK(quad > exact / 2.0);
        CHECK(quad < exact * 2.0);
    }
}

TEST_CASE("alpha estimate") {
    CHECK(alpha_estimate(LatticeSpec(2), 0.0) ==
          doctest::Approx(std::sqrt(9.0 / 8.0)).epsilon(1e-14));
    // delta = 0 collapses to sqrt of the exact sum
    LatticeSpec spec(6);
    CHECK(alpha_estimate(spec, 0.0) ==
          doctest::Approx(std::sqrt(lattice_sum_exact(spec))).epsilon(1e-14));

    // scaling band with the auto angle
    double lo = 1e18, hi = 0.0;
    for (int side : {8, 16, 32, 64}) {
        LatticeSpec s(side);
        const double n = s.n_sites;
        const double cd = std::min(1.0, 1.0 / std::sqrt(std::log2(n)));
        const double a = alpha_estimate(s, std::acos(cd));
        const double ratio = a / std::sqrt(n * std::log2(n));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 3.0);
}

TEST_CASE("spectrum summary is self-consistent") {
    LatticeSpec spec(8);
    const SpectrumSummary s = compute_spectrum_summary(spec, 0.3);
    CHECK(s.exact_sum == doctest::Approx(lattice_sum_exact(spec)).epsilon(1e-15));
    CHECK(s.alpha == doctest::Approx(alpha_estimate(spec, 0.3)).epsilon(1e-15));
    CHECK(s.scaling_ratio ==
          doctest::Approx(s.alpha / std::sqrt(64.0 * std::log2(64.0))).epsilon(1e-15));
}

TEST_CASE("full-space step block-diagonalizes over wavevectors") {
    const LatticeSpec spec(5);
    std::mt19937 gen(42);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, spec.side - 1);

    for (int trial = 0; trial < 5; ++trial) {
        const WaveVector k = make_wavevector(spec, pick(gen), pick(gen));
        Vector6cd coin;
        for (int j = 0; j < 6; ++j) coin(j) = complex_t{dist(gen), dist(gen)};
        coin.normalize();

        // |c> tensor |k>: position component exp(-i k.r)/sqrt(N)
        WalkState state;
        state.spec = spec;
        state.amps.assign(static_cast<std::size_t>(12) * spec.n_sites, complex_t{});
        for (int j = 0; j < 6; ++j)
            for (int n = 0; n < spec.n_sites; ++n) {
                const SiteIndex s = site_from_flat(spec, n);
                const double phase = -(k.ktilde1 * s.n1 + k.ktilde2 * s.n2);
                state.amp(1, j, n) = coin(j) * std::polar(1.0 / std::sqrt(double(spec.n_sites)), phase);
            }

        const WalkState out = apply_step_standard(state);
        const Vector6cd mixed = reduced_operator(k).matrix * coin;
        double worst = 0.0;
        for (int j = 0; j < 6; ++j)
            for (int n = 0; n < spec.n_sites; ++n) {
                const SiteIndex s = site_from_flat(spec, n);
                const double phase = -(k.ktilde1 * s.n1 + k.ktilde2 * s.n2);
                const complex_t expected =
                    mixed(j) * std::polar(1.0 / std::sqrt(double(spec.n_sites)), phase);
                worst = std::max(worst, std::abs(out.amp(1, j, n) - expected));
            }
        CHECK(worst < 1e-10);
    }
}
