#include "triwalk/oracle.hpp"

#include <cmath>

namespace triwalk::oracle {

namespace {

void check_side(const LatticeSpec& spec) {
    if (spec.side > kMaxSide) throw TooLarge("oracle limited to side <= 8");
}

}  // namespace

Eigen::MatrixXcd shift_matrix(const LatticeSpec& spec) {
    check_side(spec);
    const int n = spec.n_sites;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(6 * n, 6 * n);
    for (int j = 0; j < 6; ++j)
        for (int m = 0; m < n; ++m) {
            const SiteIndex dst = neighbor(spec, site_from_flat(spec, m), j);
            s(opposite_direction(j) * n + dst.flat, j * n + m) = 1.0;
        }
    return s;
}

Eigen::MatrixXcd coin_matrix(const LatticeSpec& spec) {
    check_side(spec);
    const int n = spec.n_sites;
    const auto g = grover_coin6();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(6 * n, 6 * n);
    for (int j = 0; j < 6; ++j)
        for (int l = 0; l < 6; ++l)
            for (int m = 0; m < n; ++m) c(j * n + m, l * n + m) = g[j][l];
    return c;
}

Eigen::MatrixXcd marked_coin_matrix(const LatticeSpec& spec, const SiteIndex& t) {
    check_side(spec);
    const int n = spec.n_sites;
    const auto g = grover_coin6();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(6 * n, 6 * n);
    for (int j = 0; j < 6; ++j)
        for (int l = 0; l < 6; ++l)
            for (int m = 0; m < n; ++m)
                c(j * n + m, l * n + m) =
                    (m == t.flat) ? ((j == l) ? -1.0 : 0.0) : g[j][l];
    return c;
}

Eigen::MatrixXcd target_reflection(const LatticeSpec& spec, const SiteIndex& t) {
    check_side(spec);
    const int n = spec.n_sites;
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(6 * n);
    for (int j = 0; j < 6; ++j) u(j * n + t.flat) = 1.0 / std::sqrt(6.0);
    return Eigen::MatrixXcd::Identity(6 * n, 6 * n) - 2.0 * u * u.adjoint();
}

Eigen::MatrixXcd ancilla_kron(const Eigen::Matrix2cd& a, int dim) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out.block(r * dim, c * dim, dim, dim) =
                a(r, c) * Eigen::MatrixXcd::Identity(dim, dim);
    return out;
}

Eigen::MatrixXcd controlled_on_one(const Eigen::MatrixXcd& payload) {
    const int dim = static_cast<int>(payload.rows());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
    out.topLeftCorner(dim, dim) = Eigen::MatrixXcd::Identity(dim, dim);
    out.bottomRightCorner(dim, dim) = payload;
    return out;
}

DenseUnitary build_standard(const LatticeSpec& spec) {
    check_side(spec);
    DenseUnitary u;
    u.dim = 6 * spec.n_sites;
    u.matrix = shift_matrix(spec) * coin_matrix(spec);
    return u;
}

DenseUnitary build_marked(const LatticeSpec& spec, const SiteIndex& target) {
    check_side(spec);
    DenseUnitary u;
    u.dim = 6 * spec.n_sites;
    u.matrix = shift_matrix(spec) * marked_coin_matrix(spec, target);
    return u;
}

DenseUnitary build_tulsi(const LatticeSpec& spec, const TulsiParams& params) {
    check_side(spec);
    const int dim = 6 * spec.n_sites;

    Eigen::Matrix2cd x_delta;
    x_delta << params.cos_delta, params.sin_delta, -params.sin_delta, params.cos_delta;
    Eigen::Matrix2cd minus_z;
    minus_z << -1.0, 0.0, 0.0, 1.0;

    const Eigen::MatrixXcd rotate_in = ancilla_kron(x_delta, dim);
    const Eigen::MatrixXcd reflect = controlled_on_one(target_reflection(spec, params.target));
    const Eigen::MatrixXcd rotate_out = ancilla_kron(x_delta.adjoint(), dim);
    const Eigen::MatrixXcd walk = controlled_on_one(build_standard(spec).matrix);
    const Eigen::MatrixXcd flip = ancilla_kron(minus_z, dim);

    DenseUnitary u;
    u.dim = 2 * dim;
    u.matrix = flip * walk * rotate_out * reflect * rotate_in;
    return u;
}

std::vector<double> reference_search_curve(const LatticeSpec& spec, const TulsiParams& params,
                                           int steps) {
    check_side(spec);
    const int dim = 6 * spec.n_sites;
    const DenseUnitary u = build_tulsi(spec, params);

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * dim);
    const double a = 1.0 / std::sqrt(6.0 * spec.n_sites);
    for (int i = 0; i < dim; ++i) psi(dim + i) = a;

    Eigen::VectorXcd effective_target = Eigen::VectorXcd::Zero(2 * dim);
    const int n = spec.n_sites;
    for (int j = 0; j < 6; ++j) {
        effective_target(j * n + params.target.flat) = -params.sin_delta / std::sqrt(6.0);
        effective_target(dim + j * n + params.target.flat) = params.cos_delta / std::sqrt(6.0);
    }

    std::vector<double> probs;
    probs.reserve(steps + 1);
    probs.push_back(std::norm(effective_target.dot(psi)));
    for (int t = 0; t < steps; ++t) {
        psi = u.matrix * psi;
        probs.push_back(std::norm(effective_target.dot(psi)));
    }
    return probs;
}

}  // namespace triwalk::oracle
