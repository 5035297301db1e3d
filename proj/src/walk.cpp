#include "triwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace triwalk {

std::array<std::array<double, 6>, 6> grover_coin6() {
    std::array<std::array<double, 6>, 6> g{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) g[i][j] = (i == j) ? (2.0 / 6.0 - 1.0) : (2.0 / 6.0);
    return g;
}

TulsiParams TulsiParams::from_delta(double delta, SiteIndex target) {
    TulsiParams p;
    p.delta = delta;
    p.cos_delta = std::cos(delta);
    p.sin_delta = std::sin(delta);
    p.target = target;
    if (p.cos_delta < 0.0 || p.cos_delta > 1.0)
        throw std::invalid_argument("delta must satisfy 0 <= cos(delta) <= 1");
    return p;
}

TulsiParams TulsiParams::from_cos_delta(double cos_delta, SiteIndex target) {
    if (cos_delta < 0.0 || cos_delta > 1.0)
        throw std::invalid_argument("cos_delta must lie in [0, 1]");
    TulsiParams p;
    p.delta = std::acos(cos_delta);
    p.cos_delta = cos_delta;
    p.sin_delta = std::sqrt(1.0 - cos_delta * cos_delta);
    p.target = target;
    return p;
}

WalkState uniform_initial_state(const LatticeSpec& spec) {
    WalkState state;
    state.spec = spec;
    state.amps.assign(static_cast<std::size_t>(12) * spec.n_sites, complex_t{0.0, 0.0});
    const double a = 1.0 / std::sqrt(6.0 * spec.n_sites);
    for (int j = 0; j < 6; ++j)
        for (int n = 0; n < spec.n_sites; ++n) state.amp(1, j, n) = a;
    return state;
}

double state_norm(const WalkState& state) {
    double s = 0.0;
    for (const complex_t& a : state.amps) s += std::norm(a);
    return std::sqrt(s);
}

WalkEngine::WalkEngine(const LatticeSpec& spec) : spec_(spec) {
    const int n = spec.n_sites;
    gather_.resize(static_cast<std::size_t>(6) * n);
    for (int j = 0; j < 6; ++j)
        for (int m = 0; m < n; ++m)
            gather_[static_cast<std::size_t>(j) * n + m] =
                neighbor(spec, site_from_flat(spec, m), j).flat;
    next_.assign(static_cast<std::size_t>(12) * n, complex_t{0.0, 0.0});
    site_sums_.assign(n, complex_t{0.0, 0.0});
}

// Coin + shift over one 6N slice, written as a gather: the output amplitude
// at (j, m) comes from input site n = neighbor(m, j) with coin row
// opposite(j). Summation inside a site's coin mix is fixed to ascending j.
template <WalkEngine::CoinKind kind>
void WalkEngine::coined_shift(const complex_t* in, complex_t* out, int target_flat,
                              complex_t target_add) {
    const int n = spec_.n_sites;
    complex_t* sums = site_sums_.data();

#pragma omp parallel for schedule(static)
    for (int m = 0; m < n; ++m) {
        complex_t s = in[m];
        for (int l = 1; l < 6; ++l) s += in[static_cast<std::size_t>(l) * n + m];
        sums[m] = s;
    }

#pragma omp parallel for schedule(static)
    for (int m = 0; m < n; ++m) {
        for (int j = 0; j < 6; ++j) {
            const int src = gather_[static_cast<std::size_t>(j) * n + m];
            const int jin = opposite_direction(j);
            const complex_t amp_in = in[static_cast<std::size_t>(jin) * n + src];
            complex_t v;
            if constexpr (kind == CoinKind::marked) {
                v = (src == target_flat) ? -amp_in : sums[src] * (1.0 / 3.0) - amp_in;
            } else {
                v = sums[src] * (1.0 / 3.0) - amp_in;
                if constexpr (kind == CoinKind::tulsi) {
                    // G has unit row sums, so adding a constant to the target
                    // coin column passes through the mix unchanged.
                    if (src == target_flat) v += target_add;
                }
            }
            out[static_cast<std::size_t>(j) * n + m] = v;
        }
    }
}

void WalkEngine::step_standard(WalkState& state) {
    const std::size_t half = static_cast<std::size_t>(6) * spec_.n_sites;
    // ancilla-0 slice untouched
    std::copy(state.amps.begin(), state.amps.begin() + half, next_.begin());
    coined_shift<CoinKind::standard>(state.amps.data() + half, next_.data() + half, -1,
                                     complex_t{});
    std::swap(state.amps, next_);
}

void WalkEngine::step_marked(WalkState& state, const SiteIndex& target) {
    const std::size_t half = static_cast<std::size_t>(6) * spec_.n_sites;
    std::copy(state.amps.begin(), state.amps.begin() + half, next_.begin());
    coined_shift<CoinKind::marked>(state.amps.data() + half, next_.data() + half, target.flat,
                                   complex_t{});
    std::swap(state.amps, next_);
}

void WalkEngine::step_tulsi(WalkState& state, const TulsiParams& params) {
    const int n = spec_.n_sites;
    const std::size_t half = static_cast<std::size_t>(6) * n;
    const int t = params.target.flat;
    const complex_t* a = state.amps.data();
    const complex_t* b = state.amps.data() + half;

    // Target-site coin sums, ascending direction order.
    complex_t sum_a = a[t];
    complex_t sum_b = b[t];
    for (int j = 1; j < 6; ++j) {
        sum_a += a[static_cast<std::size_t>(j) * n + t];
        sum_b += b[static_cast<std::size_t>(j) * n + t];
    }
    const double c = params.cos_delta;
    const double s = params.sin_delta;
    const complex_t corr_a = (sum_a * (s * s) - sum_b * (c * s)) * (1.0 / 3.0);
    const complex_t corr_b = (sum_a * (s * c) - sum_b * (c * c)) * (1.0 / 3.0);

    complex_t* out_a = next_.data();
#pragma omp parallel for schedule(static)
    for (int m = 0; m < n; ++m)
        for (int j = 0; j < 6; ++j) {
            const std::size_t i = static_cast<std::size_t>(j) * n + m;
            out_a[i] = (m == t) ? -a[i] + corr_a : -a[i];
        }

    coined_shift<CoinKind::tulsi>(b, next_.data() + half, t, corr_b);
    std::swap(state.amps, next_);
}

WalkState apply_step_standard(const WalkState& state) {
    WalkState out = state;
    WalkEngine engine(state.spec);
    engine.step_standard(out);
    return out;
}

WalkState apply_step_marked(const WalkState& state, const SiteIndex& target) {
    WalkState out = state;
    WalkEngine engine(state.spec);
    engine.step_marked(out, target);
    return out;
}

WalkState apply_step_tulsi(const WalkState& state, const TulsiParams& params) {
    WalkState out = state;
    WalkEngine engine(state.spec);
    engine.step_tulsi(out, params);
    return out;
}

double success_probability_tulsi(const WalkState& state, const TulsiParams& params) {
    const int t = params.target.flat;
    complex_t z{0.0, 0.0};
    for (int j = 0; j < 6; ++j)
        z += -params.sin_delta * state.amp(0, j, t) + params.cos_delta * state.amp(1, j, t);
    z *= 1.0 / std::sqrt(6.0);
    return std::norm(z);
}

double success_probability_position(const WalkState& state, const SiteIndex& target) {
    double p = 0.0;
    for (int j = 0; j < 6; ++j) p += std::norm(state.amp(1, j, target.flat));
    return p;
}

double success_probability_coin_uniform(const WalkState& state, const SiteIndex& target) {
    complex_t z{0.0, 0.0};
    for (int j = 0; j < 6; ++j) z += state.amp(1, j, target.flat);
    z *= 1.0 / std::sqrt(6.0);
    return std::norm(z);
}

void write_state_csv(const WalkState& state, std::ostream& os) {
    os << "ancilla,j,n1,n2,re,im\n";
    char buf[64];
    for (int anc = 0; anc < 2; ++anc)
        for (int j = 0; j < 6; ++j)
            for (int n = 0; n < state.spec.n_sites; ++n) {
                const SiteIndex s = site_from_flat(state.spec, n);
                const complex_t& a = state.amp(anc, j, n);
                os << anc << ',' << j << ',' << s.n1 << ',' << s.n2 << ',';
                std::snprintf(buf, sizeof buf, "%.17g", a.real());
                os << buf << ',';
                std::snprintf(buf, sizeof buf, "%.17g", a.imag());
                os << buf << '\n';
            }
}

}  // namespace triwalk
