#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "triwalk/lattice.hpp"

namespace triwalk {

using complex_t = std::complex<double>;

// Grover diffusion coin on the six direction states: entries 2/6 - delta_ij.
std::array<std::array<double, 6>, 6> grover_coin6();

// Mixing angle of the ancilla rotation plus the marked site it protects.
struct TulsiParams {
    double delta = 0.0;
    double cos_delta = 1.0;
    double sin_delta = 0.0;
    SiteIndex target;

    static TulsiParams from_delta(double delta, SiteIndex target);
    // cos_delta in [0, 1]; the angle is recovered as acos(cos_delta).
    static TulsiParams from_cos_delta(double cos_delta, SiteIndex target);
};

// Amplitudes over (ancilla, direction, site). Runs without the ancilla
// register still allocate both slices and keep ancilla 0 at zero.
// Layout: (anc*6 + j)*N + site.
struct WalkState {
    LatticeSpec spec;
    bool has_ancilla = true;
    std::vector<complex_t> amps;

    std::size_t index(int anc, int j, int flat) const {
        return static_cast<std::size_t>((anc * 6 + j)) * spec.n_sites + flat;
    }
    complex_t& amp(int anc, int j, int flat) { return amps[index(anc, j, flat)]; }
    const complex_t& amp(int anc, int j, int flat) const { return amps[index(anc, j, flat)]; }
};

// |1, u_C, u_P>: every ancilla-1 amplitude equal to 1/sqrt(6N).
WalkState uniform_initial_state(const LatticeSpec& spec);

double state_norm(const WalkState& state);

// Applies the evolution operators as sparse in-place maps; holds the gather
// tables and the double buffer, so repeated stepping does not allocate.
// Each output amplitude is a pure function of the input buffer; results are
// bitwise independent of the number of threads.
class WalkEngine {
  public:
    explicit WalkEngine(const LatticeSpec& spec);

    // U = S * (G x I), acting on the ancilla-1 slice.
    void step_standard(WalkState& state);
    // U' = S * C' with the coin replaced by -I at the target site.
    void step_marked(WalkState& state, const SiteIndex& target);
    // U'' including the ancilla rotation and the controlled reflections.
    void step_tulsi(WalkState& state, const TulsiParams& params);

  private:
    enum class CoinKind { standard, marked, tulsi };

    template <CoinKind kind>
    void coined_shift(const complex_t* in, complex_t* out, int target_flat,
                      complex_t target_add);

    LatticeSpec spec_;
    std::vector<std::int32_t> gather_;  // gather_[j*N + m] = neighbor(m, j).flat
    std::vector<complex_t> next_;       // 12N output buffer
    std::vector<complex_t> site_sums_;  // per-site coin sums of the input slice
};

// One-shot conveniences over WalkEngine (value in, value out).
WalkState apply_step_standard(const WalkState& state);
WalkState apply_step_marked(const WalkState& state, const SiteIndex& target);
WalkState apply_step_tulsi(const WalkState& state, const TulsiParams& params);

// |<delta_1, u_C, t | state>|^2, the success probability of the ancilla scheme.
double success_probability_tulsi(const WalkState& state, const TulsiParams& params);
// Probability that a position measurement yields the target site.
double success_probability_position(const WalkState& state, const SiteIndex& target);
// |<u_C, t | state>|^2 on the ancilla-1 slice; the alternative reading of the
// non-ancilla success probability (see search driver).
double success_probability_coin_uniform(const WalkState& state, const SiteIndex& target);

// Snapshot rows (ancilla, j, n1, n2, re, im), one per amplitude.
void write_state_csv(const WalkState& state, std::ostream& os);

}  // namespace triwalk
