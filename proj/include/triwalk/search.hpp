#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triwalk/lattice.hpp"
#include "triwalk/walk.hpp"

namespace triwalk {

enum class Variant { marked, tulsi };

std::string variant_name(Variant v);

// Either an explicit angle or the auto rule cos(delta) = min(1, c/sqrt(log2 N)).
struct DeltaRule {
    bool auto_rule = true;
    double delta = 0.0;    // used when !auto_rule
    double c_delta = 1.0;  // used when auto_rule

    static DeltaRule explicit_delta(double delta);
    static DeltaRule auto_delta(double c_delta = 1.0);

    TulsiParams resolve(const LatticeSpec& spec, SiteIndex target) const;
};

struct SearchConfig {
    LatticeSpec spec;
    SiteIndex target;  // defaults to (0,0); translation covariance makes it immaterial
    Variant variant = Variant::tulsi;
    DeltaRule delta_rule;
    int max_steps = 0;  // <= 0 selects the default ceil(10 * sqrt(N log2 N))
    // Keep stepping to max_steps after the first peak (full curves for plots
    // and the fixed-length determinism check); t_max detection is unchanged.
    bool stop_at_peak = true;
};

int default_max_steps(const LatticeSpec& spec);

struct SearchTrace {
    std::vector<double> probs;      // success probability per step, step 0 first
    std::vector<double> aux_probs;  // marked variant only: coin-uniform overlap
    int t_max = -1;                 // first local maximum, -1 when none found
    double p_max = 0.0;
    bool no_peak = false;
    Variant variant = Variant::tulsi;
    double cos_delta = 1.0;  // resolved angle (tulsi); 1 for the marked variant
    double delta = 0.0;
    SearchConfig config;
};

// Evolves from the uniform initial state, recording the per-step success
// probability and stopping at the first +/- derivative sign change.
SearchTrace run_search(const SearchConfig& config);

struct SweepPoint {
    int side = 0;
    int n_sites = 0;
    int t_max = -1;
    double p_max = 0.0;
    double sqrt_n_log2_n = 0.0;
    bool no_peak = false;
};

struct ScalingFit {
    std::vector<SweepPoint> points;  // peaked points only, ordered by N
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int log_base = 2;
    std::vector<std::string> warnings;
};

// Least-squares fit of t_max against sqrt(N log2 N); needs >= 3 points.
ScalingFit fit_scaling(const std::vector<SweepPoint>& points);

std::vector<SweepPoint> sweep_runs(const std::vector<int>& sides, Variant variant,
                                   const DeltaRule& rule,
                                   std::vector<std::string>* warnings = nullptr);

ScalingFit sweep_scaling(const std::vector<int>& sides, Variant variant, const DeltaRule& rule);

// (N, p_max) per side, for the plateau plot.
std::vector<std::pair<int, double>> plateau_study(const std::vector<int>& sides,
                                                  const DeltaRule& rule);

}  // namespace triwalk
