#include "triwalk/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace triwalk {

std::string variant_name(Variant v) { return v == Variant::tulsi ? "tulsi" : "marked"; }

DeltaRule DeltaRule::explicit_delta(double delta) {
    DeltaRule r;
    r.auto_rule = false;
    r.delta = delta;
    return r;
}

DeltaRule DeltaRule::auto_delta(double c_delta) {
    if (c_delta <= 0.0) throw std::invalid_argument("c_delta must be positive");
    DeltaRule r;
    r.auto_rule = true;
    r.c_delta = c_delta;
    return r;
}

TulsiParams DeltaRule::resolve(const LatticeSpec& spec, SiteIndex target) const {
    if (!auto_rule) return TulsiParams::from_delta(delta, target);
    const double cd = std::min(1.0, c_delta / std::sqrt(std::log2(double(spec.n_sites))));
    return TulsiParams::from_cos_delta(cd, target);
}

int default_max_steps(const LatticeSpec& spec) {
    const double n = static_cast<double>(spec.n_sites);
    return static_cast<int>(std::ceil(10.0 * std::sqrt(n * std::log2(n))));
}

SearchTrace run_search(const SearchConfig& config) {
    const LatticeSpec& spec = config.spec;
    if (config.target.flat < 0 || config.target.flat >= spec.n_sites)
        throw std::out_of_range("target site outside lattice");
    const int max_steps = config.max_steps > 0 ? config.max_steps : default_max_steps(spec);

    const TulsiParams params = config.delta_rule.resolve(spec, config.target);

    SearchTrace trace;
    trace.variant = config.variant;
    trace.config = config;
    trace.config.max_steps = max_steps;
    if (config.variant == Variant::tulsi) {
        trace.cos_delta = params.cos_delta;
        trace.delta = params.delta;
    }

    WalkEngine engine(spec);
    WalkState state = uniform_initial_state(spec);
    state.has_ancilla = config.variant == Variant::tulsi;

    const auto record = [&] {
        if (config.variant == Variant::tulsi) {
            trace.probs.push_back(success_probability_tulsi(state, params));
        } else {
            trace.probs.push_back(success_probability_position(state, config.target));
            trace.aux_probs.push_back(success_probability_coin_uniform(state, config.target));
        }
    };

    record();
    bool found = false;
    for (int t = 1; t <= max_steps; ++t) {
        if (config.variant == Variant::tulsi)
            engine.step_tulsi(state, params);
        else
            engine.step_marked(state, config.target);
        record();
        // candidate peak at t-1 once probs[t] is known
        if (!found && t >= 2 && trace.probs[t - 1] >= trace.probs[t - 2] &&
            trace.probs[t - 1] > trace.probs[t]) {
            trace.t_max = t - 1;
            trace.p_max = trace.probs[t - 1];
            found = true;
            if (config.stop_at_peak) break;
        }
    }
    if (!found) {
        trace.no_peak = true;
        trace.t_max = -1;
        trace.p_max = *std::max_element(trace.probs.begin(), trace.probs.end());
    }
    return trace;
}

std::vector<SweepPoint> sweep_runs(const std::vector<int>& sides, Variant variant,
                                   const DeltaRule& rule, std::vector<std::string>* warnings) {
    if (sides.empty()) throw std::invalid_argument("sweep requires at least one side");
    for (std::size_t i = 0; i < sides.size(); ++i) {
        if (sides[i] < 4) throw std::invalid_argument("sweep sides must be >= 4");
        if (i > 0 && sides[i] <= sides[i - 1])
            throw std::invalid_argument("sweep sides must be strictly ascending");
    }

    std::vector<SweepPoint> points;
    points.reserve(sides.size());
    int prev_t_max = -1;
    for (int side : sides) {
        SearchConfig cfg;
        cfg.spec = LatticeSpec(side);
        cfg.target = make_site(cfg.spec, 0, 0);
        cfg.variant = variant;
        cfg.delta_rule = rule;
        const SearchTrace trace = run_search(cfg);

        SweepPoint p;
        p.side = side;
        p.n_sites = cfg.spec.n_sites;
        p.t_max = trace.t_max;
        p.p_max = trace.p_max;
        const double n = static_cast<double>(p.n_sites);
        p.sqrt_n_log2_n = std::sqrt(n * std::log2(n));
        p.no_peak = trace.no_peak;
        if (trace.no_peak && warnings)
            warnings->push_back("no peak within max_steps at side " + std::to_string(side) +
                                "; point excluded from fit");
        if (!trace.no_peak) {
            if (prev_t_max >= 0 && trace.t_max < prev_t_max && warnings)
                warnings->push_back("t_max decreased from " + std::to_string(prev_t_max) +
                                    " to " + std::to_string(trace.t_max) + " at side " +
                                    std::to_string(side) + " (anomaly, not fatal)");
            prev_t_max = trace.t_max;
        }
        points.push_back(p);
    }
    return points;
}

ScalingFit fit_scaling(const std::vector<SweepPoint>& points) {
    ScalingFit fit;
    for (const SweepPoint& p : points)
        if (!p.no_peak) fit.points.push_back(p);
    if (fit.points.size() < 3)
        throw std::invalid_argument("fit requires >= 3 points");

    const std::size_t m = fit.points.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const SweepPoint& p : fit.points) {
        sx += p.sqrt_n_log2_n;
        sy += p.t_max;
        sxx += p.sqrt_n_log2_n * p.sqrt_n_log2_n;
        sxy += p.sqrt_n_log2_n * p.t_max;
    }
    const double denom = m * sxx - sx * sx;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;

    const double mean_y = sy / m;
    double ss_res = 0, ss_tot = 0;
    for (const SweepPoint& p : fit.points) {
        const double yhat = fit.slope * p.sqrt_n_log2_n + fit.intercept;
        ss_res += (p.t_max - yhat) * (p.t_max - yhat);
        ss_tot += (p.t_max - mean_y) * (p.t_max - mean_y);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

ScalingFit sweep_scaling(const std::vector<int>& sides, Variant variant, const DeltaRule& rule) {
    std::vector<std::string> warnings;
    const std::vector<SweepPoint> points = sweep_runs(sides, variant, rule, &warnings);
    ScalingFit fit = fit_scaling(points);
    fit.warnings = std::move(warnings);
    return fit;
}

std::vector<std::pair<int, double>> plateau_study(const std::vector<int>& sides,
                                                  const DeltaRule& rule) {
    std::vector<std::string> warnings;
    const std::vector<SweepPoint> points = sweep_runs(sides, Variant::tulsi, rule, &warnings);
    std::vector<std::pair<int, double>> out;
    out.reserve(points.size());
    for (const SweepPoint& p : points) out.emplace_back(p.n_sites, p.p_max);
    return out;
}

}  // namespace triwalk
