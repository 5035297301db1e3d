#include "triwalk/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace triwalk {

std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_trace_csv(const SearchTrace& trace, std::ostream& os) {
    const bool with_aux = trace.variant == Variant::marked;
    os << (with_aux ? "step,prob,prob_overlap\n" : "step,prob\n");
    for (std::size_t t = 0; t < trace.probs.size(); ++t) {
        os << t << ',' << format_g17(trace.probs[t]);
        if (with_aux) os << ',' << format_g17(trace.aux_probs[t]);
        os << '\n';
    }
}

void write_sweep_csv(const std::vector<SweepPoint>& points, std::ostream& os) {
    os << "side,N,t_max,p_max,sqrt_NlogN\n";
    for (const SweepPoint& p : points)
        os << p.side << ',' << p.n_sites << ',' << p.t_max << ',' << format_g17(p.p_max) << ','
           << format_g17(p.sqrt_n_log2_n) << '\n';
}

void write_spectrum_csv(const LatticeSpec& spec, std::ostream& os) {
    os << "k1,k2,ktilde1,ktilde2,cos_theta,theta,one_minus_cos_inv\n";
    for (const WaveVector& k : enumerate_wavevectors(spec)) {
        const double c = dispersion_cos(k);
        const double inv = 1.0 / (1.0 - c);  // inf at k = 0
        os << k.k1 << ',' << k.k2 << ',' << format_g17(k.ktilde1) << ','
           << format_g17(k.ktilde2) << ',' << format_g17(c) << ','
           << format_g17(dispersion(k)) << ',' << format_g17(inv) << '\n';
    }
}

nlohmann::json fit_json(const ScalingFit& fit, const DeltaRule& rule) {
    nlohmann::json points = nlohmann::json::array();
    for (const SweepPoint& p : fit.points)
        points.push_back({{"side", p.side},
                          {"N", p.n_sites},
                          {"t_max", p.t_max},
                          {"p_max", p.p_max},
                          {"sqrt_NlogN", p.sqrt_n_log2_n}});
    nlohmann::json delta;
    if (rule.auto_rule)
        delta = {{"rule", "auto"}, {"c_delta", rule.c_delta}};
    else
        delta = {{"rule", "explicit"}, {"delta", rule.delta}};
    return {{"slope", fit.slope},
            {"intercept", fit.intercept},
            {"r_squared", fit.r_squared},
            {"points", points},
            {"delta_rule", delta},
            {"log_base", fit.log_base}};
}

nlohmann::json spectrum_summary_json(const SpectrumSummary& summary) {
    return {{"side", summary.side},
            {"N", summary.n_sites},
            {"delta", summary.delta},
            {"exact_sum", summary.exact_sum},
            {"quadrature_estimate", summary.quadrature_estimate},
            {"alpha", summary.alpha},
            {"scaling_ratio", summary.scaling_ratio},
            {"log_base", 2}};
}

void set_max_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

std::string default_out_dir() {
    if (const char* env = std::getenv("TRIWALK_OUT_DIR")) return env;
    return ".";
}

}  // namespace triwalk
