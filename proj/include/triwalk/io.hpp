#pragma once

#include <json.hpp>
#include <string>

#include "triwalk/search.hpp"
#include "triwalk/spectral.hpp"

namespace triwalk {

inline constexpr const char* kEngineVersion = "0.1.0";

// %.17g: enough significant digits for exact double round-trips.
std::string format_g17(double x);

void write_trace_csv(const SearchTrace& trace, std::ostream& os);
void write_sweep_csv(const std::vector<SweepPoint>& points, std::ostream& os);
void write_spectrum_csv(const LatticeSpec& spec, std::ostream& os);

nlohmann::json fit_json(const ScalingFit& fit, const DeltaRule& rule);
nlohmann::json spectrum_summary_json(const SpectrumSummary& summary);

// Sets the worker-thread cap for the step kernels (no-op without OpenMP).
void set_max_threads(int n);

// Default output directory: $TRIWALK_OUT_DIR if set, else the cwd.
std::string default_out_dir();

}  // namespace triwalk
