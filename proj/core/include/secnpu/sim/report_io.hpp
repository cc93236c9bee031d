#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "secnpu/sim/simulate.hpp"

namespace secnpu::sim {

nlohmann::json to_json(const SchemeReport& report);

// Aligned columns, one row per report: workload, scheme, normalized
// traffic/time/energy and the metadata breakdown.
void write_summary_text(std::ostream& out, std::span<const SchemeReport> reports);

// Plot data, one row per (workload, scheme). metric is "traffic", "time"
// or "energy"; anything else throws std::invalid_argument.
void write_plot_csv(std::ostream& out, std::span<const SchemeReport> reports, const std::string& metric);

}  // namespace secnpu::sim
