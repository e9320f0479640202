#pragma once

#include <cstdint>
#include <string>

#include "heatflow/experiment.hpp"
#include "heatflow/gronwall.hpp"
#include "heatflow/grid.hpp"

namespace heatflow {

/// Spectral fields as flat JSON records: {"kind", "bandwidth", "coeffs"}
/// with coefficients in (k-major, l-minor) order.
std::string to_json(const ScalarField& f);
std::string to_json(const VelocityField& f);
ScalarField scalar_from_json(const std::string& text);
VelocityField velocity_from_json(const std::string& text);

/// Grid fields as CSV with node coordinates: header x,y,v or x,y,v1,v2.
std::string to_csv(const GridField& g);
GridField grid_from_csv(const std::string& text);

std::string to_json(const ExponentPlan& plan);
ExponentPlan plan_from_json(const std::string& text);

std::string to_json(const CheckReport& report);
std::string to_json(const EstimateReport& report);

std::string to_json(const GronwallSpec& spec);
GronwallSpec gronwall_spec_from_json(const std::string& text);

std::string to_json(const RunRecord& record);

/// Canonical flat-text dump of a config (parseable by parse_config); this is
/// the snapshot embedded in run records and covered by the content hash.
std::string config_snapshot(const ExperimentConfig& cfg);

/// Per-node norm series as CSV (t, |u|_2, |theta|_2, |u|_{X^a0}, |th|_{Y^b0}).
std::string norm_series_csv(const RunRecord& record);

/// FNV-1a 64-bit over the exact bytes of the numeric payload plus the config
/// snapshot; used for the RunRecord determinism contract.
std::uint64_t content_hash(const RunRecord& record);

void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace heatflow
