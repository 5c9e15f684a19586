#pragma once

#include "spinent/measures.hpp"
#include "spinent/propagator.hpp"
#include "spinent/spin_model.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinent {

struct InitialState {
	enum class Kind { Plus, Minus, Bits };
	Kind kind = Kind::Plus;
	std::vector<int> bits; ///< only for Kind::Bits, site 1 first

	std::string label() const;
	DensityMatrix build(int n) const;
};

/// Parameter sweep at a fixed time: `parameter` is any numeric config key, e.g. chain.omega1.
struct SweepAxis {
	std::string parameter;
	std::vector<double> values;
	double tau = 0.0;
};

enum class OutputLayout {
	Series,     ///< one row per time (or sweep value)
	Parametric, ///< (polarization, concurrence) pairs in blocks p1, p2, p_total
};

using SitePair = std::pair<int, int>;

/**
 * Flat `key = value` settings that describe a scenario. Builtins, config files
 * and command-line overrides all feed the same map; later writes win.
 */
using Settings = std::map<std::string, std::string>;

struct ScenarioConfig {
	std::string name;
	ChainSpec chain;
	std::vector<InitialState> initials;
	TimeGrid grid{{0.0}};
	std::vector<SitePair> measured_pairs;
	std::optional<SweepAxis> sweep;
	OutputLayout layout = OutputLayout::Series;
	/// Settings the config was built from; sweeps re-apply them per value.
	Settings settings;
};

/// Parses `key = value` lines; `#` starts a comment. Throws ConfigError with the line number.
Settings parse_settings(std::string_view text);

/// Splits `key=value` as given on the command line.
std::pair<std::string, std::string> parse_override(std::string_view assignment);

/// Builds and validates a config. Unknown keys and bad values throw ConfigError naming the key.
ScenarioConfig build_config(const Settings& settings);

std::vector<std::string> builtin_names();
bool is_builtin(std::string_view name);
/// Settings text of a builtin scenario. Throws ConfigError for unknown names.
std::string builtin_text(std::string_view name);
ScenarioConfig builtin_scenario(std::string_view name);

struct TimeSeriesRecord {
	/// tau, or the sweep value for sweeps
	double axis = 0.0;
	std::vector<PolarizationVector> sites;
	double total_p = 0.0;
	/// signed sum of z components
	double total_pz = 0.0;
	/// aligned with ScenarioResult::pairs
	std::vector<EntanglementSample> pairs;
};

struct SeriesResult {
	std::string label; ///< initial state label
	std::vector<TimeSeriesRecord> records;
};

struct ScenarioResult {
	std::string name;
	std::string axis_name;
	int n = 0;
	std::vector<SitePair> pairs;
	OutputLayout layout = OutputLayout::Series;
	std::vector<SeriesResult> series;
};

/// Chain spec of a config with a sweep value substituted (or as is, without a sweep).
ChainSpec chain_for(const ScenarioConfig& config, std::optional<double> sweep_value = std::nullopt);

/// All measures of one state.
TimeSeriesRecord measure(const DensityMatrix& rho, int n, const std::vector<SitePair>& pairs, double axis);

/// Builds the Hamiltonian and initial states, evolves over the grid (or sweep) and measures every point.
ScenarioResult run_scenario(const ScenarioConfig& config);

} // namespace spinent
