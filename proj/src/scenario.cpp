#include "spinent/scenario.hpp"

#include "spinent/errors.hpp"
#include "spinent/states.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>

namespace spinent {

namespace {

std::string_view trim(std::string_view s) {
	const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
	const auto first = std::find_if(s.begin(), s.end(), not_space);
	const auto last = std::find_if(s.rbegin(), s.rend(), not_space).base();
	return first < last ? std::string_view(first, static_cast<std::size_t>(last - first)) : std::string_view{};
}

std::vector<std::string_view> split(std::string_view s, char sep) {
	std::vector<std::string_view> parts;
	if (trim(s).empty()) {
		return parts;
	}
	std::size_t start = 0;
	while (true) {
		const std::size_t pos = s.find(sep, start);
		parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
		if (pos == std::string_view::npos) {
			break;
		}
		start = pos + 1;
	}
	return parts;
}

double parse_double(const std::string& key, std::string_view text) {
	text = trim(text);
	double value = 0.0;
	const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
	if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
		throw ConfigError(key, "expected a number, got '" + std::string(text) + "'");
	}
	if (!std::isfinite(value)) {
		throw ConfigError(key, "value must be finite");
	}
	return value;
}

long parse_integer(const std::string& key, std::string_view text) {
	text = trim(text);
	long value = 0;
	const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
	if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
		throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
	}
	return value;
}

std::vector<double> parse_doubles(const std::string& key, std::string_view text) {
	std::vector<double> out;
	for (const auto part : split(text, ',')) {
		out.push_back(parse_double(key, part));
	}
	return out;
}

std::vector<int> parse_sites(const std::string& key, std::string_view text) {
	std::vector<int> out;
	if (trim(text) == "none") {
		return out;
	}
	for (const auto part : split(text, ',')) {
		out.push_back(static_cast<int>(parse_integer(key, part)));
	}
	return out;
}

InitialState parse_initial(std::string_view text) {
	if (text == "plus") {
		return {InitialState::Kind::Plus, {}};
	}
	if (text == "minus") {
		return {InitialState::Kind::Minus, {}};
	}
	InitialState state{InitialState::Kind::Bits, {}};
	for (const char c : text) {
		if (c != '0' && c != '1') {
			throw ConfigError("initial", "expected plus, minus or a bit string, got '" + std::string(text) + "'");
		}
		state.bits.push_back(c - '0');
	}
	if (state.bits.empty()) {
		throw ConfigError("initial", "empty initial state");
	}
	return state;
}

std::vector<double> linspace_values(const std::string& key, double lo, double hi, long count) {
	if (count < 1) {
		throw ConfigError(key, "point count must be positive");
	}
	std::vector<double> values(static_cast<std::size_t>(count));
	for (long i = 0; i < count; ++i) {
		values[static_cast<std::size_t>(i)] =
		    count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
	}
	values.back() = count == 1 ? lo : hi;
	return values;
}

const Settings& defaults() {
	static const Settings d = {
	    {"name", "custom"},
	    {"chain.n", "2"},
	    {"chain.d12", "1"},
	    {"chain.coupling", "inverse-cube"},
	    {"chain.couplings", ""},
	    {"chain.irradiated", "1,2"},
	    {"chain.omega1", "0.5"},
	    {"chain.offsets", ""},
	    {"chain.model", "full-secular"},
	    {"chain.kappa", "1.5"},
	    {"chain.zz_weight", "1"},
	    {"chain.transverse", "flip-flop"},
	    {"initial", "plus"},
	    {"grid.min", "0"},
	    {"grid.max", "25"},
	    {"grid.points", "501"},
	    {"pairs", "1-2"},
	    {"sweep.parameter", ""},
	    {"sweep.min", "0"},
	    {"sweep.max", "3"},
	    {"sweep.points", "301"},
	    {"sweep.tau", "5.4"},
	    {"output.layout", "series"},
	};
	return d;
}

ChainSpec parse_chain(const Settings& s) {
	ChainSpec chain;
	chain.n = static_cast<int>(parse_integer("chain.n", s.at("chain.n")));
	chain.d12 = parse_double("chain.d12", s.at("chain.d12"));

	const std::string& law = s.at("chain.coupling");
	if (law == "inverse-cube") {
		chain.coupling_law = CouplingLaw::InverseCube;
	} else if (law == "nearest-neighbor") {
		chain.coupling_law = CouplingLaw::NearestNeighbor;
	} else if (law == "explicit") {
		chain.coupling_law = CouplingLaw::Explicit;
		const std::vector<double> entries = parse_doubles("chain.couplings", s.at("chain.couplings"));
		if (chain.n < 1 || entries.size() != static_cast<std::size_t>(chain.n) * static_cast<std::size_t>(chain.n)) {
			throw ConfigError("chain.couplings", "expected n*n row-major entries");
		}
		chain.explicit_couplings.resize(chain.n, chain.n);
		for (int j = 0; j < chain.n; ++j) {
			for (int k = 0; k < chain.n; ++k) {
				chain.explicit_couplings(j, k) = entries[static_cast<std::size_t>(j * chain.n + k)];
			}
		}
	} else {
		throw ConfigError("chain.coupling", "expected inverse-cube, nearest-neighbor or explicit, got '" + law + "'");
	}

	chain.irradiated = parse_sites("chain.irradiated", s.at("chain.irradiated"));
	chain.omega1 = parse_doubles("chain.omega1", s.at("chain.omega1"));
	chain.offsets = parse_doubles("chain.offsets", s.at("chain.offsets"));

	const std::string& model = s.at("chain.model");
	if (model == "full-secular") {
		chain.model = DipolarModel::FullSecular;
	} else if (model == "zz-only") {
		chain.model = DipolarModel::ZzOnly;
	} else {
		throw ConfigError("chain.model", "expected full-secular or zz-only, got '" + model + "'");
	}
	chain.kappa = parse_double("chain.kappa", s.at("chain.kappa"));
	chain.zz_weight = parse_double("chain.zz_weight", s.at("chain.zz_weight"));

	const std::string& transverse = s.at("chain.transverse");
	if (transverse == "flip-flop") {
		chain.transverse = TransverseForm::FlipFlop;
	} else if (transverse == "double-quantum") {
		chain.transverse = TransverseForm::DoubleQuantum;
	} else {
		throw ConfigError("chain.transverse", "expected flip-flop or double-quantum, got '" + transverse + "'");
	}
	chain.validate();
	return chain;
}

std::string format_sweep_value(double v) {
	std::array<char, 64> buf{};
	const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
	return std::string(buf.data(), res.ptr);
}

// name -> settings text
const std::vector<std::pair<std::string, std::string>>& builtins() {
	static const std::vector<std::pair<std::string, std::string>> table = {
	    {"fig1a", R"(# two driven spins from the all-up state
name = fig1a
chain.n = 2
chain.model = full-secular
chain.irradiated = 1,2
chain.omega1 = 0.5
initial = plus
grid.min = 0
grid.max = 25
grid.points = 501
pairs = 1-2
)"},
	    {"fig1b", R"(# two driven spins from the one-flip state
name = fig1b
chain.n = 2
chain.model = full-secular
chain.irradiated = 1,2
chain.omega1 = 0.5
initial = minus
grid.min = 0
grid.max = 25
grid.points = 501
pairs = 1-2
)"},
	    {"fig2", R"(# concurrence against individual and total polarization, one-flip start
name = fig2
chain.n = 2
chain.model = full-secular
chain.irradiated = 1,2
chain.omega1 = 0.5
initial = minus
grid.min = 0
grid.max = 25
grid.points = 501
pairs = 1-2
output.layout = parametric
)"},
	    {"fig3a", R"(# concurrence at fixed time against drive amplitude
name = fig3a
chain.n = 2
chain.model = full-secular
chain.irradiated = 1,2
chain.omega1 = 0
initial = plus,minus
pairs = 1-2
sweep.parameter = chain.omega1
sweep.min = 0
sweep.max = 3
sweep.points = 301
sweep.tau = 5.4
)"},
	    {"fig3b", R"(# no drive: entanglement from the flip-flop term alone
name = fig3b
chain.n = 2
chain.model = full-secular
chain.irradiated = 1,2
chain.omega1 = 0
initial = plus,minus
grid.min = 0
grid.max = 25
grid.points = 501
pairs = 1-2
)"},
	    {"fig4plus", R"(# ends of an eight-spin ZZ chain, all-up start
name = fig4plus
chain.n = 8
chain.coupling = inverse-cube
chain.model = zz-only
chain.irradiated = 1,8
chain.omega1 = 0.5
initial = plus
grid.min = 0
grid.max = 4000
grid.points = 2001
pairs = 1-8
)"},
	    {"fig4minus", R"(# ends of an eight-spin ZZ chain, site 1 flipped
name = fig4minus
chain.n = 8
chain.coupling = inverse-cube
chain.model = zz-only
chain.irradiated = 1,8
chain.omega1 = 0.5
initial = minus
grid.min = 0
grid.max = 4000
grid.points = 2001
pairs = 1-8
)"},
	};
	return table;
}

} // namespace

std::string InitialState::label() const {
	switch (kind) {
	case Kind::Plus:
		return "plus";
	case Kind::Minus:
		return "minus";
	case Kind::Bits:
		break;
	}
	std::string s;
	for (const int b : bits) {
		s.push_back(static_cast<char>('0' + b));
	}
	return s;
}

DensityMatrix InitialState::build(int n) const {
	switch (kind) {
	case Kind::Plus:
		return rho_plus(n);
	case Kind::Minus:
		return rho_minus(n);
	case Kind::Bits:
		break;
	}
	return product_state(bits);
}

Settings parse_settings(std::string_view text) {
	Settings out;
	std::size_t line_no = 0;
	for (const auto raw : split(text, '\n')) {
		++line_no;
		std::string_view line = raw;
		if (const auto hash = line.find('#'); hash != std::string_view::npos) {
			line = line.substr(0, hash);
		}
		line = trim(line);
		if (line.empty()) {
			continue;
		}
		const auto eq = line.find('=');
		if (eq == std::string_view::npos) {
			throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
		}
		const std::string key(trim(line.substr(0, eq)));
		if (key.empty()) {
			throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
		}
		out[key] = std::string(trim(line.substr(eq + 1)));
	}
	return out;
}

std::pair<std::string, std::string> parse_override(std::string_view assignment) {
	const auto eq = assignment.find('=');
	if (eq == std::string_view::npos || trim(assignment.substr(0, eq)).empty()) {
		throw ConfigError("", "override '" + std::string(assignment) + "' is not of the form key=value");
	}
	return {std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1)))};
}

ScenarioConfig build_config(const Settings& settings) {
	Settings s = defaults();
	for (const auto& [key, value] : settings) {
		if (!s.contains(key)) {
			throw ConfigError(key, "unknown setting");
		}
		s[key] = value;
	}

	ScenarioConfig config;
	config.settings = s;
	config.name = s.at("name");
	config.chain = parse_chain(s);

	for (const auto part : split(s.at("initial"), ',')) {
		config.initials.push_back(parse_initial(part));
	}
	if (config.initials.empty()) {
		throw ConfigError("initial", "at least one initial state is required");
	}
	for (const InitialState& init : config.initials) {
		if (init.kind == InitialState::Kind::Bits && init.bits.size() != static_cast<std::size_t>(config.chain.n)) {
			throw ConfigError("initial", "bit string '" + init.label() + "' does not have " +
			                                 std::to_string(config.chain.n) + " sites");
		}
	}

	const double gmin = parse_double("grid.min", s.at("grid.min"));
	const double gmax = parse_double("grid.max", s.at("grid.max"));
	const long gpoints = parse_integer("grid.points", s.at("grid.points"));
	if (gmin < 0.0) {
		throw ConfigError("grid.min", "must be >= 0");
	}
	if (gpoints > 1 && !(gmax > gmin)) {
		throw ConfigError("grid.max", "must exceed grid.min");
	}
	config.grid = TimeGrid(linspace_values("grid.points", gmin, gmax, gpoints));

	for (const auto part : split(s.at("pairs"), ',')) {
		const auto dash = part.find('-');
		if (dash == std::string_view::npos) {
			throw ConfigError("pairs", "expected pairs like 1-2, got '" + std::string(part) + "'");
		}
		const int m = static_cast<int>(parse_integer("pairs", part.substr(0, dash)));
		const int k = static_cast<int>(parse_integer("pairs", part.substr(dash + 1)));
		if (m < 1 || m > config.chain.n || k < 1 || k > config.chain.n) {
			throw ConfigError("pairs", "pair " + std::string(part) + " outside [1, " + std::to_string(config.chain.n) + "]");
		}
		if (m == k) {
			throw ConfigError("pairs", "pair " + std::string(part) + " repeats a site");
		}
		config.measured_pairs.emplace_back(m, k);
	}

	if (const std::string& parameter = s.at("sweep.parameter"); !parameter.empty()) {
		if (!parameter.starts_with("chain.") || !s.contains(parameter) || parameter == "chain.n" ||
		    parameter == "chain.coupling" || parameter == "chain.model" || parameter == "chain.transverse" ||
		    parameter == "chain.irradiated" || parameter == "chain.couplings" || parameter == "chain.offsets") {
			throw ConfigError("sweep.parameter", "'" + parameter + "' is not a sweepable numeric chain setting");
		}
		SweepAxis axis;
		axis.parameter = parameter;
		axis.values = linspace_values("sweep.points", parse_double("sweep.min", s.at("sweep.min")),
		                              parse_double("sweep.max", s.at("sweep.max")),
		                              parse_integer("sweep.points", s.at("sweep.points")));
		axis.tau = parse_double("sweep.tau", s.at("sweep.tau"));
		if (axis.tau < 0.0) {
			throw ConfigError("sweep.tau", "must be >= 0");
		}
		config.sweep = std::move(axis);
		// every value must yield a valid chain
		(void)chain_for(config, config.sweep->values.front());
		(void)chain_for(config, config.sweep->values.back());
	}

	const std::string& layout = s.at("output.layout");
	if (layout == "series") {
		config.layout = OutputLayout::Series;
	} else if (layout == "parametric") {
		config.layout = OutputLayout::Parametric;
		if (config.chain.n < 2 || config.measured_pairs.empty()) {
			throw ConfigError("output.layout", "parametric output needs a measured pair");
		}
	} else {
		throw ConfigError("output.layout", "expected series or parametric, got '" + layout + "'");
	}
	return config;
}

std::vector<std::string> builtin_names() {
	std::vector<std::string> names;
	for (const auto& [name, text] : builtins()) {
		names.push_back(name);
	}
	return names;
}

bool is_builtin(std::string_view name) {
	return std::any_of(builtins().begin(), builtins().end(), [&](const auto& entry) { return entry.first == name; });
}

std::string builtin_text(std::string_view name) {
	for (const auto& [key, text] : builtins()) {
		if (key == name) {
			return text;
		}
	}
	throw ConfigError("scenario", "unknown builtin scenario '" + std::string(name) + "'");
}

ScenarioConfig builtin_scenario(std::string_view name) { return build_config(parse_settings(builtin_text(name))); }

ChainSpec chain_for(const ScenarioConfig& config, std::optional<double> sweep_value) {
	if (!sweep_value || !config.sweep) {
		return config.chain;
	}
	Settings s = config.settings;
	s[config.sweep->parameter] = format_sweep_value(*sweep_value);
	return parse_chain(s);
}

TimeSeriesRecord measure(const DensityMatrix& rho, int n, const std::vector<SitePair>& pairs, double axis) {
	TimeSeriesRecord record;
	record.axis = axis;
	record.sites.reserve(static_cast<std::size_t>(n));
	for (int k = 1; k <= n; ++k) {
		const PolarizationVector p = polarization(rho, k, n);
		record.total_p += p.magnitude;
		record.total_pz += p.pz;
		record.sites.push_back(p);
	}
	record.pairs.reserve(pairs.size());
	for (const auto& [m, k] : pairs) {
		record.pairs.push_back(entanglement_sample(rho, m, k, n));
	}
	return record;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
	ScenarioResult result;
	result.name = config.name;
	result.n = config.chain.n;
	result.pairs = config.measured_pairs;
	result.layout = config.layout;
	result.axis_name = "tau";
	const int n = config.chain.n;

	if (config.sweep) {
		const std::string& parameter = config.sweep->parameter;
		result.axis_name = parameter.substr(parameter.rfind('.') + 1);
		std::vector<Propagator> propagators;
		propagators.reserve(config.sweep->values.size());
		for (const double value : config.sweep->values) {
			propagators.emplace_back(build_hamiltonian(chain_for(config, value)));
		}
		for (const InitialState& init : config.initials) {
			const DensityMatrix rho0 = init.build(n);
			SeriesResult series{init.label(), {}};
			for (std::size_t i = 0; i < propagators.size(); ++i) {
				const DensityMatrix rho = propagators[i].state_at(rho0, config.sweep->tau);
				series.records.push_back(measure(rho, n, config.measured_pairs, config.sweep->values[i]));
			}
			result.series.push_back(std::move(series));
		}
		return result;
	}

	const Propagator propagator(build_hamiltonian(config.chain));
	for (const InitialState& init : config.initials) {
		SeriesResult series{init.label(), {}};
		series.records.reserve(config.grid.size());
		propagator.for_each(init.build(n), config.grid, [&](std::size_t, double tau, const DensityMatrix& rho) {
			series.records.push_back(measure(rho, n, config.measured_pairs, tau));
		});
		result.series.push_back(std::move(series));
	}
	return result;
}

} // namespace spinent
