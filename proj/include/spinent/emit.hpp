#pragma once

#include "spinent/scenario.hpp"

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace spinent {

enum class OutputFormat { Csv, Json };

using Cell = std::variant<double, std::string>;

/// Column-ordered table shared by the CSV and JSON writers.
struct Table {
	std::vector<std::string> header;
	std::vector<std::vector<Cell>> rows;
};

/// Locale-independent rendering with 12 significant digits; -0 prints as 0.
std::string format_number(double value);

/**
 * Lays out a scenario result.
 *
 * Series layout: axis column (tau or the swept parameter), then per site
 * p<k>_x, p<k>_y, p<k>_z, p<k>_mag, then total_p, total_pz, then per pair
 * c<m>_<k>_num, c<m>_<k>_pol, s<m>_<k>_num, s<m>_<k>_pol. With more than one
 * initial state the non-axis columns repeat per state, prefixed `<label>_`.
 *
 * Parametric layout: columns block, p, c with blocks p1, p2 and p_total
 * (prefixed `<label>_` with several initial states), c from the first pair.
 */
Table to_table(const ScenarioResult& result);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

/// Writes to `destination`, or standard output when it is empty or "-". Throws IoError naming the path.
void emit(const ScenarioResult& result, OutputFormat format, const std::string& destination);

} // namespace spinent
