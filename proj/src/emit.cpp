#include "spinent/emit.hpp"

#include "spinent/errors.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <iostream>

namespace spinent {

namespace {

std::string site_prefix(int k) { return "p" + std::to_string(k) + "_"; }

std::string pair_suffix(const SitePair& pair) {
	return std::to_string(pair.first) + "_" + std::to_string(pair.second);
}

// value as it reads back from its 12-digit rendering
double rounded(double value) {
	const std::string text = format_number(value);
	double out = 0.0;
	std::from_chars(text.data(), text.data() + text.size(), out);
	return out;
}

Table series_table(const ScenarioResult& result) {
	Table table;
	const bool prefixed = result.series.size() > 1;
	table.header.push_back(result.axis_name);
	for (const SeriesResult& series : result.series) {
		const std::string pre = prefixed ? series.label + "_" : "";
		for (int k = 1; k <= result.n; ++k) {
			for (const char* comp : {"x", "y", "z", "mag"}) {
				table.header.push_back(pre + site_prefix(k) + comp);
			}
		}
		table.header.push_back(pre + "total_p");
		table.header.push_back(pre + "total_pz");
		for (const SitePair& pair : result.pairs) {
			const std::string sfx = pair_suffix(pair);
			table.header.push_back(pre + "c" + sfx + "_num");
			table.header.push_back(pre + "c" + sfx + "_pol");
			table.header.push_back(pre + "s" + sfx + "_num");
			table.header.push_back(pre + "s" + sfx + "_pol");
		}
	}

	const std::size_t rows = result.series.empty() ? 0 : result.series.front().records.size();
	for (std::size_t i = 0; i < rows; ++i) {
		std::vector<Cell> row;
		row.reserve(table.header.size());
		row.emplace_back(result.series.front().records[i].axis);
		for (const SeriesResult& series : result.series) {
			const TimeSeriesRecord& rec = series.records.at(i);
			for (const PolarizationVector& p : rec.sites) {
				row.emplace_back(p.px);
				row.emplace_back(p.py);
				row.emplace_back(p.pz);
				row.emplace_back(p.magnitude);
			}
			row.emplace_back(rec.total_p);
			row.emplace_back(rec.total_pz);
			for (const EntanglementSample& e : rec.pairs) {
				row.emplace_back(e.concurrence);
				row.emplace_back(e.c_from_polarization);
				row.emplace_back(e.entropy);
				row.emplace_back(e.s_from_polarization);
			}
		}
		table.rows.push_back(std::move(row));
	}
	return table;
}

Table parametric_table(const ScenarioResult& result) {
	Table table;
	table.header = {"block", "p", "c"};
	const bool prefixed = result.series.size() > 1;
	for (const SeriesResult& series : result.series) {
		const std::string pre = prefixed ? series.label + "_" : "";
		const std::array<std::string, 3> blocks = {"p1", "p2", "p_total"};
		for (std::size_t b = 0; b < blocks.size(); ++b) {
			for (const TimeSeriesRecord& rec : series.records) {
				const double p = b == 2 ? rec.total_p : rec.sites.at(b).magnitude;
				table.rows.push_back({pre + blocks[b], p, rec.pairs.at(0).concurrence});
			}
		}
	}
	return table;
}

} // namespace

std::string format_number(double value) {
	if (value == 0.0) {
		return "0";
	}
	std::array<char, 64> buf{};
	const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 12);
	return std::string(buf.data(), res.ptr);
}

Table to_table(const ScenarioResult& result) {
	return result.layout == OutputLayout::Parametric ? parametric_table(result) : series_table(result);
}

void write_csv(const Table& table, std::ostream& out) {
	for (std::size_t c = 0; c < table.header.size(); ++c) {
		out << (c ? "," : "") << table.header[c];
	}
	out << '\n';
	for (const auto& row : table.rows) {
		for (std::size_t c = 0; c < row.size(); ++c) {
			out << (c ? "," : "");
			if (const double* v = std::get_if<double>(&row[c])) {
				out << format_number(*v);
			} else {
				out << std::get<std::string>(row[c]);
			}
		}
		out << '\n';
	}
}

void write_json(const Table& table, std::ostream& out) {
	nlohmann::ordered_json doc = nlohmann::ordered_json::array();
	for (const auto& row : table.rows) {
		nlohmann::ordered_json obj = nlohmann::ordered_json::object();
		for (std::size_t c = 0; c < row.size(); ++c) {
			if (const double* v = std::get_if<double>(&row[c])) {
				obj[table.header[c]] = rounded(*v);
			} else {
				obj[table.header[c]] = std::get<std::string>(row[c]);
			}
		}
		doc.push_back(std::move(obj));
	}
	out << doc.dump(1) << '\n';
}

void emit(const ScenarioResult& result, OutputFormat format, const std::string& destination) {
	const Table table = to_table(result);
	if (table.rows.empty()) {
		throw DomainError("nothing to emit: scenario produced no records");
	}
	auto write = [&](std::ostream& out) {
		if (format == OutputFormat::Csv) {
			write_csv(table, out);
		} else {
			write_json(table, out);
		}
	};
	if (destination.empty() || destination == "-") {
		write(std::cout);
		std::cout.flush();
		return;
	}
	std::ofstream file(destination, std::ios::binary | std::ios::trunc);
	if (!file) {
		throw IoError("cannot open '" + destination + "' for writing");
	}
	write(file);
	file.flush();
	if (!file) {
		throw IoError("failed writing '" + destination + "'");
	}
}

} // namespace spinent
