#ifndef SUBDEBT_SWEEP_TABLE_HPP
#define SUBDEBT_SWEEP_TABLE_HPP

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "subdebt/errors.hpp"

namespace subdebt {

/// Shortest decimal text that parses back to the same double. NaN (an absent
/// value) is written as the empty string.
inline std::string format_real(double value) {
  if (std::isnan(value)) return {};
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

/// Rows of (independent value, outputs) with a fixed set of output columns.
class SweepTable {
public:
  struct Row {
    double independent;
    std::vector<double> outputs;
  };

  SweepTable(std::string independent_name, std::vector<std::string> output_names)
      : independent_name_(std::move(independent_name)), output_names_(std::move(output_names)) {}

  /// Independent values must be strictly increasing.
  void add_row(double independent, std::vector<double> outputs) {
    detail::require(outputs.size() == output_names_.size(), "row has the wrong number of outputs");
    detail::require(rows_.empty() || independent > rows_.back().independent,
                    "independent values must be strictly increasing");
    rows_.push_back({independent, std::move(outputs)});
  }

  const std::string& independent_name() const { return independent_name_; }
  const std::vector<std::string>& output_names() const { return output_names_; }
  const std::vector<Row>& rows() const { return rows_; }

  std::vector<double> column(const std::string& name) const {
    std::vector<double> out;
    out.reserve(rows_.size());
    if (name == independent_name_) {
      for (const Row& r : rows_) out.push_back(r.independent);
      return out;
    }
    for (std::size_t k = 0; k < output_names_.size(); ++k) {
      if (output_names_[k] == name) {
        for (const Row& r : rows_) out.push_back(r.outputs[k]);
        return out;
      }
    }
    throw InvalidInputError("no column named '" + name + "'");
  }

  /// Header row, then one line per row; absent values are empty fields.
  void write_csv(std::ostream& out) const {
    out << independent_name_;
    for (const auto& name : output_names_) out << ',' << name;
    out << '\n';
    for (const Row& r : rows_) {
      out << format_real(r.independent);
      for (double v : r.outputs) out << ',' << format_real(v);
      out << '\n';
    }
  }

  /// {"independent": name, "columns": {name: [...], ...}}; absent values are null.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json columns = nlohmann::ordered_json::object();
    auto emit = [&columns](const std::string& name, const std::vector<double>& values) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (double v : values) {
        if (std::isnan(v)) arr.push_back(nullptr);
        else arr.push_back(v);
      }
      columns[name] = std::move(arr);
    };
    emit(independent_name_, column(independent_name_));
    for (const auto& name : output_names_) emit(name, column(name));
    return {{"independent", independent_name_}, {"columns", std::move(columns)}};
  }

  static SweepTable read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigParseError("empty CSV");
    std::vector<std::string> header = split(line);
    if (header.size() < 2) throw ConfigParseError("CSV header needs at least two columns");
    SweepTable table(header.front(), std::vector<std::string>(header.begin() + 1, header.end()));
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const std::vector<std::string> fields = split(line);
      if (fields.size() != header.size()) throw ConfigParseError("CSV row has the wrong number of fields");
      std::vector<double> outputs;
      outputs.reserve(fields.size() - 1);
      for (std::size_t k = 1; k < fields.size(); ++k) outputs.push_back(parse_field(fields[k]));
      table.add_row(parse_field(fields.front()), std::move(outputs));
    }
    return table;
  }

private:
  static std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
  }

  static double parse_field(const std::string& text) {
    if (text.empty()) return std::numeric_limits<double>::quiet_NaN();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ConfigParseError("not a number in CSV: '" + text + "'");
    }
    return value;
  }

  std::string independent_name_;
  std::vector<std::string> output_names_;
  std::vector<Row> rows_;
};

}  // namespace subdebt

#endif
