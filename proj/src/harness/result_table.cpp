#include <chrono>
#include <ctime>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "fracsob/error.hpp"
#include "fracsob/harness.hpp"

namespace fracsob::harness {

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void ResultTable::add_row(std::vector<double> row) {
  require(row.size() == columns_.size(), Errc::invalid_argument,
          "row has " + std::to_string(row.size()) + " values for " + std::to_string(columns_.size()) +
              " columns");
  rows_.push_back(std::move(row));
}

void ResultTable::set_meta(const std::string& key, const std::string& value) {
  for (auto& [k, v] : meta_)
    if (k == key) {
      v = value;
      return;
    }
  meta_.emplace_back(key, value);
}

std::vector<double> ResultTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns_.size(); ++c)
    if (columns_[c] == name) {
      std::vector<double> out;
      for (const auto& r : rows_) out.push_back(r[c]);
      return out;
    }
  throw Error(Errc::invalid_argument, "no column '" + name + "'");
}

double ResultTable::at(std::size_t row, const std::string& name) const {
  return column(name).at(row);
}

std::string ResultTable::body() const {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c];
  out << '\n';
  for (const auto& r : rows_) {
    for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << r[c];
    out << '\n';
  }
  return out.str();
}

void ResultTable::write(std::ostream& out) const {
  for (const auto& [k, v] : meta_) {
    // Multi-line values (the resolved config) get one prefixed line each.
    std::stringstream lines(v);
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
      out << "# " << (first ? k + ": " : std::string(k.size() + 2, ' ')) << line << '\n';
      first = false;
    }
    if (first) out << "# " << k << ":\n";
  }
  out << body();
}

ResultTable ResultTable::read(std::istream& in) {
  ResultTable t;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon != std::string::npos && line.size() > 2 && line[2] != ' ')
        t.meta_.emplace_back(line.substr(2, colon - 2), colon + 2 <= line.size() ? line.substr(colon + 2) : "");
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (!header) {
      while (std::getline(ss, cell, ',')) t.columns_.push_back(cell);
      header = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(Errc::parse_error, "not a number: '" + cell + "'");
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

void stamp_metadata(ResultTable& table, const ExperimentConfig& config) {
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << config_hash(config);
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  table.set_meta("fracsob", FRACSOB_VERSION);
  table.set_meta("command", config.command);
  table.set_meta("config_hash", hash.str());
  table.set_meta("seed", std::to_string(config.seed));
  table.set_meta("timestamp", ts.str());
  table.set_meta("config", serialize(config));
}

}  // namespace fracsob::harness
