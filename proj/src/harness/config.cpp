#include <cctype>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "fracsob/error.hpp"
#include "fracsob/harness.hpp"

namespace fracsob::harness {
namespace {

std::string format_real(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_real(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used == t.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::parse_error, "'" + std::string(key) + "' expects a real number, got '" + t + "'");
}

std::uint64_t parse_uint(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec == std::errc() && ptr == t.data() + t.size() && !t.empty()) return v;
  // Accept exact integers written in real notation, e.g. 1e5.
  const double d = parse_real(key, t);
  if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
  throw Error(Errc::parse_error, "'" + std::string(key) + "' expects a non-negative integer, got '" + t + "'");
}

int parse_int(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec == std::errc() && ptr == t.data() + t.size() && !t.empty()) return v;
  throw Error(Errc::parse_error, "'" + std::string(key) + "' expects an integer, got '" + t + "'");
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::stringstream ss{std::string(text)};
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(parse_real(key, cell));
  if (out.empty()) throw Error(Errc::parse_error, "'" + std::string(key) + "' expects a non-empty list");
  return out;
}

struct Field {
  const char* name;
  const char* type;  // real, uint, int, str, real[]
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, std::string_view)> set;
};

template <class T>
Field real_field(const char* name, T ExperimentConfig::*member) {
  return {name, "real", [member](const ExperimentConfig& c) { return format_real(c.*member); },
          [member, name](ExperimentConfig& c, std::string_view v) { c.*member = parse_real(name, v); }};
}

template <class T>
Field uint_field(const char* name, T ExperimentConfig::*member) {
  return {name, "uint", [member](const ExperimentConfig& c) { return std::to_string(c.*member); },
          [member, name](ExperimentConfig& c, std::string_view v) {
            c.*member = static_cast<T>(parse_uint(name, v));
          }};
}

Field str_field(const char* name, std::string ExperimentConfig::*member) {
  return {name, "str", [member](const ExperimentConfig& c) { return c.*member; },
          [member](ExperimentConfig& c, std::string_view v) { c.*member = trim(v); }};
}

Field list_field(const char* name, std::vector<double> ExperimentConfig::*member) {
  return {name, "real[]",
          [member](const ExperimentConfig& c) {
            std::string s;
            for (std::size_t i = 0; i < (c.*member).size(); ++i) s += (i ? "," : "") + format_real((c.*member)[i]);
            return s;
          },
          [member, name](ExperimentConfig& c, std::string_view v) { c.*member = parse_list(name, v); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      str_field("command", &ExperimentConfig::command),
      real_field("beta", &ExperimentConfig::beta),
      real_field("L", &ExperimentConfig::L),
      real_field("n", &ExperimentConfig::n),
      list_field("n_list", &ExperimentConfig::n_list),
      uint_field("reps", &ExperimentConfig::reps),
      str_field("density", &ExperimentConfig::density),
      real_field("fill", &ExperimentConfig::fill),
      real_field("eps", &ExperimentConfig::eps),
      str_field("variance", &ExperimentConfig::variance),
      uint_field("trials", &ExperimentConfig::trials),
      list_field("A_list", &ExperimentConfig::A_list),
      real_field("A", &ExperimentConfig::A),
      uint_field("budget", &ExperimentConfig::budget),
      uint_field("seed", &ExperimentConfig::seed),
      uint_field("workers", &ExperimentConfig::workers),
      uint_field("grid_points", &ExperimentConfig::grid_points),
      real_field("padding", &ExperimentConfig::padding),
      str_field("suite", &ExperimentConfig::suite),
      {"criterion", "int", [](const ExperimentConfig& c) { return std::to_string(c.criterion); },
       [](ExperimentConfig& c, std::string_view v) {
         c.criterion = parse_int("criterion", v);
       }},
      str_field("out", &ExperimentConfig::out),
  };
  return table;
}

const Field& find_field(std::string_view key) {
  for (const Field& f : fields())
    if (key == f.name) return f;
  throw Error(Errc::parse_error, "unknown config key '" + std::string(key) + "'");
}

}  // namespace

std::vector<std::pair<std::string, std::string>> config_keys() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Field& f : fields()) out.emplace_back(f.name, f.type);
  return out;
}

std::string serialize(const ExperimentConfig& config) {
  std::string out;
  for (const Field& f : fields()) out += std::string(f.name) + ":" + f.type + " = " + f.get(config) + "\n";
  return out;
}

void set_field(ExperimentConfig& config, std::string_view key, std::string_view value) {
  find_field(key).set(config, value);
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::stringstream ss{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    const auto colon = t.find(':');
    if (eq == std::string::npos || colon == std::string::npos || colon > eq)
      throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": expected 'key:type = value'");
    const std::string key = trim(std::string_view(t).substr(0, colon));
    const std::string type = trim(std::string_view(t).substr(colon + 1, eq - colon - 1));
    const Field& f = find_field(key);
    if (type != f.type)
      throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": '" + key + "' has type " +
                                         f.type + ", not " + type);
    f.set(base, std::string_view(t).substr(eq + 1));
  }
  return base;
}

void apply_environment(ExperimentConfig& config,
                       const std::function<const char*(const char*)>& getenv) {
  for (const Field& f : fields()) {
    std::string name = "FRACSOB_";
    for (const char* p = f.name; *p; ++p) name += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
    if (const char* v = getenv(name.c_str())) f.set(config, v);
  }
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.out.clear();
  c.workers = 0;
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : serialize(c)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace fracsob::harness
