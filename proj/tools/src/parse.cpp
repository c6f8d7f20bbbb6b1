#include "parse.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "loewner/errors.hpp"

namespace loewner::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool try_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(t.c_str(), &end);
  return errno == 0 && end == t.c_str() + t.size();
}

double to_double(const std::string& text) {
  double v = 0.0;
  if (!try_double(text, v)) throw InvalidInput("not a number: '" + text + "'");
  return v;
}

DriverSpec read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open driver table '" + path + "'");
  std::vector<double> times;
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split_list(line);
    double t = 0.0;
    double v = 0.0;
    if (cells.size() != 2 || !try_double(cells[0], t) || !try_double(cells[1], v)) {
      if (times.empty() && line_no == 1) continue;  // header
      throw InvalidInput(path + ":" + std::to_string(line_no) + ": expected 't,value'");
    }
    times.push_back(t);
    values.push_back(v);
  }
  return DriverSpec::tabulated(std::move(times), std::move(values));
}

}  // namespace

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& item : split_list(text)) {
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (item.empty() || errno != 0 || *end != '\0' || v < 1 || v > 100000000) {
      throw InvalidInput("expected a positive integer, got '" + item + "'");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) out.push_back(to_double(item));
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const std::string& item : split_list(text)) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(item.c_str(), &end, 10);
    if (item.empty() || item.front() == '-' || errno != 0 || *end != '\0') {
      throw InvalidInput("expected a non-negative integer seed, got '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

DriverSpec parse_driver(const std::string& token) {
  const std::string t = trim(token);
  if (t.rfind("const:", 0) == 0) return DriverSpec::constant(to_double(t.substr(6)));
  if (t.rfind("table:", 0) == 0) return read_table(t.substr(6));
  if (t.rfind("named:", 0) == 0) {
    const auto parts = split_list(t.substr(6), ':');
    if (parts.empty() || parts[0].empty()) throw InvalidInput("named driver needs an id");
    std::vector<double> params;
    for (std::size_t i = 1; i < parts.size(); ++i) params.push_back(to_double(parts[i]));
    return DriverSpec::named(parts[0], std::move(params));
  }
  throw InvalidInput("unrecognised driver '" + t + "' (use const:, named: or table:)");
}

std::vector<DriverSpec> parse_driver_list(const std::string& text) {
  std::vector<DriverSpec> out;
  for (const std::string& item : split_list(text)) out.push_back(parse_driver(item));
  if (out.empty()) throw InvalidInput("no drivers given");
  return out;
}

}  // namespace loewner::cli
