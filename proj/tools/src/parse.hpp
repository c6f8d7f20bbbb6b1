#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loewner/driving.hpp"

namespace loewner::cli {

/// Splits on commas; an empty string gives an empty list.
std::vector<std::string> split_list(const std::string& text, char sep = ',');

std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

/// One driver token:
///   const:<v>
///   named:<id>:<p1>:<p2>...
///   table:<path>    two-column "t,value" file, '#' comments and a
///                   non-numeric header line are skipped
DriverSpec parse_driver(const std::string& token);
std::vector<DriverSpec> parse_driver_list(const std::string& text);

}  // namespace loewner::cli
