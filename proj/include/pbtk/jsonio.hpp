#pragma once

#include <string>

#include <json.hpp>

namespace pbtk {

// Key order is preserved so identical runs serialize byte-identically.
using Json = nlohmann::ordered_json;

/// Format a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace pbtk
