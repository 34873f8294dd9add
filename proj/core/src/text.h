// Private string, number and file helpers shared by the loaders.
#ifndef SENSORYREC_SRC_TEXT_H_
#define SENSORYREC_SRC_TEXT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sensoryrec::internal {

std::string_view trim(std::string_view s);
std::string ascii_lower(std::string_view s);

// Splits on every occurrence of `sep`; empty fields are kept.
std::vector<std::string_view> split(std::string_view s, char sep);

// Full-string numeric parses; surrounding whitespace is allowed.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

// Reads a whole file; throws IoError naming the path.
std::string read_file(const std::filesystem::path& path);

// Splits text into lines, dropping a trailing '\r' from each.
std::vector<std::string_view> lines(std::string_view text);

// Minimal RFC 4180 field splitter: double-quoted fields may contain commas
// and doubled quotes.
std::vector<std::string> split_csv_row(std::string_view line);

// Quotes a CSV field only when needed.
std::string csv_field(std::string_view s);

}  // namespace sensoryrec::internal

#endif  // SENSORYREC_SRC_TEXT_H_
