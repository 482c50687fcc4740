#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace kselect {

// Formats a double with 17 significant digits using std::to_chars: locale
// independent and guaranteed to round-trip back to the identical bit pattern.
// Used for every floating-point value written to CSV or JSON.
std::string format_double(double value);

// Strict double parser over the full string (no leading/trailing junk,
// '.' decimal point, locale independent). Throws std::invalid_argument.
double parse_double(std::string_view text);

// Strict integer parsers, same contract as parse_double.
long long parse_int(std::string_view text);
std::uint64_t parse_u64(std::string_view text);

// Reads a whole file; throws std::runtime_error if unreadable.
std::string read_text_file(const std::string& path);

// Writes atomically: content goes to "<path>.tmp" which is then renamed over
// the target, so readers never observe a partially written file.
void atomic_write_file(const std::string& path, std::string_view content);

// Minimal JSON string escaping for emitted identifiers/messages.
std::string json_escape(std::string_view text);

}  // namespace kselect
