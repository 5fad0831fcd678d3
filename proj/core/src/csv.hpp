#pragma once

// Minimal RFC 4180 style field splitting. Quoted fields may contain commas and
// doubled quotes; embedded newlines are not supported (one record per line).

#include <string>
#include <string_view>
#include <vector>

namespace citeangle::csv {

[[nodiscard]] std::vector<std::string> split_record(std::string_view line);

[[nodiscard]] std::string quote_if_needed(std::string_view field);

[[nodiscard]] std::string join_record(const std::vector<std::string>& fields);

[[nodiscard]] std::string_view trim(std::string_view s) noexcept;

/// Splits a `;`-separated list, trimming items and dropping empty ones.
[[nodiscard]] std::vector<std::string> split_list(std::string_view s);

}  // namespace citeangle::csv
