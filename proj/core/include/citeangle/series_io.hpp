#pragma once

#include "citeangle/series.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace citeangle {

/// One paper-year observation of the long format.
struct LongRow {
    std::string paper_id;
    int year = 0;
    Count citations = 0;
    std::vector<std::string> categories;
    std::optional<int> pub_year;  // explicit publication year, overrides min(year)
};

/// One paper of the wide format; counts[t] is the count t years after pub_year.
struct WideRow {
    std::string paper_id;
    int pub_year = 0;
    std::vector<Count> counts;
    std::vector<std::string> categories;
};

struct ParseOptions {
    /// Fill missing interior years with 0 instead of failing.
    bool zero_fill = false;
    /// Receives one message per zero-filled gap.
    std::function<void(const std::string&)> on_warning;
};

enum class TableFormat { long_rows, wide, detect };

/// Builds a corpus from long rows. Series appear in order of each paper's
/// first row. Throws InputError on empty input, duplicate (paper_id, year),
/// negative citations, a year before the explicit pub_year, or a gap in years
/// (unless zero_fill).
[[nodiscard]] Corpus parse_long(std::span<const LongRow> rows, const ParseOptions& options = {});

/// Builds a corpus from wide rows. Throws InputError on empty input, an empty
/// series, negative counts or a duplicate paper_id.
[[nodiscard]] Corpus parse_wide(std::span<const WideRow> rows);

// Text formats. Long: `paper_id,year,citations[,category][,pub_year]`.
// Wide: `paper_id,pub_year,c0,...,cN[,categories]`; trailing empty count cells
// mark a series shorter than the file's widest one.
[[nodiscard]] std::vector<LongRow> read_long_rows(std::istream& in);
[[nodiscard]] std::vector<WideRow> read_wide_rows(std::istream& in);

[[nodiscard]] Corpus read_long(std::istream& in, const ParseOptions& options = {});
[[nodiscard]] Corpus read_wide(std::istream& in);

/// Inspects the header line to tell long from wide. Throws InputError if neither matches.
[[nodiscard]] TableFormat detect_format(const std::string& header_line);

/// Reads a corpus file; `detect` sniffs the header.
[[nodiscard]] Corpus load_corpus(const std::filesystem::path& path, TableFormat format,
                                 const ParseOptions& options = {});

void write_long(std::ostream& out, const Corpus& corpus);
void write_wide(std::ostream& out, const Corpus& corpus);

}  // namespace citeangle
