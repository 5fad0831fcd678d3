#pragma once

#include "citeangle/angle.hpp"
#include "citeangle/beauty.hpp"
#include "citeangle/classifier.hpp"
#include "citeangle/series.hpp"
#include "citeangle/sleep.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace citeangle {

inline constexpr int kDefaultMinYears = 10;
inline constexpr const char* kNoCategory = "(none)";

struct SeriesRecord {
    std::string paper_id;
    std::vector<std::string> categories;
    AngleProfile profile;
    BeautyScores beauty;
    ClassResult result;
    SleepProfile sleep;
};

struct SkippedSeries {
    std::string paper_id;
    std::vector<std::string> reasons;
};

/// Exclusive tier histogram; the four counts add up to the classified total.
struct TierCounts {
    std::size_t none = 0;
    std::size_t possible = 0;
    std::size_t typical = 0;
    std::size_t higher = 0;

    void add(Tier t) noexcept;
    [[nodiscard]] std::size_t at(Tier t) const noexcept;
    [[nodiscard]] std::size_t at_least(Tier t) const noexcept;
    [[nodiscard]] std::size_t total() const noexcept { return none + possible + typical + higher; }
};

struct CorpusTotals {
    std::size_t series = 0;      ///< input series
    std::size_t classified = 0;  ///< valid series that got a result
    std::size_t skipped = 0;
    std::size_t short_series = 0;
    TierCounts sg;
    TierCounts sb;
    std::size_t asb = 0;
};

/// Share of a category's papers at tier >= typical.
struct CategoryRow {
    std::string category;
    std::size_t papers = 0;
    std::size_t sg_typical = 0;
    std::size_t sb_typical = 0;
    double sg_pct = 0.0;
    double sb_pct = 0.0;
};

struct CorpusReport {
    CriteriaConfig config;
    int zero_offset = 0;
    std::vector<SeriesRecord> records;  ///< input order
    std::vector<SkippedSeries> skipped;  ///< input order
    CorpusTotals totals;
    std::vector<CategoryRow> categories;
};

struct ReportOptions {
    unsigned jobs = 0;  ///< 0: hardware concurrency
    int min_years = kDefaultMinYears;
    int zero_offset = 0;
};

/// 100 * count / total; 0 for an empty total.
[[nodiscard]] double percent(std::size_t count, std::size_t total) noexcept;

/// Everything about one valid series. Throws std::invalid_argument if it is too short.
[[nodiscard]] SeriesRecord analyze_series(const CitationSeries& series, const CriteriaConfig& config);

/// Classifies every series, skipping (and listing) the invalid ones. Output is
/// in input order for any number of jobs. Throws InputError on an empty corpus.
[[nodiscard]] CorpusReport classify_corpus(const Corpus& corpus, const CriteriaConfig& config,
                                           const ReportOptions& options = {});

/// Per-category shares of papers at tier >= typical, sorted by category.
/// A paper with k categories counts once in each of them.
[[nodiscard]] std::vector<CategoryRow> aggregate_by_category(const CorpusReport& report);

/// Structured report document (see README for the schema).
[[nodiscard]] std::string report_to_json(const CorpusReport& report);

/// Flat per-series CSV table.
void write_series_table(std::ostream& out, const CorpusReport& report);

/// Human-readable totals, optionally with the per-category table.
void write_summary(std::ostream& out, const CorpusReport& report, bool by_category);

enum class CurveLines { peaks, all_peaks };

/// Plot data: one row per year with the count and the zero-point lines.
struct CurveTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Plateau-aware local maxima over [1, T] with a positive count; a plateau
/// reports its first year.
[[nodiscard]] std::vector<Peak> local_peaks(std::span<const Count> counts);

/// Rows (t, c_t, l1(t), l2(t)) with l1 = tan(beta1) t and l2 = tan(beta2) t;
/// all_peaks appends one line per local peak.
[[nodiscard]] CurveTable emit_curve_data(std::span<const Count> counts, const AngleProfile& profile,
                                         CurveLines lines = CurveLines::peaks);

void write_curve(std::ostream& out, const CurveTable& table);

}  // namespace citeangle
