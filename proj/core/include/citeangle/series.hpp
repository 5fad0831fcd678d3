#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace citeangle {

using Count = std::int64_t;

inline constexpr int kMinPubYear = 1000;
inline constexpr int kMaxPubYear = 3000;

/// Raised for malformed or inconsistent input data (CLI exit code 1).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One paper's annual citation counts. counts[t] is the number of citations
/// received t years after publication; counts[0] is the publication year.
struct CitationSeries {
    std::string paper_id;
    int pub_year = 0;
    std::vector<Count> counts;
    std::vector<std::string> categories;

    /// Last year index T (counts.size() - 1). Undefined for an empty series.
    [[nodiscard]] int last_year() const noexcept { return static_cast<int>(counts.size()) - 1; }

    friend bool operator==(const CitationSeries&, const CitationSeries&) = default;
};

/// Insertion-ordered collection of series with unique paper ids.
class Corpus {
public:
    Corpus() = default;

    /// Throws InputError on a duplicate or empty paper_id.
    void add(CitationSeries series);

    [[nodiscard]] std::span<const CitationSeries> series() const noexcept { return series_; }
    [[nodiscard]] std::size_t size() const noexcept { return series_.size(); }
    [[nodiscard]] bool empty() const noexcept { return series_.empty(); }
    [[nodiscard]] const CitationSeries* find(const std::string& paper_id) const;

    auto begin() const noexcept { return series_.begin(); }
    auto end() const noexcept { return series_.end(); }

    friend bool operator==(const Corpus& a, const Corpus& b) { return a.series_ == b.series_; }

private:
    std::vector<CitationSeries> series_;
    std::unordered_map<std::string, std::size_t> index_;
};

enum class ViolationKind {
    empty,
    too_short,
    negative_count,
    pub_year_out_of_range,
    empty_paper_id,
};

struct Violation {
    ViolationKind kind;
    std::string message;
};

[[nodiscard]] const char* to_string(ViolationKind kind) noexcept;

/// Checks the series invariants and requires T >= min_years.
/// An empty result means the series is valid.
[[nodiscard]] std::vector<Violation> validate(const CitationSeries& series, int min_years);

/// Moves the geometric origin `offset` years past publication by dropping the
/// first `offset` counts. Offset 0 is the identity.
[[nodiscard]] CitationSeries shift_origin(const CitationSeries& series, int offset);

}  // namespace citeangle
