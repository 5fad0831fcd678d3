#include "citeangle/series.hpp"

#include <algorithm>

namespace citeangle {

void Corpus::add(CitationSeries series) {
    if (series.paper_id.empty()) {
        throw InputError("empty paper_id");
    }
    const auto [it, inserted] = index_.emplace(series.paper_id, series_.size());
    if (!inserted) {
        throw InputError("duplicate paper_id '" + series.paper_id + "'");
    }
    series_.push_back(std::move(series));
}

const CitationSeries* Corpus::find(const std::string& paper_id) const {
    const auto it = index_.find(paper_id);
    return it == index_.end() ? nullptr : &series_[it->second];
}

const char* to_string(ViolationKind kind) noexcept {
    switch (kind) {
        case ViolationKind::empty: return "empty";
        case ViolationKind::too_short: return "too short";
        case ViolationKind::negative_count: return "negative count";
        case ViolationKind::pub_year_out_of_range: return "pub_year out of range";
        case ViolationKind::empty_paper_id: return "empty paper_id";
    }
    return "unknown";
}

std::vector<Violation> validate(const CitationSeries& series, int min_years) {
    std::vector<Violation> out;
    if (series.paper_id.empty()) {
        out.push_back({ViolationKind::empty_paper_id, "paper_id is empty"});
    }
    if (series.pub_year < kMinPubYear || series.pub_year > kMaxPubYear) {
        out.push_back({ViolationKind::pub_year_out_of_range,
                       "pub_year " + std::to_string(series.pub_year) + " outside [" +
                           std::to_string(kMinPubYear) + ", " + std::to_string(kMaxPubYear) + "]"});
    }
    if (series.counts.empty()) {
        out.push_back({ViolationKind::empty, "series has no counts"});
        return out;
    }
    const auto neg = std::find_if(series.counts.begin(), series.counts.end(),
                                  [](Count c) { return c < 0; });
    if (neg != series.counts.end()) {
        out.push_back({ViolationKind::negative_count,
                       "negative count at t=" + std::to_string(neg - series.counts.begin())});
    }
    if (series.last_year() < min_years) {
        out.push_back({ViolationKind::too_short,
                       "T=" + std::to_string(series.last_year()) + " < min_years=" +
                           std::to_string(min_years)});
    }
    return out;
}

CitationSeries shift_origin(const CitationSeries& series, int offset) {
    if (offset < 0) {
        throw std::invalid_argument("origin offset must be non-negative");
    }
    CitationSeries out = series;
    const auto drop = std::min<std::size_t>(static_cast<std::size_t>(offset), out.counts.size());
    out.counts.erase(out.counts.begin(), out.counts.begin() + static_cast<std::ptrdiff_t>(drop));
    out.pub_year += offset;
    return out;
}

}  // namespace citeangle
