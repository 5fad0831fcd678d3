#pragma once

#include <citeangle/series.hpp>

#include <vector>

namespace citeangle::testing {

// Annual counts indexed t = 0..20.

// Early burst at t = 1, quiet afterwards.
inline const std::vector<Count> kFixSg{0, 30, 12, 5, 3, 2, 1, 1, 0, 0, 0,
                                       1, 0,  0,  1, 0, 0, 0, 0, 0, 0};
// Sleeps at <= 2 per year, awakens to 22 at t = 18.
inline const std::vector<Count> kFixSb{0, 0, 1, 0, 1,  1,  0,  1,  0,  1, 1,
                                       1, 0, 1, 2, 3, 8, 15, 22, 18, 12};
// Early burst, sleep, late awakening.
inline const std::vector<Count> kFixAsb{0, 5, 25, 3, 2,  1, 1, 1, 1, 1, 1,
                                        1, 1, 1,  2, 2, 30, 8, 4, 2, 1};

inline CitationSeries make_series(std::string id, std::vector<Count> counts, int pub_year = 1980) {
    return CitationSeries{std::move(id), pub_year, std::move(counts), {}};
}

}  // namespace citeangle::testing
