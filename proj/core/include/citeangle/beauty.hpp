#pragma once

#include "citeangle/angle.hpp"
#include "citeangle/series.hpp"

#include <span>

namespace citeangle {

struct BeautyScores {
    double b = 0.0;        ///< beauty coefficient with the (0, c0) -> (tm, cm) reference line
    double b_prime = 0.0;  ///< same sum with the line through the zero point (0, 0)
    int tm = 0;
    Count cm = 0;
};

/// Reference line through (0, c0) and (t_ref, c_ref), evaluated at t.
/// Throws std::invalid_argument when t_ref < 1.
[[nodiscard]] double line_value(double t, double t_ref, double c_ref, double c0);

/// Sum over t = 0..tm of (l(t) - c_t) / max(1, c_t) with l the line from
/// (0, c0) to the global maximum (tm, cm), tm the earliest maximum over [1, T].
/// Zero when the series never gets cited after publication. May be negative.
[[nodiscard]] double beauty_b(std::span<const Count> counts);

/// Same sum with l(t) = (cm / tm) t, i.e. the line anchored at the zero point.
/// Equal to beauty_b whenever counts[0] == 0.
[[nodiscard]] double beauty_b_prime(std::span<const Count> counts);

[[nodiscard]] BeautyScores beauty_scores(std::span<const Count> counts);

}  // namespace citeangle
