#include "citeangle/beauty.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace citeangle {
namespace {

Peak global_max(std::span<const Count> counts) {
    if (counts.empty()) {
        throw std::invalid_argument("empty series");
    }
    if (counts.size() < 2) {
        throw std::invalid_argument("series too short: beauty coefficient needs T >= 1");
    }
    return find_peak(counts, 1, static_cast<int>(counts.size()) - 1);
}

// Each term is ((cm - c0) t + c0 tm - ct tm) / (tm max(1, ct)): a single
// rounding of an integer ratio, so scaling all counts by k reproduces every
// term bit for bit. Terms are accumulated in order t = 0..tm.
double gap_sum(std::span<const Count> counts, Peak peak, Count c0) {
    if (peak.c == 0) return 0.0;
    const Count tm = peak.t;
    double sum = 0.0;
    for (Count t = 0; t <= tm; ++t) {
        const Count ct = counts[static_cast<std::size_t>(t)];
        const Count num = (peak.c - c0) * t + c0 * tm - ct * tm;
        const Count den = tm * std::max<Count>(1, ct);
        sum += static_cast<double>(num) / static_cast<double>(den);
    }
    return sum;
}

}  // namespace

double line_value(double t, double t_ref, double c_ref, double c0) {
    if (!(t_ref >= 1.0)) {
        throw std::invalid_argument("reference year must be >= 1, got " + std::to_string(t_ref));
    }
    return (c_ref - c0) / t_ref * t + c0;
}

double beauty_b(std::span<const Count> counts) {
    const Peak peak = global_max(counts);
    return gap_sum(counts, peak, counts[0]);
}

double beauty_b_prime(std::span<const Count> counts) {
    const Peak peak = global_max(counts);
    return gap_sum(counts, peak, 0);
}

BeautyScores beauty_scores(std::span<const Count> counts) {
    const Peak peak = global_max(counts);
    return {gap_sum(counts, peak, counts[0]), gap_sum(counts, peak, 0), peak.t,
            peak.c};
}

}  // namespace citeangle
