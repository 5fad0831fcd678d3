#include "citeangle/sleep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace citeangle {

namespace {
constexpr double kLengthExponent = -2.7;
constexpr double kDepthExponent = 2.5;
constexpr double kIntensityExponent = -6.6;
}  // namespace

const char* to_string(SleepDepth d) noexcept {
    switch (d) {
        case SleepDepth::deep: return "deep";
        case SleepDepth::less_deep: return "less_deep";
        case SleepDepth::not_sleeping: return "not_sleeping";
    }
    return "not_sleeping";
}

SleepDepth depth_of(double cs_mean) noexcept {
    if (cs_mean <= 1.0) return SleepDepth::deep;
    if (cs_mean <= 2.0) return SleepDepth::less_deep;
    return SleepDepth::not_sleeping;
}

SleepProfile detect_sleep(std::span<const Count> counts, const AngleProfile& profile,
                          const CriteriaConfig& config) {
    SleepProfile out;
    const auto range = sleep_range(profile, config);
    out.cw = static_cast<double>(window_sum(counts, profile.t2(), config.window_len)) /
             static_cast<double>(config.window_len);
    if (range.empty()) {
        return out;
    }
    out.sleep_start = range.first;
    out.sleep_end = range.last;
    out.s = range.length();
    out.heartbeat.assign(counts.begin() + range.first, counts.begin() + range.last + 1);
    out.cs_mean = mean_ac(counts, range.first, range.last).value_or(0.0);
    out.depth = depth_of(out.cs_mean);
    return out;
}

double grand_sb_density(double s, double cs, double cw) {
    if (!(s >= 1.0) || !(cs > 0.0) || !(cw >= 1.0)) {
        throw std::invalid_argument("grand SB density needs s >= 1, cs > 0, cw >= 1 (got s=" +
                                    std::to_string(s) + ", cs=" + std::to_string(cs) +
                                    ", cw=" + std::to_string(cw) + ")");
    }
    return std::pow(s, kLengthExponent) * std::pow(cs, kDepthExponent) *
           std::pow(cw, kIntensityExponent);
}

DensityEstimate sleep_density(const SleepProfile& sleep, double cs_floor) {
    DensityEstimate out;
    double cs = sleep.cs_mean;
    if (cs <= 0.0) {
        cs = cs_floor;
        out.cs_clamped = true;
    }
    out.value = grand_sb_density(sleep.s, cs, sleep.cw);
    return out;
}

}  // namespace citeangle
