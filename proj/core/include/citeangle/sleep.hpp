#pragma once

#include "citeangle/angle.hpp"
#include "citeangle/classifier.hpp"

#include <span>
#include <vector>

namespace citeangle {

enum class SleepDepth { deep, less_deep, not_sleeping };

[[nodiscard]] const char* to_string(SleepDepth d) noexcept;

/// Depth from the mean annual citations during sleep: <= 1 deep, <= 2 less deep.
[[nodiscard]] SleepDepth depth_of(double cs_mean) noexcept;

/// The quiet stretch before a late awakening.
struct SleepProfile {
    int sleep_start = 0;
    int sleep_end = -1;
    int s = 0;               ///< sleep length in years
    double cs_mean = 0.0;    ///< mean annual citations while asleep
    SleepDepth depth = SleepDepth::not_sleeping;
    double cw = 0.0;         ///< awakening intensity: mean over the window ending at the late peak
    std::vector<Count> heartbeat;  ///< per-year citations while asleep
};

/// Extracts the sleeping period [sleep_range] and awakening window of a series.
[[nodiscard]] SleepProfile detect_sleep(std::span<const Count> counts, const AngleProfile& profile,
                                        const CriteriaConfig& config = {});

/// Unnormalized density s^-2.7 * cs^2.5 * cw^-6.6 of sleeping beauties over
/// (length, depth, awakening intensity). Requires s >= 1, cs > 0, cw >= 1.
[[nodiscard]] double grand_sb_density(double s, double cs, double cw);

struct DensityEstimate {
    double value = 0.0;
    bool cs_clamped = false;  ///< cs was 0 and replaced by the configured floor
};

/// Density at a detected sleep profile; cs = 0 is replaced by cs_floor.
/// Throws std::invalid_argument when s = 0 or cw < 1.
[[nodiscard]] DensityEstimate sleep_density(const SleepProfile& sleep, double cs_floor = 0.5);

}  // namespace citeangle
