#pragma once

#include "citeangle/angle.hpp"
#include "citeangle/series.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace citeangle {

/// Raised for an unreadable or invalid criteria file (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Which years the after-peak AC of a smart girl averages over.
enum class AcSgWindow {
    after_peak,     ///< [t1 + 1, T]
    between_peaks,  ///< [t1 + 1, t2 - 1]
};

/// Where the sleeping period starts. It always ends right before the
/// awakening window that SCb sums over.
enum class SleepFrom {
    after_early_peak,  ///< [t1 + 1, t2 - window_len]
    publication,       ///< [1, t2 - window_len]
};

/// Identification thresholds. Angles in degrees. Defaults are the standard
/// smart-girl / sleeping-beauty criteria.
struct CriteriaConfig {
    double beta1_possible_deg = 60.0;  ///< beta1 >  this
    double beta1_higher_deg = 88.0;    ///< beta1 >  this
    double beta2_possible_deg = 5.0;   ///< beta2 >  this
    double beta2_higher_deg = 30.0;    ///< beta2 >  this
    double sca_min = 20.0;             ///< SCa   >  this
    double scb_min = 20.0;             ///< SCb   >  this
    double ac_sg_max = 10.0;           ///< AC_SG <= this
    double ac_sb_max = 2.0;            ///< AC_SB <= this
    int dt_min = 10;                   ///< t2 - t1 >= this
    int window_len = 4;                ///< years summed by SCa / SCb, peak year included
    AcSgWindow ac_sg_window = AcSgWindow::after_peak;
    SleepFrom sleep_from = SleepFrom::after_early_peak;
    double cs_floor = 0.5;  ///< stand-in for cs = 0 in the sleeping-beauty density

    /// Throws ConfigError when an invariant is broken.
    void validate() const;

    friend bool operator==(const CriteriaConfig&, const CriteriaConfig&) = default;
};

[[nodiscard]] CriteriaConfig parse_criteria(std::string_view json_text);
[[nodiscard]] CriteriaConfig load_criteria(const std::filesystem::path& path);
[[nodiscard]] std::string criteria_to_json(const CriteriaConfig& config);

enum class Tier { none = 0, possible = 1, typical = 2, higher = 3 };

[[nodiscard]] const char* to_string(Tier tier) noexcept;
[[nodiscard]] const char* to_string(AcSgWindow w) noexcept;
[[nodiscard]] const char* to_string(SleepFrom s) noexcept;

/// Inclusive year range; empty when first > last.
struct YearRange {
    int first = 0;
    int last = -1;
    [[nodiscard]] bool empty() const noexcept { return first > last; }
    [[nodiscard]] int length() const noexcept { return empty() ? 0 : last - first + 1; }
};

struct Evidence {
    double beta1_deg = 0.0;
    double beta2_deg = 0.0;
    Count sca = 0;
    Count scb = 0;
    std::optional<double> ac_sg;
    std::optional<double> ac_sb;
    int dt = 0;
};

struct ClassResult {
    Tier sg_tier = Tier::none;
    Tier sb_tier = Tier::none;
    bool asb = false;
    Evidence evidence;
    /// T < 2 * dt_min: the series cannot show a full quiet period plus both peaks.
    bool short_series = false;
};

/// Sum of counts over [max(0, peak_t - window_len + 1), peak_t].
[[nodiscard]] Count window_sum(std::span<const Count> counts, int peak_t, int window_len);

/// Mean of counts over [first, last]; nullopt when the window is empty.
[[nodiscard]] std::optional<double> mean_ac(std::span<const Count> counts, int first, int last);

[[nodiscard]] YearRange ac_sg_range(const AngleProfile& profile, int T, const CriteriaConfig& config);

/// The sleeping period. Shared by AC_SB and sleep analysis.
[[nodiscard]] YearRange sleep_range(const AngleProfile& profile, const CriteriaConfig& config);

[[nodiscard]] Evidence collect_evidence(std::span<const Count> counts, const AngleProfile& profile,
                                        const CriteriaConfig& config);

/// Applies the tier predicates to already-computed evidence.
struct TierAssignment {
    Tier sg_tier = Tier::none;
    Tier sb_tier = Tier::none;
    bool asb = false;
};
[[nodiscard]] TierAssignment assign_tiers(const Evidence& ev, const CriteriaConfig& config);

[[nodiscard]] ClassResult classify(std::span<const Count> counts, const AngleProfile& profile,
                                   const CriteriaConfig& config);
[[nodiscard]] ClassResult classify(std::span<const Count> counts, const CriteriaConfig& config = {});

}  // namespace citeangle
