#include "citeangle/classifier.hpp"

#include <algorithm>
#include <cmath>

namespace citeangle {

void CriteriaConfig::validate() const {
    const auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError(std::string(name) + " must be positive and finite");
        }
    };
    positive(beta1_possible_deg, "beta1_possible_deg");
    positive(beta1_higher_deg, "beta1_higher_deg");
    positive(beta2_possible_deg, "beta2_possible_deg");
    positive(beta2_higher_deg, "beta2_higher_deg");
    positive(sca_min, "sca_min");
    positive(scb_min, "scb_min");
    positive(ac_sg_max, "ac_sg_max");
    positive(ac_sb_max, "ac_sb_max");
    positive(cs_floor, "cs_floor");
    if (dt_min < 1) throw ConfigError("dt_min must be >= 1");
    if (window_len < 1) throw ConfigError("window_len must be >= 1");
    if (beta1_higher_deg >= 90.0 || beta2_higher_deg >= 90.0) {
        throw ConfigError("angle thresholds must be below 90 degrees");
    }
    if (!(beta1_higher_deg > beta1_possible_deg)) {
        throw ConfigError("beta1_higher_deg must exceed beta1_possible_deg");
    }
    if (!(beta2_higher_deg > beta2_possible_deg)) {
        throw ConfigError("beta2_higher_deg must exceed beta2_possible_deg");
    }
}

const char* to_string(Tier tier) noexcept {
    switch (tier) {
        case Tier::none: return "none";
        case Tier::possible: return "possible";
        case Tier::typical: return "typical";
        case Tier::higher: return "higher";
    }
    return "none";
}

const char* to_string(AcSgWindow w) noexcept {
    return w == AcSgWindow::after_peak ? "after_peak" : "between_peaks";
}

const char* to_string(SleepFrom s) noexcept {
    return s == SleepFrom::after_early_peak ? "after_early_peak" : "publication";
}

Count window_sum(std::span<const Count> counts, int peak_t, int window_len) {
    const int T = static_cast<int>(counts.size()) - 1;
    if (peak_t < 1 || peak_t > T) {
        throw std::invalid_argument("peak year " + std::to_string(peak_t) + " outside [1, " +
                                    std::to_string(T) + "]");
    }
    if (window_len < 1) {
        throw std::invalid_argument("window_len must be >= 1");
    }
    Count sum = 0;
    for (int t = std::max(0, peak_t - window_len + 1); t <= peak_t; ++t) {
        sum += counts[static_cast<std::size_t>(t)];
    }
    return sum;
}

std::optional<double> mean_ac(std::span<const Count> counts, int first, int last) {
    if (first > last) return std::nullopt;
    const int T = static_cast<int>(counts.size()) - 1;
    if (first < 0 || last > T) {
        throw std::invalid_argument("AC window [" + std::to_string(first) + ", " + std::to_string(last) +
                                    "] outside [0, " + std::to_string(T) + "]");
    }
    Count sum = 0;
    for (int t = first; t <= last; ++t) sum += counts[static_cast<std::size_t>(t)];
    return static_cast<double>(sum) / static_cast<double>(last - first + 1);
}

YearRange ac_sg_range(const AngleProfile& profile, int T, const CriteriaConfig& config) {
    const int last = config.ac_sg_window == AcSgWindow::after_peak ? T : profile.t2() - 1;
    return {profile.t1() + 1, last};
}

YearRange sleep_range(const AngleProfile& profile, const CriteriaConfig& config) {
    const int first = config.sleep_from == SleepFrom::after_early_peak ? profile.t1() + 1 : 1;
    return {first, profile.t2() - config.window_len};
}

Evidence collect_evidence(std::span<const Count> counts, const AngleProfile& profile,
                          const CriteriaConfig& config) {
    const int T = static_cast<int>(counts.size()) - 1;
    Evidence ev;
    ev.beta1_deg = profile.beta1_deg();
    ev.beta2_deg = profile.beta2_deg();
    ev.sca = window_sum(counts, profile.t1(), config.window_len);
    ev.scb = window_sum(counts, profile.t2(), config.window_len);
    const auto sg = ac_sg_range(profile, T, config);
    const auto sb = sleep_range(profile, config);
    ev.ac_sg = mean_ac(counts, sg.first, sg.last);
    ev.ac_sb = mean_ac(counts, sb.first, sb.last);
    ev.dt = profile.dt();
    return ev;
}

TierAssignment assign_tiers(const Evidence& ev, const CriteriaConfig& config) {
    const auto at_most = [](const std::optional<double>& ac, double bound) {
        return ac.has_value() && *ac <= bound;
    };
    const bool dt_ok = ev.dt >= config.dt_min;

    TierAssignment out;
    const bool sg_possible = ev.beta1_deg > config.beta1_possible_deg &&
                             static_cast<double>(ev.sca) > config.sca_min;
    const bool sg_typical = sg_possible && at_most(ev.ac_sg, config.ac_sg_max) && dt_ok;
    const bool sg_higher = sg_typical && ev.beta1_deg > config.beta1_higher_deg;
    out.sg_tier = sg_higher ? Tier::higher : sg_typical ? Tier::typical : sg_possible ? Tier::possible : Tier::none;

    const bool sb_possible = ev.beta2_deg > config.beta2_possible_deg &&
                             static_cast<double>(ev.scb) > config.scb_min;
    const bool sb_typical = sb_possible && at_most(ev.ac_sb, config.ac_sb_max) && dt_ok;
    const bool sb_higher = sb_typical && ev.beta2_deg > config.beta2_higher_deg;
    out.sb_tier = sb_higher ? Tier::higher : sb_typical ? Tier::typical : sb_possible ? Tier::possible : Tier::none;

    // Smart angle and SCa of a smart girl on top of a typical sleeping beauty.
    out.asb = sb_typical && ev.beta1_deg > config.beta1_possible_deg &&
              static_cast<double>(ev.sca) > config.sca_min;
    return out;
}

ClassResult classify(std::span<const Count> counts, const AngleProfile& profile,
                     const CriteriaConfig& config) {
    ClassResult r;
    r.evidence = collect_evidence(counts, profile, config);
    const auto tiers = assign_tiers(r.evidence, config);
    r.sg_tier = tiers.sg_tier;
    r.sb_tier = tiers.sb_tier;
    r.asb = tiers.asb;
    r.short_series = static_cast<int>(counts.size()) - 1 < 2 * config.dt_min;
    return r;
}

ClassResult classify(std::span<const Count> counts, const CriteriaConfig& config) {
    return classify(counts, angle_profile(counts), config);
}

}  // namespace citeangle
