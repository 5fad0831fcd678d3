#pragma once

#include "citeangle/series.hpp"

#include <numbers>
#include <span>

namespace citeangle {

inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

[[nodiscard]] constexpr double to_degrees(double rad) noexcept { return rad * kRadToDeg; }

/// A point (t, c) of the annual citation curve.
struct Peak {
    int t = 0;
    Count c = 0;
    friend bool operator==(const Peak&, const Peak&) = default;
};

/// Early/late peaks of a series and the angles of the lines joining them to
/// the zero point (0, 0). Angles are held in radians.
struct AngleProfile {
    int t_h = 0;     ///< last year of the early half
    Peak early;      ///< (t1, c1): max over [1, t_h]
    Peak late;       ///< (t2, c2): max over [t_h + 1, T]
    Peak global;     ///< (tm, cm): max over [1, T]
    double beta1 = 0.0;
    double beta2 = 0.0;
    double betam = 0.0;

    [[nodiscard]] int t1() const noexcept { return early.t; }
    [[nodiscard]] int t2() const noexcept { return late.t; }
    [[nodiscard]] Count c1() const noexcept { return early.c; }
    [[nodiscard]] Count c2() const noexcept { return late.c; }
    [[nodiscard]] double beta1_deg() const noexcept { return to_degrees(beta1); }
    [[nodiscard]] double beta2_deg() const noexcept { return to_degrees(beta2); }
    [[nodiscard]] double betam_deg() const noexcept { return to_degrees(betam); }
    [[nodiscard]] int dt() const noexcept { return late.t - early.t; }
};

/// t_h = floor(T / 2). Throws std::invalid_argument when T < 2.
[[nodiscard]] int half_split(std::span<const Count> counts);

/// Maximum of counts over [first, last]; ties go to the earliest year.
/// Throws std::invalid_argument unless 1 <= first <= last <= T.
[[nodiscard]] Peak find_peak(std::span<const Count> counts, int first, int last);

/// arctan(c / t) in radians. Requires t >= 1 and c >= 0.
[[nodiscard]] double citation_angle_rad(double c, double t);

/// arctan(c / t) in degrees, in [0, 90).
[[nodiscard]] double citation_angle(double c, double t);

[[nodiscard]] AngleProfile angle_profile(std::span<const Count> counts);

/// Partial derivatives of beta(c, t) = arctan(c / t), in radians per unit.
struct BetaGradient {
    double d_dc = 0.0;
    double d_dt = 0.0;
};

/// d/dc = t / (t^2 + c^2), d/dt = -c / (t^2 + c^2). Throws at the origin.
[[nodiscard]] BetaGradient beta_gradient(double c, double t);

/// Total differential (t dc - c dt) / (t^2 + c^2), radians. Throws at the origin.
[[nodiscard]] double beta_differential(double c, double t, double dc, double dt);

}  // namespace citeangle
