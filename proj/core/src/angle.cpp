#include "citeangle/angle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace citeangle {
namespace {

void require_not_origin(double c, double t) {
    if (c == 0.0 && t == 0.0) {
        throw std::invalid_argument("beta is not differentiable at the origin (0, 0)");
    }
}

}  // namespace

int half_split(std::span<const Count> counts) {
    const int T = static_cast<int>(counts.size()) - 1;
    if (T < 2) {
        throw std::invalid_argument("series too short to split: T=" + std::to_string(T) +
                                    " (need T >= 2)");
    }
    return T / 2;
}

Peak find_peak(std::span<const Count> counts, int first, int last) {
    const int T = static_cast<int>(counts.size()) - 1;
    if (first < 1 || first > last || last > T) {
        throw std::invalid_argument("empty or out-of-range peak window [" + std::to_string(first) +
                                    ", " + std::to_string(last) + "] for T=" + std::to_string(T));
    }
    Peak best{first, counts[static_cast<std::size_t>(first)]};
    for (int t = first + 1; t <= last; ++t) {
        const Count c = counts[static_cast<std::size_t>(t)];
        if (c > best.c) best = {t, c};
    }
    return best;
}

double citation_angle_rad(double c, double t) {
    if (!(t >= 1.0)) {
        throw std::invalid_argument("citation angle needs t >= 1, got " + std::to_string(t));
    }
    if (!(c >= 0.0)) {
        throw std::invalid_argument("citation angle needs c >= 0, got " + std::to_string(c));
    }
    return std::atan(c / t);
}

double citation_angle(double c, double t) { return to_degrees(citation_angle_rad(c, t)); }

AngleProfile angle_profile(std::span<const Count> counts) {
    AngleProfile p;
    p.t_h = half_split(counts);
    const int T = static_cast<int>(counts.size()) - 1;
    p.early = find_peak(counts, 1, p.t_h);
    p.late = find_peak(counts, p.t_h + 1, T);
    p.global = find_peak(counts, 1, T);
    p.beta1 = citation_angle_rad(static_cast<double>(p.early.c), p.early.t);
    p.beta2 = citation_angle_rad(static_cast<double>(p.late.c), p.late.t);
    // The global max always lies at one of the two half peaks. betam is the
    // larger half angle, which is not always arctan(cm / tm): a late maximum
    // can sit under a steeper early line.
    p.betam = std::max(p.beta1, p.beta2);
    return p;
}

BetaGradient beta_gradient(double c, double t) {
    require_not_origin(c, t);
    const double r2 = t * t + c * c;
    return {t / r2, -c / r2};
}

double beta_differential(double c, double t, double dc, double dt) {
    require_not_origin(c, t);
    return (t * dc - c * dt) / (t * t + c * c);
}

}  // namespace citeangle
