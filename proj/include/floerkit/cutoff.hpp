#pragma once

// Convex cut-off profiles: gamma vanishes left of its first knot, has
// strictly increasing piecewise-linear derivative through the transition
// zone, and continues with slope 1 afterwards, so gamma(x) = x - eps for
// large x.  The autonomous-deformation action at slope sigma is
// gamma(S) - S gamma'(S) at the unique S with gamma'(S) = sigma.

#include <cmath>
#include <vector>

#include "floerkit/errors.hpp"

namespace floerkit {

class ConvexCutoff {
  public:
    // knots x_0 < ... < x_k with derivative values d_0 = 0 < d_1 < ... < d_k = 1
    ConvexCutoff(std::vector<double> knots, std::vector<double> slopes)
        : knots_(std::move(knots)), slopes_(std::move(slopes)) {
        if (knots_.size() != slopes_.size() || knots_.size() < 2)
            throw structural_error("cutoff needs matching knot and slope lists");
        if (knots_.front() < 0) throw structural_error("cutoff must vanish left of zero");
        if (slopes_.front() != 0.0 || slopes_.back() != 1.0)
            throw structural_error("cutoff derivative must run from 0 to 1");
        for (size_t i = 1; i < knots_.size(); ++i) {
            if (knots_[i] <= knots_[i - 1]) throw structural_error("knots must increase");
            if (slopes_[i] <= slopes_[i - 1])
                throw structural_error("derivative must strictly increase through the zone");
        }
        // integrated values at knots, gamma(x_0) = 0
        values_.assign(knots_.size(), 0.0);
        for (size_t i = 1; i < knots_.size(); ++i)
            values_[i] = values_[i - 1] +
                         0.5 * (slopes_[i] + slopes_[i - 1]) * (knots_[i] - knots_[i - 1]);
    }

    double derivative(double x) const {
        if (x <= knots_.front()) return 0.0;
        if (x >= knots_.back()) return 1.0;
        size_t i = 1;
        while (knots_[i] < x) ++i;
        double lambda = (x - knots_[i - 1]) / (knots_[i] - knots_[i - 1]);
        return (1 - lambda) * slopes_[i - 1] + lambda * slopes_[i];
    }

    double operator()(double x) const {
        if (x <= knots_.front()) return 0.0;
        if (x >= knots_.back()) return values_.back() + (x - knots_.back());
        size_t i = 1;
        while (knots_[i] < x) ++i;
        double h = x - knots_[i - 1];
        double lambda = h / (knots_[i] - knots_[i - 1]);
        double slope_at = (1 - lambda) * slopes_[i - 1] + lambda * slopes_[i];
        return values_[i - 1] + 0.5 * (slopes_[i - 1] + slope_at) * h;
    }

    // the shift in the linear tail: gamma(x) = x - eps for x past the zone
    double tail_offset() const { return knots_.back() - values_.back(); }
    double zone_lo() const { return knots_.front(); }
    double zone_hi() const { return knots_.back(); }

  private:
    std::vector<double> knots_;
    std::vector<double> slopes_;
    std::vector<double> values_;
};

struct ExtenderProfile {
    double critical_level = 0;  // the unique S with gamma'(S) = sigma
    double action = 0;          // gamma(S) - S gamma'(S), always negative
};

// Monotone bisection of gamma' = sigma on the strictly convex zone.
inline ExtenderProfile extender_profile(const ConvexCutoff& gamma, double sigma,
                                        double tolerance = 1e-12) {
    if (!(sigma > 0.0) || !(sigma < 1.0))
        throw domain_error("slope must lie strictly between 0 and 1");
    double lo = gamma.zone_lo(), hi = gamma.zone_hi();
    while (hi - lo > tolerance) {
        double mid = 0.5 * (lo + hi);
        if (gamma.derivative(mid) < sigma) lo = mid;
        else hi = mid;
    }
    ExtenderProfile profile;
    profile.critical_level = 0.5 * (lo + hi);
    profile.action = gamma(profile.critical_level) - profile.critical_level * sigma;
    return profile;
}

}  // namespace floerkit
