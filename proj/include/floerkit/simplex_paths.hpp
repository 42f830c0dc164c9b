#pragma once

// Piecewise-affine unit-speed paths through the standard simplex and their
// combinatorics: cube coordinates, breakpoint times, barycentric evaluation,
// travelling-interval layouts, and pushforward under monotone vertex maps.
//
// A path in the n-simplex is determined by cube coordinates
// (x_1, ..., x_{n-1}) in [0,1]: the corner points are built top-down by
//   p_n = v_n,   p_i = (1 - x_i) v_i + x_i p_{i+1},   p_0 = v_0,
// and the breakpoint times obey tau_n = n, tau_i = i + x_i (tau_{i+1} - i).
// Between breakpoints the path is affine; the speed primitive
// sum_j j theta_j then equals tau along the whole path.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "floerkit/rational.hpp"

namespace floerkit {

using BarycentricPoint = std::vector<Rational>;  // theta_0..theta_n, sum 1, >= 0

inline Rational speed_primitive(const BarycentricPoint& theta) {
    Rational s;
    for (size_t j = 0; j < theta.size(); ++j) s = s + Rational(static_cast<std::int64_t>(j)) * theta[j];
    return s;
}

class StraightLinePath {
  public:
    StraightLinePath(int n, std::vector<Rational> cube) : n_(n), cube_(std::move(cube)) {
        if (n_ < 1) throw domain_error("simplex dimension must be at least 1");
        if (static_cast<int>(cube_.size()) != n_ - 1)
            throw domain_error("expected n-1 cube coordinates");
        for (const auto& x : cube_)
            if (x < Rational(0) || x > Rational(1))
                throw domain_error("cube coordinate outside [0,1]");
        // taus by back-substitution from tau_n = n
        taus_.assign(n_ + 1, Rational(0));
        taus_[n_] = Rational(n_);
        for (int i = n_ - 1; i >= 1; --i)
            taus_[i] = Rational(i) + cube_[i - 1] * (taus_[i + 1] - Rational(i));
        // corner points p_i, built top-down
        points_.assign(n_ + 1, BarycentricPoint(n_ + 1, Rational(0)));
        points_[n_][n_] = Rational(1);
        for (int i = n_ - 1; i >= 1; --i) {
            const Rational& x = cube_[i - 1];
            for (int j = 0; j <= n_; ++j) points_[i][j] = x * points_[i + 1][j];
            points_[i][i] = points_[i][i] + (Rational(1) - x);
        }
        points_[0][0] = Rational(1);
    }

    int dimension() const { return n_; }
    const std::vector<Rational>& cube() const { return cube_; }
    const std::vector<Rational>& taus() const { return taus_; }
    const BarycentricPoint& corner(int i) const { return points_.at(i); }

    // Barycentric coordinates of the path at time tau in [0, n].
    BarycentricPoint evaluate(const Rational& tau) const {
        if (tau < Rational(0) || tau > Rational(n_)) throw domain_error("time outside [0, n]");
        int leg = 0;
        while (leg < n_ && taus_[leg + 1] < tau) ++leg;
        // skip zero-length legs that end exactly at tau
        while (leg < n_ && taus_[leg + 1] == tau) ++leg;
        if (leg == n_) return points_[n_];
        const Rational len = taus_[leg + 1] - taus_[leg];
        if (len.is_zero()) return points_[leg + 1];
        const Rational lambda = (tau - taus_[leg]) / len;
        BarycentricPoint out(n_ + 1, Rational(0));
        for (int j = 0; j <= n_; ++j)
            out[j] = (Rational(1) - lambda) * points_[leg][j] + lambda * points_[leg + 1][j];
        return out;
    }

    // First time the path enters the convex hull of v_i..v_n.
    Rational first_entry(int i) const {
        for (int k = 0; k <= n_; ++k) {
            bool inside = true;
            for (int j = 0; j < i; ++j)
                if (!points_[k][j].is_zero()) inside = false;
            if (!inside) continue;
            if (k == 0) return taus_[0];
            // entry happens along leg k-1 -> k; find the earliest lambda with
            // theta_0..theta_{i-1} all zero (coordinates are affine in lambda
            // and nonnegative, so zero first at lambda = 1 unless constant 0)
            bool constant_zero = true;
            for (int j = 0; j < i; ++j)
                if (!points_[k - 1][j].is_zero()) constant_zero = false;
            if (constant_zero) return first_entry_before(i, k);
            return taus_[k];
        }
        throw domain_error("path never enters the requested hull");
    }

  private:
    Rational first_entry_before(int i, int k) const {
        // walk backwards while the corner already lies in the hull
        int first = k;
        while (first > 0) {
            bool inside = true;
            for (int j = 0; j < i; ++j)
                if (!points_[first - 1][j].is_zero()) inside = false;
            if (!inside) break;
            --first;
        }
        return taus_[first];
    }

    int n_;
    std::vector<Rational> cube_;
    std::vector<Rational> taus_;
    std::vector<BarycentricPoint> points_;
};

inline StraightLinePath from_cube(int n, std::vector<Rational> coords) {
    return StraightLinePath(n, std::move(coords));
}

// Cube coordinates recovered from the corner points: x_i is the total mass of
// theta_{i+1}..theta_n at the first entry point into hull(v_i..v_n).
inline std::vector<Rational> cube_from_path(const StraightLinePath& path) {
    std::vector<Rational> cube;
    for (int i = 1; i <= path.dimension() - 1; ++i) {
        auto p = path.evaluate(path.first_entry(i));
        Rational mass;
        for (int j = i + 1; j <= path.dimension(); ++j) mass = mass + p[j];
        cube.push_back(mass);
    }
    return cube;
}

// ---------------------------------------------------------------------------
// Travelling-interval layout I_i = [s_i, s_i + w_i], s_i = sum_{j<i}(x_j -
// 1/x_j), w_i = 1 - x_{i-1}; defined on the open cube only.

struct IntervalLayout {
    std::vector<std::pair<Rational, Rational>> intervals;  // (s_i, s_i + w_i)

    bool interiors_disjoint() const {
        for (size_t a = 0; a < intervals.size(); ++a)
            for (size_t b = a + 1; b < intervals.size(); ++b) {
                const auto& [lo1, hi1] = intervals[a];
                const auto& [lo2, hi2] = intervals[b];
                Rational lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
                if (lo < hi) return false;
            }
        return true;
    }
};

inline IntervalLayout interval_layout(const StraightLinePath& path) {
    const auto& cube = path.cube();
    for (const auto& x : cube)
        if (x.is_zero() || x == Rational(1))
            throw degenerate_layout_error("layout needs cube coordinates strictly inside (0,1)");
    IntervalLayout layout;
    Rational s(0);
    layout.intervals.emplace_back(s, Rational(1));  // I_1 = [0,1]
    for (int i = 2; i <= path.dimension(); ++i) {
        const Rational& prev = cube[i - 2];  // x_{i-1}
        s = s + prev - Rational(1) / prev;
        Rational w = Rational(1) - prev;
        layout.intervals.emplace_back(s, s + w);
    }
    return layout;
}

// ---------------------------------------------------------------------------
// Monotone vertex maps and pushforward of paths.

class MonotoneMap {
  public:
    MonotoneMap(std::vector<int> images, int target_dim)
        : images_(std::move(images)), target_dim_(target_dim) {
        if (images_.empty()) throw domain_error("monotone map needs a nonempty domain");
        for (size_t i = 0; i < images_.size(); ++i) {
            if (images_[i] < 0 || images_[i] > target_dim_)
                throw domain_error("monotone map value out of range");
            if (i > 0 && images_[i] < images_[i - 1])
                throw domain_error("map is not monotone");
        }
    }
    int domain_dim() const { return static_cast<int>(images_.size()) - 1; }
    int target_dim() const { return target_dim_; }
    int operator()(int v) const { return images_.at(v); }
    bool constant() const { return images_.front() == images_.back(); }

    friend MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g) {
        // f after g
        if (g.target_dim() != f.domain_dim()) throw domain_error("non-composable monotone maps");
        std::vector<int> images;
        for (int v = 0; v <= g.domain_dim(); ++v) images.push_back(f(g(v)));
        return MonotoneMap(std::move(images), f.target_dim());
    }

    BarycentricPoint push_point(const BarycentricPoint& theta) const {
        BarycentricPoint out(target_dim_ + 1, Rational(0));
        for (size_t i = 0; i < theta.size(); ++i) out[images_[i]] = out[images_[i]] + theta[i];
        return out;
    }

  private:
    std::vector<int> images_;
    int target_dim_;
};

// A piecewise-affine function given by breakpoints (t, value), affine between.
struct PiecewiseAffine {
    std::vector<std::pair<Rational, Rational>> breakpoints;

    Rational operator()(const Rational& t) const {
        if (breakpoints.empty()) throw domain_error("empty piecewise-affine function");
        if (t <= breakpoints.front().first) return breakpoints.front().second;
        if (t >= breakpoints.back().first) return breakpoints.back().second;
        for (size_t i = 1; i < breakpoints.size(); ++i) {
            if (t <= breakpoints[i].first) {
                const auto& [t0, v0] = breakpoints[i - 1];
                const auto& [t1, v1] = breakpoints[i];
                if (t0 == t1) return v1;
                Rational lambda = (t - t0) / (t1 - t0);
                return (Rational(1) - lambda) * v0 + lambda * v1;
            }
        }
        return breakpoints.back().second;
    }
};

// The image curve of a pushed path: breakpoints (sigma, point), constant or
// affine between consecutive entries, parametrized by the speed primitive.
struct PushedSegment {
    int target_dim = 0;
    Rational sigma_lo, sigma_hi;                              // [f(0), f(m)]
    std::vector<std::pair<Rational, BarycentricPoint>> nodes;  // increasing sigma

    BarycentricPoint evaluate(const Rational& sigma) const {
        if (sigma < sigma_lo || sigma > sigma_hi)
            throw domain_error("evaluation outside the determined segment");
        size_t last = 0;
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].first == sigma) last = i;  // rightmost node at sigma
            if (nodes[i].first < sigma) last = i;
        }
        if (nodes[last].first == sigma) {
            // take the rightmost node with this sigma value
            while (last + 1 < nodes.size() && nodes[last + 1].first == sigma) ++last;
            return nodes[last].second;
        }
        const auto& [s0, p0] = nodes[last];
        const auto& [s1, p1] = nodes[last + 1];
        Rational lambda = (sigma - s0) / (s1 - s0);
        BarycentricPoint out(p0.size(), Rational(0));
        for (size_t j = 0; j < p0.size(); ++j)
            out[j] = (Rational(1) - lambda) * p0[j] + lambda * p1[j];
        return out;
    }
};

struct Pushforward {
    PiecewiseAffine rho;      // [0, m] -> [f(0), f(m)]
    PushedSegment segment;    // the determined part of the pushed path
};

// Push a path forward along a monotone vertex map.  The reparametrization is
// the speed primitive of the image curve, which is piecewise affine and
// non-decreasing because the map is monotone.
inline Pushforward pushforward(const MonotoneMap& f, const StraightLinePath& path) {
    if (f.domain_dim() != path.dimension())
        throw domain_error("map domain does not match path dimension");
    const int m = path.dimension();
    Pushforward out;
    out.segment.target_dim = f.target_dim();
    out.segment.sigma_lo = Rational(f(0));
    out.segment.sigma_hi = Rational(f(m));
    for (int i = 0; i <= m; ++i) {
        BarycentricPoint image = f.push_point(path.corner(i));
        Rational sigma = speed_primitive(image);
        out.rho.breakpoints.emplace_back(path.taus()[i], sigma);
        out.segment.nodes.emplace_back(sigma, std::move(image));
    }
    return out;
}

struct FunctorialityVerdict {
    bool rho_composes = true;      // rho_{fg} = rho_f after rho_g
    bool segments_agree = true;    // (fg)_* path = f_* (g_* path) where determined
};

// Exact check of (fg)^* = g^* f^* at the level of reparametrizations and
// pushed segments, sampled at all breakpoints and at midpoints between them.
inline FunctorialityVerdict functoriality_check(const MonotoneMap& f, const MonotoneMap& g,
                                                const StraightLinePath& path) {
    MonotoneMap fg = compose(f, g);
    Pushforward via_g = pushforward(g, path);
    Pushforward direct = pushforward(fg, path);

    FunctorialityVerdict verdict;
    // sample times: breakpoints and midpoints
    std::vector<Rational> samples;
    const auto& taus = path.taus();
    for (size_t i = 0; i < taus.size(); ++i) {
        samples.push_back(taus[i]);
        if (i + 1 < taus.size())
            samples.push_back((taus[i] + taus[i + 1]) / Rational(2));
    }
    for (const auto& t : samples) {
        // rho_f evaluated on the pushed path through g: the speed primitive of
        // f applied to the g-image point
        BarycentricPoint g_point = via_g.segment.evaluate(via_g.rho(t));
        Rational rho_f_of = speed_primitive(f.push_point(g_point));
        if (rho_f_of != direct.rho(t)) verdict.rho_composes = false;
        BarycentricPoint lhs = direct.segment.evaluate(direct.rho(t));
        BarycentricPoint rhs = f.push_point(g_point);
        if (lhs != rhs) verdict.segments_agree = false;
    }
    return verdict;
}

}  // namespace floerkit
