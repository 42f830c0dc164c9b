#pragma once

// Equivariant Morse complexes over F_p[[x]]/(x^N) from finite combinatorial
// Morse data.  The classifying-space direction is a built-in skeleton model
// whose flow counts reproduce the cellular (co)chain complex of the
// real-projective (p = 2) or lens-space (p >= 3) skeleton; the x-variable
// records how many shift periods a flow line descends.
//
// Data is not checked against an actual pseudogradient; d^2 = 0 at
// construction is the admissibility test.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floerkit/homology.hpp"

namespace floerkit {

struct CriticalPoint {
    std::string label;
    int index = 0;    // Morse index, >= 0
    int orbit = 0;    // orbit identifier
    int element = 0;  // group element tag 0..p-1 (0 for fixed points)
    bool fixed = false;
};

class GMorseData {
  public:
    GMorseData(std::uint32_t p, std::vector<CriticalPoint> points,
               std::map<std::pair<int, int>, std::int64_t> flows, int shift_stride = 0)
        : p_(p), points_(std::move(points)), flows_(std::move(flows)), shift_stride_(shift_stride) {
        if (!is_prime_u32(p_)) throw structural_error("group order must be prime");
        for (size_t i = 0; i < points_.size(); ++i) {
            const auto& q = points_[i];
            if (q.index < 0) throw structural_error("negative Morse index");
            if (q.element < 0 || q.element >= static_cast<int>(p_))
                throw structural_error("group element tag out of range");
            if (q.fixed && q.element != 0)
                throw structural_error("fixed points carry the trivial element tag");
            by_orbit_[{q.orbit, q.index, q.element}] = static_cast<int>(i);
        }
        for (const auto& [edge, count] : flows_) {
            const auto& from = points_.at(edge.first);
            const auto& to = points_.at(edge.second);
            if (to.index != from.index + 1)
                throw structural_error("flow counts only between index difference 1");
            (void)count;
        }
        check_equivariance();
    }

    std::uint32_t group_order() const { return p_; }
    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<CriticalPoint>& points() const { return points_; }
    int shift_stride() const { return shift_stride_; }

    std::int64_t flow(int from, int to) const {
        auto it = flows_.find({from, to});
        return it == flows_.end() ? 0 : it->second;
    }
    const std::map<std::pair<int, int>, std::int64_t>& flows() const { return flows_; }

    // Action of the group generator^g on a critical point.
    int translate(int point, int g) const {
        const auto& q = points_.at(point);
        if (q.fixed) return point;
        int tag = (q.element + g) % static_cast<int>(p_);
        if (tag < 0) tag += p_;
        auto it = by_orbit_.find({q.orbit, q.index, tag});
        if (it == by_orbit_.end())
            throw structural_error("orbit of " + q.label + " is incomplete");
        return it->second;
    }

    std::vector<int> points_of_index(int index) const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (points_[i].index == index) out.push_back(i);
        return out;
    }
    std::optional<int> find_label(const std::string& label) const {
        for (int i = 0; i < size(); ++i)
            if (points_[i].label == label) return i;
        return std::nullopt;
    }

  private:
    void check_equivariance() const {
        for (const auto& [edge, count] : flows_) {
            for (int g = 1; g < static_cast<int>(p_); ++g) {
                int from_g = translate(edge.first, g);
                int to_g = translate(edge.second, g);
                std::int64_t other = flow(from_g, to_g);
                // counts are signed; equivariance is checked modulo p, which
                // is where the complex lives
                std::int64_t diff = (count - other) % static_cast<std::int64_t>(p_);
                if (diff != 0)
                    throw structural_error("flow counts are not equivariant at " +
                                           points_[edge.first].label);
            }
        }
    }

    std::uint32_t p_;
    std::vector<CriticalPoint> points_;
    std::map<std::pair<int, int>, std::int64_t> flows_;
    int shift_stride_;  // index stride of the self-similarity (0 when absent)
    std::map<std::tuple<int, int, int>, int> by_orbit_;
};

// Skeleton model of the classifying-space total space: one free orbit of
// critical points per index, flow counts matching the cellular structure.
// Levels run to index `levels` (p = 2) or 2*levels + 1 (p >= 3).
inline GMorseData build_bg_model(std::uint32_t p, int levels) {
    if (!is_prime_u32(p)) throw structural_error("group order must be prime");
    if (levels < 2) throw structural_error("need at least two levels");
    std::vector<CriticalPoint> pts;
    std::map<std::pair<int, int>, std::int64_t> flows;
    auto id_of = [&](int index, int tag) {
        return index * static_cast<int>(p) + tag;
    };
    const int top = p == 2 ? levels : 2 * levels + 1;
    for (int index = 0; index <= top; ++index)
        for (int tag = 0; tag < static_cast<int>(p); ++tag)
            pts.push_back({"v" + std::to_string(index) + "," + std::to_string(tag), index, index,
                           tag, false});
    if (p == 2) {
        // boundary upstairs: dv_{k+1,s} = v_{k,s} + (-1)^{k+1} v_{k,1-s};
        // cohomological counts are the transposed coefficients
        for (int k = 0; k + 1 <= top; ++k)
            for (int s = 0; s < 2; ++s) {
                flows[{id_of(k, s), id_of(k + 1, s)}] = 1;
                flows[{id_of(k, 1 - s), id_of(k + 1, s)}] = (k + 1) % 2 == 0 ? 1 : -1;
            }
    } else {
        // dv_{2k+1,h} = v_{2k,h+1} - v_{2k,h}; dv_{2k+2,h} = sum_t v_{2k+1,t}
        for (int k = 0; 2 * k + 1 <= top; ++k)
            for (int h = 0; h < static_cast<int>(p); ++h) {
                flows[{id_of(2 * k, (h + 1) % p), id_of(2 * k + 1, h)}] = 1;
                flows[{id_of(2 * k, h), id_of(2 * k + 1, h)}] += -1;
            }
        for (int k = 0; 2 * k + 2 <= top; ++k)
            for (int h = 0; h < static_cast<int>(p); ++h)
                for (int t = 0; t < static_cast<int>(p); ++t)
                    flows[{id_of(2 * k + 1, t), id_of(2 * k + 2, h)}] = 1;
    }
    return GMorseData(p, std::move(pts), std::move(flows), p == 2 ? 1 : 2);
}

// The equivariant complex: generators are pairs (q, y) with q a critical
// point of the filling data and y a distinguished lift (one lift at p = 2,
// two lifts 1 and theta at p >= 3).
struct EqMorseComplex {
    ChainComplex complex;
    std::vector<std::pair<int, int>> pair_of_generator;  // (point id, y in {0,1})
    GMorseData filling;
    std::uint32_t p = 2;

    int generator_of(int point, int y) const {
        for (size_t g = 0; g < pair_of_generator.size(); ++g)
            if (pair_of_generator[g] == std::make_pair(point, y)) return static_cast<int>(g);
        throw structural_error("no generator for the requested pair");
    }
};

inline EqMorseComplex build_cm_eq(const GMorseData& w, const GMorseData& bg, int precision) {
    const std::uint32_t p = w.group_order();
    if (p != bg.group_order()) throw structural_error("filling and model group orders differ");
    const int period = bg.shift_stride();
    if (period != (p == 2 ? 1 : 2))
        throw structural_error("model lacks the expected self-similarity stride");
    const int lifts = p == 2 ? 1 : 2;
    const bool graded = p != 2;

    std::vector<Generator> gens;
    std::vector<std::pair<int, int>> pairs;
    for (int q = 0; q < w.size(); ++q)
        for (int y = 0; y < lifts; ++y) {
            Generator g;
            g.label = w.points()[q].label + (lifts == 2 ? (y == 0 ? "|1" : "|th") : "");
            g.degree = graded ? (w.points()[q].index + y) % 2 : 0;
            gens.push_back(g);
            pairs.emplace_back(q, y);
        }
    const int total = static_cast<int>(gens.size());
    SeriesMatrix d(total, total, p, precision);
    auto gen_id = [&](int q, int y) { return q * lifts + y; };

    // filling direction: counts between critical points, same lift, sign by
    // lift degree
    for (const auto& [edge, count] : w.flows()) {
        for (int y = 0; y < lifts; ++y) {
            std::int64_t signed_count = (graded && y % 2 == 1) ? -count : count;
            auto& cell = d.at(gen_id(edge.second, y), gen_id(edge.first, y));
            cell = cell + TruncatedSeries::constant(p, precision, signed_count);
        }
    }
    // classifying-space direction: flows out of the distinguished lifts at
    // levels 0..lifts-1; the target level j = period * k + y' contributes
    // x^k and a group translation of the filling point
    for (int y = 0; y < lifts; ++y) {
        int from_id = -1;
        for (int i = 0; i < bg.size(); ++i)
            if (bg.points()[i].index == y && bg.points()[i].element == 0) from_id = i;
        if (from_id < 0) throw structural_error("model misses a distinguished lift");
        for (const auto& [edge, count] : bg.flows()) {
            if (edge.first != from_id) continue;
            const auto& target = bg.points()[edge.second];
            int k = target.index / period;
            int yprime = target.index % period;
            if (p == 2) yprime = 0;
            int h = target.element;
            for (int q = 0; q < w.size(); ++q) {
                int q_translated = w.translate(q, -h);
                auto& cell = d.at(gen_id(q_translated, yprime), gen_id(q, y));
                cell = cell + TruncatedSeries::constant(p, precision, count).shift_up(k);
            }
        }
    }
    EqMorseComplex out{ChainComplex(gens, std::move(d), graded), std::move(pairs), w, p};
    return out;
}

// The unit: sum of all pairs (q, y) with index(q) = 0 and y the degree-0 lift.
struct UnitCycle {
    std::vector<TruncatedSeries> element;
    bool is_cycle = false;
    bool degenerate = false;  // no index-0 generators at all
};

inline UnitCycle unit_cycle(const EqMorseComplex& c) {
    const std::uint32_t p = c.complex.modulus();
    const int N = c.complex.precision();
    UnitCycle unit;
    unit.element.assign(c.complex.size(), TruncatedSeries::zero(p, N));
    bool any = false;
    for (size_t g = 0; g < c.pair_of_generator.size(); ++g) {
        auto [q, y] = c.pair_of_generator[g];
        if (c.filling.points()[q].index == 0 && y == 0) {
            unit.element[g] = TruncatedSeries::one(p, N);
            any = true;
        }
    }
    if (!any) {
        unit.degenerate = true;
        return unit;
    }
    auto image = c.complex.differential().apply(unit.element);
    unit.is_cycle = true;
    for (const auto& e : image)
        if (!e.is_zero()) unit.is_cycle = false;
    return unit;
}

struct Localization {
    ChainComplex quotient;
    SeriesMatrix projection;  // quotient chain map in the generator bases
    std::vector<int> kept;    // generator indices of the local summand
};

// Quotient onto the summand of pairs at one fixed index-0 critical point.
// The complementary span is a subcomplex because nothing flows out of q0's
// pairs into it; that containment is verified, not assumed.
inline Localization localize_at_fixed_point(const EqMorseComplex& c, int q0) {
    const auto& q = c.filling.points().at(q0);
    if (!q.fixed || q.index != 0)
        throw domain_error("localization needs a fixed critical point of index 0");
    std::vector<int> kept;
    for (size_t g = 0; g < c.pair_of_generator.size(); ++g)
        if (c.pair_of_generator[g].first == q0) kept.push_back(static_cast<int>(g));
    const auto& d = c.complex.differential();
    for (int i : kept)
        for (int j = 0; j < c.complex.size(); ++j) {
            bool j_kept = std::find(kept.begin(), kept.end(), j) != kept.end();
            if (!j_kept && !d.at(i, j).is_zero())
                throw structural_error("complement is not a subcomplex");
        }
    std::vector<Generator> gens;
    for (int i : kept) gens.push_back(c.complex.generators()[i]);
    SeriesMatrix proj(static_cast<int>(kept.size()), c.complex.size(), c.complex.modulus(),
                      c.complex.precision());
    for (size_t r = 0; r < kept.size(); ++r) proj.set_int(static_cast<int>(r), kept[r], 1);
    Localization loc{ChainComplex(gens, d.submatrix(kept, kept), c.complex.graded()),
                     std::move(proj), kept};
    // chain map: proj d = d_quot proj
    if (!(loc.projection * d - loc.quotient.differential() * loc.projection).is_zero())
        throw structural_error("localization projection is not a chain map");
    return loc;
}

enum class UnitVerdict { NotTorsion, Torsion, Degenerate };

struct UnitReport {
    UnitVerdict verdict = UnitVerdict::Degenerate;
    DivisibilityReport divisibility;
    int torsion_bound = 0;  // least e with x^e [unit] = 0 when torsion
};

inline UnitReport unit_torsion_check(const EqMorseComplex& c) {
    UnitReport report;
    auto unit = unit_cycle(c);
    if (unit.degenerate) return report;
    if (!unit.is_cycle) throw structural_error("unit element is not a cycle");
    ComplexHomology hc(c.complex);
    const DegreeHomology& h = hc.degree(0);
    auto gen_coords = h.cycle_coords(h.restrict_to_degree(unit.element));
    report.divisibility = x_divisibility(gen_coords, h.module());
    if (report.divisibility.free_part_defined && !report.divisibility.precision_limited) {
        report.verdict = UnitVerdict::NotTorsion;
        return report;
    }
    // no free component: the least e with x^e [unit] = 0 comes from the pivot
    // coordinates, annihilated at exponents[i] - valuation each
    report.verdict = UnitVerdict::Torsion;
    auto canon = h.module().canonical_coords(gen_coords);
    const auto& sm = h.module().smith();
    int bound = 0;
    for (int i = 0; i < sm.pivot_count(); ++i) {
        if (canon[static_cast<size_t>(i)].is_zero()) continue;
        bound = std::max(bound, sm.exponents[i] - canon[static_cast<size_t>(i)].valuation());
    }
    report.torsion_bound = bound;
    return report;
}

// ---------------------------------------------------------------------------
// Built-in filling models.

inline GMorseData single_fixed_point(std::uint32_t p) {
    return GMorseData(p, {{"q0", 0, 0, 0, true}}, {});
}

inline GMorseData free_orbit(std::uint32_t p, int index = 0) {
    std::vector<CriticalPoint> pts;
    for (int t = 0; t < static_cast<int>(p); ++t)
        pts.push_back({"w" + std::to_string(t), index, 0, t, false});
    return GMorseData(p, std::move(pts), {});
}

inline GMorseData fixed_plus_free_orbit(std::uint32_t p) {
    std::vector<CriticalPoint> pts;
    pts.push_back({"q0", 0, 0, 0, true});
    for (int t = 0; t < static_cast<int>(p); ++t)
        pts.push_back({"w" + std::to_string(t), 0, 1, t, false});
    return GMorseData(p, std::move(pts), {});
}

}  // namespace floerkit
