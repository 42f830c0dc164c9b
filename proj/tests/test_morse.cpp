#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "floerkit/morse.hpp"

using namespace floerkit;

namespace {

// Random equivariant filling data assembled from independent blocks: lone
// fixed points, lone free orbits, fixed-fixed arrows, and equivariant
// orbit-orbit arrow packets.  Blocks never chain, so d^2 = 0 holds for the
// filling direction by construction.
GMorseData random_filling(std::mt19937_64& rng, std::uint32_t p, bool with_fixed) {
    // Minima-touching arrow packets always cancel in total (two descent sides
    // with opposite signs, or a full norm packet), as genuine pseudogradients
    // force; higher blocks are unconstrained.
    std::vector<CriticalPoint> pts;
    std::map<std::pair<int, int>, std::int64_t> flows;
    int orbit = 0;
    int blocks = 1 + int(rng() % 3);
    for (int b = 0; b < blocks; ++b) {
        int kind = int(rng() % 3);
        int base_index = b == 0 ? 0 : 2 * int(rng() % 2);
        if (kind == 0 && with_fixed) {
            // sphere-like fixed block: two minima feeding one saddle with
            // cancelling weights
            int a = static_cast<int>(pts.size());
            pts.push_back({"f" + std::to_string(orbit), base_index, orbit, 0, true});
            ++orbit;
            if (rng() % 2 == 0) {
                pts.push_back({"f" + std::to_string(orbit), base_index, orbit, 0, true});
                ++orbit;
                pts.push_back({"s" + std::to_string(orbit), base_index + 1, orbit, 0, true});
                ++orbit;
                std::int64_t c = 1 + std::int64_t(rng() % (p - 1 ? p - 1 : 1));
                flows[{a, a + 2}] = c;
                flows[{a + 1, a + 2}] = -c;
            }
        } else if (kind == 1) {
            // lone free orbit
            for (int t = 0; t < static_cast<int>(p); ++t)
                pts.push_back({"w" + std::to_string(orbit) + "_" + std::to_string(t), base_index,
                               orbit, t, false});
            ++orbit;
        } else {
            // two free orbits with equivariant arrow packets whose total
            // weight vanishes mod p: either a norm packet (all shifts equal)
            // or a difference packet (two shifts with opposite weights)
            int a = static_cast<int>(pts.size());
            for (int t = 0; t < static_cast<int>(p); ++t)
                pts.push_back({"a" + std::to_string(orbit) + "_" + std::to_string(t), base_index,
                               orbit, t, false});
            int bidx = static_cast<int>(pts.size());
            ++orbit;
            for (int t = 0; t < static_cast<int>(p); ++t)
                pts.push_back({"b" + std::to_string(orbit) + "_" + std::to_string(t),
                               base_index + 1, orbit, t, false});
            ++orbit;
            if (rng() % 2 == 0) {
                std::int64_t c = 1 + std::int64_t(rng() % (p - 1 ? p - 1 : 1));
                for (int shift = 0; shift < static_cast<int>(p); ++shift)
                    for (int t = 0; t < static_cast<int>(p); ++t)
                        flows[{a + t, bidx + (t + shift) % static_cast<int>(p)}] = c;
            } else {
                std::int64_t c = 1 + std::int64_t(rng() % (p - 1 ? p - 1 : 1));
                int s1 = int(rng() % p), s2 = (s1 + 1 + int(rng() % (p > 1 ? p - 1 : 1))) % int(p);
                for (int t = 0; t < static_cast<int>(p); ++t) {
                    flows[{a + t, bidx + (t + s1) % static_cast<int>(p)}] += c;
                    flows[{a + t, bidx + (t + s2) % static_cast<int>(p)}] += -c;
                }
            }
        }
    }
    // a fixed point on the filling forces a fixed minimum (the restriction of
    // the pseudogradient to the fixed locus attains one); guarantee it
    bool has_fixed_min = false;
    for (const auto& q : pts)
        if (q.fixed && q.index == 0) has_fixed_min = true;
    if (with_fixed && !has_fixed_min) pts.push_back({"f_extra", 0, orbit++, 0, true});
    if (pts.empty()) pts.push_back({"f0", 0, 0, 0, true});
    return GMorseData(p, std::move(pts), std::move(flows));
}

}  // namespace

TEST_CASE("bg model has p points per index") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto bg = build_bg_model(p, 4);
        int top = p == 2 ? 4 : 9;
        for (int index = 0; index <= top; ++index)
            CHECK(bg.points_of_index(index).size() == p);
    }
}

TEST_CASE("bg flow counts square to zero over the integers") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto bg = build_bg_model(p, 8);
        // composite counts: sum over middle points of products must vanish
        for (int a = 0; a < bg.size(); ++a)
            for (int c = 0; c < bg.size(); ++c) {
                if (bg.points()[c].index != bg.points()[a].index + 2) continue;
                std::int64_t total = 0;
                for (int m = 0; m < bg.size(); ++m) {
                    if (bg.points()[m].index != bg.points()[a].index + 1) continue;
                    total += bg.flow(a, m) * bg.flow(m, c);
                }
                CHECK(total == 0);
            }
    }
}

TEST_CASE("bg flow counts match the cellular chain complex of the skeleton") {
    // Independent construction of the boundary matrices of the sphere
    // skeleton with its free action: antipodal cells for p = 2, the standard
    // difference/norm pattern for odd p.  Cohomological counts are the
    // transposes.
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto bg = build_bg_model(p, 3);
        int top = p == 2 ? 3 : 7;
        auto id_of = [&](int index, int tag) { return index * static_cast<int>(p) + tag; };
        for (int k = 0; k + 1 <= top; ++k)
            for (int htop = 0; htop < static_cast<int>(p); ++htop)
                for (int hbot = 0; hbot < static_cast<int>(p); ++hbot) {
                    std::int64_t boundary_coeff = 0;
                    if (p == 2) {
                        if (hbot == htop) boundary_coeff = 1;
                        else boundary_coeff = ((k + 1) % 2 == 0) ? 1 : -1;  // dv_{k+1}: sign (-1)^{k+1}
                    } else if ((k + 1) % 2 == 1) {
                        // odd cell: difference g - 1
                        if (hbot == (htop + 1) % static_cast<int>(p)) boundary_coeff = 1;
                        if (hbot == htop) boundary_coeff -= 1;
                    } else {
                        boundary_coeff = 1;  // even cell: norm
                    }
                    CHECK(bg.flow(id_of(k, hbot), id_of(k + 1, htop)) == boundary_coeff);
                }
        // quotient complex (one cell per index): homology over F_p is F_p in
        // every degree up to the top
        std::vector<Generator> gens;
        for (int k = 0; k <= top; ++k) gens.push_back({"c" + std::to_string(k), 0});
        SeriesMatrix d(top + 1, top + 1, p, 4);
        for (int k = 0; k + 1 <= top; ++k) {
            std::int64_t total = 0;
            for (int hbot = 0; hbot < static_cast<int>(p); ++hbot) total += bg.flow(id_of(k, hbot), id_of(k + 1, 0));
            d.set_int(k + 1, k, total);
        }
        ChainComplex quotient(gens, d, /*graded=*/false);
        auto h = homology(quotient);
        CHECK(h.even.k_dimension(1) == top + 1);
    }
}

TEST_CASE("equivariant complex of a single fixed point") {
    for (std::uint32_t p : {3u, 5u}) {
        auto bg = build_bg_model(p, 8);
        auto eq = build_cm_eq(single_fixed_point(p), bg, 16);
        auto h = homology(eq.complex);
        CHECK(h.even.free_rank == 1);
        CHECK(h.even.torsion.empty());
        CHECK(h.odd.free_rank == 1);
        CHECK(h.odd.torsion.empty());
    }
    // p = 2: ungraded, free of rank 1
    auto bg2 = build_bg_model(2, 8);
    auto eq2 = build_cm_eq(single_fixed_point(2), bg2, 16);
    CHECK_FALSE(eq2.complex.graded());
    auto h2 = homology(eq2.complex);
    CHECK(h2.even.free_rank == 1);
    CHECK(h2.even.torsion.empty());
}

TEST_CASE("equivariant complex of a free orbit") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto bg = build_bg_model(p, 8);
        auto eq = build_cm_eq(free_orbit(p), bg, 16);
        auto h = homology(eq.complex);
        CHECK(h.even.free_rank == 0);
        CHECK(h.even.torsion == std::vector<int>{1});
        if (eq.complex.graded()) {
            CHECK(h.odd.free_rank == 0);
            CHECK(h.odd.torsion.empty());
        }
    }
}

TEST_CASE("unit cycle") {
    for (std::uint32_t p : {2u, 3u}) {
        auto bg = build_bg_model(p, 6);
        // single fixed minimum: unit = that generator
        auto eq = build_cm_eq(single_fixed_point(p), bg, 16);
        auto unit = unit_cycle(eq);
        CHECK(unit.is_cycle);
        int nonzero = 0;
        for (const auto& e : unit.element)
            if (!e.is_zero()) ++nonzero;
        CHECK(nonzero == 1);
        // two fixed minima
        GMorseData two(p,
                       {{"q0", 0, 0, 0, true}, {"q1", 0, 1, 0, true}}, {});
        auto eq2 = build_cm_eq(two, bg, 16);
        auto unit2 = unit_cycle(eq2);
        CHECK(unit2.is_cycle);
        nonzero = 0;
        for (const auto& e : unit2.element)
            if (!e.is_zero()) ++nonzero;
        CHECK(nonzero == 2);
        // free orbit: unit well-defined and a cycle
        auto eq3 = build_cm_eq(free_orbit(p), bg, 16);
        CHECK(unit_cycle(eq3).is_cycle);
        // empty data has a degenerate unit
        GMorseData only_high(p, {{"h", 2, 0, 0, true}}, {});
        auto eq4 = build_cm_eq(only_high, bg, 16);
        CHECK(unit_cycle(eq4).degenerate);
    }
}

TEST_CASE("localization at a fixed point") {
    for (std::uint32_t p : {3u, 5u}) {
        auto bg = build_bg_model(p, 8);
        // single fixed point: quotient is everything
        auto eq = build_cm_eq(single_fixed_point(p), bg, 16);
        auto loc = localize_at_fixed_point(eq, 0);
        CHECK(loc.quotient.size() == eq.complex.size());
        auto h = homology(loc.quotient);
        CHECK(h.even.free_rank == 1);
        CHECK(h.odd.free_rank == 1);
        CHECK(h.even.torsion.empty());
        CHECK(h.odd.torsion.empty());
        // fixed minimum plus a free orbit: quotient kills the orbit, unit maps
        // to unit
        auto eq2 = build_cm_eq(fixed_plus_free_orbit(p), bg, 16);
        auto loc2 = localize_at_fixed_point(eq2, 0);
        CHECK(loc2.quotient.size() == 2);
        auto unit = unit_cycle(eq2);
        auto image = loc2.projection.apply(unit.element);
        // image is the unit of the quotient: single 1 at the degree-0 lift of q0
        int nonzero = 0;
        for (const auto& e : image)
            if (!e.is_zero()) ++nonzero;
        CHECK(nonzero == 1);
        auto hq = homology(loc2.quotient);
        CHECK(hq.even.free_rank == 1);
        CHECK(hq.odd.free_rank == 1);
    }
    // wrong point is rejected
    auto bg2 = build_bg_model(3, 6);
    auto eqf = build_cm_eq(free_orbit(3), bg2, 16);
    CHECK_THROWS_AS(localize_at_fixed_point(eqf, 0), domain_error);
}

TEST_CASE("unit torsion dichotomy") {
    std::mt19937_64 rng(61);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto bg = build_bg_model(p, 8);
        // fixed point present: not torsion
        for (int trial = 0; trial < 8; ++trial) {
            auto w = random_filling(rng, p, true);
            auto eq = build_cm_eq(w, bg, 16);
            auto rep = unit_torsion_check(eq);
            CHECK(rep.verdict == UnitVerdict::NotTorsion);
        }
        // purely free data: unit is nilpotent under x
        for (int trial = 0; trial < 8; ++trial) {
            auto w = random_filling(rng, p, false);
            auto eq = build_cm_eq(w, bg, 16);
            auto rep = unit_torsion_check(eq);
            CHECK(rep.verdict == UnitVerdict::Torsion);
            CHECK(rep.torsion_bound >= 1);
        }
    }
}

TEST_CASE("generated complexes satisfy d^2 = 0 and model checks") {
    std::mt19937_64 rng(62);
    for (std::uint32_t p : {2u, 3u}) {
        auto bg = build_bg_model(p, 8);
        for (int trial = 0; trial < 10; ++trial) {
            auto w = random_filling(rng, p, trial % 2 == 0);
            // construction itself runs the d^2 = 0 admissibility check
            auto eq = build_cm_eq(w, bg, 16);
            CHECK(eq.complex.size() == (p == 2 ? w.size() : 2 * w.size()));
        }
    }
}

TEST_CASE("non-equivariant data is rejected") {
    // two points in one orbit with a non-equivariant arrow
    std::vector<CriticalPoint> pts{{"a0", 0, 0, 0, false}, {"a1", 0, 0, 1, false},
                                   {"b0", 1, 1, 0, false}, {"b1", 1, 1, 1, false}};
    std::map<std::pair<int, int>, std::int64_t> flows{{{0, 2}, 1}};
    CHECK_THROWS_AS(GMorseData(2, pts, flows), structural_error);
}
