#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "floerkit/simplex_paths.hpp"

using namespace floerkit;

namespace {

Rational rnd_open_unit(std::mt19937_64& rng) {
    // strictly inside (0,1)
    std::int64_t den = 2 + std::int64_t(rng() % 62);
    std::int64_t num = 1 + std::int64_t(rng() % (den - 1));
    return Rational(num, den);
}

std::vector<MonotoneMap> all_monotone_maps(int m, int n) {
    // all nondecreasing {0..m} -> {0..n}
    std::vector<MonotoneMap> out;
    std::vector<int> cur(m + 1, 0);
    while (true) {
        bool mono = true;
        for (int i = 1; i <= m; ++i)
            if (cur[i] < cur[i - 1]) mono = false;
        if (mono) out.emplace_back(cur, n);
        int pos = m;
        while (pos >= 0 && cur[pos] == n) cur[pos--] = 0;
        if (pos < 0) break;
        ++cur[pos];
    }
    return out;
}

}  // namespace

TEST_CASE("tau recursion closed forms at n=3") {
    // symbolic check by sweeping x over a grid: tau_2 = 2 + x_2 and
    // tau_1 = 1 + x_1 (1 + x_2)
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) {
            Rational x1(a, 4), x2(b, 4);
            auto path = from_cube(3, {x1, x2});
            CHECK(path.taus()[3] == Rational(3));
            CHECK(path.taus()[2] == Rational(2) + x2);
            CHECK(path.taus()[1] == Rational(1) + x1 * (Rational(1) + x2));
            CHECK(path.taus()[0] == Rational(0));
        }
    // the specific half-half point
    auto path = from_cube(3, {Rational(1, 2), Rational(1, 2)});
    CHECK(path.taus() == std::vector<Rational>{Rational(0), Rational(7, 4), Rational(5, 2), Rational(3)});
}

TEST_CASE("n=1 path has no coordinates and taus 0,1") {
    auto path = from_cube(1, {});
    CHECK(path.taus() == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(path.evaluate(Rational(0)) == BarycentricPoint{Rational(1), Rational(0)});
    CHECK(path.evaluate(Rational(1)) == BarycentricPoint{Rational(0), Rational(1)});
}

TEST_CASE("coordinates out of range are rejected") {
    CHECK_THROWS_AS(from_cube(3, {Rational(3, 2), Rational(1, 2)}), domain_error);
    CHECK_THROWS_AS(from_cube(3, {Rational(-1, 2), Rational(1, 2)}), domain_error);
    auto path = from_cube(2, {Rational(1, 2)});
    CHECK_THROWS_AS(path.evaluate(Rational(5, 2)), domain_error);
}

TEST_CASE("evaluation endpoints, hull membership and unit speed") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + int(rng() % 5);
        std::vector<Rational> cube;
        for (int i = 0; i < n - 1; ++i) cube.push_back(rnd_open_unit(rng));
        auto path = from_cube(n, cube);
        // endpoints
        auto start = path.evaluate(Rational(0));
        CHECK(start[0] == Rational(1));
        auto end = path.evaluate(Rational(n));
        CHECK(end[n] == Rational(1));
        // corner hull membership and monotone taus
        for (int i = 0; i <= n; ++i) {
            auto p = path.evaluate(path.taus()[i]);
            for (int j = 0; j < i; ++j) CHECK(p[j].is_zero());
            if (i > 0) CHECK(path.taus()[i - 1] <= path.taus()[i]);
        }
        // unit speed at breakpoints and random interior times
        for (int i = 0; i <= n; ++i)
            CHECK(speed_primitive(path.evaluate(path.taus()[i])) == path.taus()[i]);
        for (int s = 0; s < 10; ++s) {
            Rational tau(std::int64_t(rng() % (8 * n)), 8);
            if (tau > Rational(n)) continue;
            auto theta = path.evaluate(tau);
            Rational sum;
            for (auto& t : theta) {
                CHECK(t >= Rational(0));
                sum = sum + t;
            }
            CHECK(sum == Rational(1));
            CHECK(speed_primitive(theta) == tau);
        }
    }
}

TEST_CASE("preimage of an interior vertex is a single time") {
    // x_q = 0 forces the path through v_q at time q
    auto path = from_cube(3, {Rational(0), Rational(1, 3)});
    auto at1 = path.evaluate(Rational(1));
    CHECK(at1[1] == Rational(1));
    // sample: no other time maps to v_1
    for (int num = 0; num <= 24; ++num) {
        Rational tau(num, 8);
        if (tau == Rational(1)) continue;
        auto p = path.evaluate(tau);
        CHECK_FALSE(p[1] == Rational(1));
    }
}

TEST_CASE("round trip cube -> path -> cube") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + int(rng() % 5);
        std::vector<Rational> cube;
        for (int i = 0; i < n - 1; ++i) cube.push_back(rnd_open_unit(rng));
        auto path = from_cube(n, cube);
        CHECK(cube_from_path(path) == cube);
    }
}

TEST_CASE("interval layout values and degeneracy") {
    auto path = from_cube(3, {Rational(1, 2), Rational(1, 2)});
    auto layout = interval_layout(path);
    REQUIRE(layout.intervals.size() == 3);
    CHECK(layout.intervals[0] == std::make_pair(Rational(0), Rational(1)));
    CHECK(layout.intervals[1] == std::make_pair(Rational(-3, 2), Rational(-1)));
    CHECK(layout.intervals[2] == std::make_pair(Rational(-3), Rational(-5, 2)));
    CHECK(layout.interiors_disjoint());
    // single interval for n=1
    auto p1 = from_cube(1, {});
    auto l1 = interval_layout(p1);
    REQUIRE(l1.intervals.size() == 1);
    CHECK(l1.intervals[0] == std::make_pair(Rational(0), Rational(1)));
    // boundary coordinates are rejected
    CHECK_THROWS_AS(interval_layout(from_cube(2, {Rational(0)})), degenerate_layout_error);
    CHECK_THROWS_AS(interval_layout(from_cube(2, {Rational(1)})), degenerate_layout_error);
}

TEST_CASE("interval interiors pairwise disjoint on random tuples") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + int(rng() % 5);  // n <= 6
        std::vector<Rational> cube;
        for (int i = 0; i < n - 1; ++i) cube.push_back(rnd_open_unit(rng));
        auto layout = interval_layout(from_cube(n, cube));
        CHECK(layout.interiors_disjoint());
        // ordering I_n <= ... <= I_1
        for (size_t i = 1; i < layout.intervals.size(); ++i)
            CHECK(layout.intervals[i].second <= layout.intervals[i - 1].first);
    }
}

TEST_CASE("pushforward: identity and vertex-skipping edge") {
    auto p1 = from_cube(1, {});
    // identity
    MonotoneMap id({0, 1}, 1);
    auto push = pushforward(id, p1);
    CHECK(push.rho(Rational(0)) == Rational(0));
    CHECK(push.rho(Rational(1, 2)) == Rational(1, 2));
    CHECK(push.rho(Rational(1)) == Rational(1));
    // f: [1] -> [2] hitting {0, 2}: the straight edge v0 -> v2, rho affine onto [0,2]
    MonotoneMap skip({0, 2}, 2);
    auto push2 = pushforward(skip, p1);
    CHECK(push2.rho(Rational(1, 2)) == Rational(1));
    CHECK(push2.segment.sigma_lo == Rational(0));
    CHECK(push2.segment.sigma_hi == Rational(2));
    auto mid = push2.segment.evaluate(Rational(1));
    CHECK(mid == BarycentricPoint{Rational(1, 2), Rational(0), Rational(1, 2)});
    // pushed curve matches f(path) at sampled times
    for (int num = 0; num <= 8; ++num) {
        Rational tau(num, 8);
        auto lhs = skip.push_point(p1.evaluate(tau));
        auto rhs = push2.segment.evaluate(push2.rho(tau));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("pushforward of constant map is constant") {
    auto path = from_cube(3, {Rational(1, 3), Rational(2, 5)});
    MonotoneMap constant({1, 1, 1, 1}, 2);
    auto push = pushforward(constant, path);
    CHECK(push.segment.sigma_lo == push.segment.sigma_hi);
    for (int num = 0; num <= 12; ++num) {
        Rational tau(num, 4);
        CHECK(push.rho(tau) == Rational(1));
    }
}

TEST_CASE("pushforward legs land affinely in pushed breakpoint intervals") {
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 30; ++trial) {
        int m = 2 + int(rng() % 3);
        int n = 1 + int(rng() % 3);
        // random monotone map
        std::vector<int> imgs(m + 1);
        imgs[0] = int(rng() % (n + 1));
        for (int i = 1; i <= m; ++i) imgs[i] = std::min(n, imgs[i - 1] + int(rng() % 2 == 0 ? 0 : 1 + rng() % 2));
        MonotoneMap f(imgs, n);
        std::vector<Rational> cube;
        for (int i = 0; i < m - 1; ++i) cube.push_back(rnd_open_unit(rng));
        auto path = from_cube(m, cube);
        auto push = pushforward(f, path);
        // sigma breakpoints of the pushed segment: node sigmas where the point
        // first lies in hull(v_k..)
        std::vector<Rational> sigma_bps;
        sigma_bps.push_back(push.segment.sigma_lo);
        for (int k = 0; k <= n; ++k) {
            for (auto& [sigma, point] : push.segment.nodes) {
                bool inside = true;
                for (int j = 0; j < k; ++j)
                    if (!point[j].is_zero()) inside = false;
                if (inside) {
                    sigma_bps.push_back(sigma);
                    break;
                }
            }
        }
        sigma_bps.push_back(push.segment.sigma_hi);
        std::sort(sigma_bps.begin(), sigma_bps.end());
        // each path leg maps into one breakpoint interval
        for (int i = 0; i < m; ++i) {
            Rational lo = push.rho(path.taus()[i]);
            Rational hi = push.rho(path.taus()[i + 1]);
            bool found = false;
            for (size_t j = 0; j + 1 < sigma_bps.size(); ++j)
                if (sigma_bps[j] <= lo && hi <= sigma_bps[j + 1]) found = true;
            CHECK(found);
        }
        // f(path(tau)) = pushed(rho(tau)) everywhere
        for (int num = 0; num <= 4 * m; ++num) {
            Rational tau(num, 4);
            auto lhs = f.push_point(path.evaluate(tau));
            auto rhs = push.segment.evaluate(push.rho(tau));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("functoriality over all small monotone maps") {
    std::mt19937_64 rng(55);
    for (int i = 1; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j)
            for (int k = 0; k <= 3; ++k) {
                if (j < 1 || k < 0) continue;
                auto gs = all_monotone_maps(i, j);  // g: [i] -> [j]
                auto fs = all_monotone_maps(j, k);  // f: [j] -> [k]
                // a few random paths in the domain simplex
                for (int trial = 0; trial < 3; ++trial) {
                    std::vector<Rational> cube;
                    for (int t = 0; t < i - 1; ++t) cube.push_back(rnd_open_unit(rng));
                    auto path = from_cube(i, cube);
                    for (size_t gi = 0; gi < gs.size(); gi += (gs.size() > 6 ? 3 : 1))
                        for (size_t fi = 0; fi < fs.size(); fi += (fs.size() > 6 ? 3 : 1)) {
                            auto verdict = functoriality_check(fs[fi], gs[gi], path);
                            CHECK(verdict.rho_composes);
                            CHECK(verdict.segments_agree);
                        }
                }
            }
}

TEST_CASE("simplicial identities via pushforward") {
    // face maps d_i: [n-1] -> [n] (skip i), degeneracies s_i: [n+1] -> [n]
    auto face = [](int n, int skip) {
        std::vector<int> imgs;
        for (int v = 0; v <= n; ++v)
            if (v != skip) imgs.push_back(v);
        return MonotoneMap(imgs, n);
    };
    auto degeneracy = [](int n, int rep) {
        std::vector<int> imgs;
        for (int v = 0; v <= n; ++v) {
            imgs.push_back(v);
            if (v == rep) imgs.push_back(v);
        }
        return MonotoneMap(imgs, n);
    };
    std::mt19937_64 rng(56);
    // d_j d_i = d_i d_{j-1} for i < j, as maps [n-1] -> [n+1]
    int n = 3;
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n + 1; ++j) {
            auto lhs = compose(face(n + 1, j), face(n, i));
            auto rhs = compose(face(n + 1, i), face(n, j - 1));
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<Rational> cube;
                for (int t = 0; t < n - 2; ++t) cube.push_back(rnd_open_unit(rng));
                auto path = from_cube(n - 1, cube);  // domain of the composites
                auto pl = pushforward(lhs, path);
                auto pr = pushforward(rhs, path);
                for (int num = 0; num <= 4 * (n - 1); ++num) {
                    Rational tau(num, 4);
                    CHECK(pl.rho(tau) == pr.rho(tau));
                    CHECK(pl.segment.evaluate(pl.rho(tau)) == pr.segment.evaluate(pr.rho(tau)));
                }
            }
        }
    // s_j d_j = id on [n]
    for (int j = 0; j <= n; ++j) {
        auto composite = compose(degeneracy(n, j), face(n + 1, j));
        (void)composite;
        for (int v = 0; v <= n; ++v) CHECK(composite(v) == v);
    }
}
