#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "floerkit/cutoff.hpp"

using namespace floerkit;

namespace {
ConvexCutoff random_cutoff(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int interior = int(rng() % 4);
    std::vector<double> knots{0.05 + 0.5 * unif(rng)};
    std::vector<double> slopes{0.0};
    double x = knots[0];
    std::vector<double> ds(interior + 1);
    double total = 0;
    for (auto& d : ds) total += (d = 0.1 + unif(rng));
    double s = 0;
    for (int i = 0; i < interior; ++i) {
        x += 0.1 + unif(rng);
        s += ds[i] / total;
        knots.push_back(x);
        slopes.push_back(s);
    }
    knots.push_back(x + 0.1 + unif(rng));
    slopes.push_back(1.0);
    return ConvexCutoff(knots, slopes);
}
}  // namespace

TEST_CASE("cutoff shape") {
    ConvexCutoff gamma({0.0, 1.0}, {0.0, 1.0});  // quadratic ramp
    CHECK(gamma(-1.0) == 0.0);
    CHECK(gamma(0.0) == 0.0);
    CHECK(gamma(1.0) == Catch::Approx(0.5));
    CHECK(gamma(3.0) == Catch::Approx(2.5));  // x - eps with eps = 0.5
    CHECK(gamma.tail_offset() == Catch::Approx(0.5));
    CHECK(gamma.derivative(0.5) == Catch::Approx(0.5));
    CHECK_THROWS_AS(ConvexCutoff({0.0, 1.0}, {0.0, 0.5}), structural_error);
    CHECK_THROWS_AS(ConvexCutoff({-1.0, 1.0}, {0.0, 1.0}), structural_error);
}

TEST_CASE("critical level at slope one half") {
    ConvexCutoff gamma({0.0, 1.0}, {0.0, 1.0});
    auto profile = extender_profile(gamma, 0.5);
    CHECK(profile.critical_level == Catch::Approx(0.5).margin(1e-9));
    // action = gamma(1/2) - 1/2 * 1/2 = 1/8 - 1/4 < 0
    CHECK(profile.action == Catch::Approx(-0.125).margin(1e-9));
    CHECK(profile.action < 0);
}

TEST_CASE("slope out of range is rejected") {
    ConvexCutoff gamma({0.0, 1.0}, {0.0, 1.0});
    CHECK_THROWS_AS(extender_profile(gamma, 0.0), domain_error);
    CHECK_THROWS_AS(extender_profile(gamma, 1.0), domain_error);
    CHECK_THROWS_AS(extender_profile(gamma, 1.5), domain_error);
}

TEST_CASE("tail limit: action approaches minus the tail offset") {
    std::mt19937_64 rng(81);
    for (int trial = 0; trial < 10; ++trial) {
        auto gamma = random_cutoff(rng);
        auto profile = extender_profile(gamma, 1.0 - 1e-7);
        CHECK(profile.action == Catch::Approx(-gamma.tail_offset()).margin(1e-5));
    }
}

TEST_CASE("uniqueness and negativity on random cutoffs") {
    std::mt19937_64 rng(82);
    for (int trial = 0; trial < 50; ++trial) {
        auto gamma = random_cutoff(rng);
        double prev_level = -1;
        for (int i = 1; i <= 19; ++i) {
            double sigma = i / 20.0;
            auto profile = extender_profile(gamma, sigma);
            CHECK(profile.action < 0);
            // residual of the defining equation
            CHECK(gamma.derivative(profile.critical_level) == Catch::Approx(sigma).margin(1e-9));
            // strictly increasing in sigma: distinct slopes give distinct levels
            CHECK(profile.critical_level > prev_level);
            prev_level = profile.critical_level;
        }
    }
}
