#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "liftcoal/crp_gem.hpp"
#include "liftcoal/exact_oracle.hpp"
#include "liftcoal/rng.hpp"
#include "liftcoal/stats.hpp"

using namespace liftcoal;

TEST_CASE("sample_crp basics") {
    std::mt19937_64 g(1);
    CHECK(sample_crp(1, 0.5, 0.5, g).to_string() == "{1}");
    for (int rep = 0; rep < 100; ++rep) {
        Partition p = sample_crp(10, 0.5, 0.5, g);
        CHECK(p.ground_set() == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    }
    CHECK_THROWS_AS(sample_crp(3, 2.0, 0.5, g), std::invalid_argument);
    CHECK_THROWS_AS(sample_crp(3, 0.5, -1.0, g), std::invalid_argument);
    CHECK_THROWS_AS(sample_crp(0, 0.5, 0.5, g), std::invalid_argument);
}

TEST_CASE("sample_crp matches the EPPF at m = 2 and m = 5") {
    RngSpec rng{21};
    const std::uint64_t reps = 200000;
    CountTable c2 = run_replicated_counts(
        rng, reps, 2, [](std::uint64_t, std::mt19937_64& g) {
            return sample_crp(2, 0.5, 0.5, g).to_string();
        });
    double f = static_cast<double>(c2.at("{1,2}")) / reps;
    CHECK(f == Catch::Approx(1.0 / 3.0).margin(3.0 * 0.5 / std::sqrt(double(reps))));

    CountTable c5 = run_replicated_counts(
        RngSpec{22}, reps, 2, [](std::uint64_t, std::mt19937_64& g) {
            return sample_crp(5, 0.5, 0.5, g).to_string();
        });
    Pmf expected;
    for (const Partition& pi : enumerate_set_partitions(5))
        expected[pi.to_string()] =
            static_cast<double>(crp_eppf_rational(pi, Rational(1, 2), Rational(1, 2)));
    CHECK(tv_distance(normalize_counts(c5), expected) < 0.01);
}

TEST_CASE("root_partition examples") {
    CHECK(root_partition(PlaneTree::decode("{1}({2}({3}))")).to_string() == "{2,3}");
    CHECK(root_partition(PlaneTree::decode("{1}({2},{3})")).to_string() == "{2}|{3}");
    CHECK(root_partition(PlaneTree::decode("{1}({2}({4}),{3})")).to_string() == "{2,4}|{3}");
    CHECK_THROWS_AS(root_partition(PlaneTree::single({1})), std::invalid_argument);
}

TEST_CASE("gem sticks: partial sums increase and stay below one") {
    std::mt19937_64 g(9);
    for (int rep = 0; rep < 200; ++rep) {
        StickSequence s = sample_gem_sticks(20, 0.5, 0.5, g);
        double sum = 0.0;
        for (double f : s.frequencies) {
            CHECK(f > 0.0);
            sum += f;
            CHECK(sum < 1.0);
        }
    }
    CHECK_THROWS_AS(sample_gem_sticks(0, 0.5, 0.5, g), std::invalid_argument);
}

TEST_CASE("gem moments: E[P1] = 1/3 and E[P2] = 1/6") {
    const std::uint64_t reps = 100000;
    std::vector<double> p1 = run_replicated_values(
        RngSpec{31}, reps, 2, [](std::uint64_t, std::mt19937_64& g) {
            return sample_gem_sticks(2, 0.5, 0.5, g).frequencies[0];
        });
    std::vector<double> p2 = run_replicated_values(
        RngSpec{32}, reps, 2, [](std::uint64_t, std::mt19937_64& g) {
            return sample_gem_sticks(2, 0.5, 0.5, g).frequencies[1];
        });
    CHECK(std::abs(mean(p1) - 1.0 / 3.0) <=
          3.0 * stddev(p1) / std::sqrt(static_cast<double>(reps)));
    CHECK(std::abs(mean(p2) - 1.0 / 6.0) <=
          3.0 * stddev(p2) / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("ranking sticks descending is a stable sort of the frequencies") {
    std::mt19937_64 g(13);
    StickSequence s = sample_gem_sticks(30, 0.5, 0.5, g);
    std::vector<double> ranked = s.frequencies;
    std::sort(ranked.begin(), ranked.end(), std::greater<>());
    CHECK(std::is_sorted(ranked.begin(), ranked.end(), std::greater<>()));
    double total_orig = 0.0, total_ranked = 0.0;
    for (double f : s.frequencies) total_orig += f;
    for (double f : ranked) total_ranked += f;
    CHECK(total_orig == Catch::Approx(total_ranked));
}

TEST_CASE("block_one_jump_log") {
    SECTION("absorbed start gives an empty log") {
        std::mt19937_64 g(1);
        LiftTrajectory traj = simulate_lift_chain(PlaneTree::single({1}), g);
        CHECK(block_one_jump_log(traj, 1).empty());
    }
    SECTION("jump magnitudes sum to (n-1)/n at absorption") {
        std::mt19937_64 g(2);
        const int n = 12;
        PlaneTree t0 = sample_lpat(Partition::discrete(n), g);
        LiftTrajectory traj = simulate_lift_chain(t0, g);
        auto jumps = block_one_jump_log(traj, n);
        double total = 0.0;
        for (const auto& [time, mag] : jumps) total += mag;
        CHECK(total == Catch::Approx((n - 1.0) / n));
    }
}

TEST_CASE("block-one interarrival times have mean one") {
    const int n = 50;
    const std::uint64_t reps = 2000;
    RngSpec rng{41};
    std::vector<double> inter;
    for (std::uint64_t r = 0; r < reps; ++r) {
        std::mt19937_64 g = rng.stream(r);
        PlaneTree t0 = sample_lpat(Partition::discrete(n), g);
        LiftTrajectory traj = simulate_lift_chain(t0, g);
        double prev = 0.0;
        for (const auto& [time, mag] : block_one_jump_log(traj, n)) {
            inter.push_back(time - prev);
            prev = time;
        }
    }
    double se = stddev(inter) / std::sqrt(static_cast<double>(inter.size()));
    CHECK(std::abs(mean(inter) - 1.0) <= 3.0 * se);
}

TEST_CASE("first block-one jump magnitude law at n = 3") {
    // By hand, with the tree uniform given the partition at every event:
    // from three singleton blocks an event is a root pick w.p. 1/3
    // (magnitude 2/3 iff the tree is the chain, prob 1/3), a {2,3} merge
    // w.p. 1/9, and null otherwise.  The merge precedes the root pick
    // w.p. (1/9)/(1/9 + 1/3) = 1/4, after which the root jump magnitude
    // is 2/3.  So P(magnitude = 2/3) = (3/4)(1/3) + 1/4 = 1/2.
    const std::uint64_t reps = 100000;
    std::vector<double> mags = run_replicated_values(
        RngSpec{51}, reps, 2, [](std::uint64_t, std::mt19937_64& g) {
            return simulate_first_block_one_jump(3, g).second;
        });
    std::uint64_t big = 0;
    for (double m : mags)
        if (m > 0.5) ++big;
    double f = static_cast<double>(big) / reps;
    double se = 0.5 / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(f - 0.5) <= 3.0 * se);
}
