#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "liftcoal/stats.hpp"
#include "liftcoal/verify.hpp"

using namespace liftcoal;

TEST_CASE("empirical_pmf") {
    Pmf p = empirical_pmf({"a", "a", "b", "b"});
    CHECK(p.at("a") == 0.5);
    CHECK(p.at("b") == 0.5);
    CHECK(empirical_pmf({"a"}).at("a") == 1.0);
    CHECK_THROWS_AS(empirical_pmf({}), std::invalid_argument);
}

TEST_CASE("tv_distance examples") {
    Pmf p{{"a", 0.6}, {"b", 0.4}};
    Pmf q{{"a", 0.5}, {"b", 0.5}};
    CHECK(tv_distance(p, p) == 0.0);
    CHECK(tv_distance(Pmf{{"a", 1.0}}, Pmf{{"b", 1.0}}) == 1.0);
    CHECK(tv_distance(p, q) == Catch::Approx(0.1));
}

TEST_CASE("tv_distance symmetry and triangle inequality") {
    std::mt19937_64 g(17);
    auto random_law = [&] {
        Pmf p;
        double total = 0.0;
        for (char c : {'a', 'b', 'c', 'd'}) {
            double w = std::uniform_real_distribution<double>(0.0, 1.0)(g);
            p[std::string(1, c)] = w;
            total += w;
        }
        for (auto& [k, v] : p) v /= total;
        return p;
    };
    for (int rep = 0; rep < 100; ++rep) {
        Pmf p = random_law(), q = random_law(), r = random_law();
        CHECK(tv_distance(p, q) == Catch::Approx(tv_distance(q, p)));
        CHECK(tv_distance(p, r) <= tv_distance(p, q) + tv_distance(q, r) + 1e-12);
        CHECK(tv_distance(p, q) >= 0.0);
        CHECK(tv_distance(p, q) <= 1.0);
    }
}

TEST_CASE("replicated counts are independent of the thread count") {
    auto fn = [](std::uint64_t, std::mt19937_64& g) {
        std::uniform_int_distribution<int> d(0, 9);
        return std::to_string(d(g));
    };
    RngSpec rng{1001};
    CountTable one = run_replicated_counts(rng, 5000, 1, fn);
    CountTable four = run_replicated_counts(rng, 5000, 4, fn);
    CHECK(one == four);
}

TEST_CASE("ks statistic against exponential(1)") {
    RngSpec rng{777};
    std::vector<double> xs = run_replicated_values(
        rng, 20000, 2, [](std::uint64_t, std::mt19937_64& g) {
            std::exponential_distribution<double> e(1.0);
            return e(g);
        });
    CHECK(ks_statistic_exp1(xs) < ks_critical(1e-3, xs.size()));
    // a clearly wrong law fails
    for (auto& x : xs) x *= 2.0;
    CHECK(ks_statistic_exp1(xs) > ks_critical(1e-3, xs.size()));
}

TEST_CASE("verify_suite rejects unknown experiments") {
    ExperimentConfig c;
    c.experiment = "nope";
    CHECK_THROWS_AS(verify_suite(c), std::invalid_argument);
}

TEST_CASE("verify reports are byte-identical across thread counts") {
    ExperimentConfig c;
    c.experiment = "first-merger-size";
    c.n = 4;
    c.reps = 5000;
    c.seed = 5;
    c.threads = 1;
    auto a = verify_suite(c);
    c.threads = 4;
    auto b = verify_suite(c);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].to_json().dump() == b[i].to_json().dump());
}

TEST_CASE("paper-check flags both display discrepancies") {
    ExperimentConfig c;
    c.experiment = "paper-check";
    c.n = 6;
    auto reports = verify_suite(c);
    REQUIRE(reports.size() == 2);
    for (const auto& r : reports) CHECK(r.pass);
}
