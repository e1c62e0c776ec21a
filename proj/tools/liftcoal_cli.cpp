// Command-line front end: enumeration, sampling, simulation and
// verification with scriptable JSON-lines / CSV output.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "liftcoal/liftcoal.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace liftcoal;

void print_header(const std::string& command, std::uint64_t seed, json params) {
    json header{{"version", kVersion},
                {"command", command},
                {"rng", RngSpec{seed}.describe()},
                {"params", std::move(params)}};
    std::cout << header.dump() << "\n";
}

int cmd_enumerate(int size, const std::string& labels, std::size_t cap) {
    Partition pi = labels.empty() ? Partition::discrete(size) : Partition::parse(labels);
    if (pi.block_count() > cap) {
        std::cerr << "enumerate: size " << pi.block_count() << " exceeds cap " << cap << "\n";
        return 2;
    }
    std::uint64_t count = 0;
    for_each_port(pi, [&](const PlaneTree& t) {
        std::cout << t.encode() << "\n";
        ++count;
    });
    std::cout << "count=" << count << "\n";
    return 0;
}

int cmd_lift_chain(int size, std::uint64_t seed, std::uint64_t reps, const std::string& emit,
                   std::optional<double> horizon) {
    print_header("lift-chain", seed,
                 json{{"size", size}, {"reps", reps}, {"emit", emit}});
    RngSpec rng{seed};
    bool events_mode = (emit == "events");
    for (std::uint64_t r = 0; r < reps; ++r) {
        std::mt19937_64 g = rng.stream(r);
        PlaneTree t0 = sample_lpat(Partition::discrete(size), g);
        LiftTrajectory traj = simulate_lift_chain(t0, g, horizon, events_mode);
        if (events_mode) {
            std::size_t state_idx = 0;
            for (const auto& ev : traj.events) {
                json line{{"replicate", r}, {"t", ev.time}, {"k", ev.merged_block_count}};
                if (ev.merged_block_count >= 2)
                    line["partition"] = traj.states[state_idx++].second.to_string();
                std::cout << line.dump() << "\n";
            }
        } else {
            int prev_blocks = size;
            for (const auto& [time, part] : traj.states) {
                int k = prev_blocks - static_cast<int>(part.block_count()) + 1;
                prev_blocks = static_cast<int>(part.block_count());
                json line{{"replicate", r},
                          {"t", time},
                          {"partition", part.to_string()},
                          {"k", k}};
                std::cout << line.dump() << "\n";
            }
        }
    }
    return 0;
}

int cmd_coalescent(int n, const std::string& lambda_spec, std::uint64_t seed,
                   std::uint64_t reps, std::optional<double> horizon) {
    LambdaMeasure lambda = parse_lambda(lambda_spec);
    RateTable rates = RateTable::build(lambda, std::max(2, n));
    json rate_header = json::object();
    for (int k = 2; k <= n; ++k) {
        json entry{{"float", rates.rate(n, k)}};
        if (const auto& ex = rates.exact_rate(n, k))
            entry["exact"] = to_fraction_string(*ex);
        rate_header["lambda_" + std::to_string(n) + "_" + std::to_string(k)] = entry;
    }
    print_header("coalescent", seed,
                 json{{"n", n}, {"lambda", lambda_name(lambda)}, {"reps", reps},
                      {"rates", rate_header}});
    RngSpec rng{seed};
    for (std::uint64_t r = 0; r < reps; ++r) {
        std::mt19937_64 g = rng.stream(r);
        CoalescentTrajectory traj = simulate_lambda_coalescent(n, rates, g, horizon);
        int prev_blocks = n;
        for (const auto& [time, part] : traj.states) {
            int k = prev_blocks - static_cast<int>(part.block_count()) + 1;
            prev_blocks = static_cast<int>(part.block_count());
            json line{{"replicate", r}, {"t", time}, {"partition", part.to_string()}, {"k", k}};
            std::cout << line.dump() << "\n";
        }
    }
    return 0;
}

int cmd_rates(const std::string& lambda_spec, int b_max) {
    LambdaMeasure lambda = parse_lambda(lambda_spec);
    RateTable rates = RateTable::build(lambda, b_max);
    std::cout << "b,k,exact,float\n";
    for (int b = 2; b <= b_max; ++b) {
        for (int k = 2; k <= b; ++k) {
            const auto& ex = rates.exact_rate(b, k);
            std::cout << b << "," << k << "," << (ex ? to_fraction_string(*ex) : "") << ","
                      << rates.rate(b, k) << "\n";
        }
    }
    return 0;
}

int cmd_verify(const ExperimentConfig& config, const std::string& format) {
    std::vector<ComparisonReport> reports = verify_suite(config);
    bool all_pass = true;
    for (const auto& r : reports) {
        if (format == "csv")
            std::cout << r.to_csv_line() << "\n";
        else
            std::cout << r.to_json().dump() << "\n";
        if (!r.pass) all_pass = false;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lifting chains on preferential attachment trees and Lambda coalescents"};
    app.require_subcommand(1);

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "List all PORTs of a given size");
    int en_size = 0;
    std::string en_labels;
    std::size_t en_cap = kDefaultEnumerationCap;
    enumerate->add_option("--size", en_size, "Number of nodes");
    enumerate->add_option("--labels", en_labels, "Partition text to use as label set");
    enumerate->add_option("--cap", en_cap, "Enumeration size cap");

    // lift-chain
    auto* lift = app.add_subcommand("lift-chain", "Simulate the lifting chain from an LPAT");
    int lc_size = 2;
    std::uint64_t lc_seed = 1, lc_reps = 1;
    std::string lc_emit = "states";
    std::optional<double> lc_horizon;
    lift->add_option("--size", lc_size, "Initial tree size")->required();
    lift->add_option("--seed", lc_seed, "RNG seed");
    lift->add_option("--reps", lc_reps, "Replicates");
    lift->add_option("--emit", lc_emit, "states|events")
        ->check(CLI::IsMember({"states", "events"}));
    lift->add_option("--horizon", lc_horizon, "Time horizon");

    // coalescent
    auto* coal = app.add_subcommand("coalescent", "Simulate a Lambda n-coalescent");
    int co_n = 2;
    std::string co_lambda = "arcsine";
    std::uint64_t co_seed = 1, co_reps = 1;
    std::optional<double> co_horizon;
    coal->add_option("--n", co_n, "Sample size")->required();
    coal->add_option("--lambda", co_lambda, "arcsine|kingman|uniform|beta:a,b");
    coal->add_option("--seed", co_seed, "RNG seed");
    coal->add_option("--reps", co_reps, "Replicates");
    coal->add_option("--horizon", co_horizon, "Time horizon");

    // rates
    auto* rates = app.add_subcommand("rates", "Export a rate table as CSV");
    std::string ra_lambda = "arcsine";
    int ra_bmax = 12;
    rates->add_option("--lambda", ra_lambda, "arcsine|kingman|uniform|beta:a,b");
    rates->add_option("--bmax", ra_bmax, "Largest block count");

    // verify
    auto* verify = app.add_subcommand("verify", "Run a verification experiment");
    ExperimentConfig config;
    std::string ve_format = "json";
    verify->add_option("experiment", config.experiment, "Experiment name")->required();
    verify->add_option("--size", config.n, "Problem size n");
    verify->add_option("--reps", config.reps, "Replicates");
    verify->add_option("--seed", config.seed, "RNG seed");
    verify->add_option("--lambda", config.lambda, "Lambda measure");
    verify->add_option("--threads", config.threads, "Worker threads");
    verify->add_option("--format", ve_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (config.threads == 1) {
        if (const char* env = std::getenv("LIFTCOAL_THREADS"))
            config.threads = std::max(1, std::atoi(env));
    }

    try {
        if (enumerate->parsed()) return cmd_enumerate(en_size, en_labels, en_cap);
        if (lift->parsed()) return cmd_lift_chain(lc_size, lc_seed, lc_reps, lc_emit, lc_horizon);
        if (coal->parsed()) return cmd_coalescent(co_n, co_lambda, co_seed, co_reps, co_horizon);
        if (rates->parsed()) return cmd_rates(ra_lambda, ra_bmax);
        if (verify->parsed()) return cmd_verify(config, ve_format);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
