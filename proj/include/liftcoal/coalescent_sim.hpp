#ifndef LIFTCOAL_COALESCENT_SIM_HPP
#define LIFTCOAL_COALESCENT_SIM_HPP

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "liftcoal/partition.hpp"
#include "liftcoal/rates.hpp"

namespace liftcoal {

struct CoalescentTrajectory {
    std::vector<std::pair<double, Partition>> states;  // states after each jump
};

/// Lambda n-coalescent from the discrete partition: from b blocks the
/// holding time is exponential with rate sum_k C(b,k) lambda_{b,k}, the
/// merger size is drawn from the jump-chain pmf, and the merging blocks
/// are a uniform k-subset.
template <class Rng>
CoalescentTrajectory simulate_lambda_coalescent(int n, const RateTable& rates, Rng& rng,
                                                std::optional<double> horizon = std::nullopt) {
    if (n < 1) throw std::invalid_argument("simulate_lambda_coalescent: n must be >= 1");
    CoalescentTrajectory traj;
    Partition state = Partition::discrete(n);
    double time = 0.0;
    while (state.block_count() > 1) {
        int b = static_cast<int>(state.block_count());
        double total = rates.total_rate(b);
        std::exponential_distribution<double> hold(total);
        time += hold(rng);
        if (horizon && time > *horizon) break;

        std::vector<double> pmf = merger_size_pmf(b, rates.row(b));
        std::discrete_distribution<int> size_dist(pmf.begin(), pmf.end());
        int k = 2 + size_dist(rng);

        // uniform k-subset of block indices via partial Fisher-Yates
        std::vector<std::size_t> idx(static_cast<std::size_t>(b));
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (int j = 0; j < k; ++j) {
            std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(j),
                                                            idx.size() - 1);
            std::swap(idx[static_cast<std::size_t>(j)], idx[pick(rng)]);
        }
        idx.resize(static_cast<std::size_t>(k));
        state = state.merge(idx);
        traj.states.emplace_back(time, state);
    }
    return traj;
}

}  // namespace liftcoal

#endif
