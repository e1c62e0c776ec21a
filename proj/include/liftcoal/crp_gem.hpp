#ifndef LIFTCOAL_CRP_GEM_HPP
#define LIFTCOAL_CRP_GEM_HPP

#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "liftcoal/lifting.hpp"
#include "liftcoal/partition.hpp"
#include "liftcoal/plane_tree.hpp"

namespace liftcoal {

inline void check_crp_params(double alpha, double theta) {
    if (alpha < 0.0 || alpha > 1.0 || theta <= -alpha)
        throw std::invalid_argument("CRP: need 0 <= alpha <= 1 and theta > -alpha");
}

struct CrpState {
    std::vector<std::vector<int>> tables;  // in order of creation
    int customers = 0;
};

/// Seat m customers by the (alpha, theta) rule and return the partition
/// by tables.
template <class Rng>
Partition sample_crp(int m, double alpha, double theta, Rng& rng) {
    check_crp_params(alpha, theta);
    if (m < 1) throw std::invalid_argument("sample_crp: m must be >= 1");
    CrpState st;
    st.tables.push_back({1});
    st.customers = 1;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int c = 2; c <= m; ++c) {
        double denom = st.customers + theta;
        double u = unif(rng) * denom;
        double acc = 0.0;
        bool seated = false;
        for (auto& table : st.tables) {
            acc += static_cast<double>(table.size()) - alpha;
            if (u < acc) {
                table.push_back(c);
                seated = true;
                break;
            }
        }
        if (!seated) st.tables.push_back({c});
        ++st.customers;
    }
    return Partition(st.tables);
}

/// pi(t): labels grouped by the root-successor subtree containing them.
/// The root's own label is excluded from the ground set.
inline Partition root_partition(const PlaneTree& t) {
    if (t.size() < 2)
        throw std::invalid_argument("root_partition: tree must have >= 2 nodes");
    std::vector<Partition::Block> blocks;
    for (NodeRef c : t.children(t.root())) {
        Partition::Block b;
        std::vector<NodeRef> stack{c};
        while (!stack.empty()) {
            NodeRef v = stack.back();
            stack.pop_back();
            const auto& l = t.label(v);
            b.insert(b.end(), l.begin(), l.end());
            for (NodeRef w : t.children(v)) stack.push_back(w);
        }
        blocks.push_back(std::move(b));
    }
    return Partition(std::move(blocks));
}

struct StickSequence {
    std::vector<double> frequencies;  // order of appearance
};

/// GEM(alpha, theta) stick-breaking: P_i = Wbar_1 ... Wbar_{i-1} W_i with
/// W_i ~ beta(1 - alpha, theta + i alpha), independent.
template <class Rng>
StickSequence sample_gem_sticks(int count, double alpha, double theta, Rng& rng) {
    check_crp_params(alpha, theta);
    if (count < 1) throw std::invalid_argument("sample_gem_sticks: count must be >= 1");
    StickSequence seq;
    seq.frequencies.reserve(static_cast<std::size_t>(count));
    double remaining = 1.0;
    for (int i = 1; i <= count; ++i) {
        // beta(a,b) via two gamma draws
        std::gamma_distribution<double> ga(1.0 - alpha, 1.0);
        std::gamma_distribution<double> gb(theta + i * alpha, 1.0);
        double x = ga(rng);
        double y = gb(rng);
        double w = x / (x + y);
        seq.frequencies.push_back(remaining * w);
        remaining *= 1.0 - w;
    }
    return seq;
}

/// Times and magnitudes at which the block containing 1 grows, read off
/// a lifting trajectory started from an LPAT(n). Magnitudes are
/// (|new block| - |old block|) / n.
inline std::vector<std::pair<double, double>> block_one_jump_log(const LiftTrajectory& traj,
                                                                int n) {
    std::vector<std::pair<double, double>> log;
    auto block_one_size = [](const Partition& p) {
        return static_cast<int>(p.block(0).size());  // block 0 contains the minimum, 1
    };
    int current = block_one_size(traj.initial.label_set());
    for (const auto& [time, part] : traj.states) {
        int sz = block_one_size(part);
        if (sz > current) {
            log.emplace_back(time, static_cast<double>(sz - current) / n);
            current = sz;
        }
    }
    return log;
}

/// First block-one jump of a lifting chain from a fresh LPAT(n), without
/// materializing partitions: the block containing 1 is the root's label,
/// which grows exactly when the root is picked. Same dynamics as
/// simulate_lift_chain, including the uniform redraw of the tree on its
/// label set after a null event. Returns (time, magnitude).
template <class Rng>
std::pair<double, double> simulate_first_block_one_jump(int n, Rng& rng) {
    if (n < 2) throw std::invalid_argument("simulate_first_block_one_jump: n must be >= 2");
    PlaneTree t = sample_lpat(Partition::discrete(n), rng);
    double time = 0.0;
    while (true) {
        std::vector<NodeRef> alive = t.alive_nodes();
        std::exponential_distribution<double> hold(static_cast<double>(alive.size()));
        time += hold(rng);
        std::uniform_int_distribution<std::size_t> pick(0, alive.size() - 1);
        NodeRef u = alive[pick(rng)];
        if (t.is_leaf(u)) {
            t = sample_lpat(t.label_set(), rng);
            continue;
        }
        std::uniform_int_distribution<std::size_t> succ(
            0, static_cast<std::size_t>(t.out_degree(u)) - 1);
        NodeRef v = t.children(u)[succ(rng)];
        bool at_root = (u == t.root());
        std::size_t before = t.label(u).size();
        t.lift(u, v);
        if (at_root) {
            double delta = static_cast<double>(t.label(u).size() - before) / n;
            return {time, delta};
        }
    }
}

}  // namespace liftcoal

#endif
