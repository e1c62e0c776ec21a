#ifndef LIFTCOAL_EXACT_ORACLE_HPP
#define LIFTCOAL_EXACT_ORACLE_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "liftcoal/crp_gem.hpp"
#include "liftcoal/partition.hpp"
#include "liftcoal/plane_tree.hpp"
#include "liftcoal/rational.hpp"

// Brute-force ground truth at small n. Everything here is computed by
// enumerating trees and lift events in exact rational arithmetic; none
// of it calls the rate-formula layer it is used to validate.

namespace liftcoal {

/// Canonical key (tree encoding or partition text) -> exact probability.
using DistributionTable = std::map<std::string, Rational>;

inline Rational table_total(const DistributionTable& t) {
    Rational s = 0;
    for (const auto& [k, p] : t) s += p;
    return s;
}

inline constexpr int kOracleEventCap = 7;        // event-level enumeration
inline constexpr int kOracleConditionalCap = 6;  // conditional tables materialized

/// Law of one lifting step applied to a uniform PORT(n): iterate all
/// trees (weight 1/|P_n|), all nodes (weight 1/n), all successors
/// (weight 1/d+). Null events map to the unchanged tree.
inline DistributionTable exact_lift_distribution(int n) {
    if (n < 2 || n > kOracleEventCap)
        throw std::invalid_argument("exact_lift_distribution: n out of range");
    DistributionTable table;
    const Rational tree_w(1, port_count(n));
    for_each_port(Partition::discrete(n), [&](const PlaneTree& t) {
        for (NodeRef u : t.alive_nodes()) {
            if (t.is_leaf(u)) {
                table[t.encode()] += tree_w / n;
                continue;
            }
            int deg = t.out_degree(u);
            for (NodeRef v : t.children(u)) {
                PlaneTree lifted = lift_edge(t, u, v);
                table[lifted.encode()] += tree_w / (Rational(n) * deg);
            }
        }
    });
    return table;
}

struct Lemma1Entry {
    std::string label_set;              // partition text
    Rational marginal;                  // P(lifted tree has this label set)
    std::size_t tree_count;             // |P_pi|
    std::vector<Rational> conditionals; // one per tree with this label set
    bool uniform;
};

struct Lemma1Report {
    int n = 0;
    bool pass = false;
    std::vector<Lemma1Entry> entries;
};

/// Lemma check: conditioned on its label set, the lifted tree is uniform
/// over the PORTs on that label set. Exact, by full enumeration.
inline Lemma1Report verify_lemma1(int n) {
    if (n < 2 || n > kOracleConditionalCap)
        throw std::invalid_argument("verify_lemma1: n out of range");
    DistributionTable lift_law = exact_lift_distribution(n);

    // group genuinely lifted outcomes (fewer than n blocks) by label set
    std::map<std::string, DistributionTable> by_labelset;
    for (const auto& [enc, p] : lift_law) {
        Partition pi = PlaneTree::decode(enc).label_set();
        if (pi.block_count() == static_cast<std::size_t>(n)) continue;  // null event
        by_labelset[pi.to_string()][enc] += p;
    }

    Lemma1Report report;
    report.n = n;
    report.pass = true;
    for (auto& [pi_text, sub] : by_labelset) {
        Lemma1Entry e;
        e.label_set = pi_text;
        e.marginal = table_total(sub);
        e.tree_count = sub.size();
        Partition pi = Partition::parse(pi_text);
        bool uniform = (BigInt(e.tree_count) ==
                        port_count(static_cast<long long>(pi.block_count())));
        for (const auto& [enc, p] : sub) {
            Rational cond = p / e.marginal;
            e.conditionals.push_back(cond);
            if (cond != Rational(1, BigInt(e.tree_count))) uniform = false;
        }
        e.uniform = uniform;
        if (!uniform) report.pass = false;
        report.entries.push_back(std::move(e));
    }
    return report;
}

struct FirstTransitionRates {
    std::map<int, Rational> per_set_rate;  // k -> rate of one specific k-set
    Rational total_rate;                   // = expected number of internal nodes
};

/// First-transition rates of the lifting chain from Delta_n, computed
/// purely from tree/event enumeration. Checks along the way that the
/// rate of a specific k-set depends on the set only through k.
inline FirstTransitionRates exact_first_transition(int n) {
    if (n < 2 || n > kOracleEventCap)
        throw std::invalid_argument("exact_first_transition: n out of range");
    // merged set (as partition-block text) -> rate
    std::map<std::string, Rational> by_set;
    const Rational tree_w(1, port_count(n));
    Rational expected_internal = 0;
    for_each_port(Partition::discrete(n), [&](const PlaneTree& t) {
        int internal = 0;
        for (NodeRef u : t.alive_nodes()) {
            if (t.is_leaf(u)) continue;
            ++internal;
            int deg = t.out_degree(u);
            for (NodeRef v : t.children(u)) {
                PlaneTree lifted = lift_edge(t, u, v);
                // events occur at total rate n; each (tree,u,v) has
                // probability (1/|P_n|)(1/n)(1/deg) per event
                Rational rate = Rational(n) * tree_w / (Rational(n) * deg);
                std::string key;
                const auto& merged = lifted.label_set();
                for (const auto& b : merged.blocks())
                    if (b.size() > 1) {
                        Partition one({b});
                        key = one.to_string();
                    }
                by_set[key] += rate;
            }
        }
        expected_internal += tree_w * internal;
    });

    FirstTransitionRates out;
    out.total_rate = 0;
    for (const auto& [key, rate] : by_set) {
        int k = static_cast<int>(Partition::parse(key).block(0).size());
        auto it = out.per_set_rate.find(k);
        if (it == out.per_set_rate.end())
            out.per_set_rate[k] = rate;
        else if (it->second != rate)
            throw std::logic_error("exact_first_transition: rate not exchangeable in k-set");
        out.total_rate += rate;
    }
    return out;
}

/// EPPF of the (alpha, theta) CRP: probability that seating customers
/// 1..m produces exactly pi. Exact when alpha, theta are rational.
template <class Scalar>
Scalar crp_eppf_impl(const Partition& pi, const Scalar& alpha, const Scalar& theta) {
    std::vector<int> ground = pi.ground_set();
    int m = static_cast<int>(ground.size());
    for (int j = 0; j < m; ++j)
        if (ground[static_cast<std::size_t>(j)] != j + 1)
            throw std::invalid_argument("crp_eppf: partition must cover {1..m}");

    // block index of each customer
    std::vector<std::size_t> block_of(static_cast<std::size_t>(m) + 1);
    for (std::size_t b = 0; b < pi.block_count(); ++b)
        for (int x : pi.block(b)) block_of[static_cast<std::size_t>(x)] = b;

    Scalar prob = 1;
    std::vector<int> seated_in_block(pi.block_count(), 0);
    int tables_open = 0;
    for (int j = 1; j <= m; ++j) {
        std::size_t b = block_of[static_cast<std::size_t>(j)];
        Scalar denom = Scalar(j - 1) + theta;
        if (j == 1) {
            // customer 1 sits at table 1 with probability 1
        } else if (seated_in_block[b] == 0) {
            prob *= (theta + Scalar(tables_open) * alpha) / denom;
        } else {
            prob *= (Scalar(seated_in_block[b]) - alpha) / denom;
        }
        if (seated_in_block[b] == 0) ++tables_open;
        ++seated_in_block[b];
    }
    return prob;
}

inline Rational crp_eppf_rational(const Partition& pi, const Rational& alpha,
                                  const Rational& theta) {
    if (alpha < 0 || alpha > 1 || theta <= -alpha)
        throw std::invalid_argument("crp_eppf: parameter domain violation");
    return crp_eppf_impl<Rational>(pi, alpha, theta);
}

inline double crp_eppf(const Partition& pi, double alpha, double theta) {
    check_crp_params(alpha, theta);
    return crp_eppf_impl<double>(pi, alpha, theta);
}

/// All partitions of {1..m} via restricted growth strings.
inline std::vector<Partition> enumerate_set_partitions(int m) {
    if (m < 1) throw std::invalid_argument("enumerate_set_partitions: m must be >= 1");
    std::vector<Partition> out;
    std::vector<int> rgs(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> rec = [&](int j, int maxb) {
        if (j == m) {
            std::vector<Partition::Block> blocks(static_cast<std::size_t>(maxb + 1));
            for (int i = 0; i < m; ++i)
                blocks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])].push_back(i + 1);
            out.emplace_back(std::move(blocks));
            return;
        }
        for (int b = 0; b <= maxb + 1; ++b) {
            rgs[static_cast<std::size_t>(j)] = b;
            rec(j + 1, std::max(maxb, b));
        }
    };
    rec(0, -1);
    return out;
}

/// Law of the root partition pi(t) of a uniform PORT(n): partitions of
/// {2..n}, each tree weighted 1/|P_n|. Computed by enumeration only.
inline DistributionTable exact_root_partition_law(int n) {
    if (n < 2 || n > kOracleEventCap)
        throw std::invalid_argument("exact_root_partition_law: n out of range");
    DistributionTable table;
    const Rational tree_w(1, port_count(n));
    for_each_port(Partition::discrete(n), [&](const PlaneTree& t) {
        table[root_partition(t).to_string()] += tree_w;
    });
    return table;
}

}  // namespace liftcoal

#endif
