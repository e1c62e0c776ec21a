#ifndef LIFTCOAL_LIFTING_HPP
#define LIFTCOAL_LIFTING_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "liftcoal/partition.hpp"
#include "liftcoal/plane_tree.hpp"

namespace liftcoal {

struct LiftEvent {
    double time = 0.0;
    NodeRef picked = kNoNode;
    std::optional<NodeRef> successor;  // absent for null events
    int merged_block_count = 0;        // 0 for null events, else >= 2
};

struct LiftTrajectory {
    PlaneTree initial;
    std::vector<LiftEvent> events;  // filled only when events are recorded
    std::vector<std::pair<double, Partition>> states;  // state changes only
};

/// Lift the edge {u, v}: returns the tree with the subtree rooted at v
/// absorbed into u's label. Value semantics; the input is unchanged.
inline PlaneTree lift_edge(PlaneTree t, NodeRef u, NodeRef v) {
    t.lift(u, v);
    return t;
}

/// One lifting step: pick a node uniformly at random; if it is a leaf
/// the event is null, otherwise pick one of its successors uniformly.
template <class Rng>
LiftEvent sample_lift(const PlaneTree& t, Rng& rng) {
    std::vector<NodeRef> alive = t.alive_nodes();
    std::uniform_int_distribution<std::size_t> pick(0, alive.size() - 1);
    NodeRef u = alive[pick(rng)];
    LiftEvent ev;
    ev.picked = u;
    if (!t.is_leaf(u)) {
        std::uniform_int_distribution<std::size_t> succ(
            0, static_cast<std::size_t>(t.out_degree(u)) - 1);
        ev.successor = t.children(u)[succ(rng)];
    }
    return ev;
}

/// Continuous-time lifting chain: events at total rate equal to the
/// current node count (superposition of rate-1 clocks), each event a
/// uniform node pick plus uniform successor. Runs to absorption or to
/// the horizon. `record_events` additionally logs null events.
///
/// After a null event (the picked node was a leaf) the tree is redrawn
/// uniformly on its unchanged label set. Without the redraw the tree
/// frozen between changes is no longer uniform given its label set
/// (leaf-heavy trees survive null events longer), and the induced
/// partition process loses the Markov property. With it the tree is
/// uniform given the partition at every event time — after a genuine
/// lift this holds automatically (see exact_oracle's conditional
/// uniformity check) — so the partition process is the Markov chain
/// with the product-of-counts merger rates.
template <class Rng>
LiftTrajectory simulate_lift_chain(const PlaneTree& t0, Rng& rng,
                                   std::optional<double> horizon = std::nullopt,
                                   bool record_events = false) {
    LiftTrajectory traj;
    traj.initial = t0;
    PlaneTree t = t0;

    std::vector<NodeRef> alive = t.alive_nodes();
    std::vector<std::size_t> pos;  // NodeRef -> index in alive
    auto index_alive = [&] {
        std::size_t need = 0;
        for (NodeRef v : alive)
            need = std::max(need, static_cast<std::size_t>(v) + 1);
        pos.assign(need, 0);
        for (std::size_t i = 0; i < alive.size(); ++i)
            pos[static_cast<std::size_t>(alive[i])] = i;
    };
    index_alive();

    auto remove_alive = [&](NodeRef v) {
        std::size_t i = pos[static_cast<std::size_t>(v)];
        NodeRef last = alive.back();
        alive[i] = last;
        pos[static_cast<std::size_t>(last)] = i;
        alive.pop_back();
    };

    double time = 0.0;
    while (alive.size() > 1) {
        std::exponential_distribution<double> hold(static_cast<double>(alive.size()));
        time += hold(rng);
        if (horizon && time > *horizon) break;

        std::uniform_int_distribution<std::size_t> pick(0, alive.size() - 1);
        NodeRef u = alive[pick(rng)];
        LiftEvent ev;
        ev.time = time;
        ev.picked = u;
        if (t.is_leaf(u)) {
            if (record_events) traj.events.push_back(ev);
            t = sample_lpat(t.label_set(), rng);
            alive = t.alive_nodes();
            index_alive();
            continue;
        }
        std::uniform_int_distribution<std::size_t> succ(
            0, static_cast<std::size_t>(t.out_degree(u)) - 1);
        NodeRef v = t.children(u)[succ(rng)];
        ev.successor = v;
        std::vector<NodeRef> removed = t.lift(u, v);
        for (NodeRef w : removed) remove_alive(w);
        ev.merged_block_count = static_cast<int>(removed.size()) + 1;
        traj.events.push_back(ev);
        traj.states.emplace_back(time, t.label_set());
    }
    return traj;
}

/// labelset(t): the partition formed by the node labels.
inline Partition label_set(const PlaneTree& t) { return t.label_set(); }

}  // namespace liftcoal

#endif
