#ifndef LIFTCOAL_PLANE_TREE_HPP
#define LIFTCOAL_PLANE_TREE_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "liftcoal/partition.hpp"
#include "liftcoal/rational.hpp"

namespace liftcoal {

/// Stable handle to a node within one PlaneTree.
using NodeRef = int;
inline constexpr NodeRef kNoNode = -1;

/// Rooted planar tree whose nodes carry blocks (sorted integer sets) as
/// labels. Child order is significant. Block minima strictly increase
/// along every root-to-node path.
///
/// Nodes removed by lifting stay in the pool as tombstones, so NodeRefs
/// to unrelated parts of the tree survive.
class PlaneTree {
public:
    using Label = std::vector<int>;

    struct Node {
        Label label;
        std::vector<NodeRef> children;
        NodeRef parent = kNoNode;
        bool alive = true;
    };

    PlaneTree() = default;

    static PlaneTree single(Label label) {
        if (label.empty()) throw std::invalid_argument("single: empty label");
        std::sort(label.begin(), label.end());
        PlaneTree t;
        t.nodes_.push_back(Node{std::move(label), {}, kNoNode, true});
        t.root_ = 0;
        t.alive_count_ = 1;
        return t;
    }

    NodeRef root() const { return root_; }
    int size() const { return alive_count_; }
    bool is_alive(NodeRef v) const { return nodes_.at(static_cast<std::size_t>(v)).alive; }
    const Label& label(NodeRef v) const { return node(v).label; }
    const std::vector<NodeRef>& children(NodeRef v) const { return node(v).children; }
    NodeRef parent(NodeRef v) const { return node(v).parent; }
    bool is_leaf(NodeRef v) const { return node(v).children.empty(); }
    int out_degree(NodeRef v) const { return static_cast<int>(node(v).children.size()); }

    /// Alive nodes in pool (= insertion) order.
    std::vector<NodeRef> alive_nodes() const {
        std::vector<NodeRef> out;
        out.reserve(static_cast<std::size_t>(alive_count_));
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].alive) out.push_back(static_cast<NodeRef>(i));
        return out;
    }

    /// Insert a new leaf as the gap-th child of parent (0 <= gap <= d+(parent)).
    NodeRef attach(NodeRef parent, std::size_t gap, Label label) {
        Node& p = node(parent);
        if (gap > p.children.size())
            throw std::out_of_range("attach: gap out of range");
        std::sort(label.begin(), label.end());
        if (label.empty() || label.front() <= p.label.front())
            throw std::invalid_argument("attach: label must exceed parent's minimum");
        NodeRef w = static_cast<NodeRef>(nodes_.size());
        nodes_.push_back(Node{std::move(label), {}, parent, true});
        node(parent).children.insert(node(parent).children.begin() +
                                         static_cast<std::ptrdiff_t>(gap), w);
        ++alive_count_;
        return w;
    }

    /// Lift the edge {u, v}: union the labels of the subtree rooted at v
    /// into u's label, then discard the subtree. Returns the removed nodes.
    std::vector<NodeRef> lift(NodeRef u, NodeRef v) {
        Node& pu = node(u);
        auto it = std::find(pu.children.begin(), pu.children.end(), v);
        if (it == pu.children.end())
            throw std::invalid_argument("lift: v is not a child of u");
        pu.children.erase(it);
        std::vector<NodeRef> removed;
        collect_subtree(v, removed);
        Label merged = pu.label;
        for (NodeRef w : removed) {
            const Label& l = nodes_[static_cast<std::size_t>(w)].label;
            merged.insert(merged.end(), l.begin(), l.end());
            nodes_[static_cast<std::size_t>(w)].alive = false;
        }
        std::sort(merged.begin(), merged.end());
        pu.label = std::move(merged);
        alive_count_ -= static_cast<int>(removed.size());
        return removed;
    }

    /// The partition formed by the node labels, in least-element order.
    Partition label_set() const {
        std::vector<Partition::Block> bs;
        for (const auto& n : nodes_)
            if (n.alive) bs.push_back(n.label);
        return Partition(std::move(bs));
    }

    /// Subtree spanned by nodes whose labels meet [m], labels intersected
    /// with [m]; child order inherited.
    PlaneTree restrict_to(int m) const {
        if (m < 1) throw std::invalid_argument("restrict_to: m must be >= 1");
        if (label(root_).front() > m)
            throw std::invalid_argument("restrict_to: no label meets [m]");
        PlaneTree out;
        out.copy_restricted(*this, root_, kNoNode, m);
        out.root_ = 0;
        return out;
    }

    /// Canonical text form: `label [ '(' child (',' child)* ')' ]` with
    /// `label := '{' ints ascending '}'`, children in planar order.
    std::string encode() const {
        std::string s;
        encode_node(root_, s);
        return s;
    }

    static PlaneTree decode(std::string_view s) {
        std::size_t pos = 0;
        PlaneTree t;
        t.root_ = t.decode_node(s, pos, kNoNode);
        if (pos != s.size()) throw std::invalid_argument("decode: trailing input");
        return t;
    }

    /// Checks that block minima strictly increase along root paths and
    /// parent/child references are consistent.
    bool valid_increasing() const {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            if (!n.alive) continue;
            for (NodeRef c : n.children) {
                const Node& ch = nodes_[static_cast<std::size_t>(c)];
                if (!ch.alive || ch.parent != static_cast<NodeRef>(i)) return false;
                if (ch.label.front() <= n.label.front()) return false;
            }
        }
        return true;
    }

    bool structurally_equal(const PlaneTree& o) const { return encode() == o.encode(); }

private:
    Node& node(NodeRef v) {
        Node& n = nodes_.at(static_cast<std::size_t>(v));
        if (!n.alive) throw std::invalid_argument("node: dead NodeRef");
        return n;
    }
    const Node& node(NodeRef v) const {
        const Node& n = nodes_.at(static_cast<std::size_t>(v));
        if (!n.alive) throw std::invalid_argument("node: dead NodeRef");
        return n;
    }

    void collect_subtree(NodeRef v, std::vector<NodeRef>& out) const {
        out.push_back(v);
        for (NodeRef c : nodes_[static_cast<std::size_t>(v)].children)
            collect_subtree(c, out);
    }

    NodeRef copy_restricted(const PlaneTree& src, NodeRef v, NodeRef parent, int m) {
        Label l;
        for (int x : src.label(v))
            if (x <= m) l.push_back(x);
        NodeRef w = static_cast<NodeRef>(nodes_.size());
        nodes_.push_back(Node{std::move(l), {}, parent, true});
        ++alive_count_;
        for (NodeRef c : src.children(v)) {
            if (src.label(c).front() > m) continue;
            NodeRef cc = copy_restricted(src, c, w, m);
            nodes_[static_cast<std::size_t>(w)].children.push_back(cc);
        }
        return w;
    }

    void encode_node(NodeRef v, std::string& s) const {
        const Node& n = node(v);
        s += '{';
        for (std::size_t i = 0; i < n.label.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(n.label[i]);
        }
        s += '}';
        if (!n.children.empty()) {
            s += '(';
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) s += ',';
                encode_node(n.children[i], s);
            }
            s += ')';
        }
    }

    NodeRef decode_node(std::string_view s, std::size_t& pos, NodeRef parent) {
        auto expect = [&](char c) {
            if (pos >= s.size() || s[pos] != c)
                throw std::invalid_argument(std::string("decode: expected '") + c + "'");
            ++pos;
        };
        expect('{');
        Label l;
        while (true) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) throw std::invalid_argument("decode: expected integer");
            int x = std::stoi(std::string(s.substr(start, pos - start)));
            if (!l.empty() && x <= l.back())
                throw std::invalid_argument("decode: label elements must ascend");
            l.push_back(x);
            if (pos < s.size() && s[pos] == ',') { ++pos; continue; }
            break;
        }
        expect('}');
        if (parent != kNoNode &&
            l.front() <= nodes_[static_cast<std::size_t>(parent)].label.front())
            throw std::invalid_argument("decode: increasing condition violated");
        NodeRef v = static_cast<NodeRef>(nodes_.size());
        nodes_.push_back(Node{std::move(l), {}, parent, true});
        ++alive_count_;
        if (pos < s.size() && s[pos] == '(') {
            ++pos;
            while (true) {
                NodeRef c = decode_node(s, pos, v);
                nodes_[static_cast<std::size_t>(v)].children.push_back(c);
                if (pos < s.size() && s[pos] == ',') { ++pos; continue; }
                break;
            }
            expect(')');
        }
        return v;
    }

    std::vector<Node> nodes_;
    NodeRef root_ = kNoNode;
    int alive_count_ = 0;
};

inline constexpr std::size_t kDefaultEnumerationCap = 9;

/// Visit every plane-oriented recursive tree on the blocks of pi exactly
/// once, in the canonical order: trees grown by inserting blocks in
/// least-element order, insertion nodes visited in label order, gaps
/// left to right.
inline void for_each_port(const Partition& pi,
                          const std::function<void(const PlaneTree&)>& fn) {
    const auto& blocks = pi.blocks();
    std::function<void(PlaneTree&, std::size_t)> grow =
        [&](PlaneTree& t, std::size_t next) {
            if (next == blocks.size()) {
                fn(t);
                return;
            }
            // Nodes were attached in label order, so pool order is label order.
            for (NodeRef v : t.alive_nodes()) {
                int gaps = t.out_degree(v) + 1;
                for (int g = 0; g < gaps; ++g) {
                    PlaneTree u = t;
                    u.attach(v, static_cast<std::size_t>(g), blocks[next]);
                    grow(u, next + 1);
                }
            }
        };
    PlaneTree t0 = PlaneTree::single(blocks[0]);
    grow(t0, 1);
}

/// All PORTs on pi, in canonical order. Guarded by a size cap.
inline std::vector<PlaneTree> enumerate_ports(const Partition& pi,
                                              std::size_t cap = kDefaultEnumerationCap) {
    if (pi.block_count() > cap)
        throw std::length_error("enumerate_ports: size exceeds enumeration cap");
    std::vector<PlaneTree> out;
    out.reserve(static_cast<std::size_t>(port_count(static_cast<long long>(pi.block_count()))));
    for_each_port(pi, [&](const PlaneTree& t) { out.push_back(t); });
    return out;
}

/// Draw a tree uniformly from the PORTs on pi via the preferential
/// attachment construction: node v is chosen with probability
/// proportional to d+(v)+1 (slot list), the planar gap uniformly.
template <class Rng>
PlaneTree sample_lpat(const Partition& pi, Rng& rng) {
    const auto& blocks = pi.blocks();
    PlaneTree t = PlaneTree::single(blocks[0]);
    std::vector<NodeRef> slots{t.root()};
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
        NodeRef v = slots[pick(rng)];
        std::uniform_int_distribution<int> gap(0, t.out_degree(v));
        NodeRef w = t.attach(v, static_cast<std::size_t>(gap(rng)), blocks[i]);
        slots.push_back(v);
        slots.push_back(w);
    }
    return t;
}

}  // namespace liftcoal

#endif
