#ifndef LIFTCOAL_PARTITION_HPP
#define LIFTCOAL_PARTITION_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace liftcoal {

/// A partition of a finite set of positive integers. Blocks are kept in
/// order of least elements and each block is sorted ascending.
class Partition {
public:
    using Block = std::vector<int>;

    Partition() = default;

    explicit Partition(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
        normalize_and_validate();
    }

    /// The discrete partition {{1},...,{n}}.
    static Partition discrete(int n) {
        if (n < 1) throw std::invalid_argument("discrete: n must be >= 1");
        std::vector<Block> bs;
        bs.reserve(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) bs.push_back({i});
        return Partition(std::move(bs));
    }

    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }
    const Block& block(std::size_t i) const { return blocks_.at(i); }

    std::vector<int> ground_set() const {
        std::vector<int> g;
        for (const auto& b : blocks_) g.insert(g.end(), b.begin(), b.end());
        std::sort(g.begin(), g.end());
        return g;
    }

    /// Replace the blocks at the given positions by their union.
    Partition merge(const std::vector<std::size_t>& which) const {
        if (which.size() < 2)
            throw std::invalid_argument("merge: need at least 2 block indices");
        std::set<std::size_t> sel(which.begin(), which.end());
        if (sel.size() != which.size())
            throw std::invalid_argument("merge: duplicate block index");
        if (*sel.rbegin() >= blocks_.size())
            throw std::out_of_range("merge: block index out of range");
        Block merged;
        std::vector<Block> out;
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (sel.count(i)) {
                merged.insert(merged.end(), blocks_[i].begin(), blocks_[i].end());
            } else {
                out.push_back(blocks_[i]);
            }
        }
        std::sort(merged.begin(), merged.end());
        out.push_back(std::move(merged));
        return Partition(std::move(out));
    }

    /// Restriction to [m]: the non-empty intersections B ∩ {1..m}.
    Partition restrict_to(int m) const {
        if (m < 1) throw std::invalid_argument("restrict_to: m must be >= 1");
        std::vector<Block> out;
        for (const auto& b : blocks_) {
            Block nb;
            for (int x : b)
                if (x <= m) nb.push_back(x);
            if (!nb.empty()) out.push_back(std::move(nb));
        }
        if (out.empty())
            throw std::invalid_argument("restrict_to: empty restriction");
        return Partition(std::move(out));
    }

    /// Text form `{1,5}|{2}|{3,4}`: blocks in least-element order,
    /// elements ascending.
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (i) s += '|';
            s += '{';
            for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
                if (j) s += ',';
                s += std::to_string(blocks_[i][j]);
            }
            s += '}';
        }
        return s;
    }

    static Partition parse(std::string_view s) {
        std::vector<Block> bs;
        std::size_t pos = 0;
        while (pos < s.size()) {
            if (s[pos] != '{') throw std::invalid_argument("parse: expected '{'");
            ++pos;
            Block b;
            while (true) {
                std::size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (pos == start) throw std::invalid_argument("parse: expected integer");
                b.push_back(std::stoi(std::string(s.substr(start, pos - start))));
                if (pos < s.size() && s[pos] == ',') { ++pos; continue; }
                break;
            }
            if (pos >= s.size() || s[pos] != '}')
                throw std::invalid_argument("parse: expected '}'");
            ++pos;
            bs.push_back(std::move(b));
            if (pos < s.size()) {
                if (s[pos] != '|') throw std::invalid_argument("parse: expected '|'");
                ++pos;
            }
        }
        if (bs.empty()) throw std::invalid_argument("parse: empty partition");
        return Partition(std::move(bs));
    }

    bool operator==(const Partition& o) const { return blocks_ == o.blocks_; }
    bool operator!=(const Partition& o) const { return !(*this == o); }

private:
    void normalize_and_validate() {
        if (blocks_.empty()) throw std::invalid_argument("Partition: no blocks");
        for (auto& b : blocks_) {
            if (b.empty()) throw std::invalid_argument("Partition: empty block");
            std::sort(b.begin(), b.end());
        }
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const Block& a, const Block& b) { return a.front() < b.front(); });
        std::set<int> seen;
        for (const auto& b : blocks_)
            for (int x : b) {
                if (x < 1) throw std::invalid_argument("Partition: elements must be positive");
                if (!seen.insert(x).second)
                    throw std::invalid_argument("Partition: blocks not disjoint");
            }
    }

    std::vector<Block> blocks_;
};

}  // namespace liftcoal

#endif
