#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace mtlab {

/// splitmix64 finalizer; the one mixing function used for keys and for the
/// generator's counter-based random draws.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

enum class ValueModel {
    IidLeaf,   // independent uniform values per node
    EdgeDelta, // value = signed sum of per-edge deltas along the path
};

inline const char* to_string(ValueModel m) { return m == ValueModel::IidLeaf ? "iid" : "edge"; }

inline constexpr std::uint64_t kMaxTreeNodes = std::uint64_t{1} << 22;

struct TreeConfig {
    int width = 2;
    int depth = 2;
    std::uint64_t seed = 0;
    ValueModel model = ValueModel::EdgeDelta;
    double ordering = 1.0; // probability the best child is listed first
    int range = 100;       // half-width of leaf (iid) or edge (edge) values

    friend bool operator==(const TreeConfig&, const TreeConfig&) = default;
};

inline std::uint64_t tree_node_count(int width, int depth)
{
    std::uint64_t total = 0;
    std::uint64_t level = 1;
    for (int k = 0; k <= depth; ++k) {
        total += level;
        if (total > kMaxTreeNodes) return kMaxTreeNodes + 1;
        level *= static_cast<std::uint64_t>(width);
    }
    return total;
}

/// Smallest table size (in bits) that gives every node of the tree its own
/// slot; synthetic keys carry the node serial in their low bits.
inline int table_bits_for(std::uint64_t nodes)
{
    int bits = 4;
    while ((std::uint64_t{1} << bits) < nodes) ++bits;
    return bits;
}

/// A fully materialised uniform game tree. Node identity is the child-index
/// path in generation order; successors are listed in the permuted (search)
/// order controlled by TreeConfig::ordering.
class SyntheticTree {
public:
    using Position = std::uint32_t;

    explicit SyntheticTree(const TreeConfig& cfg) : cfg_(cfg) { build(); }

    Position root() const noexcept { return 0; }

    std::vector<Position> successors(Position p) const
    {
        const Node& n = nodes_[p];
        std::vector<Position> out(n.children);
        for (std::uint32_t i = 0; i < n.children; ++i) out[i] = n.first_child + i;
        return out;
    }

    Value evaluate(Position p) const noexcept
    {
        const Node& n = nodes_[p];
        return (n.ply % 2 == 0) ? n.value : -n.value;
    }

    bool is_terminal(Position p, int remaining) const noexcept
    {
        return remaining <= 0 || nodes_[p].children == 0;
    }

    std::uint64_t key(Position p) const noexcept { return nodes_[p].key; }
    int max_branching() const noexcept { return cfg_.width; }

    const TreeConfig& config() const noexcept { return cfg_; }
    std::uint64_t node_count() const noexcept { return nodes_.size(); }
    int ply(Position p) const noexcept { return nodes_[p].ply; }

    /// Static value of p from the root player's (MAX) point of view.
    Value max_value(Position p) const noexcept { return nodes_[p].value; }

    /// Full-depth minimax value of p, MAX point of view.
    Value minimax_value(Position p) const noexcept { return minimax_[p]; }

    /// Table size that is guaranteed collision-free for this tree.
    int table_bits() const { return table_bits_for(node_count()); }

    double leaf_value_stddev() const
    {
        double sum = 0, sq = 0;
        std::uint64_t n = 0;
        for (const Node& node : nodes_) {
            if (node.children != 0) continue;
            sum += node.value;
            sq += double(node.value) * node.value;
            ++n;
        }
        if (n == 0) return 0;
        const double mean = sum / double(n);
        return std::sqrt(std::max(0.0, sq / double(n) - mean * mean));
    }

private:
    struct Node {
        std::uint64_t key;
        Value value;
        std::uint32_t first_child;
        std::uint16_t children;
        std::uint8_t ply;
    };

    static constexpr std::uint64_t kValueSalt = 0x76616c7565ULL;
    static constexpr std::uint64_t kOrderSalt = 0x6f72646572ULL;

    std::uint64_t draw(std::uint64_t node_hash, std::uint64_t salt, std::uint64_t i = 0) const
    {
        return mix64(mix64(cfg_.seed ^ salt) ^ node_hash ^ mix64(i));
    }
    Value uniform(std::uint64_t h, std::uint64_t salt, int half_width) const
    {
        const std::uint64_t span = 2 * std::uint64_t(half_width) + 1;
        return static_cast<Value>(std::int64_t(draw(h, salt) % span) - half_width);
    }

    void validate() const
    {
        if (cfg_.width < 1) throw std::invalid_argument("tree width must be >= 1");
        if (cfg_.width > 0xFFFF) throw std::invalid_argument("tree width too large");
        if (cfg_.depth < 0) throw std::invalid_argument("tree depth must be >= 0");
        if (cfg_.depth > 250) throw std::invalid_argument("tree depth too large");
        if (!(cfg_.ordering >= 0.0 && cfg_.ordering <= 1.0)) {
            throw std::invalid_argument("ordering probability must be in [0, 1]");
        }
        if (cfg_.range < 0) throw std::invalid_argument("value range must be >= 0");
        const std::int64_t reach = cfg_.model == ValueModel::EdgeDelta
                                       ? std::int64_t(cfg_.range) * cfg_.depth
                                       : std::int64_t(cfg_.range);
        if (reach >= kInf / 2) throw std::invalid_argument("value range too large");
        if (tree_node_count(cfg_.width, cfg_.depth) > kMaxTreeNodes) {
            throw BudgetExceeded("synthetic tree exceeds " + std::to_string(kMaxTreeNodes) + " nodes");
        }
    }

    void build()
    {
        validate();
        const auto total = tree_node_count(cfg_.width, cfg_.depth);
        nodes_.resize(total);
        std::vector<std::uint64_t> path_hash(total);

        path_hash[0] = mix64(cfg_.seed);
        nodes_[0] = {0, 0, 0, 0, 0};
        nodes_[0].value = cfg_.model == ValueModel::IidLeaf ? uniform(path_hash[0], kValueSalt, cfg_.range) : 0;

        // Breadth-first in natural order.
        std::uint32_t next = 1;
        for (std::uint32_t i = 0; i < total; ++i) {
            Node& n = nodes_[i];
            n.key = (path_hash[i] & 0xFFFFFFFF00000000ULL) | i;
            if (n.ply == cfg_.depth) continue;
            n.first_child = next;
            n.children = static_cast<std::uint16_t>(cfg_.width);
            for (int j = 0; j < cfg_.width; ++j, ++next) {
                path_hash[next] = mix64(path_hash[i] ^ mix64(std::uint64_t(j) + 1));
                Node& c = nodes_[next];
                c.ply = static_cast<std::uint8_t>(n.ply + 1);
                c.children = 0;
                c.first_child = 0;
                if (cfg_.model == ValueModel::IidLeaf) {
                    c.value = uniform(path_hash[next], kValueSalt, cfg_.range);
                } else {
                    const Value delta = uniform(path_hash[next], kValueSalt, cfg_.range);
                    c.value = n.value + (n.ply % 2 == 0 ? delta : -delta);
                }
            }
        }

        // Full-depth minimax, bottom-up (children always follow parents).
        minimax_.assign(total, 0);
        for (std::uint32_t i = static_cast<std::uint32_t>(total); i-- > 0;) {
            const Node& n = nodes_[i];
            if (n.children == 0) {
                minimax_[i] = n.value;
                continue;
            }
            const bool max_to_move = n.ply % 2 == 0;
            Value best = minimax_[n.first_child];
            for (std::uint32_t j = 1; j < n.children; ++j) {
                const Value v = minimax_[n.first_child + j];
                best = max_to_move ? std::max(best, v) : std::min(best, v);
            }
            minimax_[i] = best;
        }

        for (std::uint32_t i = 0; i < total; ++i) {
            if (nodes_[i].children > 1) permute_children(i, path_hash);
        }
    }

    void permute_children(std::uint32_t parent, std::vector<std::uint64_t>& path_hash)
    {
        const std::uint64_t h = path_hash[parent];
        const Node& n = nodes_[parent];
        const std::uint32_t w = n.children;
        const std::uint32_t base = n.first_child;
        const bool max_to_move = n.ply % 2 == 0;

        std::uint32_t best = 0;
        for (std::uint32_t j = 1; j < w; ++j) {
            const Value v = minimax_[base + j];
            const Value b = minimax_[base + best];
            if (max_to_move ? v > b : v < b) best = j;
        }

        std::uint64_t counter = 0;
        const double u = double(draw(h, kOrderSalt, counter++) >> 11) * 0x1.0p-53;
        std::uint32_t first = best;
        if (!(u < cfg_.ordering)) {
            const std::uint32_t k = static_cast<std::uint32_t>(draw(h, kOrderSalt, counter++) % (w - 1));
            first = k < best ? k : k + 1;
        }

        std::vector<std::uint32_t> order;
        order.reserve(w);
        order.push_back(first);
        for (std::uint32_t j = 0; j < w; ++j) {
            if (j != first) order.push_back(j);
        }
        for (std::uint32_t j = w - 1; j > 1; --j) {
            const auto k = 1 + static_cast<std::uint32_t>(draw(h, kOrderSalt, counter++) % j);
            std::swap(order[j], order[k]);
        }

        std::vector<Node> block(nodes_.begin() + base, nodes_.begin() + base + w);
        std::vector<Value> mm(minimax_.begin() + base, minimax_.begin() + base + w);
        std::vector<std::uint64_t> hh(path_hash.begin() + base, path_hash.begin() + base + w);
        for (std::uint32_t j = 0; j < w; ++j) {
            nodes_[base + j] = block[order[j]];
            minimax_[base + j] = mm[order[j]];
            path_hash[base + j] = hh[order[j]];
        }
    }

    TreeConfig cfg_;
    std::vector<Node> nodes_;
    std::vector<Value> minimax_;
};

/// Deterministic synthetic game tree for cfg.
inline SyntheticTree gen_tree(const TreeConfig& cfg) { return SyntheticTree(cfg); }

} // namespace mtlab
