#ifndef SUBFIELDS_BLOCK_SYSTEMS_HPP
#define SUBFIELDS_BLOCK_SYSTEMS_HPP

/**
 * @file block_systems.hpp
 * @brief G-invariant partitions of {0..n-1}: the minimal-block algorithm
 *        for principal systems, joins as graph components, enumeration of
 *        all nontrivial systems, and grouping indices by equal values.
 *
 * Convention used throughout: the two trivial partitions (all singletons,
 * one block) are excluded from "block systems" everywhere.
 */

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "subfields/permutation.hpp"

namespace subfields {

struct BlockSystem {
    int n = 0;
    std::vector<std::vector<int>> blocks;  // each sorted; blocks sorted by first element
    std::vector<int> block_of;             // point -> block index

    BlockSystem() = default;
    BlockSystem(int degree, const std::vector<int>& cls) : n(degree) { from_classes(cls); }

    int num_blocks() const { return static_cast<int>(blocks.size()); }
    int block_size() const { return blocks.empty() ? 0 : static_cast<int>(blocks[0].size()); }
    bool is_trivial() const { return num_blocks() <= 1 || block_size() == 1; }
    bool equal_sized() const {
        for (const auto& b : blocks)
            if (b.size() != blocks[0].size()) return false;
        return true;
    }

    /// The block containing a point.
    const std::vector<int>& block_containing(int point) const { return blocks[block_of[point]]; }

    friend bool operator==(const BlockSystem& a, const BlockSystem& b) {
        return a.n == b.n && a.blocks == b.blocks;
    }
    friend bool operator<(const BlockSystem& a, const BlockSystem& b) {
        return a.blocks < b.blocks;
    }

    /// sigma(B) for each block must again be a block.
    bool invariant_under(const Permutation& g) const {
        for (const auto& b : blocks) {
            int target = block_of[g[b[0]]];
            for (int x : b)
                if (block_of[g[x]] != target) return false;
        }
        return true;
    }

    bool invariant_under(const PermGroup& g) const {
        for (const auto& s : g.generators())
            if (!invariant_under(s)) return false;
        return true;
    }

    /// True when every block of this system is contained in a block of other.
    bool refines(const BlockSystem& other) const {
        for (const auto& b : blocks) {
            int target = other.block_of[b[0]];
            for (int x : b)
                if (other.block_of[x] != target) return false;
        }
        return true;
    }

private:
    void from_classes(const std::vector<int>& cls) {
        std::map<int, std::vector<int>> grouped;
        for (int i = 0; i < n; ++i) grouped[cls[i]].push_back(i);
        blocks.clear();
        for (auto& [key, blk] : grouped) blocks.push_back(std::move(blk));
        std::sort(blocks.begin(), blocks.end());
        block_of.assign(n, -1);
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (int x : blocks[b]) block_of[x] = static_cast<int>(b);
    }
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace detail

/**
 * Finest G-congruence identifying the two given points (minimal blocks):
 * seed the relation with a~b and close under the generators.
 */
inline BlockSystem principal_block_system(const PermGroup& g, int a, int b) {
    if (!g.is_transitive())
        throw std::invalid_argument("principal_block_system: group not transitive");
    const int n = g.degree();
    detail::UnionFind uf(n);
    std::vector<std::pair<int, int>> work;
    if (uf.unite(a, b)) work.emplace_back(a, b);
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        for (const auto& s : g.generators())
            if (uf.unite(s[x], s[y])) work.emplace_back(s[x], s[y]);
    }
    std::vector<int> cls(n);
    for (int i = 0; i < n; ++i) cls[i] = uf.find(i);
    return BlockSystem(n, cls);
}

/// Principal system generated by the pair (point 0, point j), 0-based.
inline BlockSystem principal_block_system(const PermGroup& g, int j) {
    return principal_block_system(g, 0, j);
}

/// Finest common coarsening: connected components of the union graph.
inline BlockSystem join_block_systems(const std::vector<BlockSystem>& systems) {
    if (systems.empty()) throw std::invalid_argument("join_block_systems: empty input");
    const int n = systems[0].n;
    for (const auto& s : systems)
        if (s.n != n) throw std::invalid_argument("join_block_systems: degree mismatch");
    detail::UnionFind uf(n);
    for (const auto& s : systems)
        for (const auto& blk : s.blocks)
            for (std::size_t i = 1; i < blk.size(); ++i) uf.unite(blk[0], blk[i]);
    std::vector<int> cls(n);
    for (int i = 0; i < n; ++i) cls[i] = uf.find(i);
    return BlockSystem(n, cls);
}

inline BlockSystem join_block_systems(const BlockSystem& a, const BlockSystem& b) {
    return join_block_systems(std::vector<BlockSystem>{a, b});
}

/**
 * All nontrivial block systems: principal systems for every pair (0, j),
 * closed under pairwise joins.  Trivial partitions are excluded.
 */
inline std::vector<BlockSystem> all_block_systems(const PermGroup& g) {
    const int n = g.degree();
    std::set<BlockSystem> known;
    std::vector<BlockSystem> work;
    for (int j = 1; j < n; ++j) {
        BlockSystem b = principal_block_system(g, j);
        if (b.is_trivial()) continue;
        if (known.insert(b).second) work.push_back(b);
    }
    while (!work.empty()) {
        BlockSystem cur = work.back();
        work.pop_back();
        std::vector<BlockSystem> snapshot(known.begin(), known.end());
        for (const auto& other : snapshot) {
            BlockSystem j = join_block_systems(cur, other);
            if (j.is_trivial()) continue;
            if (known.insert(j).second) work.push_back(j);
        }
    }
    return std::vector<BlockSystem>(known.begin(), known.end());
}

/**
 * Group indices by equal values; succeeds iff there are exactly m classes
 * of equal size n/m.  Returns nothing ("indistinct") otherwise.
 */
template <class T>
std::optional<BlockSystem> blocks_from_values(const std::vector<T>& values, long m) {
    const int n = static_cast<int>(values.size());
    if (m <= 0 || n % m != 0) return std::nullopt;
    std::vector<int> cls(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = next;
        for (int j = i + 1; j < n; ++j)
            if (cls[j] < 0 && values[j] == values[i]) cls[j] = next;
        ++next;
    }
    if (next != m) return std::nullopt;
    BlockSystem b(n, cls);
    if (!b.equal_sized() || b.num_blocks() != m) return std::nullopt;
    return b;
}

/// Classifies a value grouping relative to an expected class count.
enum class ValueGrouping { kTooCoarse, kExact, kNotASystem };

template <class T>
std::pair<ValueGrouping, std::optional<BlockSystem>> classify_value_grouping(
    const std::vector<T>& values, long expected_classes) {
    const int n = static_cast<int>(values.size());
    std::vector<int> cls(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = next;
        for (int j = i + 1; j < n; ++j)
            if (cls[j] < 0 && values[j] == values[i]) cls[j] = next;
        ++next;
    }
    if (next < expected_classes) return {ValueGrouping::kTooCoarse, std::nullopt};
    if (next > expected_classes) return {ValueGrouping::kNotASystem, std::nullopt};
    BlockSystem b(n, cls);
    if (!b.equal_sized()) return {ValueGrouping::kNotASystem, std::nullopt};
    return {ValueGrouping::kExact, b};
}

/// Sign of the induced action on the blocks of a system.
inline int block_action_sign(const Permutation& g, const BlockSystem& b) {
    std::vector<int> img(b.num_blocks());
    for (int i = 0; i < b.num_blocks(); ++i) img[i] = b.block_of[g[b.blocks[i][0]]];
    return Permutation(std::move(img)).sign();
}

/// The permutation induced on the blocks of a system.
inline Permutation block_action(const Permutation& g, const BlockSystem& b) {
    std::vector<int> img(b.num_blocks());
    for (int i = 0; i < b.num_blocks(); ++i) img[i] = b.block_of[g[b.blocks[i][0]]];
    return Permutation(std::move(img));
}

}  // namespace subfields

#endif  // SUBFIELDS_BLOCK_SYSTEMS_HPP
