#ifndef SUBFIELDS_WREATH_MEET_HPP
#define SUBFIELDS_WREATH_MEET_HPP

/**
 * @file wreath_meet.hpp
 * @brief Intersection of wreath products through the automorphism group
 *        of a three-layer colored incidence graph (systems, blocks,
 *        points), with an individualization-refinement backtracker and a
 *        brute-force cross-check for small degrees.
 */

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "subfields/block_systems.hpp"
#include "subfields/permutation.hpp"

namespace subfields {

struct ColoredGraph {
    int vertex_count = 0;
    std::vector<std::vector<int>> adj;  // sorted neighbor lists
    std::vector<int> color;

    void add_edge(int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    void finish() {
        for (auto& row : adj) std::sort(row.begin(), row.end());
    }
    long edge_count() const {
        long twice = 0;
        for (const auto& row : adj) twice += static_cast<long>(row.size());
        return twice / 2;
    }
};

/**
 * Incidence graph of the given block systems: one vertex per system
 * (each its own color), one per block (one shared color), one per point
 * (another color); edges point-block for containment, block-system for
 * membership.
 */
inline ColoredGraph build_incidence_graph(const std::vector<BlockSystem>& systems) {
    if (systems.empty()) throw std::invalid_argument("build_incidence_graph: no systems");
    const int n = systems[0].n;
    const int s = static_cast<int>(systems.size());
    int block_total = 0;
    for (const auto& sys : systems) {
        if (sys.n != n) throw std::invalid_argument("build_incidence_graph: degree mismatch");
        block_total += sys.num_blocks();
    }
    ColoredGraph g;
    g.vertex_count = s + block_total + n;
    g.adj.assign(g.vertex_count, {});
    g.color.assign(g.vertex_count, 0);
    for (int i = 0; i < s; ++i) g.color[i] = i;           // system layer: s distinct colors
    for (int i = 0; i < block_total; ++i) g.color[s + i] = s;      // block layer
    for (int i = 0; i < n; ++i) g.color[s + block_total + i] = s + 1;  // point layer
    int block_base = s;
    for (int i = 0; i < s; ++i) {
        for (int b = 0; b < systems[i].num_blocks(); ++b) {
            const int bv = block_base + b;
            g.add_edge(i, bv);
            for (int pt : systems[i].blocks[b]) g.add_edge(bv, s + block_total + pt);
        }
        block_base += systems[i].num_blocks();
    }
    g.finish();
    return g;
}

namespace detail {

/// Stable color refinement by (color, multiset of neighbor colors).
inline std::vector<int> refine_colors(const ColoredGraph& g, std::vector<int> color) {
    const int n = g.vertex_count;
    while (true) {
        std::map<std::pair<int, std::vector<int>>, std::vector<int>> classes;
        for (int v = 0; v < n; ++v) {
            std::vector<int> sig;
            sig.reserve(g.adj[v].size());
            for (int u : g.adj[v]) sig.push_back(color[u]);
            std::sort(sig.begin(), sig.end());
            classes[{color[v], std::move(sig)}].push_back(v);
        }
        std::vector<int> next(n);
        int id = 0;
        for (const auto& [key, members] : classes) {
            for (int v : members) next[v] = id;
            ++id;
        }
        bool changed = false;
        // Count distinct old colors for comparison.
        std::vector<int> sorted_old = color, sorted_new = next;
        std::sort(sorted_old.begin(), sorted_old.end());
        sorted_old.erase(std::unique(sorted_old.begin(), sorted_old.end()), sorted_old.end());
        changed = id != static_cast<int>(sorted_old.size());
        color = std::move(next);
        if (!changed) return color;
    }
}

struct AutoSearch {
    const ColoredGraph& g;
    long node_budget;
    long nodes = 0;
    std::vector<int> first_leaf;                  // vertex -> position
    bool have_first = false;
    std::vector<std::vector<int>> depth_signature;  // class-size sequence per depth
    std::vector<Permutation> found;

    explicit AutoSearch(const ColoredGraph& graph, long budget) : g(graph), node_budget(budget) {}

    static std::vector<int> signature(const std::vector<int>& color) {
        std::map<int, int> sizes;
        for (int c : color) ++sizes[c];
        std::vector<int> sig;
        for (auto& [c, k] : sizes) sig.push_back(k);
        return sig;
    }

    bool is_discrete(const std::vector<int>& color) const {
        std::vector<int> seen(color.size(), 0);
        for (int c : color)
            if (++seen[c] > 1) return false;
        return true;
    }

    /// First cell (smallest color id) with more than one member.
    std::vector<int> target_cell(const std::vector<int>& color) const {
        std::map<int, std::vector<int>> cells;
        for (int v = 0; v < g.vertex_count; ++v) cells[color[v]].push_back(v);
        for (auto& [c, members] : cells)
            if (members.size() > 1) return members;
        return {};
    }

    void leaf(const std::vector<int>& color) {
        std::vector<int> pos(g.vertex_count);
        for (int v = 0; v < g.vertex_count; ++v) pos[v] = color[v];
        if (!have_first) {
            first_leaf = pos;
            have_first = true;
            return;
        }
        // Map: vertex at position i in this leaf -> vertex at position i in first leaf.
        std::vector<int> by_pos_here(g.vertex_count), by_pos_first(g.vertex_count);
        for (int v = 0; v < g.vertex_count; ++v) {
            by_pos_here[pos[v]] = v;
            by_pos_first[first_leaf[v]] = v;
        }
        std::vector<int> img(g.vertex_count);
        for (int i = 0; i < g.vertex_count; ++i) img[by_pos_first[i]] = by_pos_here[i];
        Permutation cand(std::move(img));
        // Verify it is a color- and adjacency-preserving bijection.
        for (int v = 0; v < g.vertex_count; ++v) {
            if (g.color[cand[v]] != g.color[v]) return;
            std::vector<int> mapped;
            mapped.reserve(g.adj[v].size());
            for (int u : g.adj[v]) mapped.push_back(cand[u]);
            std::sort(mapped.begin(), mapped.end());
            if (mapped != g.adj[cand[v]]) return;
        }
        if (!cand.is_identity()) found.push_back(std::move(cand));
    }

    void search(std::vector<int> color, std::vector<int> prefix, std::size_t depth) {
        if (++nodes > node_budget)
            throw std::runtime_error("colored_graph_automorphisms: node budget exceeded");
        color = refine_colors(g, std::move(color));
        std::vector<int> sig = signature(color);
        if (depth < depth_signature.size()) {
            if (sig != depth_signature[depth]) return;  // cannot match the first leaf
        } else {
            depth_signature.push_back(sig);
        }
        if (is_discrete(color)) {
            leaf(color);
            return;
        }
        std::vector<int> cell = target_cell(color);
        std::vector<bool> done(g.vertex_count, false);
        for (std::size_t pick = 0; pick < cell.size(); ++pick) {
            int u = cell[pick];
            if (done[u]) continue;
            // Orbit pruning: mark everything reachable from u under found
            // generators that fix the individualized prefix pointwise.
            std::vector<int> orbit{u};
            done[u] = true;
            for (std::size_t oi = 0; oi < orbit.size(); ++oi) {
                for (const auto& h : found) {
                    bool fixes = true;
                    for (int p : prefix)
                        if (h[p] != p) {
                            fixes = false;
                            break;
                        }
                    if (!fixes) continue;
                    int im = h[orbit[oi]];
                    if (!done[im]) {
                        done[im] = true;
                        orbit.push_back(im);
                    }
                    im = h.inverse()[orbit[oi]];
                    if (!done[im]) {
                        done[im] = true;
                        orbit.push_back(im);
                    }
                }
            }
            std::vector<int> child = color;
            // Individualize u: fresh color below every existing id.
            for (auto& c : child) c += 1;
            child[u] = 0;
            std::vector<int> next_prefix = prefix;
            next_prefix.push_back(u);
            search(std::move(child), std::move(next_prefix), depth + 1);
        }
    }
};

}  // namespace detail

/**
 * Generators of the color-preserving automorphism group, found by
 * individualization-refinement with leaf-vs-first-leaf harvesting.
 */
inline std::vector<Permutation> colored_graph_automorphisms(const ColoredGraph& g,
                                                            long node_budget = 2000000) {
    detail::AutoSearch search(g, node_budget);
    search.search(g.color, {}, 0);
    if (search.found.empty()) return {Permutation(g.vertex_count)};
    return search.found;
}

/**
 * The subgroup of Sym_n preserving every given block system, computed by
 * projecting the incidence-graph automorphisms onto the point layer.
 */
inline PermGroup wreath_intersection(const std::vector<BlockSystem>& systems,
                                     long node_budget = 2000000) {
    if (systems.empty()) throw std::invalid_argument("wreath_intersection: no systems");
    const int n = systems[0].n;
    ColoredGraph g = build_incidence_graph(systems);
    const int point_base = g.vertex_count - n;
    std::vector<Permutation> gens;
    for (const auto& a : colored_graph_automorphisms(g, node_budget)) {
        std::vector<int> img(n);
        for (int i = 0; i < n; ++i) img[i] = a[point_base + i] - point_base;
        Permutation p(std::move(img));
        for (const auto& sys : systems)
            if (!sys.invariant_under(p))
                throw std::logic_error("wreath_intersection: projection broke a system");
        gens.push_back(std::move(p));
    }
    return PermGroup(n, std::move(gens));
}

/// Brute-force preserver subgroup for cross-checks (n <= 8).
inline PermGroup wreath_intersection_bruteforce(const std::vector<BlockSystem>& systems) {
    if (systems.empty()) throw std::invalid_argument("wreath_intersection_bruteforce: no systems");
    const int n = systems[0].n;
    if (n > 8) throw std::invalid_argument("wreath_intersection_bruteforce: degree too large");
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> members;
    do {
        Permutation p{std::vector<int>(img)};
        bool ok = true;
        for (const auto& sys : systems)
            if (!sys.invariant_under(p)) {
                ok = false;
                break;
            }
        if (ok) members.push_back(std::move(p));
    } while (std::next_permutation(img.begin(), img.end()));
    return PermGroup(n, std::move(members));
}

}  // namespace subfields

#endif  // SUBFIELDS_WREATH_MEET_HPP
