#include "enumerate.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

namespace kvis::testing {

namespace {

// graphs on <= 8 vertices as edge bitmasks over pairs (i < j)
int pair_bit(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    int bit = 0;
    for (int a = 0; a < i; ++a) bit += n - 1 - a;
    return bit + (j - i - 1);
}

uint64_t canonical_mask(uint64_t mask, int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    uint64_t best = ~0ull;
    do {
        uint64_t img = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (mask >> pair_bit(i, j, n) & 1) img |= 1ull << pair_bit(perm[i], perm[j], n);
        best = std::min(best, img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Graph graph_from_mask(uint64_t mask, int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mask >> pair_bit(i, j, n) & 1) es.emplace_back(i, j);
    return Graph(n, std::move(es));
}

uint64_t mask_of(const Graph& g) {
    uint64_t m = 0;
    for (auto [u, v] : g.edges) m |= 1ull << pair_bit(u, v, g.n);
    return m;
}

} // namespace

const std::vector<Graph>& connected_graphs(int n) {
    static std::map<int, std::vector<Graph>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Graph> out;
    if (n == 1) {
        out.push_back(Graph(1, {}));
    } else {
        const auto& smaller = connected_graphs(n - 1);
        std::set<uint64_t> seen;
        for (const Graph& base : smaller) {
            uint64_t bm = mask_of(base);
            // re-embed the (n-1)-vertex mask into the n-vertex bit layout
            uint64_t bm_n = 0;
            for (auto [u, v] : base.edges) bm_n |= 1ull << pair_bit(u, v, n);
            (void)bm;
            for (uint64_t attach = 1; attach < (1ull << (n - 1)); ++attach) {
                uint64_t mask = bm_n;
                for (int v = 0; v < n - 1; ++v)
                    if (attach >> v & 1) mask |= 1ull << pair_bit(v, n - 1, n);
                uint64_t canon = canonical_mask(mask, n);
                if (seen.insert(canon).second) out.push_back(graph_from_mask(canon, n));
            }
        }
    }
    return cache.emplace(n, std::move(out)).first->second;
}

std::string tree_canonical(const Graph& tree) {
    if (!is_tree(tree)) throw ParameterError("tree_canonical needs a tree");
    // peel leaves to find the 1-2 centers
    std::vector<int> deg(tree.n);
    for (int v = 0; v < tree.n; ++v) deg[v] = tree.degree(v);
    std::vector<int> layer;
    std::vector<char> removed(tree.n, 0);
    for (int v = 0; v < tree.n; ++v)
        if (deg[v] <= 1) layer.push_back(v);
    int remaining = tree.n;
    while (remaining > 2) {
        std::vector<int> nxt;
        for (int v : layer) {
            removed[v] = 1;
            --remaining;
            for (int u : tree.adj[v])
                if (!removed[u] && --deg[u] == 1) nxt.push_back(u);
        }
        layer = std::move(nxt);
    }
    std::function<std::string(int, int)> enc = [&](int v, int parent) -> std::string {
        std::vector<std::string> kids;
        for (int u : tree.adj[v])
            if (u != parent) kids.push_back(enc(u, v));
        std::sort(kids.begin(), kids.end());
        std::string s = "(";
        for (auto& k : kids) s += k;
        return s + ")";
    };
    std::vector<int> centers;
    for (int v = 0; v < tree.n; ++v)
        if (!removed[v]) centers.push_back(v);
    std::string best;
    for (int c : centers) {
        std::string s = enc(c, -1);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

const std::vector<Graph>& all_trees(int n) {
    static std::map<int, std::vector<Graph>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Graph> out;
    if (n == 1) {
        out.push_back(Graph(1, {}));
    } else {
        std::set<std::string> seen;
        for (const Graph& base : all_trees(n - 1)) {
            for (int v = 0; v < base.n; ++v) {
                auto es = base.edges;
                es.emplace_back(v, n - 1);
                Graph t(n, std::move(es));
                if (seen.insert(tree_canonical(t)).second) out.push_back(std::move(t));
            }
        }
    }
    return cache.emplace(n, std::move(out)).first->second;
}

Graph random_tree(int n, uint64_t seed) {
    if (n == 1) return Graph(1, {});
    if (n == 2) return Graph(2, {{0, 1}});
    std::mt19937_64 rng(seed);
    std::vector<int> pruefer(n - 2);
    for (auto& p : pruefer) p = int(rng() % n);
    std::vector<int> deg(n, 1);
    for (int p : pruefer) ++deg[p];
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) leaves.insert(v);
    std::vector<Edge> es;
    for (int p : pruefer) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        es.emplace_back(std::min(leaf, p), std::max(leaf, p));
        if (--deg[p] == 1) leaves.insert(p);
    }
    int a = *leaves.begin(), b = *std::next(leaves.begin());
    es.emplace_back(std::min(a, b), std::max(a, b));
    return Graph(n, std::move(es));
}

std::vector<Graph> subtrees_of(const Graph& tree) {
    std::vector<Graph> out;
    for (uint64_t mask = 1; mask < (1ull << tree.n); ++mask) {
        std::vector<int> verts;
        for (int v = 0; v < tree.n; ++v)
            if (mask >> v & 1) verts.push_back(v);
        std::vector<int> remap(tree.n, -1);
        for (size_t i = 0; i < verts.size(); ++i) remap[verts[i]] = int(i);
        std::vector<Edge> es;
        for (auto [u, v] : tree.edges)
            if (remap[u] >= 0 && remap[v] >= 0) es.emplace_back(remap[u], remap[v]);
        Graph sub(int(verts.size()), std::move(es));
        if (is_connected(sub)) out.push_back(std::move(sub));
    }
    return out;
}

} // namespace kvis::testing
