#include "kvis/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace kvis {

Graph::Graph(int n_, std::vector<Edge> edge_list) : n(n_) {
    for (auto& [u, v] : edge_list) {
        if (u == v) throw ParameterError("self-loop rejected");
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n) throw ParameterError("edge endpoint out of range");
    }
    std::sort(edge_list.begin(), edge_list.end());
    edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
    edges = std::move(edge_list);
    adj.assign(n, {});
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), Edge{u, v});
}

void Graph::add_edge(int u, int v) {
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
}

void Graph::finish() {
    *this = Graph(n, std::move(edges));
}

bool is_connected(const Graph& g) {
    if (g.n == 0) return false;
    std::vector<char> seen(g.n, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int cnt = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : g.adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++cnt;
                q.push_back(v);
            }
    }
    return cnt == g.n;
}

bool is_tree(const Graph& g) {
    return int(g.edges.size()) == g.n - 1 && is_connected(g);
}

Graph make_path(int n) {
    if (n < 1) throw ParameterError("path needs n >= 1");
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
}

Graph make_cycle(int n) {
    if (n < 3) throw ParameterError("cycle needs n >= 3");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(e));
}

Graph make_star(int leaves) {
    if (leaves < 1) throw ParameterError("star needs >= 1 leaf");
    std::vector<Edge> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph(leaves + 1, std::move(e));
}

Graph make_spider(const std::vector<int>& legs) {
    if (legs.size() < 3) throw ParameterError("spider needs >= 3 legs");
    for (int L : legs)
        if (L < 1) throw ParameterError("spider leg length must be >= 1");
    std::vector<Edge> e;
    int next = 1;
    for (int L : legs) {
        int prev = 0;
        for (int i = 0; i < L; ++i) {
            e.emplace_back(prev, next);
            prev = next++;
        }
    }
    return Graph(next, std::move(e));
}

Graph make_complete_qary_tree(int h, int q) {
    if (h < 0 || q < 1) throw ParameterError("complete q-ary tree needs h >= 0, q >= 1");
    std::vector<Edge> e;
    // BFS ids: children of v start right after the previous level's block
    std::vector<int> level{0};
    int next = 1;
    for (int d = 0; d < h; ++d) {
        std::vector<int> nxt;
        for (int v : level)
            for (int c = 0; c < q; ++c) {
                e.emplace_back(v, next);
                nxt.push_back(next++);
            }
        level = std::move(nxt);
    }
    return Graph(next, std::move(e));
}

Graph make_grid(int n) {
    if (n < 1) throw ParameterError("grid needs n >= 1");
    std::vector<Edge> e;
    auto id = [n](int x, int y) { return (x - 1) * n + (y - 1); };
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            if (x < n) e.emplace_back(id(x, y), id(x + 1, y));
            if (y < n) e.emplace_back(id(x, y), id(x, y + 1));
        }
    Graph g(n * n, std::move(e));
    std::vector<std::pair<int, int>> lab(n * n);
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) lab[id(x, y)] = {x, y};
    g.labels = std::move(lab);
    return g;
}

Family family_from_string(const std::string& s) {
    if (s == "path") return Family::path;
    if (s == "cycle") return Family::cycle;
    if (s == "star") return Family::star;
    if (s == "spider") return Family::spider;
    if (s == "complete_qary_tree") return Family::complete_qary_tree;
    if (s == "grid") return Family::grid;
    throw ParameterError("unknown graph family: " + s);
}

Graph gen_graph(Family f, const std::vector<int>& params) {
    switch (f) {
    case Family::path:
        if (params.size() != 1) throw ParameterError("path takes one parameter n");
        return make_path(params[0]);
    case Family::cycle:
        if (params.size() != 1) throw ParameterError("cycle takes one parameter n");
        return make_cycle(params[0]);
    case Family::star:
        if (params.size() != 1) throw ParameterError("star takes one parameter (leaf count)");
        return make_star(params[0]);
    case Family::spider:
        return make_spider(params);
    case Family::complete_qary_tree:
        if (params.size() != 2) throw ParameterError("complete_qary_tree takes h and q");
        return make_complete_qary_tree(params[0], params[1]);
    case Family::grid:
        if (params.size() != 1) throw ParameterError("grid takes one parameter n");
        return make_grid(params[0]);
    }
    throw ParameterError("unknown family");
}

SubdivisionResult subdivide(const SubdivisionPlan& plan) {
    const Graph& b = plan.base;
    for (auto& [e, c] : plan.counts) {
        if (c < 0) throw ParameterError("subdivision count must be >= 0");
        if (!b.has_edge(e.first, e.second))
            throw ParameterError("subdivision plan names an edge not in the base graph");
    }
    long long total = b.n;
    for (auto& [e, c] : plan.counts) total += c;
    SubdivisionResult out;
    std::vector<Edge> es;
    int next = b.n;
    for (Edge e : b.edges) {
        auto it = plan.counts.find(e);
        int c = it == plan.counts.end() ? 0 : it->second;
        std::vector<int> chain;
        int prev = e.first;
        for (int i = 0; i < c; ++i) {
            chain.push_back(next);
            es.emplace_back(prev, next);
            prev = next++;
        }
        es.emplace_back(prev, e.second);
        out.chains[e] = std::move(chain);
    }
    out.graph = Graph(int(total), std::move(es));
    return out;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    std::vector<int> d(g.n, -1);
    std::deque<int> q{source};
    d[source] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : g.adj[u])
            if (d[v] < 0) {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
    }
    return d;
}

DistanceMatrix::DistanceMatrix(const Graph& g) : n_(g.n), d_(size_t(g.n) * g.n) {
    for (int s = 0; s < n_; ++s) {
        auto dist = bfs_distances(g, s);
        for (int v = 0; v < n_; ++v) {
            if (dist[v] < 0) throw StructuralError("graph is disconnected");
            d_[size_t(s) * n_ + v] = dist[v];
        }
    }
}

DistanceMatrix all_pairs_distances(const Graph& g) { return DistanceMatrix(g); }

int eccentricity(const Graph& g, int source) {
    auto d = bfs_distances(g, source);
    int e = 0;
    for (int x : d) {
        if (x < 0) throw StructuralError("graph is disconnected");
        e = std::max(e, x);
    }
    return e;
}

namespace {

// Shortest cycle through edges seen from a BFS tree; standard O(n*m) scan.
std::optional<int> compute_girth(const Graph& g) {
    int best = -1;
    for (int s = 0; s < g.n; ++s) {
        std::vector<int> d(g.n, -1), par(g.n, -1);
        std::deque<int> q{s};
        d[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v : g.adj[u]) {
                if (d[v] < 0) {
                    d[v] = d[u] + 1;
                    par[v] = u;
                    q.push_back(v);
                } else if (v != par[u]) {
                    int len = d[u] + d[v] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

} // namespace

GraphMetrics graph_metrics(const Graph& g) {
    if (!is_connected(g)) throw StructuralError("graph is disconnected");
    GraphMetrics m;
    std::vector<int> ecc(g.n);
    for (int v = 0; v < g.n; ++v) ecc[v] = eccentricity(g, v);
    m.radius = *std::min_element(ecc.begin(), ecc.end());
    for (int v = 0; v < g.n; ++v)
        if (ecc[v] == m.radius) m.center.push_back(v);
    m.girth = compute_girth(g);
    for (int v = 0; v < g.n; ++v) m.max_degree = std::max(m.max_degree, g.degree(v));
    return m;
}

Bitset ball(const DistanceMatrix& dm, int v, int k) {
    if (k < 0) throw ParameterError("ball radius must be >= 0");
    Bitset b(dm.n());
    for (int u = 0; u < dm.n(); ++u)
        if (dm.at(v, u) <= k) b.set(u);
    return b;
}

Bitset ball(const Graph& g, int v, int k) {
    if (k < 0) throw ParameterError("ball radius must be >= 0");
    auto d = bfs_distances(g, v);
    Bitset b(g.n);
    for (int u = 0; u < g.n; ++u)
        if (d[u] >= 0 && d[u] <= k) b.set(u);
    return b;
}

Bitset spread(const Graph& g, const Bitset& s) {
    Bitset out = s;
    s.for_each([&](int v) {
        for (int u : g.adj[v]) out.set(u);
    });
    return out;
}

} // namespace kvis
