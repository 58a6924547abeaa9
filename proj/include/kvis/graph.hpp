#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kvis/bitset.hpp"
#include "kvis/errors.hpp"

namespace kvis {

using Edge = std::pair<int, int>; // stored with first < second

// Finite undirected connected simple graph with dense 0-based vertex ids.
// Reflexivity (the robber may stay put) is a game-semantics rule, not a
// stored loop, so degree/girth stay standard.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;               // sorted, u < v
    std::vector<std::vector<int>> adj;     // sorted neighbor lists
    // Grid generators label vertices with (row, col) in [1,n]^2.
    std::optional<std::vector<std::pair<int, int>>> labels;

    Graph() = default;
    Graph(int n_, std::vector<Edge> edge_list);

    int degree(int v) const { return int(adj[v].size()); }
    bool has_edge(int u, int v) const;
    void add_edge(int u, int v); // keeps edges/adj sorted lazily; call finish()
    void finish();               // sort + dedupe check

    // id of grid vertex (x,y), 1-based coordinates, row-major
    int grid_id(int x, int y, int side) const { return (x - 1) * side + (y - 1); }
};

bool is_connected(const Graph& g);
bool is_tree(const Graph& g);

// Generators for the graph families used throughout.
Graph make_path(int n);
Graph make_cycle(int n);
Graph make_star(int leaves);                    // K_{1,leaves}, hub = 0
Graph make_spider(const std::vector<int>& legs); // >= 3 legs, hub = 0
Graph make_complete_qary_tree(int h, int q);    // height h, root 0, BFS ids
Graph make_grid(int n);                         // n x n, labels (row,col)

enum class Family { path, cycle, star, spider, complete_qary_tree, grid };
Graph gen_graph(Family f, const std::vector<int>& params);
Family family_from_string(const std::string& s);

struct SubdivisionPlan {
    Graph base;
    std::map<Edge, int> counts; // absent edge = 0 subdivisions
};

struct SubdivisionResult {
    Graph graph;
    // for each base edge (u,v) with u < v: the chain of new vertex ids in
    // order from u to v (empty when count = 0)
    std::map<Edge, std::vector<int>> chains;
};

SubdivisionResult subdivide(const SubdivisionPlan& plan);

class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(const Graph& g);

    int n() const { return n_; }
    int at(int u, int v) const { return d_[size_t(u) * n_ + v]; }

private:
    int n_ = 0;
    std::vector<int> d_;
};

DistanceMatrix all_pairs_distances(const Graph& g);

struct GraphMetrics {
    int radius = 0;
    std::vector<int> center;   // all vertices attaining the radius, sorted
    std::optional<int> girth;  // nullopt = acyclic
    int max_degree = 0;
};

// Streams one BFS per vertex; never materializes the full distance matrix,
// so it stays usable on large subdivided trees.
GraphMetrics graph_metrics(const Graph& g);

std::vector<int> bfs_distances(const Graph& g, int source);
int eccentricity(const Graph& g, int source);

Bitset ball(const DistanceMatrix& dm, int v, int k);
Bitset ball(const Graph& g, int v, int k); // single BFS, no matrix

// Closed neighborhood N[S].
Bitset spread(const Graph& g, const Bitset& s);

// ---- serialization ----

std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);
std::string graph_to_edgelist(const Graph& g);
Graph graph_from_edgelist(const std::string& text);
std::string graph_to_dot(const Graph& g);

Graph load_graph_file(const std::string& path); // .json or edge list by sniffing
void save_graph_file(const Graph& g, const std::string& path, const std::string& format);

} // namespace kvis
