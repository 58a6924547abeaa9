#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "kvis/game.hpp"
#include "kvis/graph.hpp"

namespace kvis {

struct RootedTree {
    Graph g;
    int root = 0;
    std::vector<int> parent;                // -1 at root
    std::vector<int> depth;
    std::vector<std::vector<int>> children; // sorted by id

    static RootedTree rooted_at_center(Graph g); // lowest-id center
    static RootedTree rooted_at(Graph g, int root);

    int height() const;
    bool in_subtree(int v, int s) const;    // v a descendant of s (inclusive)
    std::vector<int> leaves_dfs() const;    // children visited in id order
    std::vector<int> path_from_root(int v) const;
    std::vector<int> subtree_vertices(int s) const;
    // child-index word per the recursive labeling (root = "e")
    std::string word_label(int v) const;
};

// Two cops, k = rad(T): one pins the current root, the other sweeps its
// children for a strictly smaller distance, then both descend.
std::unique_ptr<Strategy> tree_radius_strategy(const RootedTree& t, int k);

// ceil((rad+k)/k^2)+1 cops, k >= 1: rotating checkpoint probes along
// root-to-leaf paths in depth-first order, a dedicated cop alternating the
// root and path junctions, with a root/child disambiguation round on
// detection and recursion into the identified subtree.
std::unique_ptr<Strategy> tree_path_guard_strategy(const RootedTree& t, int k, int cops);
int tree_path_guard_budget(const RootedTree& t, int k);

// rad(T)+1 cops, k = 0: occupy root-to-leaf paths in depth-first order.
std::unique_ptr<Strategy> tree_zero_visibility_strategy(const RootedTree& t, int cops);

// Single proximity cop sweeping an explicitly ordered path of vertices.
std::unique_ptr<Strategy> path_sweep_prox_strategy(const Graph& g, std::vector<int> path_order,
                                                   int k);

// Builds the winning proximity strategy for one component of T - root; the
// component is handed over as its vertex path order when it is a path.
using InnerProxFactory =
    std::function<std::unique_ptr<Strategy>(const Graph& g, const std::vector<int>& component_path)>;

// prox budget + 1 cops: a root-pinning cop plus a component sweep, with the
// distance-arithmetic membership test on sighting and recursion into the
// confirmed component.
std::unique_ptr<Strategy> tree_prox_plus_one_strategy(const RootedTree& t, int k,
                                                      const InnerProxFactory& inner, int cops);
InnerProxFactory default_inner_prox_factory(int k);

// One cop, k >= 2, on a spider: leg-by-leg sweep from each leaf inward,
// alternating with hub probes; hub sightings are chased one step beyond the
// sighted distance on an unswept leg.
std::unique_ptr<Strategy> spider_strategy(const Graph& g, int k);

struct SubdivisionRecursion {
    // keyed by the child endpoint of each base-tree edge (parent -> child)
    std::map<int, long long> x; // subdivision counts
    std::map<int, long long> y; // rounds to clear the subdivided edge path
    std::map<int, long long> t; // rounds to clear the descendant subtree
};

struct ProxOneConstruction {
    SubdivisionPlan plan;
    SubdivisionRecursion recursion;
    Graph subdivided;
    std::vector<int> schedule; // single-cop probe sequence on `subdivided`
};

// Subdivide so one proximity cop clears the tree, together with the explicit
// schedule realizing it.
ProxOneConstruction subdivide_for_prox1(const RootedTree& t, int k);

// Oblivious strategy replaying a fixed probe sequence (proximity mode).
std::unique_ptr<Strategy> schedule_strategy(std::vector<int> probes_per_round, int cops,
                                            std::string name);

struct ZetaOneConstruction {
    SubdivisionPlan plan; // relative to the input tree
    long long harmonic_threshold_n = 0;
    long long pre_subdivision_count = 0;
    Graph subdivided;
};

// k >= 2: uniform pre-subdivision by ceil(N*k/2)+k+1 with H_N >= 4*maxdeg/k,
// then the proximity construction on top.
ZetaOneConstruction subdivide_for_zeta1(const Graph& tree, int k);

long long harmonic_threshold(double target); // least N with H_N >= target

struct LowerBoundTreeResult {
    Graph graph;
    long long bound_num = 0, bound_den = 1; // strict lower bound on zeta_k
    bool applicable = false;                // h >= 3 and q >= 4
    int radius_formula = 0;                 // h(2k+1) - (k+1)
    std::string note;
};

// Complete q-ary tree of height h with every edge subdivided 2k+1 times,
// except leaf edges which get k.
LowerBoundTreeResult lower_bound_tree(int h, int q, int k);

std::string recursion_to_json(const SubdivisionRecursion& r);
std::string subdivision_plan_to_json(const SubdivisionPlan& p);

} // namespace kvis
