#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kvis/graph.hpp"

namespace kvis {

// Delta_k: maximum closed k-ball size over all vertices.
int ball_max(const Graph& g, int k);

// Vertex-isoperimetric parameter at volume s: the minimum open border |N(S)|
// over all vertex sets of size s. Exhaustive with border pruning; exact mode
// is limited to n <= 20. The volume parameter is called s throughout to keep
// it apart from the visibility radius k.
int vertex_isoperimetric_at(const Graph& g, int s);

struct IsoperimetricProfile {
    std::vector<int> table; // table[s-1] = Phi_V(G, s), s = 1..n
    int max = 0;            // Phi_V(G)
    bool closed_form = false;
};

// Full profile (n <= 20), or the closed form Phi_V = side length for labeled
// square grids above that size.
IsoperimetricProfile vertex_isoperimetric(const Graph& g);

// Minimum size of a set within distance j of every other vertex (gamma_j).
// Exact mode limited to n <= 24.
int j_domination(const Graph& g, int j);

struct BoundEntry {
    std::string rule;   // which result produced it
    std::string target; // "zeta" or "prox"
    std::string kind;   // "lower" or "upper"
    int value = 0;
    bool applicable = true;
    std::string reason; // why it does not apply, when it doesn't
};

struct BoundReport {
    int k = 0;
    int delta_k = 0;
    std::optional<IsoperimetricProfile> phi;
    std::optional<int> girth; // nullopt = acyclic
    int radius = 0;
    std::vector<BoundEntry> entries;
};

// Assembles every applicable bound for the graph at visibility k. When the
// exact proximity number is supplied, the sandwich rows relating zeta to
// prox are emitted with concrete values.
BoundReport bound_report(const Graph& g, int k, std::optional<int> exact_prox = std::nullopt);

std::string bound_report_to_json(const BoundReport& r);

} // namespace kvis
