#include "kvis/bounds.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"

namespace kvis {

using nlohmann::json;

int ball_max(const Graph& g, int k) {
    if (k < 0) throw ParameterError("k must be >= 0");
    int best = 0;
    for (int v = 0; v < g.n; ++v) best = std::max(best, ball(g, v, k).count());
    return best;
}

namespace {

constexpr int kIsoExactLimit = 20;
constexpr int kDomExactLimit = 24;

// Is g a generated square grid (labels covering [1,side]^2 with the grid
// adjacency)? Side is returned when so.
std::optional<int> square_grid_side(const Graph& g) {
    if (!g.labels) return std::nullopt;
    int side = 0;
    while (side * side < g.n) ++side;
    if (side * side != g.n) return std::nullopt;
    const auto& lab = *g.labels;
    for (int v = 0; v < g.n; ++v) {
        auto [x, y] = lab[v];
        if (x < 1 || x > side || y < 1 || y > side) return std::nullopt;
        if (v != (x - 1) * side + (y - 1)) return std::nullopt;
    }
    for (auto [u, v] : g.edges) {
        auto [x1, y1] = lab[u];
        auto [x2, y2] = lab[v];
        if (std::abs(x1 - x2) + std::abs(y1 - y2) != 1) return std::nullopt;
    }
    if (int(g.edges.size()) != 2 * side * (side - 1)) return std::nullopt;
    return side;
}

// Open border |N(S)| for the current set, maintained incrementally during
// the subset enumeration.
struct BorderCounter {
    const Graph& g;
    std::vector<char> in_set;
    std::vector<int> cover; // for v not in set: number of set-neighbors
    int border = 0;

    explicit BorderCounter(const Graph& g_) : g(g_), in_set(g_.n, 0), cover(g_.n, 0) {}

    void add(int v) {
        in_set[v] = 1;
        if (cover[v] > 0) --border; // v was a border vertex
        for (int u : g.adj[v])
            if (!in_set[u] && cover[u]++ == 0) ++border;
    }
    void remove(int v) {
        in_set[v] = 0;
        for (int u : g.adj[v])
            if (!in_set[u] && --cover[u] == 0) --border;
        if (cover[v] > 0) ++border;
    }
};

int iso_exact(const Graph& g, int s) {
    BorderCounter bc(g);
    int best = g.n + 1;
    // enumerate s-subsets in colex-ish DFS; prune when the border already
    // meets the best found
    std::function<void(int, int)> rec = [&](int next, int remaining) {
        if (remaining == 0) {
            best = std::min(best, bc.border);
            return;
        }
        if (bc.border >= best) return;
        for (int v = next; v <= g.n - remaining; ++v) {
            bc.add(v);
            rec(v + 1, remaining - 1);
            bc.remove(v);
        }
    };
    rec(0, s);
    return best;
}

} // namespace

int vertex_isoperimetric_at(const Graph& g, int s) {
    if (s < 0 || s > g.n) throw ParameterError("set size out of range");
    if (s == 0 || s == g.n) return 0;
    if (g.n > kIsoExactLimit)
        throw CapacityError("exact isoperimetric enumeration is limited to n <= " +
                            std::to_string(kIsoExactLimit));
    return iso_exact(g, s);
}

IsoperimetricProfile vertex_isoperimetric(const Graph& g) {
    IsoperimetricProfile out;
    if (g.n <= kIsoExactLimit) {
        for (int s = 1; s <= g.n; ++s) out.table.push_back(s == g.n ? 0 : iso_exact(g, s));
        out.max = *std::max_element(out.table.begin(), out.table.end());
        return out;
    }
    if (auto side = square_grid_side(g)) {
        out.max = *side;
        out.closed_form = true;
        return out;
    }
    throw CapacityError("exact isoperimetric enumeration is limited to n <= " +
                        std::to_string(kIsoExactLimit) +
                        " and no closed form is known for this graph");
}

int j_domination(const Graph& g, int j) {
    if (j < 0) throw ParameterError("j must be >= 0");
    if (g.n > kDomExactLimit)
        throw CapacityError("exact domination search is limited to n <= " +
                            std::to_string(kDomExactLimit));
    if (j == 0) return g.n;
    std::vector<Bitset> cover;
    cover.reserve(g.n);
    for (int v = 0; v < g.n; ++v) cover.push_back(ball(g, v, j));

    // greedy upper bound
    Bitset covered(g.n);
    int greedy = 0;
    while (covered.count() < g.n) {
        int best = -1, gain = -1;
        for (int v = 0; v < g.n; ++v) {
            Bitset add = cover[v];
            add.minus(covered);
            int c = add.count();
            if (c > gain) {
                gain = c;
                best = v;
            }
        }
        covered |= cover[best];
        ++greedy;
    }

    // branch and bound set cover over uncovered vertices
    int best = greedy;
    std::function<void(Bitset, int)> rec = [&](Bitset cov, int used) {
        if (used >= best) return;
        if (cov.count() == g.n) {
            best = used;
            return;
        }
        int u = -1; // first uncovered vertex; some chosen ball must contain it
        for (int v = 0; v < g.n; ++v)
            if (!cov.test(v)) {
                u = v;
                break;
            }
        for (int v = 0; v < g.n; ++v) {
            if (!cover[v].test(u)) continue;
            rec(cov | cover[v], used + 1);
        }
    };
    rec(Bitset(g.n), 0);
    return best;
}

BoundReport bound_report(const Graph& g, int k, std::optional<int> exact_prox) {
    if (k < 0) throw ParameterError("k must be >= 0");
    BoundReport r;
    r.k = k;
    r.delta_k = ball_max(g, k);
    auto metrics = graph_metrics(g);
    r.girth = metrics.girth;
    r.radius = metrics.radius;
    bool tree = is_tree(g);

    auto push = [&](std::string rule, std::string target, std::string kind, int value,
                    bool applicable, std::string reason = "") {
        r.entries.push_back({std::move(rule), std::move(target), std::move(kind), value, applicable,
                             std::move(reason)});
    };

    // isoperimetric lower bound: prox (and hence zeta) strictly exceeds
    // Phi_V / Delta_k, so the integer bound is floor(Phi/Delta) + 1
    try {
        r.phi = vertex_isoperimetric(g);
        int lower = r.phi->max / r.delta_k + 1;
        push("isoperimetric", "prox", "lower", lower, true);
        push("isoperimetric", "zeta", "lower", lower, true);
    } catch (const CapacityError& e) {
        push("isoperimetric", "prox", "lower", 0, false, e.what());
    }

    // domination + ball bound: with girth >= 2j+3 and k >= j,
    // zeta_k <= gamma_j + Delta_j; report the best j
    {
        int best = -1, best_j = -1;
        std::string why = "needs girth >= 2j+3 for some j <= k";
        for (int j = 1; j <= k; ++j) {
            if (r.girth && *r.girth < 2 * j + 3) continue;
            int val;
            try {
                val = j_domination(g, j) + ball_max(g, j);
            } catch (const CapacityError& e) {
                why = e.what();
                continue;
            }
            if (best < 0 || val < best) {
                best = val;
                best_j = j;
            }
        }
        if (best >= 0)
            push("domination-girth(j=" + std::to_string(best_j) + ")", "zeta", "upper", best, true);
        else
            push("domination-girth", "zeta", "upper", 0, false, why);
    }

    // proximity sandwich: prox <= zeta <= Delta_k * prox (k >= 1)
    if (k >= 1 && exact_prox) {
        push("proximity-sandwich", "zeta", "lower", *exact_prox, true);
        push("proximity-sandwich", "zeta", "upper", r.delta_k * *exact_prox, true);
    } else if (k >= 1) {
        push("proximity-sandwich", "zeta", "lower", 0, false, "exact proximity number not supplied");
    }

    // tree bounds
    if (tree) {
        if (k >= 1)
            push("tree-checkpoint", "zeta", "upper", (r.radius + k + k * k - 1) / (k * k) + 1, true);
        if (k == 0) push("tree-zero-visibility", "zeta", "upper", r.radius + 1, true);
        if (k == metrics.radius) push("tree-radius-two", "zeta", "upper", 2, true);
        if (exact_prox) push("tree-prox-plus-one", "zeta", "upper", *exact_prox + 1, true);
    }

    // trivial cap from the game definition
    if (g.n >= 2) push("vertex-count", "zeta", "upper", g.n - 1, true);

    return r;
}

std::string bound_report_to_json(const BoundReport& r) {
    json j;
    j["k"] = r.k;
    j["delta_k"] = r.delta_k;
    if (r.phi) {
        j["phi_v"] = {{"max", r.phi->max}, {"closed_form", r.phi->closed_form}};
        if (!r.phi->table.empty()) j["phi_v"]["table"] = r.phi->table;
    }
    j["girth"] = r.girth ? json(*r.girth) : json("inf");
    j["radius"] = r.radius;
    json es = json::array();
    for (const auto& e : r.entries) {
        json je = {{"theorem", e.rule}, {"target", e.target},   {"kind", e.kind},
                   {"value", e.value},  {"applicable", e.applicable}};
        if (!e.reason.empty()) je["reason"] = e.reason;
        es.push_back(std::move(je));
    }
    j["bounds"] = std::move(es);
    return j.dump();
}

} // namespace kvis
