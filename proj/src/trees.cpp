#include "kvis/trees.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace kvis {

using nlohmann::json;

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

} // namespace

RootedTree RootedTree::rooted_at(Graph g, int root) {
    if (!is_tree(g)) throw ParameterError("rooted tree requires a tree input");
    if (root < 0 || root >= g.n) throw ParameterError("root out of range");
    RootedTree t;
    t.g = std::move(g);
    t.root = root;
    t.parent.assign(t.g.n, -1);
    t.depth.assign(t.g.n, 0);
    t.children.assign(t.g.n, {});
    std::vector<int> stack{root};
    std::vector<char> seen(t.g.n, 0);
    seen[root] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : t.g.adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                t.parent[v] = u;
                t.depth[v] = t.depth[u] + 1;
                t.children[u].push_back(v);
                stack.push_back(v);
            }
    }
    for (auto& c : t.children) std::sort(c.begin(), c.end());
    return t;
}

RootedTree RootedTree::rooted_at_center(Graph g) {
    auto m = graph_metrics(g);
    return rooted_at(std::move(g), m.center.front());
}

int RootedTree::height() const {
    return *std::max_element(depth.begin(), depth.end());
}

bool RootedTree::in_subtree(int v, int s) const {
    while (v != -1) {
        if (v == s) return true;
        v = parent[v];
    }
    return false;
}

std::vector<int> RootedTree::leaves_dfs() const {
    std::vector<int> out;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (children[u].empty()) {
            out.push_back(u);
            continue;
        }
        for (auto it = children[u].rbegin(); it != children[u].rend(); ++it) stack.push_back(*it);
    }
    return out;
}

std::vector<int> RootedTree::path_from_root(int v) const {
    std::vector<int> p;
    for (int u = v; u != -1; u = parent[u]) p.push_back(u);
    std::reverse(p.begin(), p.end());
    return p;
}

std::vector<int> RootedTree::subtree_vertices(int s) const {
    std::vector<int> out, stack{s};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        out.push_back(u);
        for (int c : children[u]) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string RootedTree::word_label(int v) const {
    if (v == root) return "e";
    std::vector<int> digits;
    for (int u = v; parent[u] != -1; u = parent[u]) {
        const auto& sib = children[parent[u]];
        int idx = int(std::lower_bound(sib.begin(), sib.end(), u) - sib.begin()) + 1;
        digits.push_back(idx);
    }
    std::reverse(digits.begin(), digits.end());
    std::string s;
    for (size_t i = 0; i < digits.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(digits[i]);
    }
    return s;
}

// ---------------------------------------------------------------- radius

namespace {

class TreeRadiusStrategy final : public Strategy {
public:
    explicit TreeRadiusStrategy(RootedTree t) : t_(std::move(t)) {}

    std::string name() const override { return "tree-radius"; }
    GameMode mode() const override { return GameMode::localization; }
    int cop_count() const override { return 2; }

    std::vector<int> next_probes(const History& h) const override {
        State st = initial();
        for (const auto& ob : h) advance(st, ob);
        return probes_for(st);
    }

private:
    struct State {
        int root, parent, idx;
        std::vector<int> kids;
    };

    State initial() const {
        return {t_.root, -1, 0, t_.children[t_.root]};
    }

    std::vector<int> probes_for(const State& st) const {
        if (st.kids.empty()) return {st.root};
        return {st.root, st.kids[size_t(st.idx) % st.kids.size()]};
    }

    void advance(State& st, const Observation& ob) const {
        if (ob.probes.size() < 2) return;
        int d1 = ob.sig[0] == kStar ? INT16_MAX : ob.sig[0];
        int d2 = ob.sig[1] == kStar ? INT16_MAX : ob.sig[1];
        if (d2 < d1) {
            int child = ob.probes[1];
            st.parent = st.root;
            st.root = child;
            st.kids.clear();
            for (int u : t_.g.adj[child])
                if (u != st.parent) st.kids.push_back(u);
            st.idx = 0;
        } else {
            ++st.idx;
        }
    }

    RootedTree t_;
};

} // namespace

std::unique_ptr<Strategy> tree_radius_strategy(const RootedTree& t, int k) {
    auto m = graph_metrics(t.g);
    if (k != m.radius)
        throw ParameterError("tree radius strategy requires k = rad(T) = " +
                             std::to_string(m.radius));
    return std::make_unique<TreeRadiusStrategy>(t);
}

// ------------------------------------------------------ zero visibility

namespace {

class TreeZeroVisStrategy final : public Strategy {
public:
    TreeZeroVisStrategy(const RootedTree& t, int cops) : cops_(cops) {
        for (int leaf : t.leaves_dfs()) paths_.push_back(t.path_from_root(leaf));
    }

    std::string name() const override { return "tree-zero-vis"; }
    GameMode mode() const override { return GameMode::localization; }
    int cop_count() const override { return cops_; }

    std::vector<int> next_probes(const History& h) const override {
        return paths_[h.size() % paths_.size()];
    }

private:
    std::vector<std::vector<int>> paths_;
    int cops_;
};

} // namespace

std::unique_ptr<Strategy> tree_zero_visibility_strategy(const RootedTree& t, int cops) {
    int need = t.height() + 1;
    if (cops < need)
        throw ParameterError("zero-visibility sweep needs rad+1 = " + std::to_string(need) +
                             " cops");
    return std::make_unique<TreeZeroVisStrategy>(t, cops);
}

// ----------------------------------------------------------- path sweep

namespace {

// Probe positions k, 3k, 5k, ... along the path; each probe clears a 2k+1
// window and the window advances faster than the spread regrows.
std::vector<int> sweep_positions(int len, int k) {
    std::vector<int> out;
    int pos = k;
    while (true) {
        int p = std::min(pos, len - 1);
        out.push_back(p);
        if (p + k >= len - 1) break;
        pos += 2 * k;
    }
    return out;
}

class PathSweepProxStrategy final : public Strategy {
public:
    PathSweepProxStrategy(std::vector<int> order, int k) {
        for (int p : sweep_positions(int(order.size()), k)) seq_.push_back(order[p]);
    }

    std::string name() const override { return "path-sweep"; }
    GameMode mode() const override { return GameMode::proximity; }
    int cop_count() const override { return 1; }

    std::vector<int> next_probes(const History& h) const override {
        return {seq_[std::min(h.size(), seq_.size() - 1)]};
    }

    size_t rounds() const { return seq_.size(); }

private:
    std::vector<int> seq_;
};

} // namespace

std::unique_ptr<Strategy> path_sweep_prox_strategy(const Graph& g, std::vector<int> path_order,
                                                   int k) {
    if (path_order.empty()) throw ParameterError("path sweep needs a non-empty path");
    for (int v : path_order)
        if (v < 0 || v >= g.n) throw ParameterError("path sweep vertex out of range");
    if (k < 1) throw ParameterError("path sweep needs k >= 1");
    return std::make_unique<PathSweepProxStrategy>(std::move(path_order), k);
}

// -------------------------------------------------------- prox plus one

InnerProxFactory default_inner_prox_factory(int k) {
    return [k](const Graph& g, const std::vector<int>& component_path) {
        return path_sweep_prox_strategy(g, component_path, k);
    };
}

namespace {

struct Component {
    int head = 0;           // vertex adjacent to the pin
    std::vector<int> path;  // ordered from head outward
};

// Proximity strategies receive no information before winning, so their probe
// sequence can be pulled out by feeding all-star histories. Truncated once
// the probes go stationary.
std::vector<int> extract_oblivious_sequence(const Strategy& s, int max_rounds) {
    History h;
    std::vector<int> seq;
    for (int t = 0; t < max_rounds; ++t) {
        auto p = s.next_probes(h);
        if (p.size() != 1)
            throw ContractError("inner proximity strategy must probe exactly one vertex per round");
        if (!seq.empty() && seq.back() == p[0]) break;
        seq.push_back(p[0]);
        Observation ob;
        ob.probes = p;
        ob.sig.assign(p.size(), kStar);
        h.push_back(std::move(ob));
    }
    return seq;
}

// The component hanging off `head` away from `pin` as an ordered path;
// throws when it is not a path.
Component component_path(const Graph& g, int pin, int head) {
    Component c;
    c.head = head;
    int prev = pin, cur = head;
    while (true) {
        c.path.push_back(cur);
        std::vector<int> nxt;
        for (int u : g.adj[cur])
            if (u != prev) nxt.push_back(u);
        if (nxt.empty()) break;
        if (nxt.size() > 1)
            throw ContractError("default inner proximity strategy supports path components only");
        prev = cur;
        cur = nxt[0];
    }
    return c;
}

class TreeProxPlusOneStrategy final : public Strategy {
public:
    TreeProxPlusOneStrategy(RootedTree t, int k, int cops, InnerProxFactory inner)
        : t_(std::move(t)), k_(k), cops_(cops), dm_(t_.g), inner_(std::move(inner)) {}

    std::string name() const override { return "prox-plus-one"; }
    GameMode mode() const override { return GameMode::localization; }
    int cop_count() const override { return cops_; }

    std::vector<int> next_probes(const History& h) const override {
        State st = initial();
        for (const auto& ob : h) advance(st, ob);
        return probes_for(st);
    }

private:
    struct State {
        int pin, parent;
        std::vector<Component> comps;
        std::vector<std::vector<int>> seqs; // probe sequence per component
        int ci = 0, ti = 0;
    };

    void setup(State& st, int pin, int parent) const {
        st.pin = pin;
        st.parent = parent;
        st.comps.clear();
        st.seqs.clear();
        st.ci = st.ti = 0;
        for (int u : t_.g.adj[pin]) {
            if (u == parent) continue;
            Component c = component_path(t_.g, pin, u);
            auto strat = inner_(t_.g, c.path);
            st.seqs.push_back(extract_oblivious_sequence(*strat, 4 * int(c.path.size()) + 16));
            st.comps.push_back(std::move(c));
        }
    }

    State initial() const {
        State st;
        setup(st, t_.root, -1);
        return st;
    }

    std::vector<int> probes_for(const State& st) const {
        if (st.comps.empty()) return {st.pin};
        return {st.pin, st.seqs[st.ci][st.ti]};
    }

    void step_sweep(State& st) const {
        if (st.comps.empty()) return;
        if (++st.ti >= int(st.seqs[st.ci].size())) {
            st.ti = 0;
            st.ci = (st.ci + 1) % int(st.comps.size());
        }
    }

    void advance(State& st, const Observation& ob) const {
        if (ob.probes.size() < 2) return;
        int dpin = ob.sig[0];
        int din = ob.sig[1];
        if (din == kStar) {
            step_sweep(st);
            return;
        }
        int v = ob.probes[1];
        int d3 = dm_.at(v, st.pin);
        if (dpin != kStar && dpin + d3 == din) {
            // shortest probe-robber path passes the pin: not in this component
            step_sweep(st);
            return;
        }
        // confirmed inside: restart one level down
        int head = st.comps[st.ci].head;
        setup(st, head, st.pin);
    }

    RootedTree t_;
    int k_;
    int cops_;
    DistanceMatrix dm_;
    InnerProxFactory inner_;
};

} // namespace

std::unique_ptr<Strategy> tree_prox_plus_one_strategy(const RootedTree& t, int k,
                                                      const InnerProxFactory& inner, int cops) {
    if (k < 1) throw ParameterError("prox-plus-one strategy needs k >= 1");
    if (cops < 2) throw ParameterError("prox-plus-one strategy needs at least 2 cops");
    // contract: the inner strategy must win the proximity game on every
    // component of T - root (checked on remapped standalone copies)
    for (int u : t.g.adj[t.root]) {
        Component c = component_path(t.g, t.root, u);
        std::vector<Edge> es;
        for (size_t i = 0; i + 1 < c.path.size(); ++i) es.emplace_back(int(i), int(i + 1));
        Graph comp(int(c.path.size()), std::move(es));
        std::vector<int> order(c.path.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
        auto strat = inner(comp, order);
        GameConfig cfg;
        cfg.mode = GameMode::proximity;
        cfg.k = k;
        cfg.m = strat->cop_count();
        cfg.round_bound = 4 * comp.n + 16;
        auto res = verify_strategy(comp, cfg, *strat);
        if (!res.captured)
            throw ContractError("inner proximity strategy fails on a component of T - root");
    }
    return std::make_unique<TreeProxPlusOneStrategy>(t, k, cops, inner);
}

// ---------------------------------------------------------------- spider

namespace {

class SpiderStrategy final : public Strategy {
public:
    SpiderStrategy(Graph g, int k) : g_(std::move(g)), k_(k), dm_(g_) {
        hub_ = -1;
        for (int v = 0; v < g_.n; ++v)
            if (g_.degree(v) >= 3) {
                if (hub_ >= 0) throw ParameterError("spider strategy: more than one branch vertex");
                hub_ = v;
            }
        if (hub_ < 0) throw ParameterError("spider strategy: no vertex of degree >= 3");
        for (int u : g_.adj[hub_]) {
            std::vector<int> leg;
            int prev = hub_, cur = u;
            while (true) {
                leg.push_back(cur);
                int nxt = -1;
                for (int w : g_.adj[cur])
                    if (w != prev) {
                        if (nxt >= 0) throw ParameterError("spider strategy: input is not a spider");
                        nxt = w;
                    }
                if (nxt < 0) break;
                prev = cur;
                cur = nxt;
            }
            legs_.push_back(std::move(leg));
        }
    }

    std::string name() const override { return "spider"; }
    GameMode mode() const override { return GameMode::localization; }
    int cop_count() const override { return 1; }

    std::vector<int> next_probes(const History& h) const override {
        State st = initial();
        for (const auto& ob : h) advance(st, ob);
        return probes_for(st);
    }

private:
    struct State {
        Bitset cand;
        bool phase_a = true;
        int leg = 0;
        int pos = 0; // sweep position counted from the leaf
        bool hub_turn = false;
        std::vector<char> swept;
        int chase_leg = -1;  // pending chase: probe dist chase_d from hub
        int chase_d = 0;
    };

    // vertex at hub-distance d (>=1) on leg l, clamped to the leaf
    int at_dist(int l, int d) const {
        int L = int(legs_[l].size());
        return legs_[l][std::min(d, L) - 1];
    }

    State initial() const {
        State st;
        st.cand = Bitset::full(g_.n);
        st.swept.assign(legs_.size(), 0);
        return st;
    }

    int first_unswept(const State& st, int except = -1) const {
        for (size_t i = 0; i < st.swept.size(); ++i)
            if (!st.swept[i] && int(i) != except) return int(i);
        return except >= 0 ? except : 0;
    }

    // prefer a leg that actually contains candidates beyond the hub
    int chase_target(const State& st) const {
        int only = -1;
        for (size_t i = 0; i < legs_.size(); ++i) {
            bool has = false;
            for (int v : legs_[i])
                if (st.cand.test(v)) has = true;
            if (has) {
                if (only >= 0) {
                    only = -1;
                    break;
                }
                only = int(i);
            }
        }
        if (only >= 0) return only;
        return first_unswept(st);
    }

    std::vector<int> probes_for(const State& st) const {
        if (st.chase_leg >= 0) return {at_dist(st.chase_leg, st.chase_d)};
        if (st.phase_a) {
            int L = int(legs_[0].size());
            return {legs_[0][std::max(0, L - 1 - st.pos)]};
        }
        if (st.hub_turn) return {hub_};
        int L = int(legs_[st.leg].size());
        return {legs_[st.leg][std::max(0, L - 1 - st.pos)]};
    }

    void next_leg(State& st) const {
        st.swept[st.leg] = 1;
        bool all = true;
        for (char c : st.swept)
            if (!c) all = false;
        if (all) st.swept.assign(legs_.size(), 0); // restart the cycle
        st.leg = first_unswept(st);
        st.pos = 0;
        st.hub_turn = false;
    }

    void enter_phase_b(State& st) const {
        st.phase_a = false;
        st.swept.assign(legs_.size(), 0);
        st.swept[0] = 1;
        st.leg = first_unswept(st);
        st.pos = 0;
        st.hub_turn = false;
    }

    void advance(State& st, const Observation& ob) const {
        bool was_chase = st.chase_leg >= 0;
        bool was_hub = !was_chase && !st.phase_a && st.hub_turn;
        int probe = ob.probes[0];
        int d = ob.sig[0];
        st.cand = advance_candidates(dm_, g_, st.cand, ob, k_);

        if (was_chase) {
            st.chase_leg = -1;
            if (st.phase_a) enter_phase_b(st);
            st.hub_turn = false;
            return;
        }
        if (was_hub) {
            if (d != kStar && d > 0) {
                st.chase_leg = chase_target(st);
                st.chase_d = d + 1;
                return;
            }
            st.hub_turn = false;
            return;
        }
        // branch probe (phase A or phase B)
        int dist_hub = dm_.at(probe, hub_);
        if (d != kStar) {
            int beyond = d - dist_hub; // ring distance if the robber crossed the hub
            if (beyond >= 0) {
                st.chase_leg = chase_target(st);
                st.chase_d = beyond + 1;
            } else {
                // both candidates on this leg; probe one past the leafward one
                st.chase_leg = st.phase_a ? 0 : st.leg;
                st.chase_d = std::min(dist_hub + d + 1, int(legs_[st.chase_leg].size()));
            }
            return;
        }
        if (st.phase_a) {
            if (dist_hub <= k_) {
                enter_phase_b(st);
            } else {
                st.pos += k_;
            }
            return;
        }
        // phase B branch probe, no sighting
        if (dist_hub <= k_) {
            next_leg(st);
            st.hub_turn = true;
            return;
        }
        st.pos += k_ - 1;
        st.hub_turn = true;
    }

    Graph g_;
    int k_;
    DistanceMatrix dm_;
    int hub_;
    std::vector<std::vector<int>> legs_;
};

} // namespace

std::unique_ptr<Strategy> spider_strategy(const Graph& g, int k) {
    if (k < 2) throw ParameterError("spider strategy needs k >= 2");
    return std::make_unique<SpiderStrategy>(g, k);
}

// ------------------------------------------------------------ path guard

int tree_path_guard_budget(const RootedTree& t, int k) {
    int rad = graph_metrics(t.g).radius;
    return int(ceil_div(rad + k, (long long)k * k)) + 1;
}

namespace {

class TreePathGuardStrategy final : public Strategy {
public:
    TreePathGuardStrategy(RootedTree t, int k, int cops)
        : t_(std::move(t)), k_(k), cops_(cops), dm_(t_.g) {}

    std::string name() const override { return "tree-path-guard"; }
    GameMode mode() const override { return GameMode::localization; }
    int cop_count() const override { return cops_; }

    std::vector<int> next_probes(const History& h) const override {
        State st = initial();
        for (const auto& ob : h) advance(st, ob);
        return probes_for(st);
    }

private:
    struct Scope {
        int root = 0, parent = -1;
        std::vector<std::vector<int>> paths;       // root-to-leaf
        std::vector<std::vector<int>> checkpoints; // spacing k + leaf
        std::vector<int> junction;                 // shared vertex with previous path
        Bitset territory;                          // vertices of the scope
    };

    enum Mode { DETECT, DISAMB, PIN };

    struct State {
        Bitset cand;
        Scope scope;
        Mode mode = DETECT;
        int p = 0, t = 0;
        int sub = -1;
    };

    Scope make_scope(int root, int parent) const {
        Scope sc;
        sc.root = root;
        sc.parent = parent;
        sc.territory = Bitset(t_.g.n);
        // DFS by id away from parent
        std::vector<std::vector<int>> paths;
        std::vector<int> cur{root};
        std::function<void(int, int)> rec = [&](int u, int from) {
            sc.territory.set(u);
            std::vector<int> kids;
            for (int w : t_.g.adj[u])
                if (w != from) kids.push_back(w);
            if (kids.empty()) {
                paths.push_back(cur);
                return;
            }
            for (int w : kids) {
                cur.push_back(w);
                rec(w, u);
                cur.pop_back();
            }
        };
        rec(root, parent);
        sc.paths = std::move(paths);
        for (size_t i = 0; i < sc.paths.size(); ++i) {
            const auto& path = sc.paths[i];
            std::vector<int> cps;
            for (size_t j = 0; j < path.size(); j += k_) cps.push_back(path[j]);
            if (cps.back() != path.back()) cps.push_back(path.back());
            sc.checkpoints.push_back(std::move(cps));
            if (i == 0) {
                sc.junction.push_back(root);
            } else {
                const auto& prev = sc.paths[i - 1];
                size_t j = 0;
                while (j < prev.size() && j < path.size() && prev[j] == path[j]) ++j;
                sc.junction.push_back(path[j - 1]);
            }
        }
        return sc;
    }

    State initial() const {
        State st;
        st.cand = Bitset::full(t_.g.n);
        st.scope = make_scope(t_.root, -1);
        return st;
    }

    std::vector<int> probes_for(const State& st) const {
        if (st.mode == DISAMB || st.mode == PIN) return {st.scope.root, st.sub};
        const auto& cps = st.scope.checkpoints[st.p];
        int c = int(cps.size());
        std::vector<int> probes;
        for (int j = 0; j < cops_ - 1; ++j) probes.push_back(cps[(j * k_ + st.t) % c]);
        probes.push_back(st.t % 2 == 0 ? st.scope.root : st.scope.junction[st.p]);
        return probes;
    }

    // subtree of the scope hanging below child c of the scope root
    Bitset child_territory(const State& st, int c) const {
        Bitset b(t_.g.n);
        std::function<void(int, int)> rec = [&](int u, int from) {
            b.set(u);
            for (int w : t_.g.adj[u])
                if (w != from) rec(w, u);
        };
        rec(c, st.scope.root);
        return b;
    }

    void advance(State& st, const Observation& ob) const {
        st.cand = advance_candidates(dm_, t_.g, st.cand, ob, k_);
        if (st.mode == PIN) {
            st.scope = make_scope(st.sub, st.scope.root);
            st.mode = DETECT;
            st.p = st.t = 0;
            st.sub = -1;
            return;
        }
        if (st.mode == DISAMB) {
            if (st.cand.is_subset_of(child_territory(st, st.sub))) {
                st.mode = PIN; // one more root/child round, then descend
            } else {
                st.mode = DETECT;
            }
            return;
        }
        // DETECT: the tracked class confining to one child subtree triggers
        // the scripted disambiguation round on that child
        for (int c : t_.g.adj[st.scope.root]) {
            if (c == st.scope.parent) continue;
            if (st.cand.is_subset_of(child_territory(st, c))) {
                st.mode = DISAMB;
                st.sub = c;
                return;
            }
        }
        bool sighted = false;
        for (int16_t d : ob.sig)
            if (d != kStar) sighted = true;
        if (sighted && st.scope.paths[st.p].size() > 1) {
            st.mode = DISAMB;
            st.sub = st.scope.paths[st.p][1];
            return;
        }
        if (++st.t >= k_) {
            st.t = 0;
            st.p = (st.p + 1) % int(st.scope.paths.size());
        }
    }

    RootedTree t_;
    int k_;
    int cops_;
    DistanceMatrix dm_;
};

} // namespace

std::unique_ptr<Strategy> tree_path_guard_strategy(const RootedTree& t, int k, int cops) {
    if (k < 1) throw ParameterError("path guard strategy needs k >= 1");
    int need = tree_path_guard_budget(t, k);
    if (cops < need)
        throw ParameterError("path guard strategy needs at least " + std::to_string(need) +
                             " cops for this tree");
    return std::make_unique<TreePathGuardStrategy>(t, k, cops);
}

// ------------------------------------------------- subdivision for prox 1

namespace {

class FixedScheduleStrategy final : public Strategy {
public:
    FixedScheduleStrategy(std::vector<int> seq, int cops, std::string name)
        : seq_(std::move(seq)), cops_(cops), name_(std::move(name)) {}

    std::string name() const override { return name_; }
    GameMode mode() const override { return GameMode::proximity; }
    int cop_count() const override { return cops_; }

    std::vector<int> next_probes(const History& h) const override {
        if (seq_.empty()) return {};
        return {seq_[std::min(h.size(), seq_.size() - 1)]};
    }

private:
    std::vector<int> seq_;
    int cops_;
    std::string name_;
};

} // namespace

std::unique_ptr<Strategy> schedule_strategy(std::vector<int> probes_per_round, int cops,
                                            std::string name) {
    return std::make_unique<FixedScheduleStrategy>(std::move(probes_per_round), cops,
                                                   std::move(name));
}

ProxOneConstruction subdivide_for_prox1(const RootedTree& t, int k) {
    if (k < 1) throw ParameterError("prox-1 subdivision needs k >= 1");
    const long long stride = 4LL * k * k + k; // path progress per 2k+1 rounds
    const long long block = 2LL * k + 1;
    const long long y_seed = block * ceil_div(2 + k, stride); // virtual 0th child

    ProxOneConstruction out;
    auto& x = out.recursion.x;
    auto& y = out.recursion.y;
    auto& tm = out.recursion.t;

    std::function<void(int)> process = [&](int u) {
        long long sum_y = y_seed;
        long long max_t = 0;
        for (int c : t.children[u]) {
            x[c] = sum_y + max_t;
            y[c] = block * ceil_div(x[c] + 1 + k, stride);
            process(c);
            sum_y += y[c];
            max_t = std::max(max_t, tm[c]);
        }
        long long total = 0;
        long long yy = sum_y - y_seed;
        for (int c : t.children[u]) total += yy + tm[c];
        tm[u] = total;
    };
    process(t.root);

    out.plan.base = t.g;
    for (auto& [child, cnt] : x) {
        int p = t.parent[child];
        Edge e{std::min(p, child), std::max(p, child)};
        if (cnt > (1LL << 28)) throw CapacityError("subdivision counts too large to materialize");
        out.plan.counts[e] = int(cnt);
    }
    auto sub = subdivide(out.plan);
    out.subdivided = std::move(sub.graph);

    // vertex at distance pos from u along the subdivided parent->child path
    auto path_vertex = [&](int u, int child, long long pos) -> int {
        long long cnt = x[child];
        if (pos <= 0) return u;
        if (pos > cnt) return child;
        Edge e{std::min(u, child), std::max(u, child)};
        const auto& chain = sub.chains.at(e);
        return u < child ? chain[size_t(pos - 1)] : chain[size_t(cnt - pos)];
    };

    if (tm[t.root] > 2'000'000)
        throw CapacityError("clearing schedule too long to materialize");
    std::vector<int>& sched = out.schedule;
    auto emit_clear_paths = [&](int u) {
        const auto& kids = t.children[u];
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
            int c = *it;
            long long reps = y[c] / block;
            for (long long a = 1; a <= reps; ++a) {
                sched.push_back(u);
                for (long long tt = 2; tt <= block; ++tt) {
                    long long pos = (a - 1) * stride + (2 * tt - 2) * k;
                    sched.push_back(path_vertex(u, c, std::min(pos, x[c] + 1)));
                }
            }
        }
    };
    std::function<void(int)> emit_subtree = [&](int u) {
        for (int c : t.children[u]) {
            emit_clear_paths(u);
            emit_subtree(c);
        }
    };
    emit_subtree(t.root);
    if (out.schedule.empty()) out.schedule.push_back(t.root); // single-vertex tree
    return out;
}

// ------------------------------------------------ subdivision for zeta 1

long long harmonic_threshold(double target) {
    long double h = 0;
    long long n = 0;
    while (true) {
        ++n;
        h += 1.0L / n;
        if (h >= (long double)target) return n;
    }
}

ZetaOneConstruction subdivide_for_zeta1(const Graph& tree, int k) {
    if (k < 2) throw ParameterError("zeta-1 subdivision needs k >= 2");
    if (!is_tree(tree)) throw ParameterError("zeta-1 subdivision needs a tree");
    ZetaOneConstruction out;
    int maxdeg = 0;
    for (int v = 0; v < tree.n; ++v) maxdeg = std::max(maxdeg, tree.degree(v));
    out.harmonic_threshold_n = harmonic_threshold(4.0 * maxdeg / k);
    long long nk = out.harmonic_threshold_n * k;
    out.pre_subdivision_count = (nk + 1) / 2 + k + 1;

    SubdivisionPlan pre;
    pre.base = tree;
    for (Edge e : tree.edges) pre.counts[e] = int(out.pre_subdivision_count);
    auto stage1 = subdivide(pre);
    auto rooted = RootedTree::rooted_at_center(stage1.graph);
    auto prox = subdivide_for_prox1(rooted, k);
    out.subdivided = prox.subdivided;

    out.plan.base = tree;
    for (Edge e : tree.edges) {
        // total internal vertices on the replacement path: the pre-chain plus
        // everything the second stage inserted on its segments
        long long total = out.pre_subdivision_count;
        std::vector<int> seq{e.first};
        for (int v : stage1.chains.at(e)) seq.push_back(v);
        seq.push_back(e.second);
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            Edge sube{std::min(seq[i], seq[i + 1]), std::max(seq[i], seq[i + 1])};
            auto it = prox.plan.counts.find(sube);
            if (it != prox.plan.counts.end()) total += it->second;
        }
        out.plan.counts[e] = int(total);
    }
    return out;
}

// ------------------------------------------------------ lower bound tree

LowerBoundTreeResult lower_bound_tree(int h, int q, int k) {
    if (h < 1 || q < 1 || k < 0) throw ParameterError("lower bound tree needs h,q >= 1 and k >= 0");
    Graph base = make_complete_qary_tree(h, q);
    SubdivisionPlan plan;
    plan.base = base;
    for (Edge e : base.edges) {
        bool leaf_edge = base.degree(e.first) == 1 || base.degree(e.second) == 1;
        plan.counts[e] = leaf_edge ? k : 2 * k + 1;
    }
    LowerBoundTreeResult out;
    out.graph = subdivide(plan).graph;
    long long num = 3LL * (h - 2), den = 160LL * (2 * k + 1);
    long long g = std::gcd(std::max(num, 0LL), den);
    if (g > 0) {
        num /= g;
        den /= g;
    }
    out.bound_num = num;
    out.bound_den = den;
    out.applicable = h >= 3 && q >= 4;
    out.radius_formula = h * (2 * k + 1) - (k + 1);
    out.note = "height read as h*(2k+1)-(k+1); the bound is strict and only claimed for h >= 3, "
               "q >= 4";
    return out;
}

std::string recursion_to_json(const SubdivisionRecursion& r) {
    json j;
    json jx = json::object(), jy = json::object(), jt = json::object();
    for (auto& [v, val] : r.x) jx[std::to_string(v)] = val;
    for (auto& [v, val] : r.y) jy[std::to_string(v)] = val;
    for (auto& [v, val] : r.t) jt[std::to_string(v)] = val;
    j["x"] = jx;
    j["y"] = jy;
    j["t"] = jt;
    return j.dump();
}

std::string subdivision_plan_to_json(const SubdivisionPlan& p) {
    json j;
    j["base"] = json::parse(graph_to_json(p.base));
    json counts = json::array();
    for (auto& [e, c] : p.counts) counts.push_back({e.first, e.second, c});
    j["counts"] = std::move(counts);
    return j.dump();
}

} // namespace kvis
