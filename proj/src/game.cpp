#include "kvis/game.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace kvis {

using nlohmann::json;

std::string to_string(GameMode m) {
    return m == GameMode::localization ? "localization" : "proximity";
}

GameMode game_mode_from_string(const std::string& s) {
    if (s == "localization" || s == "loc") return GameMode::localization;
    if (s == "proximity" || s == "prox") return GameMode::proximity;
    throw ParameterError("unknown game mode: " + s);
}

Signature signature_of(const DistanceMatrix& dm, int vertex, std::span<const int> probes, int k) {
    Signature sig(probes.size());
    for (size_t i = 0; i < probes.size(); ++i) {
        int d = dm.at(probes[i], vertex);
        sig[i] = d <= k ? int16_t(d) : kStar;
    }
    return sig;
}

std::map<Signature, Bitset> signature_partition(const DistanceMatrix& dm, const Bitset& s,
                                                std::span<const int> probes, int k) {
    if (probes.empty()) throw ParameterError("probe set must be non-empty");
    if (s.none()) throw ParameterError("candidate set must be non-empty");
    std::map<Signature, Bitset> classes;
    s.for_each([&](int v) {
        Signature sig = signature_of(dm, v, probes, k);
        auto it = classes.find(sig);
        if (it == classes.end()) it = classes.emplace(std::move(sig), Bitset(s.universe())).first;
        it->second.set(v);
    });
    return classes;
}

Bitset proximity_survivors(const DistanceMatrix& dm, const Bitset& s, std::span<const int> probes,
                           int k) {
    Bitset out = s;
    out.for_each([&](int v) {
        for (int p : probes)
            if (dm.at(p, v) <= k) {
                out.reset(v);
                return;
            }
    });
    return out;
}

namespace {

// All probe sets of size 1..min(m,n) in lexicographic order. Duplicate
// probes carry no information, so only sets are enumerated.
std::vector<std::vector<int>> enumerate_probe_sets(int n, int m) {
    std::vector<std::vector<int>> out;
    int cap = std::min(m, n);
    for (int s = 1; s <= cap; ++s) {
        std::vector<int> c(s);
        for (int i = 0; i < s; ++i) c[i] = i;
        while (true) {
            out.push_back(c);
            int i = s - 1;
            while (i >= 0 && c[i] == n - s + i) --i;
            if (i < 0) break;
            ++c[i];
            for (int j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
        }
    }
    return out;
}

int capacity_limit(GameMode mode) {
    return mode == GameMode::localization ? 18 : 24;
}

void check_capacity(const Graph& g, const GameConfig& cfg, const SolveOptions& opt) {
    int limit = opt.max_n_override > 0 ? opt.max_n_override : capacity_limit(cfg.mode);
    if (g.n > limit)
        throw CapacityError("exact " + to_string(cfg.mode) + " solving is limited to n <= " +
                            std::to_string(limit) + " (got n = " + std::to_string(g.n) +
                            "); raise the limit explicitly to override");
}

std::vector<Bitset> closed_neighborhoods(const Graph& g) {
    std::vector<Bitset> nb(g.n, Bitset(g.n));
    for (int v = 0; v < g.n; ++v) {
        nb[v].set(v);
        for (int u : g.adj[v]) nb[v].set(u);
    }
    return nb;
}

Bitset spread_with(const std::vector<Bitset>& nb, const Bitset& s) {
    Bitset out = s;
    s.for_each([&](int v) { out |= nb[v]; });
    return out;
}

// Dedupe probe sets by their orbit under known automorphisms. Sound for the
// initial all-vertices state only, which is where it is applied.
std::vector<std::vector<int>> dedupe_by_orbit(const std::vector<std::vector<int>>& sets,
                                              const std::vector<std::vector<int>>& autos) {
    if (autos.size() <= 1) return sets;
    std::set<std::vector<int>> canon_seen;
    std::vector<std::vector<int>> out;
    for (const auto& p : sets) {
        std::vector<int> best = p;
        std::vector<int> img(p.size());
        for (const auto& a : autos) {
            for (size_t i = 0; i < p.size(); ++i) img[i] = a[p[i]];
            std::sort(img.begin(), img.end());
            if (img < best) best = img;
        }
        if (canon_seen.insert(best).second) out.push_back(p);
    }
    return out;
}

struct LocalizationSolver {
    const Graph& g;
    const GameConfig& cfg;
    const SolveOptions& opt;
    DistanceMatrix dm;
    std::vector<Bitset> nb;
    std::vector<std::vector<int>> probe_sets;

    std::unordered_map<Bitset, int, BitsetHash> id_of;
    std::vector<Bitset> states;
    // Per state: move list in probe-set order. succ ids per move, flattened.
    std::vector<std::vector<std::vector<int>>> succs;
    std::vector<int> win_level; // 0 = not (yet) winning

    explicit LocalizationSolver(const Graph& g_, const GameConfig& cfg_, const SolveOptions& opt_)
        : g(g_), cfg(cfg_), opt(opt_), dm(g_), nb(closed_neighborhoods(g_)),
          probe_sets(enumerate_probe_sets(g_.n, cfg_.m)) {}

    int intern(const Bitset& s) {
        auto it = id_of.find(s);
        if (it != id_of.end()) return it->second;
        int id = int(states.size());
        id_of.emplace(s, id);
        states.push_back(s);
        return id;
    }

    SolveResult run() {
        SolveResult res;
        Bitset start = Bitset::full(g.n);
        if (start.count() <= 1) {
            res.cop_win = true;
            res.states_explored = 1;
            return res;
        }
        std::vector<std::vector<int>> root_sets = probe_sets;
        if (opt.symmetry) root_sets = dedupe_by_orbit(probe_sets, automorphisms_bounded(g));

        int root = intern(start);
        // forward closure
        for (int id = 0; id < int(states.size()); ++id) {
            const Bitset s = states[id];
            const auto& sets = id == root ? root_sets : probe_sets;
            std::vector<std::vector<int>> moves;
            moves.reserve(sets.size());
            for (const auto& p : sets) {
                auto classes = signature_partition(dm, s, p, cfg.k);
                std::vector<int> children;
                for (auto& [sig, cls] : classes) {
                    if (cls.count() <= 1) continue;
                    children.push_back(intern(spread_with(nb, cls)));
                }
                moves.push_back(std::move(children));
            }
            succs.push_back(std::move(moves));
        }
        // least fixpoint by level iteration; level also orders the witness
        win_level.assign(states.size(), 0);
        for (int level = 1;; ++level) {
            bool changed = false;
            for (int id = 0; id < int(states.size()); ++id) {
                if (win_level[id]) continue;
                for (const auto& children : succs[id]) {
                    bool ok = true;
                    for (int c : children)
                        if (!win_level[c] || win_level[c] >= level) {
                            ok = false;
                            break;
                        }
                    if (ok) {
                        win_level[id] = level;
                        changed = true;
                        break;
                    }
                }
            }
            if (!changed) break;
        }
        res.states_explored = long(states.size());
        res.cop_win = win_level[root] > 0;
        if (res.cop_win) res.witness = extract_witness(root, root_sets);
        return res;
    }

    // Optimal-play trace: lexicographically first winning probe set at each
    // state, robber always fleeing into the slowest class.
    std::vector<Observation> extract_witness(int root, const std::vector<std::vector<int>>& root_sets) {
        std::vector<Observation> trace;
        int id = root;
        while (true) {
            const auto& sets = id == root ? root_sets : probe_sets;
            int chosen = -1;
            for (size_t mi = 0; mi < succs[id].size(); ++mi) {
                bool ok = true;
                for (int c : succs[id][mi])
                    if (!win_level[c] || win_level[c] >= win_level[id]) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    chosen = int(mi);
                    break;
                }
            }
            if (chosen < 0) break; // defensive; cannot happen for winning states
            const auto& p = sets[chosen];
            auto classes = signature_partition(dm, states[id], p, cfg.k);
            // robber picks the non-singleton class with the deepest win level
            const Bitset* worst = nullptr;
            const Signature* worst_sig = nullptr;
            int worst_level = -1;
            for (auto& [sig, cls] : classes) {
                if (cls.count() <= 1) continue;
                int child = id_of.at(spread_with(nb, cls));
                if (win_level[child] > worst_level) {
                    worst_level = win_level[child];
                    worst = &cls;
                    worst_sig = &sig;
                }
            }
            if (!worst) {
                // all classes singletons: record the final probe and stop
                Observation ob;
                ob.probes = p;
                ob.sig.assign(p.size(), kStar);
                trace.push_back(std::move(ob));
                break;
            }
            Observation ob;
            ob.probes = p;
            ob.sig = *worst_sig;
            trace.push_back(std::move(ob));
            id = id_of.at(spread_with(nb, *worst));
        }
        return trace;
    }
};

struct ProximitySolver {
    const Graph& g;
    const GameConfig& cfg;
    DistanceMatrix dm;
    std::vector<Bitset> nb;
    std::vector<Bitset> ball_k;
    std::vector<std::vector<int>> probe_sets;
    std::unordered_set<Bitset, BitsetHash> visited;
    long explored = 0;
    std::vector<std::vector<int>> path; // probe sequence of the found clearing

    ProximitySolver(const Graph& g_, const GameConfig& cfg_)
        : g(g_), cfg(cfg_), dm(g_), nb(closed_neighborhoods(g_)),
          probe_sets(enumerate_probe_sets(g_.n, cfg_.m)) {
        ball_k.reserve(g.n);
        for (int v = 0; v < g.n; ++v) ball_k.push_back(ball(dm, v, cfg.k));
    }

    Bitset covered(const std::vector<int>& probes) const {
        Bitset c(g.n);
        for (int p : probes) c |= ball_k[p];
        return c;
    }

    bool dfs(const Bitset& s) {
        if (s.none()) return true;
        if (!visited.insert(s).second) return false;
        ++explored;
        // try moves in order of how small they leave the survivor set; this
        // finds clearings quickly and stays deterministic
        std::vector<std::pair<int, int>> order; // (survivor count, probe set idx)
        std::vector<Bitset> nexts(probe_sets.size());
        for (size_t i = 0; i < probe_sets.size(); ++i) {
            Bitset surv = s;
            surv.minus(covered(probe_sets[i]));
            order.emplace_back(surv.count(), int(i));
            nexts[i] = std::move(surv);
        }
        std::stable_sort(order.begin(), order.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto [cnt, i] : order) {
            if (cnt == 0) {
                path.push_back(probe_sets[i]);
                return true;
            }
            if (dfs(spread_with(nb, nexts[i]))) {
                path.push_back(probe_sets[i]);
                return true;
            }
        }
        return false;
    }

    SolveResult run() {
        SolveResult res;
        res.cop_win = dfs(Bitset::full(g.n));
        res.states_explored = explored;
        if (res.cop_win) {
            std::reverse(path.begin(), path.end());
            for (auto& p : path) {
                Observation ob;
                ob.probes = p;
                ob.sig.assign(p.size(), kStar);
                res.witness.push_back(std::move(ob));
            }
        }
        return res;
    }
};

} // namespace

SolveResult solve_game(const Graph& g, const GameConfig& cfg, const SolveOptions& opt) {
    if (cfg.m < 1) throw ParameterError("cop count must be >= 1");
    if (cfg.k < 0) throw ParameterError("visibility radius must be >= 0");
    if (!is_connected(g)) throw StructuralError("graph is disconnected");
    check_capacity(g, cfg, opt);
    if (cfg.mode == GameMode::localization) return LocalizationSolver(g, cfg, opt).run();
    return ProximitySolver(g, cfg).run();
}

int exact_number(const Graph& g, int k, GameMode mode, const SolveOptions& opt) {
    GameConfig cfg;
    cfg.mode = mode;
    cfg.k = k;
    int cap = mode == GameMode::localization ? std::max(1, g.n - 1) : g.n;
    for (int m = 1; m <= cap; ++m) {
        cfg.m = m;
        if (solve_game(g, cfg, opt).cop_win) return m;
    }
    throw StructuralError("no cop count up to " + std::to_string(cap) + " wins; this cannot happen");
}

namespace {

struct Verifier {
    const Graph& g;
    const GameConfig& cfg;
    const Strategy& strat;
    DistanceMatrix dm;
    std::vector<Bitset> nb;

    VerificationResult res;
    History history;
    std::vector<Observation> worst_trace; // first losing branch, else deepest
    int worst_depth_seen = -1;
    bool failed = false;

    Verifier(const Graph& g_, const GameConfig& cfg_, const Strategy& s)
        : g(g_), cfg(cfg_), strat(s), dm(g_), nb(closed_neighborhoods(g_)) {}

    std::vector<int> probes_checked() {
        auto p = strat.next_probes(history);
        auto p2 = strat.next_probes(history);
        if (p != p2)
            throw ContractError("strategy is nondeterministic: replaying the same history "
                                "produced different probes");
        std::vector<int> uniq = p;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        if (int(uniq.size()) > cfg.m)
            throw ContractError("strategy probed " + std::to_string(uniq.size()) +
                                " distinct vertices with only " + std::to_string(cfg.m) + " cops");
        for (int v : p)
            if (v < 0 || v >= g.n) throw ContractError("strategy probed an invalid vertex id");
        return p;
    }

    void note_leaf(int depth) {
        if (depth > worst_depth_seen && !failed) {
            worst_depth_seen = depth;
            worst_trace = history;
        }
    }

    // depth = cop moves already made
    int explore(const Bitset& s, int depth) {
        ++res.nodes_explored;
        if (s.count() <= 1) {
            note_leaf(depth);
            return depth;
        }
        if (depth >= cfg.round_bound) {
            if (!failed) {
                failed = true;
                worst_trace = history;
            }
            return depth;
        }
        auto probes = probes_checked();
        int worst = depth;
        if (probes.empty()) {
            // no information: single class, pure spread
            history.push_back({probes, {}});
            worst = explore(spread_with(nb, s), depth + 1);
            history.pop_back();
            return worst;
        }
        auto classes = signature_partition(dm, s, probes, cfg.k);
        for (auto& [sig, cls] : classes) {
            history.push_back({probes, sig});
            if (cls.count() <= 1) {
                note_leaf(depth + 1);
                worst = std::max(worst, depth + 1);
            } else {
                worst = std::max(worst, explore(spread_with(nb, cls), depth + 1));
            }
            history.pop_back();
        }
        return worst;
    }

    VerificationResult run(const Bitset* initial) {
        if (strat.mode() != cfg.mode)
            throw ContractError("strategy is for the " + to_string(strat.mode()) +
                                " game, config says " + to_string(cfg.mode));
        Bitset start = initial ? *initial : Bitset::full(g.n);
        if (cfg.mode == GameMode::localization) {
            int worst = explore(start, 0);
            res.captured = !failed;
            res.worst_rounds = worst;
            res.witness = worst_trace;
            return res;
        }
        // proximity: one trajectory, no information flow
        Bitset s = start;
        std::vector<Observation> trace;
        for (int t = 0; t < cfg.round_bound; ++t) {
            if (s.none()) {
                res.captured = true;
                res.worst_rounds = t;
                res.witness = std::move(trace);
                return res;
            }
            auto probes = probes_checked();
            Bitset surv = probes.empty() ? s : proximity_survivors(dm, s, probes, cfg.k);
            Observation ob;
            ob.probes = probes;
            ob.sig.assign(probes.size(), kStar);
            trace.push_back(ob);
            history.push_back(std::move(ob));
            ++res.nodes_explored;
            if (surv.none()) {
                res.captured = true;
                res.worst_rounds = t + 1;
                res.witness = std::move(trace);
                return res;
            }
            s = spread_with(nb, surv);
        }
        res.captured = false;
        res.worst_rounds = cfg.round_bound;
        res.witness = std::move(trace);
        return res;
    }
};

} // namespace

VerificationResult verify_strategy(const Graph& g, const GameConfig& cfg, const Strategy& s,
                                   const Bitset* initial) {
    if (cfg.round_bound < 1) throw ParameterError("round bound must be >= 1");
    Verifier v(g, cfg, s);
    return v.run(initial);
}

namespace {

json signature_to_json(const Signature& sig) {
    json a = json::array();
    for (int16_t d : sig) {
        if (d == kStar)
            a.push_back("*");
        else
            a.push_back(int(d));
    }
    return a;
}

json observations_to_json(const std::vector<Observation>& obs) {
    json a = json::array();
    for (const auto& ob : obs) a.push_back({{"probes", ob.probes}, {"signature", signature_to_json(ob.sig)}});
    return a;
}

} // namespace

std::string solve_result_to_json(const SolveResult& r, const GameConfig& cfg) {
    json j;
    j["game"] = to_string(cfg.mode);
    j["k"] = cfg.k;
    j["m"] = cfg.m;
    j["cop_win"] = r.cop_win;
    j["states_explored"] = r.states_explored;
    j["witness"] = observations_to_json(r.witness);
    return j.dump();
}

std::string verification_to_json(const VerificationResult& r, const std::string& strategy_name) {
    json j;
    j["strategy"] = strategy_name;
    j["captured"] = r.captured;
    j["worst_rounds"] = r.worst_rounds;
    j["nodes_explored"] = r.nodes_explored;
    j["witness"] = observations_to_json(r.witness);
    return j.dump();
}

Bitset advance_candidates(const DistanceMatrix& dm, const Graph& g, const Bitset& cand,
                          const Observation& ob, int k) {
    Bitset cls = cand;
    if (!ob.probes.empty()) {
        cls = Bitset(cand.universe());
        cand.for_each([&](int v) {
            if (signature_of(dm, v, ob.probes, k) == ob.sig) cls.set(v);
        });
    }
    return spread(g, cls);
}

std::vector<std::vector<int>> automorphisms_bounded(const Graph& g, size_t cap) {
    // invariant: sorted multiset of BFS distance profiles
    DistanceMatrix dm(g);
    std::vector<std::vector<int>> profile(g.n);
    for (int v = 0; v < g.n; ++v) {
        std::vector<int> p(g.n);
        for (int u = 0; u < g.n; ++u) p[u] = dm.at(v, u);
        std::sort(p.begin(), p.end());
        profile[v] = std::move(p);
    }
    std::vector<std::vector<int>> result;
    std::vector<int> perm(g.n, -1);
    std::vector<char> used(g.n, 0);
    bool overflow = false;

    std::function<void(int)> rec = [&](int v) {
        if (overflow) return;
        if (v == g.n) {
            result.push_back(perm);
            if (result.size() > cap) overflow = true;
            return;
        }
        for (int img = 0; img < g.n && !overflow; ++img) {
            if (used[img]) continue;
            bool ok = profile[v] == profile[img];
            for (int u = 0; ok && u < v; ++u)
                if (dm.at(v, u) != dm.at(img, perm[u])) ok = false;
            if (!ok) continue;
            used[img] = 1;
            perm[v] = img;
            rec(v + 1);
            perm[v] = -1;
            used[img] = 0;
        }
    };
    rec(0);
    if (overflow) return {};
    return result;
}

} // namespace kvis
