#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kvis/bitset.hpp"
#include "kvis/graph.hpp"

namespace kvis {

enum class GameMode { localization, proximity };

std::string to_string(GameMode m);
GameMode game_mode_from_string(const std::string& s);

struct GameConfig {
    GameMode mode = GameMode::localization;
    int k = 1;              // visibility radius
    int m = 1;              // cop count
    int round_bound = 1000; // cap for verification
};

// One probe entry: exact distance in [0,k], or kStar beyond the horizon.
constexpr int16_t kStar = -1;
using Signature = std::vector<int16_t>;

struct Observation {
    std::vector<int> probes; // as emitted by the strategy; order is meaningful
    Signature sig;
};
using History = std::vector<Observation>;

// Deterministic cop policy: a pure function of the observation history.
// Implementations reconstruct their internal state by folding over the
// history, which lets the verifier fork branches by replay.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual std::string name() const = 0;
    virtual GameMode mode() const = 0;
    virtual int cop_count() const = 0;
    virtual std::vector<int> next_probes(const History& h) const = 0;
};

Signature signature_of(const DistanceMatrix& dm, int vertex, std::span<const int> probes, int k);

// Partition of S keyed by signature; classes are disjoint and union to S.
std::map<Signature, Bitset> signature_partition(const DistanceMatrix& dm, const Bitset& s,
                                                std::span<const int> probes, int k);

// S minus the union of closed k-balls around the probes; identically the
// all-star class of signature_partition.
Bitset proximity_survivors(const DistanceMatrix& dm, const Bitset& s, std::span<const int> probes,
                           int k);

struct SolveOptions {
    int max_n_override = 0; // 0 = default capacity guard
    bool symmetry = false;  // root-level probe-set dedup under automorphisms
};

struct SolveResult {
    bool cop_win = false;
    long states_explored = 0;
    std::vector<Observation> witness; // optimal-play trace on cop win
};

// Exact knowledge-state solving. Localization: least fixpoint
//   W1(S)    = exists P, |P| <= m : every signature class is a singleton
//   Wt+1(S)  = exists P : every class is a singleton or N[class] in Wt
// with cop win iff V reaches W. Proximity: reachability of the empty
// survivor set under S <- N[S \ N_k[P]]. Unresolved play is a robber win.
SolveResult solve_game(const Graph& g, const GameConfig& cfg, const SolveOptions& opt = {});

// Least m for which the cops win; increments m from 1.
int exact_number(const Graph& g, int k, GameMode mode, const SolveOptions& opt = {});

struct VerificationResult {
    bool captured = false;
    int worst_rounds = 0;
    std::vector<Observation> witness; // losing branch, or the longest one
    long nodes_explored = 0;
};

// Exhaustive adversarial robber against a fixed cop policy. Localization
// forks one branch per non-singleton signature class; proximity is a single
// trajectory since the cops receive no information before winning.
// initial: optional starting candidate set (defaults to V).
VerificationResult verify_strategy(const Graph& g, const GameConfig& cfg, const Strategy& s,
                                   const Bitset* initial = nullptr);

std::string solve_result_to_json(const SolveResult& r, const GameConfig& cfg);
std::string verification_to_json(const VerificationResult& r, const std::string& strategy_name);

// Vertex orbits under Aut(G), or empty when the group is too large to
// enumerate within the cap. Used by the optional symmetry flag.
std::vector<std::vector<int>> automorphisms_bounded(const Graph& g, size_t cap = 20000);

// Knowledge-state step as strategies track it: restrict to the observed
// signature class, then spread by one robber move.
Bitset advance_candidates(const DistanceMatrix& dm, const Graph& g, const Bitset& cand,
                          const Observation& ob, int k);

} // namespace kvis
