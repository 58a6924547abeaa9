#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kvis/game.hpp"
#include "kvis/graph.hpp"

namespace kvis {

struct Coord {
    int x = 0, y = 0;
    auto operator<=>(const Coord&) const = default;
};

// Centers of the diamond tiling: S = {(i*k + j*(k+1), i*(k+1) - j*k)}.
bool is_center(Coord c, int k);
std::optional<std::pair<long long, long long>> lattice_index(Coord c, int k);

// Closed L1 ball; the whole diamond when unclipped (2k^2+2k+1 points).
std::vector<Coord> lee_sphere(Coord c, int k);
std::vector<Coord> lee_sphere_clipped(Coord c, int k, int xlo, int xhi, int ylo, int yhi);

// The unique tiling center whose diamond covers p.
Coord tile_center_of(Coord p, int k);

// Tile ordering on the width-n strip (columns 1..n): T_0 is centered at the
// origin, consecutive tiles step by (k, k+1) while the successor stays in
// the strip margin y in [1-k, n+k], and wrap to the bottom of the next band
// otherwise.
struct TileSystem {
    int k = 1;
    int n = 1;

    int m() const { return 2 * k * k + 2 * k + 1; }
    bool in_margin(Coord c) const { return c.y >= 1 - k && c.y <= n + k; }
    Coord successor(Coord c) const;
    Coord predecessor(Coord c) const;
    Coord center(long long i) const; // walks from T_0; prefer tile_sequence for ranges
};

std::vector<Coord> tile_sequence(const TileSystem& ts, long long i_lo, long long i_hi);

// Finite coordinate set together with the axis-aligned window inside which
// it is exact. Operations shrink the window by their reach; comparisons are
// made on the common exact region.
class WindowSet {
public:
    WindowSet() = default;
    WindowSet(int strip_n, int xlo, int xhi, int ylo, int yhi);

    static WindowSet on_strip(int n, int xlo, int xhi); // columns fixed to [1, n]
    static WindowSet on_plane(int xlo, int xhi, int ylo, int yhi);

    void insert(Coord c); // ignored outside the window
    bool contains(Coord c) const;
    int size() const { return int(pts_.size()); }
    const std::vector<Coord>& points() const { return pts_; }

    int xlo() const { return xlo_; }
    int xhi() const { return xhi_; }
    int ylo() const { return ylo_; }
    int yhi() const { return yhi_; }
    int strip() const { return strip_; }

    WindowSet spread() const;      // N[.]; x-window shrinks by 1 (y too on the plane)
    WindowSet down(int q) const;   // D^q, a pure translation
    WindowSet set_minus(const WindowSet& o) const;
    WindowSet set_union(const WindowSet& o) const;
    WindowSet border_n() const;    // N[U] \ U
    WindowSet border_d() const;    // D[U] \ U
    WindowSet clip(int xlo, int xhi, int ylo, int yhi) const;

    // equality of the point sets restricted to the intersection of the two
    // exactness windows (throws when the intersection is empty)
    bool equal_on_common(const WindowSet& o) const;
    bool subset_on_common(const WindowSet& o) const;

    void normalize();

private:
    int strip_ = 0; // >0: real column range [1, strip_]
    int xlo_ = 0, xhi_ = -1, ylo_ = 0, yhi_ = -1;
    std::vector<Coord> pts_; // sorted unique
};

// U_p = union of tiles T_i for i >= p, restricted to an x-window of the strip.
WindowSet strip_upper_set(const TileSystem& ts, long long p, int xlo, int xhi);
// Single tile T_p on the strip window.
WindowSet strip_tile(const TileSystem& ts, long long p, int xlo, int xhi);
// Union of tiles over the lattice upper set {(i,j) : j > j', or j = j' and
// i >= i'} on a plane window.
WindowSet plane_upper_set(int k, long long i0, long long j0, int xlo, int xhi, int ylo, int yhi);

// ---- proximity strategy and infection dynamics on the n x n grid ----

class GridProxStrategy {
public:
    GridProxStrategy(int n, int k, int cops);

    int n() const { return n_; }
    int k() const { return k_; }
    int cops() const { return h_; }
    long long initial_shift() const { return q0_; }

    // Probes of 1-based round t: removal vertices (coordinate clamps of the
    // shifted tile centers) of the next `cops` tiles; tiles missing the grid
    // are skipped.
    std::vector<Coord> probes_for_round(long long t) const;

    // Adapter for the finite labeled grid graph.
    std::unique_ptr<Strategy> as_strategy(const Graph& grid) const;

private:
    Coord cached_center(long long i) const;
    int n_, k_, h_;
    TileSystem ts_;
    long long q0_;
    mutable std::vector<Coord> fwd_; // centers for i >= 0
};

int grid_prox_cop_bound(int n, int k); // ceil((n+2k+1) / (2k^2+2k+1))

struct InfectionResult {
    bool cleared = false;
    long long rounds = 0;
    std::vector<long long> trace; // surviving-set size after each probe step
};

using CoordSchedule = std::function<std::vector<Coord>(long long round)>;

// Iterates S <- N[S minus the probed k-balls] from S = everything; flat
// bitset representation, fine up to n in the hundreds.
InfectionResult simulate_infection(int n, int k, const CoordSchedule& schedule,
                                   long long round_bound);
InfectionResult simulate_infection(int n, int k, const GridProxStrategy& strat,
                                   long long round_bound);

// ---- localization endgames ----

// Full two-phase localization strategy on the n x n grid. k = 0 runs the
// diagonal column sweep; k >= 1 plays the proximity schedule until a probe
// returns a finite distance and then switches to the local case analysis
// (vertical pair pushes, diagonal-pair pushes, strip bisection), oriented by
// the grid's dihedral symmetries. All-star classes continue phase 1.
std::unique_ptr<Strategy> grid_endgame_strategy(const Graph& grid, int k, int cops);

// Same endgame entered directly from a first sighting: a probe at `center`
// returned distance d0. The matching initial candidate set for the verifier
// is N[sphere(center, d0)], as produced by endgame_initial_candidates.
std::unique_ptr<Strategy> grid_endgame_strategy_from_sighting(const Graph& grid, int k, int cops,
                                                              Coord center, int d0);
Bitset endgame_initial_candidates(const Graph& grid, int k, Coord center, int d0);

int grid_endgame_cop_bound(int n, int k); // n+1, max(h,3), max(h,2)

// ---- value bracket ----

struct GridBracket {
    int lower = 0;
    int upper = 0;
    std::string formula_note;
};

GridBracket grid_zeta_bracket(int n, int k);

// ---- images ----

void dump_tiling_ppm(int n, int k, const std::string& path);
void dump_infection_ppm(int n, int k, int cops, long long round, const std::string& path);

} // namespace kvis
