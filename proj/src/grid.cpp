#include "kvis/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

namespace kvis {

// ------------------------------------------------------------ lattice

std::optional<std::pair<long long, long long>> lattice_index(Coord c, int k) {
    long long m = 2LL * k * k + 2 * k + 1;
    long long a = (long long)k * c.x + (long long)(k + 1) * c.y;
    long long b = (long long)(k + 1) * c.x - (long long)k * c.y;
    auto divides = [m](long long v) { return ((v % m) + m) % m == 0; };
    if (!divides(a) || !divides(b)) return std::nullopt;
    return std::make_pair(a / m, b / m);
}

bool is_center(Coord c, int k) {
    if (k < 1) throw ParameterError("centers need k >= 1");
    return lattice_index(c, k).has_value();
}

std::vector<Coord> lee_sphere(Coord c, int k) {
    if (k < 0) throw ParameterError("radius must be >= 0");
    std::vector<Coord> out;
    for (int dx = -k; dx <= k; ++dx) {
        int r = k - std::abs(dx);
        for (int dy = -r; dy <= r; ++dy) out.push_back({c.x + dx, c.y + dy});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Coord> lee_sphere_clipped(Coord c, int k, int xlo, int xhi, int ylo, int yhi) {
    std::vector<Coord> out;
    for (Coord p : lee_sphere(c, k))
        if (p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi) out.push_back(p);
    return out;
}

Coord tile_center_of(Coord p, int k) {
    long long m = 2LL * k * k + 2 * k + 1;
    double ir = (double(k) * p.x + double(k + 1) * p.y) / double(m);
    double jr = (double(k + 1) * p.x - double(k) * p.y) / double(m);
    for (long long i = llround(ir) - 1; i <= llround(ir) + 1; ++i)
        for (long long j = llround(jr) - 1; j <= llround(jr) + 1; ++j) {
            Coord c{int(i * k + j * (k + 1)), int(i * (k + 1) - j * k)};
            if (std::abs(c.x - p.x) + std::abs(c.y - p.y) <= k) return c;
        }
    throw StructuralError("tiling lookup failed; this cannot happen");
}

// --------------------------------------------------------- tile order

Coord TileSystem::successor(Coord c) const {
    Coord nxt{c.x + k, c.y + k + 1};
    if (in_margin(nxt)) return nxt;
    // wrap to the bottom of the next band: one j-step, then alpha i-steps
    // back down while the column stays in the margin
    long long alpha = (long long)(c.y - 1) / (k + 1);
    if (c.y - 1 < 0) alpha = -(((long long)(1 - c.y) + k) / (k + 1)); // floor for negatives
    return {int(c.x + k + 1 - alpha * k), int(c.y - k - alpha * (k + 1))};
}

Coord TileSystem::predecessor(Coord c) const {
    Coord prv{c.x - k, c.y - k - 1};
    if (in_margin(prv)) return prv;
    // c is a band bottom; find the top of the previous band
    for (long long alpha = 0;; ++alpha) {
        Coord p{int(c.x + alpha * k - k - 1), int(c.y + k + alpha * (k + 1))};
        if (!in_margin(p)) break;
        if (successor(p) == c) return p;
    }
    throw StructuralError("tile predecessor not found; this cannot happen");
}

Coord TileSystem::center(long long i) const {
    Coord c{0, 0};
    for (long long s = 0; s < i; ++s) c = successor(c);
    for (long long s = 0; s > i; --s) c = predecessor(c);
    return c;
}

std::vector<Coord> tile_sequence(const TileSystem& ts, long long i_lo, long long i_hi) {
    if (ts.n < 1 || ts.k < 1) throw ParameterError("tile sequence needs n >= 1, k >= 1");
    if (i_lo > i_hi) return {};
    std::vector<Coord> out;
    Coord c = ts.center(i_lo);
    out.push_back(c);
    for (long long i = i_lo; i < i_hi; ++i) {
        c = ts.successor(c);
        out.push_back(c);
    }
    return out;
}

// --------------------------------------------------------- window sets

WindowSet::WindowSet(int strip_n, int xlo, int xhi, int ylo, int yhi)
    : strip_(strip_n), xlo_(xlo), xhi_(xhi), ylo_(ylo), yhi_(yhi) {}

WindowSet WindowSet::on_strip(int n, int xlo, int xhi) {
    if (n < 1) throw ParameterError("strip width must be >= 1");
    return WindowSet(n, xlo, xhi, 1, n);
}

WindowSet WindowSet::on_plane(int xlo, int xhi, int ylo, int yhi) {
    return WindowSet(0, xlo, xhi, ylo, yhi);
}

void WindowSet::insert(Coord c) {
    if (c.x < xlo_ || c.x > xhi_ || c.y < ylo_ || c.y > yhi_) return;
    pts_.push_back(c);
}

void WindowSet::normalize() {
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

bool WindowSet::contains(Coord c) const {
    return std::binary_search(pts_.begin(), pts_.end(), c);
}

WindowSet WindowSet::spread() const {
    WindowSet out = *this;
    out.xlo_ = xlo_ + 1;
    out.xhi_ = xhi_ - 1;
    if (strip_ == 0) {
        out.ylo_ = ylo_ + 1;
        out.yhi_ = yhi_ - 1;
    }
    out.pts_.clear();
    for (Coord c : pts_) {
        for (Coord d : {c, Coord{c.x - 1, c.y}, Coord{c.x + 1, c.y}, Coord{c.x, c.y - 1},
                        Coord{c.x, c.y + 1}}) {
            if (strip_ > 0 && (d.y < 1 || d.y > strip_)) continue;
            out.insert(d);
        }
    }
    out.normalize();
    return out;
}

WindowSet WindowSet::down(int q) const {
    WindowSet out = *this;
    out.xlo_ = xlo_ - q;
    out.xhi_ = xhi_ - q;
    for (Coord& c : out.pts_) c.x -= q;
    return out;
}

WindowSet WindowSet::set_minus(const WindowSet& o) const {
    WindowSet out = *this;
    out.xlo_ = std::max(xlo_, o.xlo_);
    out.xhi_ = std::min(xhi_, o.xhi_);
    out.ylo_ = std::max(ylo_, o.ylo_);
    out.yhi_ = std::min(yhi_, o.yhi_);
    out.pts_.clear();
    for (Coord c : pts_)
        if (!o.contains(c)) out.insert(c);
    out.normalize();
    return out;
}

WindowSet WindowSet::set_union(const WindowSet& o) const {
    WindowSet out = *this;
    out.xlo_ = std::max(xlo_, o.xlo_);
    out.xhi_ = std::min(xhi_, o.xhi_);
    out.ylo_ = std::max(ylo_, o.ylo_);
    out.yhi_ = std::min(yhi_, o.yhi_);
    out.pts_.clear();
    for (Coord c : pts_) out.insert(c);
    for (Coord c : o.points()) out.insert(c);
    out.normalize();
    return out;
}

WindowSet WindowSet::border_n() const { return spread().set_minus(*this); }

WindowSet WindowSet::border_d() const { return down(1).set_minus(*this); }

WindowSet WindowSet::clip(int xlo, int xhi, int ylo, int yhi) const {
    WindowSet out = *this;
    out.xlo_ = std::max(xlo_, xlo);
    out.xhi_ = std::min(xhi_, xhi);
    out.ylo_ = std::max(ylo_, ylo);
    out.yhi_ = std::min(yhi_, yhi);
    out.pts_.clear();
    for (Coord c : pts_) out.insert(c);
    out.normalize();
    return out;
}

bool WindowSet::equal_on_common(const WindowSet& o) const {
    int axlo = std::max(xlo_, o.xlo_), axhi = std::min(xhi_, o.xhi_);
    int aylo = std::max(ylo_, o.ylo_), ayhi = std::min(yhi_, o.yhi_);
    if (axlo > axhi || aylo > ayhi)
        throw ContractError("window comparison outside the exactness region");
    auto filt = [&](const WindowSet& w) {
        std::vector<Coord> v;
        for (Coord c : w.points())
            if (c.x >= axlo && c.x <= axhi && c.y >= aylo && c.y <= ayhi) v.push_back(c);
        return v;
    };
    return filt(*this) == filt(o);
}

bool WindowSet::subset_on_common(const WindowSet& o) const {
    int axlo = std::max(xlo_, o.xlo_), axhi = std::min(xhi_, o.xhi_);
    int aylo = std::max(ylo_, o.ylo_), ayhi = std::min(yhi_, o.yhi_);
    if (axlo > axhi || aylo > ayhi)
        throw ContractError("window comparison outside the exactness region");
    for (Coord c : pts_) {
        if (c.x < axlo || c.x > axhi || c.y < aylo || c.y > ayhi) continue;
        if (!o.contains(c)) return false;
    }
    return true;
}

WindowSet strip_tile(const TileSystem& ts, long long p, int xlo, int xhi) {
    WindowSet out = WindowSet::on_strip(ts.n, xlo, xhi);
    Coord c = ts.center(p);
    for (Coord q : lee_sphere(c, ts.k)) out.insert(q);
    out.normalize();
    return out;
}

WindowSet strip_upper_set(const TileSystem& ts, long long p, int xlo, int xhi) {
    WindowSet out = WindowSet::on_strip(ts.n, xlo, xhi);
    Coord c = ts.center(p);
    // band bottoms can dip well below the previous band's top, so keep
    // walking until a full band's worth of tiles overshoots the window
    int overshoot = 0;
    const int patience = ts.n + 4 * ts.k + 4;
    while (overshoot <= patience) {
        if (c.x - ts.k > xhi)
            ++overshoot;
        else
            overshoot = 0;
        if (c.x + ts.k >= xlo && c.x - ts.k <= xhi)
            for (Coord q : lee_sphere(c, ts.k)) out.insert(q);
        c = ts.successor(c);
    }
    out.normalize();
    return out;
}

WindowSet plane_upper_set(int k, long long i0, long long j0, int xlo, int xhi, int ylo, int yhi) {
    WindowSet out = WindowSet::on_plane(xlo, xhi, ylo, yhi);
    for (int x = xlo - k; x <= xhi + k; ++x)
        for (int y = ylo - k; y <= yhi + k; ++y) {
            auto ij = lattice_index({x, y}, k);
            if (!ij) continue;
            auto [i, j] = *ij;
            if (j > j0 || (j == j0 && i >= i0))
                for (Coord q : lee_sphere({x, y}, k)) out.insert(q);
        }
    out.normalize();
    return out;
}

// ------------------------------------------------------ grid infection

namespace {

class GridSet {
public:
    explicit GridSet(int n) : n_(n), wpr_((n + 63) / 64), w_(size_t(n) * wpr_, 0) {}

    static GridSet full(int n) {
        GridSet s(n);
        for (int r = 0; r < n; ++r)
            for (int wi = 0; wi < s.wpr_; ++wi) {
                int lo = wi * 64;
                int cnt = std::min(64, n - lo);
                if (cnt > 0) s.w_[size_t(r) * s.wpr_ + wi] = cnt == 64 ? ~0ull : ((1ull << cnt) - 1);
            }
        return s;
    }

    long long count() const {
        long long c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }
    bool test(int x, int y) const { // 1-based grid coords
        return (w_[size_t(x - 1) * wpr_ + ((y - 1) >> 6)] >> ((y - 1) & 63)) & 1;
    }

    void clear_range(int row, int c_lo, int c_hi) { // 0-based row, columns
        for (int c = c_lo; c <= c_hi;) {
            int wi = c >> 6, bit = c & 63;
            int span = std::min(63 - bit, c_hi - c);
            uint64_t mask = span == 63 ? ~0ull : (((1ull << (span + 1)) - 1) << bit);
            w_[size_t(row) * wpr_ + wi] &= ~mask;
            c += span + 1;
        }
    }

    void clear_ball(Coord c, int k) {
        for (int dx = -k; dx <= k; ++dx) {
            int r = c.x - 1 + dx;
            if (r < 0 || r >= n_) continue;
            int reach = k - std::abs(dx);
            int lo = std::max(0, c.y - 1 - reach), hi = std::min(n_ - 1, c.y - 1 + reach);
            if (lo <= hi) clear_range(r, lo, hi);
        }
    }

    void spread() {
        std::vector<uint64_t> out(w_.size());
        uint64_t top_mask = (n_ % 64) ? ((1ull << (n_ % 64)) - 1) : ~0ull;
        for (int r = 0; r < n_; ++r) {
            const uint64_t* row = &w_[size_t(r) * wpr_];
            uint64_t* dst = &out[size_t(r) * wpr_];
            // left/right shifts with carry across words
            uint64_t carry = 0;
            for (int wi = 0; wi < wpr_; ++wi) {
                uint64_t v = row[wi];
                dst[wi] = v | (v << 1) | carry;
                carry = v >> 63;
            }
            uint64_t borrow = 0;
            for (int wi = wpr_ - 1; wi >= 0; --wi) {
                uint64_t v = row[wi];
                dst[wi] |= (v >> 1) | borrow;
                borrow = v << 63;
            }
            dst[wpr_ - 1] &= top_mask;
            if (r > 0)
                for (int wi = 0; wi < wpr_; ++wi) dst[wi] |= w_[size_t(r - 1) * wpr_ + wi];
            if (r + 1 < n_)
                for (int wi = 0; wi < wpr_; ++wi) dst[wi] |= w_[size_t(r + 1) * wpr_ + wi];
        }
        w_ = std::move(out);
    }

private:
    int n_, wpr_;
    std::vector<uint64_t> w_;
};

} // namespace

int grid_prox_cop_bound(int n, int k) {
    long long m = 2LL * k * k + 2 * k + 1;
    return int((n + 2LL * k + 1 + m - 1) / m);
}

GridProxStrategy::GridProxStrategy(int n, int k, int cops) : n_(n), k_(k), h_(cops) {
    if (n < 1 || k < 1) throw ParameterError("grid proximity strategy needs n >= 1 and k >= 1");
    if (cops < 1) throw ParameterError("cop count must be >= 1");
    ts_ = TileSystem{k, n};
    q0_ = (long long)k * ((n + k) / (k + 1)) + k;
    fwd_.push_back({0, 0});
}

Coord GridProxStrategy::cached_center(long long i) const {
    while ((long long)fwd_.size() <= i) fwd_.push_back(ts_.successor(fwd_.back()));
    return fwd_[size_t(i)];
}

std::vector<Coord> GridProxStrategy::probes_for_round(long long t) const {
    long long q = q0_ + (t - 1);
    std::vector<Coord> out;
    for (long long i = (t - 1) * h_; i < (t - 1) * h_ + h_; ++i) {
        Coord c = cached_center(i);
        Coord s{int(c.x - q), c.y};
        int gap = std::max({0, 1 - s.x, s.x - n_}) + std::max({0, 1 - s.y, s.y - n_});
        if (gap > k_) continue; // the shifted tile misses the grid entirely
        out.push_back({std::clamp(s.x, 1, n_), std::clamp(s.y, 1, n_)});
    }
    return out;
}

namespace {

void require_square_grid(const Graph& g, int* side_out) {
    if (!g.labels) throw ParameterError("this strategy needs a labeled grid graph");
    int side = 0;
    while (side * side < g.n) ++side;
    if (side * side != g.n) throw ParameterError("grid graph is not square");
    for (int v = 0; v < g.n; ++v) {
        auto [x, y] = (*g.labels)[v];
        if (v != (x - 1) * side + (y - 1)) throw ParameterError("grid labels are not row-major");
    }
    *side_out = side;
}

class GridProxGraphStrategy final : public Strategy {
public:
    GridProxGraphStrategy(const Graph& grid, GridProxStrategy sched) : sched_(std::move(sched)) {
        int side = 0;
        require_square_grid(grid, &side);
        if (side != sched_.n()) throw ParameterError("schedule size does not match the grid");
    }

    std::string name() const override { return "grid-prox"; }
    GameMode mode() const override { return GameMode::proximity; }
    int cop_count() const override { return sched_.cops(); }

    std::vector<int> next_probes(const History& h) const override {
        auto coords = sched_.probes_for_round((long long)h.size() + 1);
        std::vector<int> out;
        for (Coord c : coords) out.push_back((c.x - 1) * sched_.n() + (c.y - 1));
        return out;
    }

private:
    GridProxStrategy sched_;
};

} // namespace

std::unique_ptr<Strategy> GridProxStrategy::as_strategy(const Graph& grid) const {
    return std::make_unique<GridProxGraphStrategy>(grid, *this);
}

InfectionResult simulate_infection(int n, int k, const CoordSchedule& schedule,
                                   long long round_bound) {
    if (n < 1 || k < 0) throw ParameterError("simulation needs n >= 1 and k >= 0");
    InfectionResult res;
    GridSet s = GridSet::full(n);
    for (long long t = 1; t <= round_bound; ++t) {
        for (Coord c : schedule(t)) {
            if (c.x < 1 || c.x > n || c.y < 1 || c.y > n)
                throw ParameterError("schedule probed outside the grid");
            s.clear_ball(c, k);
        }
        long long sz = s.count();
        res.trace.push_back(sz);
        if (sz == 0) {
            res.cleared = true;
            res.rounds = t;
            return res;
        }
        s.spread();
    }
    res.cleared = false;
    res.rounds = round_bound;
    return res;
}

InfectionResult simulate_infection(int n, int k, const GridProxStrategy& strat,
                                   long long round_bound) {
    return simulate_infection(
        n, k, [&](long long t) { return strat.probes_for_round(t); }, round_bound);
}

// -------------------------------------------------- localization endgame

namespace {

// The grid's dihedral symmetries; fwd maps world coordinates into the frame
// a pattern is written in, inv maps pattern coordinates back to the world.
struct Sym {
    int n = 0;
    int idx = 0; // bit 4: transpose first; bit 1: flip x; bit 2: flip y

    Coord fwd(Coord c) const {
        if (idx & 4) std::swap(c.x, c.y);
        if (idx & 1) c.x = n + 1 - c.x;
        if (idx & 2) c.y = n + 1 - c.y;
        return c;
    }
    Coord inv(Coord c) const {
        if (idx & 2) c.y = n + 1 - c.y;
        if (idx & 1) c.x = n + 1 - c.x;
        if (idx & 4) std::swap(c.x, c.y);
        return c;
    }
};

int grid_endgame_required(int n, int k) {
    if (k == 0) return n + 1;
    int h = grid_prox_cop_bound(n, k);
    return std::max(h, k == 1 ? 3 : 2);
}

class GridEndgameStrategy final : public Strategy {
public:
    GridEndgameStrategy(const Graph& grid, int k, int cops,
                        std::optional<std::pair<Coord, int>> sighting)
        : g_(grid), k_(k), cops_(cops), sighting_(sighting) {
        require_square_grid(grid, &n_);
        if (n_ < 2) throw ParameterError("grid endgame needs n >= 2");
        if (k < 0) throw ParameterError("k must be >= 0");
        int need = sighting_ ? std::max(2, k == 1 ? 3 : 2) : grid_endgame_required(n_, k);
        if (cops < need)
            throw ParameterError("grid endgame needs at least " + std::to_string(need) +
                                 " cops here");
        if (sighting_ && k_ == 0)
            throw ParameterError("the zero-visibility sweep has no sighting phase");
        if (k_ >= 1) prox_.emplace(n_, k_, grid_prox_cop_bound(n_, k_));
        dm_ = DistanceMatrix(g_);
    }

    std::string name() const override { return "grid-endgame"; }
    GameMode mode() const override { return GameMode::localization; }
    int cop_count() const override { return cops_; }

    std::vector<int> next_probes(const History& h) const override {
        State st = initial();
        for (const auto& ob : h) advance(st, ob);
        return to_ids(probes_for(st));
    }

private:
    enum Script { NONE, S1, S2 };

    struct State {
        // k = 0 sweep
        int i = 1, j = 1;
        // k >= 1: `pending` is the candidate set the next probes target;
        // `cls` is the class whose one-step spread it is (shape analysis
        // happens on the class, probes aim at its spread)
        Bitset pending;
        Bitset cls;
        bool sighted = false;
        Script script = NONE;
        Coord c{0, 0}; // sighting center
        long long p1 = 1;
    };

    int id_of(Coord c) const { return (c.x - 1) * n_ + (c.y - 1); }
    Coord coord_of(int v) const { return {v / n_ + 1, v % n_ + 1}; }
    bool in_grid(Coord c) const { return c.x >= 1 && c.x <= n_ && c.y >= 1 && c.y <= n_; }
    Coord clampg(Coord c) const { return {std::clamp(c.x, 1, n_), std::clamp(c.y, 1, n_)}; }

    std::vector<int> to_ids(const std::vector<Coord>& cs) const {
        std::vector<int> out;
        for (Coord c : cs) out.push_back(id_of(c));
        return out;
    }

    State initial() const {
        State st;
        if (k_ == 0) return st;
        if (sighting_) {
            st.sighted = true;
            st.script = S1;
            st.c = sighting_->first;
            st.cls = Bitset(g_.n);
            int d0 = sighting_->second;
            for (int v = 0; v < g_.n; ++v) {
                Coord p = coord_of(v);
                if (std::abs(p.x - st.c.x) + std::abs(p.y - st.c.y) == d0) st.cls.set(v);
            }
            st.pending = spread(g_, st.cls);
        } else {
            st.cls = Bitset::full(g_.n);
            st.pending = st.cls; // the robber has not moved before the first probe
        }
        return st;
    }

    // ---- k = 0: the diagonal column sweep ----

    std::vector<Coord> sweep_probes(const State& st) const {
        std::vector<Coord> out;
        int i = st.i, j = st.j;
        if (j > n_) return {{1, 1}};
        if (j + 1 <= n_)
            for (int x = 1; x <= std::min(i, n_); ++x) out.push_back({x, j + 1});
        for (int x = std::min(i, n_); x <= n_; ++x) out.push_back({x, j});
        return out;
    }

    // ---- k >= 1 shape handlers (canonical patterns + dihedral search) ----

    struct Plan {
        bool ok = false;
        std::vector<Coord> probes;
        int score = 0; // lower is better: remaining distance to the killing border
    };

    static Plan plan(std::vector<Coord> probes, int score = 0) { return {true, std::move(probes), score}; }

    // Diagonally adjacent pair, pushed until a border clips the escape pair.
    Plan dp_push(const std::vector<Coord>& pts) const {
        Plan best;
        if (k_ >= 2) {
            // canonical {(a,b),(a+1,b+1)} with probes {(a+1,b-1),(a+2,b+1)};
            // the escape pair drifts toward column n
            for (int si = 0; si < 8; ++si) {
                Sym g{n_, si};
                Coord a = g.fwd(pts[0]), b = g.fwd(pts[1]);
                if (a > b) std::swap(a, b);
                if (!(b.x == a.x + 1 && b.y == a.y + 1)) continue;
                if (a.x + 2 > n_ || a.y - 1 < 1 || a.y + 1 > n_) continue;
                int score = n_ - (a.y + 1);
                if (!best.ok || score < best.score)
                    best = plan({g.inv({a.x + 1, a.y - 1}), g.inv({a.x + 2, a.y + 1})}, score);
            }
            return best;
        }
        // k = 1: canonical {(a,b),(a+1,b-1)} with probes {(a,b),(a+2,b),(a,b-2)};
        // the escape pair drifts toward row 1
        for (int si = 0; si < 8; ++si) {
            Sym g{n_, si};
            Coord a = g.fwd(pts[0]), b = g.fwd(pts[1]);
            if (a > b) std::swap(a, b);
            if (!(b.x == a.x + 1 && b.y == a.y - 1)) continue;
            if (a.x + 2 > n_ || a.y - 2 < 1) continue;
            int score = a.x - 1;
            if (!best.ok || score < best.score)
                best = plan({g.inv({a.x, a.y}), g.inv({a.x + 2, a.y}), g.inv({a.x, a.y - 2})},
                            score);
        }
        if (!best.ok) {
            // corner pair: no pushable orientation left
            for (int si = 0; si < 8; ++si) {
                Sym g{n_, si};
                Coord a = g.fwd(pts[0]), b = g.fwd(pts[1]);
                if (a > b) std::swap(a, b);
                if (a == Coord{n_ - 1, n_} && b == Coord{n_, n_ - 1})
                    return plan({g.inv({n_ - 2, n_}), g.inv({n_, n_ - 2}), g.inv({n_, n_})});
            }
        }
        return best;
    }

    // Axis-adjacent pair, canonical vertical {(a,y),(a+1,y)}.
    Plan vp_probes(const std::vector<Coord>& pts) const {
        Plan best;
        for (int si = 0; si < 8; ++si) {
            Sym g{n_, si};
            Coord a = g.fwd(pts[0]), b = g.fwd(pts[1]);
            if (a > b) std::swap(a, b);
            if (!(b.x == a.x + 1 && b.y == a.y)) continue;
            if (k_ >= 2) {
                if (a.y >= 2 && a.y <= n_ - 1 && a.x - 1 >= 1) {
                    int score = n_ - (a.x + 1); // the k=2 escape drifts toward row n
                    if (!best.ok || score < best.score)
                        best = plan({g.inv({a.x - 1, a.y - 1}), g.inv({a.x - 1, a.y + 1})}, score);
                } else if (a.y == n_ && a.x - 1 >= 1) {
                    if (!best.ok || 1 < best.score)
                        best = plan({g.inv({a.x - 1, n_ - 1}), g.inv({a.x - 1, n_})}, 1);
                }
            } else {
                if (a.y >= 2 && a.y <= n_ - 1) {
                    // all nine classes come out singleton
                    if (!best.ok)
                        best = plan({g.inv({a.x, a.y - 1}), g.inv({a.x, a.y + 1}),
                                     g.inv({a.x + 1, a.y})});
                } else if (a.y == 1 && !best.ok) {
                    // border column variant
                    best = plan({g.inv({a.x, 2}), g.inv({a.x + 1, 2}), g.inv({a.x + 1, 1})});
                }
            }
        }
        return best;
    }

    // everything within one closed neighborhood: probe two diagonal
    // neighbors of the hub
    Plan t_probes(const std::vector<Coord>& pts) const {
        Coord w{0, 0};
        bool found = false;
        for (int x = 1; x <= n_ && !found; ++x)
            for (int y = 1; y <= n_ && !found; ++y) {
                bool all = true;
                for (Coord p : pts)
                    if (std::abs(p.x - x) + std::abs(p.y - y) > 1) all = false;
                if (all) {
                    w = {x, y};
                    found = true;
                }
            }
        if (!found) return {};
        for (int si = 0; si < 8; ++si) {
            Sym g{n_, si};
            Coord ww = g.fwd(w);
            if (ww.x - 1 >= 1 && ww.y - 1 >= 1)
                return plan({g.inv({ww.x - 1, ww.y}), g.inv({ww.x, ww.y - 1})});
        }
        // hub in a corner in every frame: probe its two grid neighbors
        std::vector<Coord> nb;
        for (Coord d : {Coord{w.x - 1, w.y}, Coord{w.x + 1, w.y}, Coord{w.x, w.y - 1},
                        Coord{w.x, w.y + 1}})
            if (in_grid(d)) nb.push_back(d);
        nb.resize(2);
        return plan(nb);
    }

    // candidates confined to one diagonal: anchor below, bisect with the
    // half-radius probe
    Plan strip_probes(const std::vector<Coord>& pts) const {
        for (int si = 0; si < 8; ++si) {
            Sym g{n_, si};
            std::vector<Coord> q;
            for (Coord p : pts) q.push_back(g.fwd(p));
            std::sort(q.begin(), q.end());
            bool diag = true;
            for (Coord p : q)
                if (p.x - p.y != q[0].x - q[0].y) diag = false;
            if (!diag) continue;
            Coord anchor{q[0].x - 1, q[0].y - 1};
            if (!in_grid(anchor)) anchor = q[0];
            int h = k_ / 2;
            h = std::min({h, n_ - anchor.x, n_ - anchor.y});
            Coord second{anchor.x + std::max(h, 1), anchor.y + std::max(h, 1)};
            if (!in_grid(second)) second = q.back();
            return plan({g.inv(anchor), g.inv(second)});
        }
        return {};
    }

    // candidates confined to one row: probe one step inside each extreme
    Plan row_probes(const std::vector<Coord>& pts) const {
        for (int si = 0; si < 8; si += 4) { // identity / transpose are enough
            Sym g{n_, si};
            std::vector<Coord> q;
            for (Coord p : pts) q.push_back(g.fwd(p));
            std::sort(q.begin(), q.end());
            bool row = true;
            for (Coord p : q)
                if (p.x != q[0].x) row = false;
            if (!row || q.back().y - q[0].y < 2) continue;
            return plan({g.inv({q[0].x, q[0].y + 1}), g.inv({q[0].x, q.back().y - 1})});
        }
        return {};
    }

    std::vector<Coord> scripted_s1(const State& st) const {
        for (int si = 0; si < 8; ++si) {
            Sym g{n_, si};
            Coord c = g.fwd(st.c);
            if (c.x - 1 >= 1 && c.x + 1 <= n_) {
                std::vector<Coord> pr{g.inv({c.x - 1, c.y}), g.inv({c.x + 1, c.y})};
                if (k_ == 1) {
                    Coord third = c.y + 1 <= n_ ? Coord{c.x, c.y + 1} : Coord{c.x, c.y - 1};
                    pr.push_back(g.inv(third));
                }
                return pr;
            }
        }
        // sighting in a corner: clamped pattern
        std::vector<Coord> pr{clampg({st.c.x - 1, st.c.y}), clampg({st.c.x + 1, st.c.y})};
        if (k_ == 1) pr.push_back(clampg({st.c.x, st.c.y + 1}));
        return pr;
    }

    std::vector<Coord> scripted_s2(const State& st, const std::vector<Coord>& pts) const {
        // decide the side of the sighting row in the frame used for s1
        for (int si = 0; si < 8; ++si) {
            Sym g{n_, si};
            Coord c = g.fwd(st.c);
            if (!(c.x - 1 >= 1 && c.x + 1 <= n_)) continue;
            bool below = true, above = true;
            for (Coord p : pts) {
                Coord q = g.fwd(p);
                if (q.x >= c.x) below = false;
                if (q.x <= c.x) above = false;
            }
            if (below) {
                Coord apex{c.x - 1, c.y};
                return {g.inv(clampg({apex.x, apex.y - 1})), g.inv(clampg({apex.x, apex.y + 1}))};
            }
            if (above) {
                Coord apex{c.x + 1, c.y};
                return {g.inv(clampg({apex.x, apex.y - 1})), g.inv(clampg({apex.x, apex.y + 1}))};
            }
            break;
        }
        return scripted_s1(st);
    }

    std::vector<Coord> dispatch(const State& st) const {
        std::vector<Coord> pts;
        st.cls.for_each([&](int v) { pts.push_back(coord_of(v)); });
        std::sort(pts.begin(), pts.end());
        if (pts.size() == 1) return {pts[0]};
        if (pts.size() == 2) {
            Coord a = pts[0], b = pts[1];
            int dx = b.x - a.x, dy = std::abs(b.y - a.y);
            if (dx == 1 && dy == 1) {
                Plan p = dp_push(pts);
                if (p.ok) return p.probes;
            }
            if ((dx == 1 && dy == 0) || (dx == 0 && dy == 1)) {
                Plan p = vp_probes(pts);
                if (p.ok) return p.probes;
            }
        }
        if (Plan p = t_probes(pts); p.ok) return p.probes;
        if (Plan p = strip_probes(pts); p.ok) return p.probes;
        if (Plan p = row_probes(pts); p.ok) return p.probes;
        if (st.script == S1) return scripted_s1(st);
        if (st.script == S2) return scripted_s2(st, pts);
        // fall back to pinning the extremes
        std::vector<Coord> out{pts.front(), pts.back()};
        if (k_ == 1 && pts.size() > 2) out.push_back(pts[pts.size() / 2]);
        return out;
    }

    std::vector<Coord> probes_for(const State& st) const {
        if (k_ == 0) return sweep_probes(st);
        if (!st.sighted) {
            auto pr = prox_->probes_for_round(st.p1);
            if (pr.empty()) pr.push_back({1, 1});
            return pr;
        }
        return dispatch(st);
    }

    void advance(State& st, const Observation& ob) const {
        if (k_ == 0) {
            ++st.i;
            if (st.i >= n_ + 1) {
                st.i = 1;
                ++st.j;
            }
            return;
        }
        Bitset cls(g_.n);
        st.pending.for_each([&](int v) {
            if (signature_of(dm_, v, ob.probes, k_) == ob.sig) cls.set(v);
        });
        st.cls = cls;
        st.pending = spread(g_, cls);

        if (!st.sighted) {
            int best = -1;
            for (size_t i = 0; i < ob.sig.size(); ++i)
                if (ob.sig[i] != kStar) {
                    best = int(i);
                    break;
                }
            if (best < 0) {
                ++st.p1;
                return;
            }
            st.sighted = true;
            st.c = coord_of(ob.probes[best]);
            st.script = S1;
            return;
        }
        if (st.script == S1) {
            st.script = S2;
            return;
        }
        if (st.script == S2) {
            st.script = NONE;
            return;
        }
    }

    Graph g_;
    int n_ = 0;
    int k_;
    int cops_;
    std::optional<std::pair<Coord, int>> sighting_;
    std::optional<GridProxStrategy> prox_;
    DistanceMatrix dm_;
};

} // namespace

int grid_endgame_cop_bound(int n, int k) { return grid_endgame_required(n, k); }

std::unique_ptr<Strategy> grid_endgame_strategy(const Graph& grid, int k, int cops) {
    return std::make_unique<GridEndgameStrategy>(grid, k, cops, std::nullopt);
}

std::unique_ptr<Strategy> grid_endgame_strategy_from_sighting(const Graph& grid, int k, int cops,
                                                              Coord center, int d0) {
    if (d0 < 1 || d0 > k) throw ParameterError("sighting distance must be in [1, k]");
    return std::make_unique<GridEndgameStrategy>(grid, k, cops, std::make_pair(center, d0));
}

Bitset endgame_initial_candidates(const Graph& grid, int k, Coord center, int d0) {
    (void)k;
    int side = 0;
    require_square_grid(grid, &side);
    Bitset sphere(grid.n);
    for (int v = 0; v < grid.n; ++v) {
        auto [x, y] = (*grid.labels)[v];
        if (std::abs(x - center.x) + std::abs(y - center.y) == d0) sphere.set(v);
    }
    return spread(grid, sphere);
}

// -------------------------------------------------------------- bracket

GridBracket grid_zeta_bracket(int n, int k) {
    if (n < 1 || k < 0) throw ParameterError("bracket needs n >= 1, k >= 0");
    long long m = 2LL * k * k + 2 * k + 1;
    GridBracket b;
    b.lower = int(n / m + 1);
    b.upper = k == 0 ? n + 1 : grid_prox_cop_bound(n, k);
    long long q = n / m, r = n % m;
    std::string note;
    if (k == 0) {
        note = "closed form n+1";
    } else {
        bool hyp = k == 1 ? n >= 2 * m : n >= m;
        if (!hyp) {
            note = "published closed form needs larger n";
        } else if (r >= 1 && r <= 2LL * k * k) {
            note = "published value floor(n/m) = " + std::to_string(q);
            if (q < b.lower)
                note += "; understates the derived lower bound " + std::to_string(b.lower);
        } else {
            note = "published bracket {" + std::to_string(q) + ", " + std::to_string(q + 1) + "}";
        }
    }
    b.formula_note = note;
    return b;
}

// --------------------------------------------------------------- images

namespace {

void write_ppm(const std::string& path, int w, int h,
               const std::function<std::array<uint8_t, 3>(int, int)>& px) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P6\n" << w << ' ' << h << "\n255\n";
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            auto rgb = px(r, c);
            out.write(reinterpret_cast<const char*>(rgb.data()), 3);
        }
}

std::array<uint8_t, 3> palette(long long v) {
    uint64_t h = uint64_t(v) * 0x9e3779b97f4a7c15ull;
    return {uint8_t(64 + (h & 0x7f)), uint8_t(64 + ((h >> 8) & 0x7f)),
            uint8_t(64 + ((h >> 16) & 0x7f))};
}

} // namespace

void dump_tiling_ppm(int n, int k, const std::string& path) {
    if (k < 1) throw ParameterError("tiling image needs k >= 1");
    write_ppm(path, n, n, [&](int r, int c) {
        Coord p{n - r, c + 1}; // row 0 at the top of the image
        Coord t = tile_center_of(p, k);
        return palette((long long)t.x * 1315423911LL + t.y);
    });
}

void dump_infection_ppm(int n, int k, int cops, long long round, const std::string& path) {
    GridProxStrategy strat(n, k, cops);
    GridSet s = GridSet::full(n);
    for (long long t = 1; t <= round; ++t) {
        for (Coord c : strat.probes_for_round(t)) s.clear_ball(c, k);
        if (t < round) s.spread();
    }
    write_ppm(path, n, n, [&](int r, int c) -> std::array<uint8_t, 3> {
        return s.test(n - r, c + 1) ? std::array<uint8_t, 3>{180, 30, 30}
                                    : std::array<uint8_t, 3>{245, 245, 245};
    });
}

} // namespace kvis
