#pragma once

// Finite-order actions on configurations of smooth rational curves.
//
// An action is a graph automorphism pi together with local weights: the
// exponent w such that, along a pi-stable curve C near a fixed point p, the
// action looks like z -> zeta_n^w z. Weights obey three local rules:
//   volume     at a transverse fixed point of C and D: w_C(p) + w_D(p) = c
//   P^1        a stable curve is pointwise fixed (w = 0) or has exactly two
//              fixed points with weights w and -w
//   tangency   at a tangency point the two along-branch weights agree
// plus the orbit rule: the points where mobile curves meet a stable curve of
// weight w form orbits of exact size n / gcd(n, w).
// Given pi, one weight per connected stable region determines everything.

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace k3auto {

struct CurveEdge {
    int a = 0;
    int b = 0;
    int multiplicity = 1;  // 1 transverse, 2 tangency
};

/// Incidence graph of smooth rational (-2)-curves.
class CurveConfig {
public:
    int add_vertex(const std::string& name) {
        if (index_.count(name) != 0) throw Error(ErrorKind::InputError, "duplicate vertex " + name);
        const int id = static_cast<int>(names_.size());
        names_.push_back(name);
        index_[name] = id;
        adjacency_.emplace_back();
        return id;
    }

    void add_edge(int a, int b, int multiplicity = 1) {
        if (a == b) throw Error(ErrorKind::InputError, "self-loop at " + names_.at(static_cast<std::size_t>(a)));
        if (multiplicity != 1 && multiplicity != 2) throw Error(ErrorKind::InputError, "edge multiplicity must be 1 or 2");
        if (edge_between(a, b)) {
            throw Error(ErrorKind::InputError, "duplicate edge " + name(a) + " " + name(b));
        }
        const int id = static_cast<int>(edges_.size());
        edges_.push_back({a, b, multiplicity});
        adjacency_[static_cast<std::size_t>(a)].push_back({b, id});
        adjacency_[static_cast<std::size_t>(b)].push_back({a, id});
    }
    void add_edge(const std::string& a, const std::string& b, int multiplicity = 1) {
        add_edge(vertex(a), vertex(b), multiplicity);
    }

    int size() const noexcept { return static_cast<int>(names_.size()); }
    const std::string& name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<CurveEdge>& edges() const noexcept { return edges_; }
    const CurveEdge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

    /// (neighbor, edge id) pairs.
    const std::vector<std::pair<int, int>>& neighbors(int v) const {
        return adjacency_.at(static_cast<std::size_t>(v));
    }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    int vertex(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw Error(ErrorKind::InputError, "unknown vertex " + name);
        return it->second;
    }
    bool has_vertex(const std::string& name) const { return index_.count(name) != 0; }

    std::optional<int> edge_between(int a, int b) const {
        for (const auto& [nb, e] : neighbors(a)) {
            if (nb == b) return e;
        }
        return std::nullopt;
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::vector<CurveEdge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

using ConfigHandle = std::shared_ptr<const CurveConfig>;

/// pi[v] is the image of vertex v.
using Permutation = std::vector<int>;

inline Permutation identity_permutation(int size) {
    Permutation p(static_cast<std::size_t>(size));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

/// (first o second)[v] = first[second[v]].
inline Permutation compose_permutations(const Permutation& first, const Permutation& second) {
    Permutation r(second.size());
    for (std::size_t v = 0; v < second.size(); ++v) r[v] = first[static_cast<std::size_t>(second[v])];
    return r;
}

inline Permutation invert_permutation(const Permutation& p) {
    Permutation r(p.size());
    for (std::size_t v = 0; v < p.size(); ++v) r[static_cast<std::size_t>(p[v])] = static_cast<int>(v);
    return r;
}

inline Permutation permutation_power(const Permutation& p, long long m) {
    Permutation base = m < 0 ? invert_permutation(p) : p;
    unsigned long long e = static_cast<unsigned long long>(m < 0 ? -m : m);
    Permutation r = identity_permutation(static_cast<int>(p.size()));
    while (e > 0) {
        if (e & 1ULL) r = compose_permutations(base, r);
        e >>= 1ULL;
        if (e > 0) base = compose_permutations(base, base);
    }
    return r;
}

inline int permutation_order(const Permutation& p) {
    int ord = 1;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (seen[v]) continue;
        int len = 0;
        for (std::size_t u = v; !seen[u]; u = static_cast<std::size_t>(p[u])) {
            seen[u] = true;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

inline bool is_graph_automorphism(const CurveConfig& g, const Permutation& p) {
    if (static_cast<int>(p.size()) != g.size()) return false;
    std::vector<bool> hit(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= g.size() || hit[static_cast<std::size_t>(v)]) return false;
        hit[static_cast<std::size_t>(v)] = true;
    }
    for (const auto& e : g.edges()) {
        const auto img = g.edge_between(p[static_cast<std::size_t>(e.a)], p[static_cast<std::size_t>(e.b)]);
        if (!img || g.edge(*img).multiplicity != e.multiplicity) return false;
    }
    return true;
}

/// All automorphisms (adjacency and multiplicities preserved), by backtracking
/// with degree and multiplicity-profile pruning. Sorted lexicographically.
inline std::vector<Permutation> graph_automorphisms(const CurveConfig& g) {
    const int n = g.size();
    std::vector<std::vector<int>> profile(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        for (const auto& [nb, e] : g.neighbors(v)) profile[static_cast<std::size_t>(v)].push_back(g.edge(e).multiplicity);
        std::sort(profile[static_cast<std::size_t>(v)].begin(), profile[static_cast<std::size_t>(v)].end());
    }
    // Breadth-first order keeps constraints from assigned neighbours tight.
    std::vector<int> order;
    std::vector<bool> queued(static_cast<std::size_t>(n), false);
    for (int root = 0; root < n; ++root) {
        if (queued[static_cast<std::size_t>(root)]) continue;
        queued[static_cast<std::size_t>(root)] = true;
        order.push_back(root);
        for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
            for (const auto& [nb, e] : g.neighbors(order[head])) {
                if (!queued[static_cast<std::size_t>(nb)]) {
                    queued[static_cast<std::size_t>(nb)] = true;
                    order.push_back(nb);
                }
            }
        }
    }

    std::vector<Permutation> out;
    Permutation image(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    auto consistent = [&](int v, int cand, std::size_t depth) {
        if (profile[static_cast<std::size_t>(v)] != profile[static_cast<std::size_t>(cand)]) return false;
        for (std::size_t i = 0; i < depth; ++i) {
            const int u = order[i];
            const auto e1 = g.edge_between(v, u);
            const auto e2 = g.edge_between(cand, image[static_cast<std::size_t>(u)]);
            if (e1.has_value() != e2.has_value()) return false;
            if (e1 && g.edge(*e1).multiplicity != g.edge(*e2).multiplicity) return false;
        }
        return true;
    };
    auto search = [&](auto&& self, std::size_t depth) -> void {
        if (depth == order.size()) {
            out.push_back(image);
            return;
        }
        const int v = order[depth];
        for (int cand = 0; cand < n; ++cand) {
            if (used[static_cast<std::size_t>(cand)] || !consistent(v, cand, depth)) continue;
            used[static_cast<std::size_t>(cand)] = true;
            image[static_cast<std::size_t>(v)] = cand;
            self(self, depth + 1);
            used[static_cast<std::size_t>(cand)] = false;
        }
        image[static_cast<std::size_t>(v)] = -1;
    };
    search(search, 0);
    std::sort(out.begin(), out.end());
    return out;
}

enum class CurveState { Mobile, Stable, Fixed };
enum class PointKind { Transverse, Tangency, Free, Swap };

inline std::string to_string(PointKind k) {
    switch (k) {
    case PointKind::Transverse: return "transverse-intersection";
    case PointKind::Tangency: return "tangency";
    case PointKind::Free: return "free-point";
    case PointKind::Swap: return "swap-point";
    }
    return "?";
}

/// A point fixed by the permutation: an edge point between two stable curves,
/// a synthesized point on a single stable curve, or the meeting point of two
/// swapped curves.
struct FixedPoint {
    PointKind kind = PointKind::Transverse;
    int edge = -1;            // edge id unless free
    std::vector<int> curves;  // curves through the point, in edge order
    int slot = 0;             // 1-based index of a free point on its curve
};

/// A weight seed: along `curve` at its point with `other` (or its first free
/// point when `other` is empty).
struct Seed {
    int curve = 0;
    std::optional<int> other;
    int weight = 0;
};

inline int mod(long long a, int n) {
    long long r = a % n;
    if (r < 0) r += n;
    return static_cast<int>(r);
}

/// A consistent weighted action on a curve configuration.
class GraphAction {
public:
    const ConfigHandle& config() const noexcept { return config_; }
    int n() const noexcept { return n_; }
    int c() const noexcept { return c_; }
    const Permutation& pi() const noexcept { return pi_; }
    CurveState state(int v) const { return state_.at(static_cast<std::size_t>(v)); }
    const std::vector<FixedPoint>& points() const noexcept { return points_; }

    /// Weight along `curve` at point index `point`, if defined.
    std::optional<int> weight(int curve, int point) const {
        auto it = weights_.find({curve, point});
        if (it == weights_.end()) return std::nullopt;
        return it->second;
    }
    const std::map<std::pair<int, int>, int>& weights() const noexcept { return weights_; }

    /// Point index of the fixed point on the edge between a and b, if any.
    std::optional<int> edge_point(int a, int b) const {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const auto& p = points_[i];
            if (p.edge < 0) continue;
            const auto& e = config_->edge(p.edge);
            if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return static_cast<int>(i);
        }
        return std::nullopt;
    }
    std::optional<int> free_point(int curve, int slot = 1) const {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const auto& p = points_[i];
            if (p.kind == PointKind::Free && p.curves[0] == curve && p.slot == slot) return static_cast<int>(i);
        }
        return std::nullopt;
    }
    /// Point indices lying on `curve`.
    std::vector<int> points_on(int curve) const {
        std::vector<int> r;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const auto& cs = points_[i].curves;
            if (std::find(cs.begin(), cs.end(), curve) != cs.end()) r.push_back(static_cast<int>(i));
        }
        return r;
    }

    std::string point_name(int point) const {
        const auto& p = points_.at(static_cast<std::size_t>(point));
        if (p.kind == PointKind::Free) return config_->name(p.curves[0]) + ":free" + std::to_string(p.slot);
        const auto& e = config_->edge(p.edge);
        return config_->name(e.a) + ":" + config_->name(e.b);
    }

    /// Least k with pi^k = id and k c = k w = 0 for every weight.
    int order() const {
        int ord = permutation_order(pi_);
        auto fold = [&](int w) { ord = std::lcm(ord, n_ / std::gcd(n_, w == 0 ? n_ : w)); };
        fold(c_);
        for (const auto& [flag, w] : weights_) fold(w);
        return ord;
    }

    /// Seeds reproducing this action: every defined weight.
    std::vector<Seed> all_seeds() const {
        std::vector<Seed> seeds;
        for (const auto& [flag, w] : weights_) seeds.push_back(seed_for(flag.first, flag.second, w));
        return seeds;
    }

    Seed seed_for(int curve, int point, int w) const {
        const auto& p = points_.at(static_cast<std::size_t>(point));
        Seed s;
        s.curve = curve;
        s.weight = w;
        if (p.kind != PointKind::Free) {
            const auto& e = config_->edge(p.edge);
            s.other = e.a == curve ? e.b : e.a;
        }
        return s;
    }

    friend bool operator==(const GraphAction& x, const GraphAction& y) {
        return x.config_ == y.config_ && x.n_ == y.n_ && x.c_ == y.c_ && x.pi_ == y.pi_ && x.state_ == y.state_ &&
               x.weights_ == y.weights_ && x.point_keys() == y.point_keys();
    }

private:
    friend GraphAction propagate(ConfigHandle, Permutation, int, int, const std::vector<Seed>&);

    std::vector<std::tuple<int, int, int, int>> point_keys() const {
        std::vector<std::tuple<int, int, int, int>> k;
        for (const auto& p : points_) {
            k.emplace_back(static_cast<int>(p.kind), p.edge, p.curves.empty() ? -1 : p.curves[0], p.slot);
        }
        return k;
    }

    ConfigHandle config_;
    int n_ = 1;
    int c_ = 0;
    Permutation pi_;
    std::vector<CurveState> state_;
    std::vector<FixedPoint> points_;
    std::map<std::pair<int, int>, int> weights_;  // (curve, point index) -> exponent mod n
};

/// Complete a partial weight assignment to a full action, or fail.
///
/// Breadth-first transfer: across a transverse fixed point the weight becomes
/// c - w, across a tangency it is unchanged, and along a stable curve the
/// other fixed point receives -w (or every point 0 when w = 0). Stable curves
/// with fewer than two fixed edge points get synthesized free points; curves
/// with three or more fixed points are forced to be pointwise fixed.
inline GraphAction propagate(ConfigHandle config, Permutation pi, int n, int c, const std::vector<Seed>& seeds) {
    const CurveConfig& g = *config;
    if (n < 1) throw Error(ErrorKind::InputError, "action order must be >= 1");
    if (!is_graph_automorphism(g, pi)) {
        throw Error(ErrorKind::NotAGraphAutomorphism, "permutation does not preserve the incidence graph");
    }
    const int nv = g.size();
    auto stable = [&](int v) { return pi[static_cast<std::size_t>(v)] == v; };

    GraphAction act;
    act.config_ = config;
    act.n_ = n;
    act.c_ = mod(c, n);
    act.pi_ = pi;
    act.state_.assign(static_cast<std::size_t>(nv), CurveState::Mobile);

    // Fixed points coming from edges.
    std::vector<std::vector<int>> on_curve(static_cast<std::size_t>(nv));
    for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
        const auto& ed = g.edge(e);
        FixedPoint p;
        p.edge = e;
        p.curves = {ed.a, ed.b};
        if (stable(ed.a) && stable(ed.b)) {
            p.kind = ed.multiplicity == 2 ? PointKind::Tangency : PointKind::Transverse;
        } else if (pi[static_cast<std::size_t>(ed.a)] == ed.b && pi[static_cast<std::size_t>(ed.b)] == ed.a) {
            p.kind = PointKind::Swap;
        } else {
            continue;
        }
        const int id = static_cast<int>(act.points_.size());
        act.points_.push_back(p);
        if (p.kind != PointKind::Swap) {
            on_curve[static_cast<std::size_t>(ed.a)].push_back(id);
            on_curve[static_cast<std::size_t>(ed.b)].push_back(id);
        }
    }
    std::vector<bool> forced_fixed(static_cast<std::size_t>(nv), false);
    for (int v = 0; v < nv; ++v) {
        if (!stable(v)) continue;
        act.state_[static_cast<std::size_t>(v)] = CurveState::Stable;
        auto& pts = on_curve[static_cast<std::size_t>(v)];
        if (pts.size() >= 3) forced_fixed[static_cast<std::size_t>(v)] = true;
        for (int slot = 1; pts.size() < 2; ++slot) {
            FixedPoint p;
            p.kind = PointKind::Free;
            p.curves = {v};
            p.slot = slot;
            pts.push_back(static_cast<int>(act.points_.size()));
            act.points_.push_back(p);
        }
    }

    // Flags and their derivation parents, for cycle reports.
    std::map<std::pair<int, int>, int> weight;
    std::map<std::pair<int, int>, std::pair<int, int>> parent;
    std::vector<std::pair<int, int>> queue;
    auto trail = [&](std::pair<int, int> f) {
        std::vector<std::string> names;
        for (int guard = 0; guard < 4 * nv + 8; ++guard) {
            names.push_back(g.name(f.first) + "@" + act.point_name(f.second));
            auto it = parent.find(f);
            if (it == parent.end() || it->second == f) break;
            f = it->second;
        }
        return names;
    };
    auto assign = [&](std::pair<int, int> flag, int w, std::pair<int, int> from) {
        w = mod(w, n);
        auto it = weight.find(flag);
        if (it != weight.end()) {
            if (it->second == w) return;
            std::string cycle;
            const auto a = trail(flag);
            const auto b = trail(from);
            for (auto i = a.rbegin(); i != a.rend(); ++i) cycle += *i + " -> ";
            for (const auto& s : b) cycle += s + " -> ";
            cycle += g.name(flag.first) + "@" + act.point_name(flag.second);
            throw Error(ErrorKind::InconsistentCycle, "weights " + std::to_string(it->second) + " and " +
                                                          std::to_string(w) + " along cycle " + cycle);
        }
        weight[flag] = w;
        parent[flag] = from;
        queue.push_back(flag);
    };

    for (const auto& s : seeds) {
        if (s.curve < 0 || s.curve >= nv) throw Error(ErrorKind::InputError, "seed on unknown curve");
        if (!stable(s.curve)) {
            throw Error(ErrorKind::AnchorOnMobileCurve, "anchor curve " + g.name(s.curve) + " is moved by the permutation");
        }
        std::optional<int> pt;
        for (int p : on_curve[static_cast<std::size_t>(s.curve)]) {
            const auto& fp = act.points_[static_cast<std::size_t>(p)];
            if (s.other) {
                if (fp.kind != PointKind::Free &&
                    (fp.curves[0] == *s.other || fp.curves[1] == *s.other)) pt = p;
            } else if (fp.kind == PointKind::Free) {
                pt = p;
                break;
            }
        }
        if (!pt) {
            throw Error(ErrorKind::InputError, "anchor point on " + g.name(s.curve) + " is not a fixed point");
        }
        const std::pair<int, int> flag{s.curve, *pt};
        assign(flag, s.weight, flag);
    }
    for (int v = 0; v < nv; ++v) {
        if (forced_fixed[static_cast<std::size_t>(v)] && !on_curve[static_cast<std::size_t>(v)].empty()) {
            const std::pair<int, int> flag{v, on_curve[static_cast<std::size_t>(v)][0]};
            if (weight.count(flag) == 0) assign(flag, 0, flag);
        }
    }

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto flag = queue[head];
        const auto [v, p] = flag;
        const int w = weight[flag];
        if (forced_fixed[static_cast<std::size_t>(v)] && w != 0) {
            throw Error(ErrorKind::TooManyFixedPoints,
                        g.name(v) + " has " + std::to_string(on_curve[static_cast<std::size_t>(v)].size()) +
                            " fixed points but weight " + std::to_string(w));
        }
        for (int q : on_curve[static_cast<std::size_t>(v)]) {
            if (q != p) assign({v, q}, w == 0 ? 0 : -w, flag);
        }
        const auto& fp = act.points_[static_cast<std::size_t>(p)];
        if (fp.kind == PointKind::Free) continue;
        const int other = fp.curves[0] == v ? fp.curves[1] : fp.curves[0];
        assign({other, p}, fp.kind == PointKind::Tangency ? w : c - w, flag);
    }

    for (int v = 0; v < nv; ++v) {
        if (!stable(v)) continue;
        const auto& pts = on_curve[static_cast<std::size_t>(v)];
        for (int p : pts) {
            if (weight.count({v, p}) == 0) {
                throw Error(ErrorKind::UndeterminedCurve, "no weight reaches " + g.name(v));
            }
        }
        if (weight[{v, pts[0]}] == 0) act.state_[static_cast<std::size_t>(v)] = CurveState::Fixed;
    }

    // Orbit rule for mobile neighbours of stable curves.
    std::vector<int> orbit(static_cast<std::size_t>(nv), 0);
    for (int v = 0; v < nv; ++v) {
        int len = 1;
        for (int u = pi[static_cast<std::size_t>(v)]; u != v; u = pi[static_cast<std::size_t>(u)]) ++len;
        orbit[static_cast<std::size_t>(v)] = len;
    }
    for (int v = 0; v < nv; ++v) {
        if (!stable(v)) continue;
        const int w = weight[{v, on_curve[static_cast<std::size_t>(v)][0]}];
        const int rotation = w == 0 ? 1 : n / std::gcd(n, w);
        for (const auto& [nb, e] : g.neighbors(v)) {
            if (stable(nb)) continue;
            if (orbit[static_cast<std::size_t>(nb)] != rotation) {
                throw Error(ErrorKind::OrbitLengthMismatch,
                            g.name(v) + " rotates with order " + std::to_string(rotation) + " but its neighbour " +
                                g.name(nb) + " has orbit length " + std::to_string(orbit[static_cast<std::size_t>(nb)]));
            }
        }
    }

    // Free points on pointwise-fixed curves are not separate points.
    std::vector<int> remap(act.points_.size(), -1);
    std::vector<FixedPoint> kept;
    for (std::size_t i = 0; i < act.points_.size(); ++i) {
        const auto& p = act.points_[i];
        if (p.kind == PointKind::Free && act.state_[static_cast<std::size_t>(p.curves[0])] == CurveState::Fixed) continue;
        remap[i] = static_cast<int>(kept.size());
        kept.push_back(p);
    }
    act.points_ = std::move(kept);
    for (const auto& [flag, w] : weight) {
        const int np = remap[static_cast<std::size_t>(flag.second)];
        if (np >= 0) act.weights_[{flag.first, np}] = w;
    }

    // Volume and tangency rules hold by construction; re-check them directly.
    for (std::size_t i = 0; i < act.points_.size(); ++i) {
        const auto& p = act.points_[i];
        if (p.kind != PointKind::Transverse && p.kind != PointKind::Tangency) continue;
        const int wa = act.weights_.at({p.curves[0], static_cast<int>(i)});
        const int wb = act.weights_.at({p.curves[1], static_cast<int>(i)});
        const bool ok = p.kind == PointKind::Transverse ? mod(wa + wb, n) == act.c_ : wa == wb;
        if (!ok) throw std::logic_error("propagate: local rule violated at " + act.point_name(static_cast<int>(i)));
    }
    return act;
}

/// Single-anchor form.
inline GraphAction propagate(ConfigHandle config, Permutation pi, int n, int c, const Seed& anchor) {
    return propagate(std::move(config), std::move(pi), n, c, std::vector<Seed>{anchor});
}

// ---------------------------------------------------------------------------

struct CensusItem {
    std::string location;
    PointKind kind = PointKind::Transverse;
    std::string weights;  // empty where undefined
};

struct FixedLocusCensus {
    int isolated_points = 0;  // N
    int fixed_curves = 0;     // k
    std::vector<CensusItem> points;
    std::vector<std::string> curves;
};

inline FixedLocusCensus census(const GraphAction& a) {
    const CurveConfig& g = *a.config();
    FixedLocusCensus out;
    for (int v = 0; v < g.size(); ++v) {
        if (a.state(v) == CurveState::Fixed) out.curves.push_back(g.name(v));
    }
    out.fixed_curves = static_cast<int>(out.curves.size());
    for (int i = 0; i < static_cast<int>(a.points().size()); ++i) {
        const auto& p = a.points()[static_cast<std::size_t>(i)];
        bool on_fixed = false;
        for (int v : p.curves) on_fixed = on_fixed || a.state(v) == CurveState::Fixed;
        if (on_fixed && p.kind != PointKind::Swap) continue;
        CensusItem item;
        item.location = a.point_name(i);
        item.kind = p.kind;
        if (p.kind != PointKind::Swap) {
            for (int v : p.curves) {
                if (!item.weights.empty()) item.weights += " ";
                item.weights += g.name(v) + "=" + std::to_string(*a.weight(v, i));
            }
        }
        out.points.push_back(item);
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const CensusItem& x, const CensusItem& y) { return x.location < y.location; });
    out.isolated_points = static_cast<int>(out.points.size());
    return out;
}

/// a^m: pi^m, weights and c multiplied by m, re-propagated so that curves
/// newly stabilised by pi^m receive their weights.
inline GraphAction power(const GraphAction& a, long long m) {
    const int n = a.n();
    std::vector<Seed> seeds;
    for (const auto& [flag, w] : a.weights()) {
        const auto& p = a.points()[static_cast<std::size_t>(flag.second)];
        if (p.kind == PointKind::Free && p.slot != 1) continue;
        Seed s = a.seed_for(flag.first, flag.second, mod(static_cast<long long>(w) * mod(m, n), n));
        if (p.kind == PointKind::Free) {
            // Only usable while the curve still has no fixed edge points.
            const Permutation pm = permutation_power(a.pi(), m);
            bool has_edge_point = false;
            for (const auto& [nb, e] : a.config()->neighbors(flag.first)) {
                has_edge_point = has_edge_point || pm[static_cast<std::size_t>(nb)] == nb;
            }
            if (has_edge_point) continue;
        }
        seeds.push_back(s);
    }
    return propagate(a.config(), permutation_power(a.pi(), m), n, mod(static_cast<long long>(a.c()) * mod(m, n), n),
                     seeds);
}

inline GraphAction inverse(const GraphAction& a) {
    std::vector<Seed> seeds = a.all_seeds();
    for (auto& s : seeds) s.weight = mod(-s.weight, a.n());
    return propagate(a.config(), invert_permutation(a.pi()), a.n(), mod(-a.c(), a.n()), seeds);
}

/// first o second: permutations composed, c added, weights added at the
/// flags fixed by both, then re-propagated.
inline GraphAction compose_actions(const GraphAction& first, const GraphAction& second) {
    if (first.config() != second.config() && first.config()->names() != second.config()->names()) {
        throw Error(ErrorKind::IncompatibleActions, "actions live on different configurations");
    }
    if (first.n() != second.n()) throw Error(ErrorKind::IncompatibleActions, "actions use different orders n");
    const CurveConfig& g = *first.config();
    const int n = first.n();
    std::vector<Seed> seeds;
    for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
        const auto& ed = g.edge(e);
        const auto p1 = first.edge_point(ed.a, ed.b);
        const auto p2 = second.edge_point(ed.a, ed.b);
        if (!p1 || !p2) continue;
        // A point that is a swap-point for either action carries no weights to add.
        const auto k1 = first.points()[static_cast<std::size_t>(*p1)].kind;
        const auto k2 = second.points()[static_cast<std::size_t>(*p2)].kind;
        if (k1 == PointKind::Swap || k2 == PointKind::Swap) continue;
        for (int v : {ed.a, ed.b}) {
            seeds.push_back(first.seed_for(v, *p1, mod(*first.weight(v, *p1) + *second.weight(v, *p2), n)));
        }
    }
    // Curves without fixed edge points in either action: match first free points.
    for (int v = 0; v < g.size(); ++v) {
        const auto f1 = first.free_point(v, 1);
        const auto f2 = second.free_point(v, 1);
        if (!f1 || !f2 || first.points_on(v).size() != 2 || first.free_point(v, 2) == std::nullopt ||
            second.free_point(v, 2) == std::nullopt) {
            continue;
        }
        Seed s;
        s.curve = v;
        s.weight = mod(*first.weight(v, *f1) + *second.weight(v, *f2), n);
        seeds.push_back(s);
    }
    if (seeds.empty()) throw Error(ErrorKind::IncompatibleActions, "no flag is fixed by both actions");
    return propagate(first.config(), compose_permutations(first.pi(), second.pi()), n, first.c() + second.c(), seeds);
}

// ---------------------------------------------------------------------------
// Enumeration up to conjugation by graph automorphisms.

/// Key of the action transported by the automorphism g; the minimum over all
/// g identifies the conjugacy class.
inline std::vector<int> transported_key(const GraphAction& a, const Permutation& g) {
    const CurveConfig& cfg = *a.config();
    const Permutation ginv = invert_permutation(g);
    std::vector<int> key{a.n(), a.c()};
    const int nv = cfg.size();
    std::vector<std::vector<std::pair<int, int>>> per_curve(static_cast<std::size_t>(nv));
    for (const auto& [flag, w] : a.weights()) {
        const auto& p = a.points()[static_cast<std::size_t>(flag.second)];
        int other = -1;
        if (p.kind != PointKind::Free) {
            const auto& e = cfg.edge(p.edge);
            other = g[static_cast<std::size_t>(e.a == flag.first ? e.b : e.a)];
        }
        per_curve[static_cast<std::size_t>(g[static_cast<std::size_t>(flag.first)])].emplace_back(other, w);
    }
    for (int v = 0; v < nv; ++v) {
        const int src = ginv[static_cast<std::size_t>(v)];
        key.push_back(g[static_cast<std::size_t>(a.pi()[static_cast<std::size_t>(src)])]);
    }
    for (int v = 0; v < nv; ++v) {
        auto& fl = per_curve[static_cast<std::size_t>(v)];
        std::sort(fl.begin(), fl.end());
        key.push_back(-1000 - static_cast<int>(fl.size()));
        for (const auto& [o, w] : fl) {
            key.push_back(o);
            key.push_back(w);
        }
    }
    return key;
}

inline std::vector<int> canonical_key(const GraphAction& a, const std::vector<Permutation>& automorphisms) {
    std::vector<int> best;
    for (const auto& g : automorphisms) {
        auto k = transported_key(a, g);
        if (best.empty() || k < best) best = std::move(k);
    }
    return best;
}

/// Transport an action along a graph automorphism g: returns g a g^-1.
inline GraphAction conjugate(const GraphAction& a, const Permutation& g) {
    const Permutation pi = compose_permutations(g, compose_permutations(a.pi(), invert_permutation(g)));
    std::vector<Seed> seeds;
    for (const auto& [flag, w] : a.weights()) {
        Seed s = a.seed_for(flag.first, flag.second, w);
        const auto& p = a.points()[static_cast<std::size_t>(flag.second)];
        if (p.kind == PointKind::Free && p.slot != 1) continue;
        s.curve = g[static_cast<std::size_t>(s.curve)];
        if (s.other) s.other = g[static_cast<std::size_t>(*s.other)];
        seeds.push_back(s);
    }
    return propagate(a.config(), pi, a.n(), a.c(), seeds);
}

struct CensusFilter {
    int isolated_points = 0;
    int fixed_curves = 0;
};

struct ActionClass {
    GraphAction representative;
    std::vector<int> key;
    int members = 0;  // consistent (pi, anchor) pairs found in the class
};

/// Anchor flags, one per connected region of stable curves joined through
/// fixed edge points. Regions with no free parameter still get an anchor.
inline std::vector<Seed> region_anchors(const CurveConfig& g, const Permutation& pi) {
    const int nv = g.size();
    std::vector<int> comp(static_cast<std::size_t>(nv), -1);
    std::vector<Seed> anchors;
    auto stable = [&](int v) { return pi[static_cast<std::size_t>(v)] == v; };
    for (int v = 0; v < nv; ++v) {
        if (!stable(v) || comp[static_cast<std::size_t>(v)] >= 0) continue;
        Seed s;
        s.curve = v;
        for (const auto& [nb, e] : g.neighbors(v)) {
            if (stable(nb)) {
                s.other = nb;
                break;
            }
        }
        anchors.push_back(s);
        std::vector<int> stack{v};
        comp[static_cast<std::size_t>(v)] = static_cast<int>(anchors.size()) - 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const auto& [nb, e] : g.neighbors(u)) {
                if (stable(nb) && comp[static_cast<std::size_t>(nb)] < 0) {
                    comp[static_cast<std::size_t>(nb)] = comp[static_cast<std::size_t>(v)];
                    stack.push_back(nb);
                }
            }
        }
    }
    return anchors;
}

/// Every consistent order-n action with volume exponent c (optionally with a
/// given census), up to conjugation by graph automorphisms. Classes are
/// returned sorted by canonical key; `jobs` > 1 splits the permutation list
/// across threads without changing the result.
inline std::vector<ActionClass> enumerate_actions(const ConfigHandle& config, int n, int c,
                                                  std::optional<CensusFilter> filter = std::nullopt,
                                                  unsigned jobs = 1) {
    if (n < 1) throw Error(ErrorKind::InputError, "action order must be >= 1");
    const std::vector<Permutation> autos = graph_automorphisms(*config);
    std::vector<const Permutation*> candidates;
    for (const auto& p : autos) {
        if (n % permutation_order(p) == 0) candidates.push_back(&p);
    }

    auto work = [&](std::size_t begin, std::size_t end) {
        std::map<std::vector<int>, ActionClass> found;
        for (std::size_t i = begin; i < end; ++i) {
            const Permutation& pi = *candidates[i];
            std::vector<Seed> anchors = region_anchors(*config, pi);
            std::vector<int> digits(anchors.size(), 0);
            while (true) {
                for (std::size_t k = 0; k < anchors.size(); ++k) anchors[k].weight = digits[k];
                try {
                    GraphAction act = propagate(config, pi, n, c, anchors);
                    const FixedLocusCensus cs = census(act);
                    if (!filter ||
                        (cs.isolated_points == filter->isolated_points && cs.fixed_curves == filter->fixed_curves)) {
                        std::vector<int> key = canonical_key(act, autos);
                        auto it = found.find(key);
                        if (it == found.end()) {
                            found.emplace(key, ActionClass{act, key, 1});
                        } else {
                            ++it->second.members;
                        }
                    }
                } catch (const Error&) {
                    // Inconsistent choice of anchors.
                }
                std::size_t k = 0;
                while (k < digits.size() && ++digits[k] == n) digits[k++] = 0;
                if (k == digits.size()) break;
            }
        }
        return found;
    };

    std::map<std::vector<int>, ActionClass> merged;
    const unsigned threads = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(candidates.size())));
    std::vector<std::future<std::map<std::vector<int>, ActionClass>>> parts;
    const std::size_t chunk = (candidates.size() + threads - 1) / std::max(1U, threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t b = std::min(candidates.size(), t * chunk);
        const std::size_t e = std::min(candidates.size(), b + chunk);
        parts.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, work, b, e));
    }
    for (auto& f : parts) {
        for (auto& [key, cls] : f.get()) {
            auto it = merged.find(key);
            if (it == merged.end()) {
                merged.emplace(key, std::move(cls));
            } else {
                it->second.members += cls.members;
            }
        }
    }
    // Representative: the member whose own key is the canonical one.
    std::vector<ActionClass> out;
    for (auto& [key, cls] : merged) {
        for (const auto& g : autos) {
            if (transported_key(cls.representative, g) == key) {
                cls.representative = conjugate(cls.representative, g);
                break;
            }
        }
        out.push_back(std::move(cls));
    }
    return out;
}

}  // namespace k3auto
