#pragma once

// Poisson point process sampling on the unit square, relaying / cluster
// square construction, cluster chain planning and Poisson tail bounds.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace secsim {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Sampled node positions with the designated source/destination pair.
struct Placement {
    std::vector<Point> legit;
    std::vector<Point> eav;
    std::size_t source_idx = 0;
    std::size_t dest_idx = 0;

    const Point& source() const { return legit[source_idx]; }
    const Point& dest() const { return legit[dest_idx]; }
};

// splitmix64; used to derive independent stream seeds from a master seed.
inline std::uint64_t split_mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return split_mix64(master ^ split_mix64(stream + 0x632be59bd9b4e019ULL));
}

/// Samples a homogeneous PPP of the given intensity on [0,1]^2.
/// The point count is Poisson(intensity); positions are iid uniform.
/// Deterministic for a fixed (intensity, seed) pair.
inline std::vector<Point> sample_ppp(double intensity, std::uint64_t seed) {
    if (!(intensity > 0.0))
        throw std::invalid_argument("sample_ppp: intensity must be positive");
    std::mt19937_64 rng(seed);
    std::poisson_distribution<long long> count_dist(intensity);
    const long long n = count_dist(rng);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        const double x = coord(rng);
        const double y = coord(rng);
        pts.push_back({x, y});
    }
    return pts;
}

/// Axis-aligned square membership. Squares are closed; the effective region
/// is the intersection with the unit square (all nodes live in [0,1]^2).
inline bool in_square(const Point& p, const Point& center, double side) {
    const double h = side / 2.0;
    return p.x >= center.x - h && p.x <= center.x + h &&
           p.y >= center.y - h && p.y <= center.y + h;
}

/// Area of the square actually inside [0,1]^2 (for void-probability bookkeeping).
inline double clipped_square_area(const Point& center, double side) {
    const double h = side / 2.0;
    const double w = std::min(center.x + h, 1.0) - std::max(center.x - h, 0.0);
    const double v = std::min(center.y + h, 1.0) - std::max(center.y - h, 0.0);
    return std::max(w, 0.0) * std::max(v, 0.0);
}

/// Concentric relaying/cluster square (inner) and eavesdropper-free square
/// (outer) centered at the source. Sides are clipped to the unit square.
struct SquarePair {
    double inner_side = 0.0;
    double outer_side = 0.0;
    Point center;
};

namespace detail {

// Sides use the natural log; the square-side formulas only fix the base up
// to the asymptotics. The outer side is kept >= the inner side so the
// eavesdropper-free region always covers the relaying region (for n_e < 3
// the raw formula would dip below it).
inline SquarePair make_squares(const Point& center, double inner, double log_factor) {
    SquarePair sq;
    sq.center = center;
    sq.inner_side = std::min(inner, 1.0);
    sq.outer_side = std::min(std::max(inner * log_factor, inner), 1.0);
    return sq;
}

}  // namespace detail

/// Relaying square of side sqrt(n_r/n_l) and eavesdropper-free square of
/// side sqrt(n_r/n_l)*(ln n_e)^(gamma/2), centered at the source.
inline SquarePair make_parallel_squares(const Placement& placement, int n_r, int n_l,
                                        int n_e, double gamma) {
    if (n_r < 1) throw std::invalid_argument("make_parallel_squares: n_r must be >= 1");
    if (n_l < 1) throw std::invalid_argument("make_parallel_squares: n_l must be >= 1");
    if (n_e < 2) throw std::domain_error("make_parallel_squares: n_e must be >= 2");
    if (!(gamma > 0.0)) throw std::invalid_argument("make_parallel_squares: gamma must be positive");
    const double d_r = std::sqrt(static_cast<double>(n_r) / static_cast<double>(n_l));
    const double lf = std::pow(std::log(static_cast<double>(n_e)), gamma / 2.0);
    return detail::make_squares(placement.source(), d_r, lf);
}

/// Cluster square of side sqrt(n_c/n_l); the eavesdropper-free side gains a
/// factor n_e^(1/alpha) when the eavesdroppers collude.
inline SquarePair make_cluster_squares(const Placement& placement, int n_c, int n_l,
                                       int n_e, double gamma, bool colluding,
                                       double alpha = 2.0) {
    if (n_c < 1) throw std::invalid_argument("make_cluster_squares: n_c must be >= 1");
    if (n_l < 1) throw std::invalid_argument("make_cluster_squares: n_l must be >= 1");
    if (n_e < 2) throw std::domain_error("make_cluster_squares: n_e must be >= 2");
    if (!(gamma > 0.0)) throw std::invalid_argument("make_cluster_squares: gamma must be positive");
    const double d_c = std::sqrt(static_cast<double>(n_c) / static_cast<double>(n_l));
    double lf = std::pow(std::log(static_cast<double>(n_e)), gamma / 2.0);
    if (colluding) {
        if (!(alpha > 0.0)) throw std::invalid_argument("make_cluster_squares: alpha must be positive");
        lf *= std::pow(static_cast<double>(n_e), 1.0 / alpha);
    }
    return detail::make_squares(placement.source(), d_c, lf);
}

struct Cluster {
    Point center;
    double side = 0.0;
    std::vector<std::size_t> members;  // legit-node indices, ascending distance to source
};

/// Chain of side-sharing squares from the source square to the square
/// containing the destination, with per-cluster member selection.
struct ClusterPlan {
    std::vector<Cluster> clusters;
    std::vector<std::size_t> node_order;  // source first, destination last
    int n_c = 0;
    int c_max = 0;
    bool full_occupancy = false;  // every cluster square held >= n_c legit nodes
};

/// Builds an axis-aligned L-shaped chain (horizontal leg, then vertical) of
/// squares of side d_c. Consecutive squares share one full side. Each square
/// contributes its n_c members nearest to the source; a node on a shared
/// edge belongs to the lower-indexed cluster.
inline ClusterPlan plan_clusters(const Placement& placement, double d_c, int n_c) {
    if (!(d_c > 0.0)) throw std::invalid_argument("plan_clusters: d_c must be positive");
    if (n_c < 1) throw std::invalid_argument("plan_clusters: n_c must be >= 1");
    const Point src = placement.source();
    const Point dst = placement.dest();
    if (in_square(dst, src, d_c))
        throw std::invalid_argument("plan_clusters: destination inside the source square");

    ClusterPlan plan;
    plan.n_c = n_c;

    std::vector<Point> centers;
    Point c = src;
    centers.push_back(c);
    const double h = d_c / 2.0;
    const double step_x = (dst.x > c.x) ? d_c : -d_c;
    while (std::abs(dst.x - c.x) > h) {
        c.x += step_x;
        centers.push_back(c);
    }
    const double step_y = (dst.y > c.y) ? d_c : -d_c;
    while (std::abs(dst.y - c.y) > h) {
        c.y += step_y;
        centers.push_back(c);
    }
    plan.c_max = static_cast<int>(centers.size());

    // First-containing-square assignment keeps shared-edge nodes unique.
    std::vector<std::vector<std::size_t>> inside(centers.size());
    for (std::size_t i = 0; i < placement.legit.size(); ++i) {
        for (std::size_t k = 0; k < centers.size(); ++k) {
            if (in_square(placement.legit[i], centers[k], d_c)) {
                inside[k].push_back(i);
                break;
            }
        }
    }

    plan.full_occupancy = true;
    for (std::size_t k = 0; k < centers.size(); ++k) {
        Cluster cl;
        cl.center = centers[k];
        cl.side = d_c;
        auto& cand = inside[k];
        std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
            const double da = distance(placement.legit[a], src);
            const double db = distance(placement.legit[b], src);
            if (da != db) return da < db;
            return a < b;
        });
        if (cand.size() < static_cast<std::size_t>(n_c)) plan.full_occupancy = false;
        const std::size_t take = std::min(cand.size(), static_cast<std::size_t>(n_c));
        cl.members.assign(cand.begin(), cand.begin() + take);
        // The destination must stay in the last cluster even when it is not
        // among the n_c nodes nearest to the source.
        if (k + 1 == centers.size()) {
            const bool has_dest =
                std::find(cl.members.begin(), cl.members.end(), placement.dest_idx) !=
                cl.members.end();
            if (!has_dest) {
                const bool dest_inside =
                    std::find(cand.begin(), cand.end(), placement.dest_idx) != cand.end();
                if (dest_inside) {
                    if (!cl.members.empty() && cl.members.size() ==
                                                   static_cast<std::size_t>(n_c))
                        cl.members.pop_back();
                    cl.members.push_back(placement.dest_idx);
                }
            }
        }
        plan.clusters.push_back(std::move(cl));
    }

    for (const auto& cl : plan.clusters)
        for (std::size_t id : cl.members)
            if (id != placement.dest_idx) plan.node_order.push_back(id);
    plan.node_order.push_back(placement.dest_idx);
    return plan;
}

/// Counts towards the geometric feasibility of a scheme: enough legitimate
/// nodes inside the inner square (source excluded) and an empty outer square.
struct FeasibilityRecord {
    bool enough_relays = false;
    bool eav_free = false;
    std::size_t relays_in_square = 0;
    std::size_t eavs_in_outer = 0;
};

inline FeasibilityRecord feasibility_check(const Placement& placement,
                                           const SquarePair& squares,
                                           int required_relays) {
    FeasibilityRecord rec;
    for (std::size_t i = 0; i < placement.legit.size(); ++i) {
        if (i == placement.source_idx) continue;
        if (in_square(placement.legit[i], squares.center, squares.inner_side))
            ++rec.relays_in_square;
    }
    for (const auto& e : placement.eav)
        if (in_square(e, squares.center, squares.outer_side)) ++rec.eavs_in_outer;
    rec.enough_relays = rec.relays_in_square >= static_cast<std::size_t>(std::max(required_relays, 0));
    rec.eav_free = rec.eavs_in_outer == 0;
    return rec;
}

/// Chernoff-style Poisson tail bound Pr(X >= x) <= e^-lambda (e lambda)^x / x^x
/// for x > lambda, evaluated in log space.
inline double poisson_tail_bound(double lambda, double x) {
    if (!(lambda > 0.0)) throw std::domain_error("poisson_tail_bound: lambda must be positive");
    if (!(x > lambda)) throw std::domain_error("poisson_tail_bound: requires x > lambda");
    const double log_bound = -lambda + x * (1.0 + std::log(lambda) - std::log(x));
    return std::exp(log_bound);
}

/// True when no pair of points is closer than min_dist. Grid hash keeps this
/// linear in the point count; coincident nodes would blow up the path-loss
/// gains downstream.
inline bool min_pairwise_distance_ok(const std::vector<const std::vector<Point>*>& sets,
                                     double min_dist) {
    struct CellHash {
        std::size_t operator()(const std::pair<long long, long long>& c) const {
            return std::hash<long long>()(c.first * 1000003LL + c.second);
        }
    };
    std::unordered_map<std::pair<long long, long long>, std::vector<Point>, CellHash> grid;
    const double inv = 1.0 / min_dist;
    for (const auto* set : sets) {
        for (const auto& p : *set) {
            const long long cx = static_cast<long long>(std::floor(p.x * inv));
            const long long cy = static_cast<long long>(std::floor(p.y * inv));
            for (long long dx = -1; dx <= 1; ++dx) {
                for (long long dy = -1; dy <= 1; ++dy) {
                    auto it = grid.find({cx + dx, cy + dy});
                    if (it == grid.end()) continue;
                    for (const auto& q : it->second)
                        if (distance(p, q) < min_dist) return false;
                }
            }
            grid[{cx, cy}].push_back(p);
        }
    }
    return true;
}

}  // namespace secsim
