#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "dubins3/dubins.hpp"
#include "dubins3/geometry.hpp"
#include "dubins3/three_point.hpp"

namespace dubins3 {

/// Cyclic Dubins tour: poses in visiting order, closed back to the first.
struct Tour {
    std::vector<Pose> poses;
    double rmin = 1.0;
    double total_length = 0.0;
};

/// Length of the cyclic tour over the given poses, recomputed from scratch.
inline double tour_length(const std::vector<Pose>& poses, double rmin) {
    double sum = 0.0;
    const std::size_t n = poses.size();
    for (std::size_t i = 0; i < n; ++i) sum += solve_pair(poses[i], poses[(i + 1) % n], rmin).total_length;
    return sum;
}

inline void validate(const Tour& tour) {
    if (tour.poses.size() < 3) throw std::invalid_argument("tour needs at least 3 poses");
    if (!(tour.rmin > 0.0)) throw std::invalid_argument("tour rmin must be positive");
    for (const Pose& p : tour.poses) {
        if (!std::isfinite(p.position.x) || !std::isfinite(p.position.y) ||
            !std::isfinite(p.heading))
            throw std::invalid_argument("tour has non-finite poses");
    }
}

struct RefineConfig {
    std::uint64_t rng_seed = 0;
    /// Minimum accepted improvement, in units of rmin.
    double improvement_eps = 1e-6;
    int max_stale_rounds = 3;
    ThreePointOptions three_point_opts{};
};

namespace detail {

// Nearest-neighbor ordering from the first point, then Euclidean 2-opt to
// a local optimum. Point count stays small here (tours, not TSP instances),
// so the quadratic sweeps are fine.
inline std::vector<Point> order_points(std::vector<Point> pts) {
    const std::size_t n = pts.size();
    std::vector<Point> ordered;
    ordered.reserve(n);
    std::vector<bool> used(n, false);
    std::size_t cur = 0;
    used[0] = true;
    ordered.push_back(pts[0]);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t best = n;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double d = distance(pts[cur], pts[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        used[best] = true;
        ordered.push_back(pts[best]);
        cur = best;
    }

    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Point& a = ordered[i];
                const Point& b = ordered[(i + 1) % n];
                const Point& c = ordered[j];
                const Point& d = ordered[(j + 1) % n];
                const double before = distance(a, b) + distance(c, d);
                const double after = distance(a, c) + distance(b, d);
                if (after < before - 1e-12) {
                    std::reverse(ordered.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                 ordered.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                    improved = true;
                }
            }
        }
    }
    return ordered;
}

}  // namespace detail

/// Build a starting tour: nearest-neighbor plus Euclidean 2-opt ordering,
/// headings pointed at each successor. With disc_k > 1 a greedy sweep then
/// lets each point keep that heading or switch to the best of disc_k
/// uniformly spaced ones, judged by the local two-leg length, so a finer
/// disc_k never produces a longer tour.
inline Tour construct_initial_tour(const std::vector<Point>& points, double rmin, int disc_k) {
    if (points.size() < 3) throw std::invalid_argument("construct_initial_tour: need at least 3 points");
    if (!(rmin > 0.0)) throw std::invalid_argument("construct_initial_tour: rmin must be positive");
    if (disc_k < 1) throw std::invalid_argument("construct_initial_tour: disc_k must be >= 1");
    for (const Point& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("construct_initial_tour: points must be finite");
    }

    const auto ordered = detail::order_points(points);
    const std::size_t n = ordered.size();

    Tour tour;
    tour.rmin = rmin;
    tour.poses.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 ahead = ordered[(i + 1) % n] - ordered[i];
        const double heading = ahead.norm() > 0.0 ? angle_of(ahead) : 0.0;
        tour.poses.push_back({ordered[i], norm_2pi(heading)});
    }

    if (disc_k > 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const Pose& prev = tour.poses[(i + n - 1) % n];
            const Pose& next = tour.poses[(i + 1) % n];
            double best_heading = tour.poses[i].heading;
            double best_len = solve_pair(prev, tour.poses[i], rmin).total_length +
                              solve_pair(tour.poses[i], next, rmin).total_length;
            for (int j = 0; j < disc_k; ++j) {
                const double cand = two_pi * j / disc_k;
                const Pose here{ordered[i], cand};
                const double len = solve_pair(prev, here, rmin).total_length +
                                   solve_pair(here, next, rmin).total_length;
                if (len < best_len) {
                    best_len = len;
                    best_heading = cand;
                }
            }
            tour.poses[i].heading = best_heading;
        }
    }

    tour.total_length = tour_length(tour.poses, rmin);
    return tour;
}

/// One sweep of per-point heading refinement: each point is re-solved as the
/// free-heading waypoint between its neighbors' current poses, and the new
/// heading is kept only when it shortens the two incident legs by more than
/// improvement_eps (scaled by rmin).
inline Tour refine_headings(const Tour& tour, const RefineConfig& cfg = {}) {
    validate(tour);
    if (!(cfg.improvement_eps > 0.0))
        throw std::invalid_argument("refine_headings: improvement_eps must be positive");
    Tour out = tour;
    const std::size_t n = out.poses.size();
    const double eps = cfg.improvement_eps * out.rmin;
    for (std::size_t i = 0; i < n; ++i) {
        const Pose& prev = out.poses[(i + n - 1) % n];
        const Pose& next = out.poses[(i + 1) % n];
        const double old_local = solve_pair(prev, out.poses[i], out.rmin).total_length +
                                 solve_pair(out.poses[i], next, out.rmin).total_length;
        const ThreePointInstance inst{prev, out.poses[i].position, next, out.rmin};
        const auto sol = solve_three_point(inst, cfg.three_point_opts);
        if (old_local - sol.total_length > eps) {
            out.poses[i].heading = norm_2pi(sol.heading);
            out.total_length -= old_local - sol.total_length;
        }
    }
    return out;
}

/// Remove a uniformly random point and reinsert it at the gap of minimum
/// additional Dubins cost, heading chosen by the three-point solve at that
/// gap. The original gap with the original heading stays a candidate (and
/// yields to the solve only past improvement_eps, mirroring the refine
/// accept rule), so the result never exceeds the input length and a
/// converged tour passes through untouched. Neighbor headings are left
/// alone; a following refine_headings sweep repairs them cheaply.
inline Tour delete_reinsert(const Tour& tour, std::mt19937_64& rng, const RefineConfig& cfg = {}) {
    validate(tour);
    if (tour.poses.size() < 4) throw std::invalid_argument("delete_reinsert: need at least 4 poses");
    Tour out = tour;
    const std::size_t n = out.poses.size();
    const std::size_t victim = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const double eps = cfg.improvement_eps * out.rmin;

    const Pose removed = out.poses[victim];
    std::vector<Pose> rest;
    rest.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        if (i != victim) rest.push_back(out.poses[i]);
    const std::size_t m = rest.size();
    // Gap g inserts between rest[g] and rest[(g+1) % m]; the pair that used
    // to flank the removed point sits at g = victim-1, cyclically.
    const std::size_t original_gap = (victim + m - 1) % m;

    std::size_t best_gap = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    double best_heading = removed.heading;
    for (std::size_t g = 0; g < m; ++g) {
        const Pose& a = rest[g];
        const Pose& b = rest[(g + 1) % m];
        const double gap_len = solve_pair(a, b, out.rmin).total_length;
        const ThreePointInstance inst{a, removed.position, b, out.rmin};
        const auto sol = solve_three_point(inst, cfg.three_point_opts);
        double cost = sol.total_length - gap_len;
        double heading = norm_2pi(sol.heading);
        if (g == original_gap) {
            const double keep = solve_pair(a, removed, out.rmin).total_length +
                                solve_pair(removed, b, out.rmin).total_length - gap_len;
            if (keep - cost <= eps) {
                cost = keep;
                heading = removed.heading;
            }
        }
        if (cost < best_cost) {
            best_cost = cost;
            best_gap = g;
            best_heading = heading;
        }
    }

    if (best_gap == original_gap) {
        // Slot the point back where it was so an unchanged tour keeps its
        // representation, not just its cyclic order.
        out.poses[victim].heading = best_heading;
    } else {
        rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(best_gap) + 1,
                    Pose{removed.position, best_heading});
        out.poses = std::move(rest);
    }
    out.total_length = tour_length(out.poses, out.rmin);
    return out;
}

/// Alternate heading refinement and random delete/best-reinsert until
/// max_stale_rounds consecutive rounds improve the tour by no more than
/// improvement_eps (scaled by rmin). The output is never longer than the
/// input; with a fixed seed the result is deterministic.
inline Tour post_process(const Tour& tour, const RefineConfig& cfg = {}) {
    validate(tour);
    if (cfg.max_stale_rounds < 1)
        throw std::invalid_argument("post_process: max_stale_rounds must be >= 1");
    std::mt19937_64 rng(cfg.rng_seed);
    Tour cur = tour;
    const double eps = cfg.improvement_eps * cur.rmin;
    int stale = 0;
    while (stale < cfg.max_stale_rounds) {
        const double before = cur.total_length;
        cur = refine_headings(cur, cfg);
        if (cur.poses.size() >= 4) cur = delete_reinsert(cur, rng, cfg);
        stale = (before - cur.total_length > eps) ? 0 : stale + 1;
    }
    return cur;
}

}  // namespace dubins3
