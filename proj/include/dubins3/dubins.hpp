#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dubins3/geometry.hpp"

namespace dubins3 {

/// Planar pose of a forward-moving vehicle. Heading is normalized to [0, 2*pi).
struct Pose {
    Point position;
    double heading = 0.0;

    Pose() = default;
    Pose(Point p, double h) : position(p), heading(norm_2pi(h)) {}
    Pose(double x, double y, double h) : position{x, y}, heading(norm_2pi(h)) {}
};

enum class SegmentKind : unsigned char { L, S, R };

inline char to_char(SegmentKind k) {
    switch (k) {
        case SegmentKind::L: return 'L';
        case SegmentKind::S: return 'S';
        default: return 'R';
    }
}

/// One of the six pairwise words, three segments long. Segment lengths are
/// arc lengths in world units; arc segments never exceed a full turn.
struct DubinsPath {
    std::array<SegmentKind, 3> word{SegmentKind::L, SegmentKind::S, SegmentKind::L};
    std::array<double, 3> segment_lengths{0.0, 0.0, 0.0};
    double total_length = 0.0;
    double rmin = 1.0;

    [[nodiscard]] std::string word_str() const {
        return {to_char(word[0]), to_char(word[1]), to_char(word[2])};
    }
};

/// Advance a pose along one segment. Straight segments translate; arcs move
/// along the turn circle of radius `rmin` on the matching side.
inline Pose advance(const Pose& p, SegmentKind kind, double length, double rmin) {
    const Vec2 h = unit_vec(p.heading);
    switch (kind) {
        case SegmentKind::S:
            return {p.position + h * length, p.heading};
        case SegmentKind::L: {
            const Point c = p.position + h.perp() * rmin;
            const double a = length / rmin;
            return {rotate_about(p.position, c, a), p.heading + a};
        }
        default: {
            const Point c = p.position - h.perp() * rmin;
            const double a = length / rmin;
            return {rotate_about(p.position, c, -a), p.heading - a};
        }
    }
}

/// Pose reached by following `path` from `start` for arc length `s`.
inline Pose pose_at(const DubinsPath& path, const Pose& start, double s) {
    Pose p = start;
    for (int i = 0; i < 3; ++i) {
        const double len = path.segment_lengths[i];
        if (s <= len) return advance(p, path.word[i], s, path.rmin);
        p = advance(p, path.word[i], len, path.rmin);
        s -= len;
    }
    return p;
}

namespace detail {

// Candidate segment parameters for one word, in units of rmin.
struct WordParams {
    double t, p, q;
    [[nodiscard]] double total() const { return t + p + q; }
};

// The six words in tie-break order: on equal length the earlier word wins.
inline constexpr std::array<std::array<SegmentKind, 3>, 6> word_table{{
    {SegmentKind::L, SegmentKind::S, SegmentKind::L},
    {SegmentKind::L, SegmentKind::S, SegmentKind::R},
    {SegmentKind::R, SegmentKind::S, SegmentKind::L},
    {SegmentKind::R, SegmentKind::S, SegmentKind::R},
    {SegmentKind::R, SegmentKind::L, SegmentKind::R},
    {SegmentKind::L, SegmentKind::R, SegmentKind::L},
}};

inline std::optional<WordParams> lsl(double d, double a, double b) {
    const double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    const double tmp = 2.0 + d * d - 2.0 * std::cos(a - b) + 2.0 * d * (sa - sb);
    if (tmp < 0.0) return std::nullopt;
    const double th = std::atan2(cb - ca, d + sa - sb);
    return WordParams{norm_2pi(th - a), std::sqrt(tmp), norm_2pi(b - th)};
}

inline std::optional<WordParams> rsr(double d, double a, double b) {
    const double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    const double tmp = 2.0 + d * d - 2.0 * std::cos(a - b) + 2.0 * d * (sb - sa);
    if (tmp < 0.0) return std::nullopt;
    const double th = std::atan2(ca - cb, d - sa + sb);
    return WordParams{norm_2pi(a - th), std::sqrt(tmp), norm_2pi(th - b)};
}

inline std::optional<WordParams> lsr(double d, double a, double b) {
    const double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    const double tmp = -2.0 + d * d + 2.0 * std::cos(a - b) + 2.0 * d * (sa + sb);
    if (tmp < 0.0) return std::nullopt;
    const double p = std::sqrt(tmp);
    const double th = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
    return WordParams{norm_2pi(th - a), p, norm_2pi(th - b)};
}

inline std::optional<WordParams> rsl(double d, double a, double b) {
    const double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    const double tmp = -2.0 + d * d + 2.0 * std::cos(a - b) - 2.0 * d * (sa + sb);
    if (tmp < 0.0) return std::nullopt;
    const double p = std::sqrt(tmp);
    const double th = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
    return WordParams{norm_2pi(a - th), p, norm_2pi(b - th)};
}

inline std::optional<WordParams> rlr(double d, double a, double b) {
    const double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    const double tmp = (6.0 - d * d + 2.0 * std::cos(a - b) + 2.0 * d * (sa - sb)) / 8.0;
    if (std::abs(tmp) > 1.0) return std::nullopt;
    const double p = norm_2pi(two_pi - std::acos(tmp));
    const double th = std::atan2(ca - cb, d - sa + sb);
    const double t = norm_2pi(a - th + p / 2.0);
    return WordParams{t, p, norm_2pi(a - b - t + p)};
}

inline std::optional<WordParams> lrl(double d, double a, double b) {
    const double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    const double tmp = (6.0 - d * d + 2.0 * std::cos(a - b) + 2.0 * d * (sb - sa)) / 8.0;
    if (std::abs(tmp) > 1.0) return std::nullopt;
    const double p = norm_2pi(two_pi - std::acos(tmp));
    const double th = std::atan2(cb - ca, d + sa - sb);
    const double t = norm_2pi(th - a + p / 2.0);
    return WordParams{t, p, norm_2pi(b - a - t + p)};
}

}  // namespace detail

/// Shortest bounded-curvature path between two poses.
///
/// All six words are evaluated in normalized coordinates and the shortest
/// feasible one is returned; ties resolve to the earliest word in the order
/// LSL, LSR, RSL, RSR, RLR, LRL. The CCC words are considered only when the
/// corresponding turn-circle centers are closer than 4*rmin, the regime in
/// which they can be optimal.
inline DubinsPath solve_pair(const Pose& start, const Pose& goal, double rmin) {
    if (!(rmin > 0.0)) throw std::invalid_argument("solve_pair: rmin must be positive");
    if (!std::isfinite(start.position.x) || !std::isfinite(start.position.y) ||
        !std::isfinite(goal.position.x) || !std::isfinite(goal.position.y) ||
        !std::isfinite(start.heading) || !std::isfinite(goal.heading))
        throw std::invalid_argument("solve_pair: poses must be finite");

    const Vec2 delta = goal.position - start.position;
    const double d = delta.norm() / rmin;
    const double phi = (delta.norm() > 0.0) ? angle_of(delta) : 0.0;
    const double a = norm_2pi(start.heading - phi);
    const double b = norm_2pi(goal.heading - phi);

    const Vec2 ha = unit_vec(start.heading), hb = unit_vec(goal.heading);
    const auto center = [&](const Pose& p, const Vec2& h, double side) {
        return p.position + h.perp() * (side * rmin);
    };
    const double rr_centers = distance(center(start, ha, -1.0), center(goal, hb, -1.0));
    const double ll_centers = distance(center(start, ha, 1.0), center(goal, hb, 1.0));

    std::array<std::optional<detail::WordParams>, 6> cands{
        detail::lsl(d, a, b),
        detail::lsr(d, a, b),
        detail::rsl(d, a, b),
        detail::rsr(d, a, b),
        (rr_centers < 4.0 * rmin) ? detail::rlr(d, a, b) : std::nullopt,
        (ll_centers < 4.0 * rmin) ? detail::lrl(d, a, b) : std::nullopt,
    };
    int best = -1;
    double best_len = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 6; ++i) {
        if (cands[i] && cands[i]->total() < best_len) {
            best = i;
            best_len = cands[i]->total();
        }
    }
    if (best < 0) throw std::runtime_error("solve_pair: no feasible word");

    const auto& w = *cands[best];
    DubinsPath path;
    path.word = detail::word_table[best];
    path.segment_lengths = {w.t * rmin, w.p * rmin, w.q * rmin};
    path.total_length = w.total() * rmin;
    path.rmin = rmin;
    return path;
}

/// Poses along the path at every multiple of `step`, ending with the exact
/// endpoint. A zero-length path yields the single start pose.
inline std::vector<Pose> sample_path(const DubinsPath& path, const Pose& start, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("sample_path: step must be positive");
    std::vector<Pose> out;
    for (double s = 0.0; s < path.total_length; s += step) out.push_back(pose_at(path, start, s));
    out.push_back(pose_at(path, start, path.total_length));
    return out;
}

}  // namespace dubins3
