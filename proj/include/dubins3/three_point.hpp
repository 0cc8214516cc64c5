#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dubins3/dubins.hpp"
#include "dubins3/geometry.hpp"

namespace dubins3 {

/// Start pose, free-heading waypoint, end pose. The heading at `mid` is the
/// decision variable the solvers below optimize.
struct ThreePointInstance {
    Pose start;
    Point mid;
    Pose end;
    double rmin = 1.0;
};

inline void validate(const ThreePointInstance& inst) {
    const bool finite = std::isfinite(inst.start.position.x) && std::isfinite(inst.start.position.y) &&
                        std::isfinite(inst.start.heading) && std::isfinite(inst.mid.x) &&
                        std::isfinite(inst.mid.y) && std::isfinite(inst.end.position.x) &&
                        std::isfinite(inst.end.position.y) && std::isfinite(inst.end.heading);
    if (!finite) throw std::invalid_argument("three-point instance has non-finite coordinates");
    if (!(inst.rmin > 0.0)) throw std::invalid_argument("rmin must be positive");
}

inline double min_pairwise_distance(const ThreePointInstance& inst) {
    return std::min({distance(inst.start.position, inst.mid),
                     distance(inst.mid, inst.end.position),
                     distance(inst.start.position, inst.end.position)});
}

enum class Turn : unsigned char { L, R };

inline Turn flip(Turn t) { return t == Turn::L ? Turn::R : Turn::L; }
inline char to_char(Turn t) { return t == Turn::L ? 'L' : 'R'; }

/// Turn circle center for a pose: to the left of the heading for L, to the
/// right for R.
inline Point turn_center(const Pose& p, Turn t, double rmin) {
    const Vec2 n = unit_vec(p.heading).perp();
    return t == Turn::L ? p.position + n * rmin : p.position - n * rmin;
}

/// Center of the mid turn circle once the heading at `mid` is `alpha`.
inline Point mid_center(Point mid, double alpha, Turn c3, double rmin) {
    const Vec2 n = unit_vec(alpha).perp();
    return c3 == Turn::L ? mid + n * rmin : mid - n * rmin;
}

/// One of the eight C1-S2-C3-S4-C5 classes. mu_a is +1 when the first turn
/// matches the mid turn (so S2 is an outer tangent), -1 otherwise; mu_b is
/// the same for the final turn and S4.
struct PathClass {
    Turn c1, c3, c5;
    int mu_a, mu_b;
    Point center_a, center_b;

    [[nodiscard]] std::string word() const {
        return {to_char(c1), 'S', to_char(c3), 'S', to_char(c5)};
    }
};

/// All eight classes in lexicographic word order (L before R), which is also
/// the tie-break order used by the solver.
inline std::array<PathClass, 8> enumerate_classes(const ThreePointInstance& inst) {
    std::array<PathClass, 8> out;
    int i = 0;
    for (Turn c1 : {Turn::L, Turn::R}) {
        for (Turn c3 : {Turn::L, Turn::R}) {
            for (Turn c5 : {Turn::L, Turn::R}) {
                out[i++] = PathClass{c1,
                                     c3,
                                     c5,
                                     c1 == c3 ? 1 : -1,
                                     c5 == c3 ? 1 : -1,
                                     turn_center(inst.start, c1, inst.rmin),
                                     turn_center(inst.end, c5, inst.rmin)};
            }
        }
    }
    return out;
}

namespace detail {

// Travel direction of the common tangent leaving circle (from, turn_from)
// toward circle (to, turn_to), both of radius r. Outer tangents (equal turn
// directions) run along the center line; inner tangents rotate it by
// asin(2r/d), counterclockwise for L->R and clockwise for R->L. Inner
// tangents need the centers more than 2r apart.
inline std::optional<Vec2> tangent_travel(Point from, Turn turn_from, Point to, Turn turn_to,
                                          double r) {
    const Vec2 sep = to - from;
    const double d = sep.norm();
    if (d < 1e-12) return std::nullopt;
    const Vec2 u = sep * (1.0 / d);
    if (turn_from == turn_to) return u;
    if (d <= 2.0 * r * (1.0 + 1e-12)) return std::nullopt;
    const double phi = std::asin(2.0 * r / d);
    return u.rotated(turn_from == Turn::L ? phi : -phi);
}

// Tangent kind and side selecting the same line as tangent_travel, for when
// the full Line is needed rather than just its direction.
inline std::pair<TangentKind, TangentSide> tangent_selector(Turn turn_from, Turn turn_to) {
    if (turn_from == turn_to) {
        return {TangentKind::outer,
                turn_from == Turn::R ? TangentSide::left : TangentSide::right};
    }
    return {TangentKind::inner,
            turn_from == Turn::L ? TangentSide::left : TangentSide::right};
}

inline double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// Golden-section minimization of f over [lo, hi] down to bracket width tol.
template <typename F>
inline std::pair<double, double> golden_min(F&& f, double lo, double hi, double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}

}  // namespace detail

/// Total two-leg length through the waypoint at a fixed mid heading.
inline double two_leg_length(const ThreePointInstance& inst, double alpha) {
    const Pose m{inst.mid, alpha};
    return solve_pair(inst.start, m, inst.rmin).total_length +
           solve_pair(m, inst.end, inst.rmin).total_length;
}

namespace detail {

// Arc swept from heading `from` to heading `to` turning in direction t.
inline double turn_sweep(Turn t, double from, double to) {
    return t == Turn::L ? norm_2pi(to - from) : norm_2pi(from - to);
}

}  // namespace detail

/// Exact length of the class's C1-S2-C3-S4-C5 path at a fixed mid heading,
/// or nullopt when a required inner tangent does not exist. The mid arc is
/// split at the waypoint, so the path passes through it at that heading even
/// when the free tangent arc would not.
inline std::optional<double> class_length(const ThreePointInstance& inst, const PathClass& cls,
                                          double alpha);

/// Closed-form approximate optimal heading for one class: half the
/// difference of the angles the mid point subtends at the two end turn
/// centers, expressed in the frame that puts those centers on the x-axis.
/// The sign follows the half-plane the mid point occupies.
///
/// The subtended angles only determine the heading up to the direction of
/// passage; the class optimum can sit on the reversed branch when the end
/// poses favor crossing the waypoint the other way. Both orientations are
/// closed-form candidates, and the class's own length picks between them.
/// Degenerate when the two centers coincide.
inline double approx_heading(const ThreePointInstance& inst, const PathClass& cls) {
    const Vec2 ab = cls.center_b - cls.center_a;
    if (ab.norm() < 1e-9)
        throw std::domain_error("approx_heading: end turn centers coincide");
    const double phi = angle_of(ab);
    const Vec2 am = inst.mid - cls.center_a;
    const Vec2 bm = inst.mid - cls.center_b;
    const double s = cross(ab, am) >= 0.0 ? 1.0 : -1.0;
    const double beta1 = std::abs(signed_angle(ab, am));
    const double beta2 = std::abs(signed_angle(-ab, bm));
    const double forward = norm_2pi(phi + s * 0.5 * (beta1 - beta2));
    const double backward = norm_2pi(forward + pi);
    const auto lf = class_length(inst, cls, forward);
    const auto lb = class_length(inst, cls, backward);
    if (!lb) return forward;
    if (!lf) return backward;
    return *lf <= *lb ? forward : backward;
}

/// Worst-case deviation of the approximate heading from the class optimum.
/// `equal_distances` states whether the mid point is equidistant from the
/// two end turn centers.
inline double error_bound(const PathClass& cls, bool equal_distances) {
    if (cls.c1 == cls.c5) {
        if (equal_distances) return 0.0;
        return cls.c1 == cls.c3 ? pi / 9.0 : pi / 5.0;
    }
    return 11.0 * pi / 36.0;
}

/// Travel directions of the two straight segments for a given mid circle
/// center; nullopt when an inner tangent does not exist.
struct TangentDirections {
    Vec2 dir_in;
    Vec2 dir_out;
};

inline std::optional<TangentDirections> tangent_directions(const ThreePointInstance& inst,
                                                           const PathClass& cls, Point xc) {
    const auto in = detail::tangent_travel(cls.center_a, cls.c1, xc, cls.c3, inst.rmin);
    const auto out = detail::tangent_travel(xc, cls.c3, cls.center_b, cls.c5, inst.rmin);
    if (!in || !out) return std::nullopt;
    return TangentDirections{*in, *out};
}

inline std::optional<double> class_length(const ThreePointInstance& inst, const PathClass& cls,
                                          double alpha) {
    const double r = inst.rmin;
    const Point xc = mid_center(inst.mid, alpha, cls.c3, r);
    const auto dirs = tangent_directions(inst, cls, xc);
    if (!dirs) return std::nullopt;
    const double da = distance(cls.center_a, xc);
    const double db = distance(xc, cls.center_b);
    const double s2 = cls.c1 == cls.c3 ? da : std::sqrt(std::max(0.0, da * da - 4.0 * r * r));
    const double s4 = cls.c3 == cls.c5 ? db : std::sqrt(std::max(0.0, db * db - 4.0 * r * r));
    const double ain = angle_of(dirs->dir_in);
    const double aout = angle_of(dirs->dir_out);
    const double arc1 = detail::turn_sweep(cls.c1, inst.start.heading, ain);
    const double arc3 = detail::turn_sweep(cls.c3, ain, alpha) + detail::turn_sweep(cls.c3, alpha, aout);
    const double arc5 = detail::turn_sweep(cls.c5, aout, inst.end.heading);
    return r * (arc1 + arc3 + arc5) + s2 + s4;
}

/// Residuals of the three stationarity equations at a candidate heading.
///
/// The straight segments are inverted through the circle of radius rmin at
/// the waypoint; their images are circles through the waypoint with radii
/// r_in, r_out (in units of rmin) and centers C, D. theta is the signed
/// elevation of those centers over the tangent to the mid circle at the
/// waypoint, big_r their mean radius. Each stationarity equation equates a
/// cosine-law expression at one center with the common radius; the residuals
/// are those equations multiplied through by their denominators, so they are
/// dimensionless, vanish together exactly at the class optimum, and stay
/// O(1)-conditioned even when the inverted radius blows up near degenerate
/// configurations.
struct OptimalityResidual {
    double r1, r2, r3;
    double theta;
    double big_r;
    double beta1, beta2;
    double r_in, r_out;

    [[nodiscard]] double max_abs() const {
        return std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
    }
};

inline OptimalityResidual residuals(const ThreePointInstance& inst, const PathClass& cls,
                                    double alpha) {
    const double inv_r = 1.0 / inst.rmin;
    const Point a2 = cls.center_a * inv_r;
    const Point b2 = cls.center_b * inv_r;
    const Point m2 = inst.mid * inv_r;

    const Vec2 ab = b2 - a2;
    if (ab.norm() < 1e-9) throw std::domain_error("residuals: end turn centers coincide");
    if (distance(a2, m2) <= 1.0 + 1e-9 || distance(b2, m2) <= 1.0 + 1e-9)
        throw std::domain_error("residuals: waypoint lies on or inside an end turn circle");

    // The residuals compare quantities that agree to first order in the
    // elevation split of the two inverted centers; degenerate configurations
    // scale the comparison up by the square of the inverted radius (observed
    // factors to ~5e10 on random instances). The chain below therefore runs
    // in long double, whose extra mantissa bits keep the evaluation noise
    // well under the 1e-6 testing bar even at those extremes.
    using ld = long double;
    struct V {
        ld x, y;
        V operator+(V o) const { return {x + o.x, y + o.y}; }
        V operator-(V o) const { return {x - o.x, y - o.y}; }
        V operator*(ld k) const { return {x * k, y * k}; }
        [[nodiscard]] V perp() const { return {-y, x}; }
    };
    const auto ldot = [](V p, V q) { return p.x * q.x + p.y * q.y; };
    const auto lcross = [](V p, V q) { return p.x * q.y - p.y * q.x; };
    const auto lnorm = [&](V p) { return std::sqrt(ldot(p, p)); };

    const ld irm = 1.0L / static_cast<ld>(inst.rmin);
    const V a{static_cast<ld>(cls.center_a.x) * irm, static_cast<ld>(cls.center_a.y) * irm};
    const V b{static_cast<ld>(cls.center_b.x) * irm, static_cast<ld>(cls.center_b.y) * irm};
    const V m{static_cast<ld>(inst.mid.x) * irm, static_cast<ld>(inst.mid.y) * irm};
    const ld al = static_cast<ld>(alpha);

    const V heading{std::cos(al), std::sin(al)};
    const V xc = m + heading.perp() * (cls.c3 == Turn::L ? 1.0L : -1.0L);

    // Common tangent with the same kind/side conventions as tangent_selector
    // and common_tangent, reduced to unit radii.
    const auto tangent_line = [&](V from, Turn tf, V to, Turn tt) -> std::optional<std::pair<V, V>> {
        const V sep = to - from;
        const ld d = lnorm(sep);
        if (d < 1e-9) return std::nullopt;
        const V u = sep * (1.0L / d);
        if (tf == tt) {
            const ld sgn = tf == Turn::R ? 1.0L : -1.0L;
            return std::pair{from + u.perp() * sgn, u};
        }
        if (d <= 2.0L * (1.0L + 1e-12L)) return std::nullopt;
        const ld sgn = tf == Turn::L ? 1.0L : -1.0L;
        const ld phi = std::asin(2.0L / d);
        const ld c = std::cos(sgn * phi), s = std::sin(sgn * phi);
        const V t{u.x * c - u.y * s, u.x * s + u.y * c};
        return std::pair{from + t.perp() * (-sgn), t};
    };
    const auto s2 = tangent_line(a, cls.c1, xc, cls.c3);
    const auto s4 = tangent_line(xc, cls.c3, b, cls.c5);
    if (!s2 || !s4) throw std::domain_error("residuals: tangent infeasible at this heading");

    const V nhat = (m - xc) * (1.0L / lnorm(m - xc));

    // Per side: distance h from the waypoint to the straight segment, unit
    // direction w from the waypoint toward it, elevation theta of the
    // inverted center (sin theta = 1 - h identically), inverted radius
    // 1/(2h), and the tangential direction of the center seen from the
    // waypoint.
    struct Side {
        ld h, sin_t, theta, radius;
        V that;
    };
    const auto side_of = [&](const std::pair<V, V>& line) -> Side {
        const auto& [p, u] = line;
        const ld off = lcross(u, m - p);
        const ld h = std::abs(off);
        if (h < 1e-9)
            throw std::domain_error("residuals: straight segment passes through the waypoint");
        const V w = u.perp() * (off > 0 ? -1.0L : 1.0L);
        const ld sin_t = 1.0L - h;
        V that = w - nhat * ldot(w, nhat);
        const ld tn = lnorm(that);
        that = tn > 0 ? that * (1.0L / tn) : nhat.perp();
        return {h, sin_t, std::asin(std::clamp(sin_t, -1.0L, 1.0L)), 1.0L / (2.0L * h), that};
    };
    const Side in = side_of(*s2);
    const Side out = side_of(*s4);

    const ld theta = 0.5L * (in.theta + out.theta);
    const ld big_r = 0.5L * (in.radius + out.radius);
    const ld st = std::sin(theta), ct = std::cos(theta);

    // Direction from the waypoint to where each center would sit if its
    // elevation were the common theta. Keeping the measured tangential
    // component sidesteps any case analysis over passage orientation: at the
    // optimum the reconstruction reproduces the centers exactly, so the
    // cosine-law identities close and all residuals vanish together.
    const V w_in = nhat * st + in.that * ct;
    const V w_out = nhat * st + out.that * ct;

    const ld r1 = 2.0L * big_r * (static_cast<ld>(cls.mu_a) + ldot(w_in, a - m)) - 1.0L;
    const ld r2 = 2.0L * big_r * (static_cast<ld>(cls.mu_b) + ldot(w_out, b - m)) - 1.0L;
    const ld r3 = 2.0L * big_r * (1.0L - st) - 1.0L;

    const double beta1 = std::abs(signed_angle(ab, m2 - a2));
    const double beta2 = std::abs(signed_angle(-ab, m2 - b2));

    return {static_cast<double>(r1),       static_cast<double>(r2),
            static_cast<double>(r3),       static_cast<double>(theta),
            static_cast<double>(big_r),    beta1,
            beta2,                         static_cast<double>(in.radius),
            static_cast<double>(out.radius)};
}

namespace detail {

// Secant steps on r1 - r2, the residual combination steepest in the heading.
// The bisector fixpoint and the residual root can disagree by up to ~1e-8
// when the inverted radius blows up (the bisector signal goes flat there);
// this walks the last stretch on the equations themselves. Returns the input
// heading unless the worst residual strictly improves.
inline double residual_polish(const ThreePointInstance& inst, const PathClass& cls, double alpha) {
    const auto eval = [&](double a) -> std::optional<OptimalityResidual> {
        try {
            return residuals(inst, cls, a);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };
    const auto base = eval(alpha);
    if (!base || base->max_abs() < 1e-9) return alpha;

    double best_alpha = alpha;
    double best = base->max_abs();
    double a = alpha;
    auto cur = *base;
    for (int i = 0; i < 6; ++i) {
        const double h = 1e-9;
        const auto probe = eval(a + h);
        if (!probe) break;
        const double g = cur.r1 - cur.r2;
        const double slope = ((probe->r1 - probe->r2) - g) / h;
        if (slope == 0.0) break;
        const double delta = std::clamp(-g / slope, -1e-6, 1e-6);
        const auto next = eval(a + delta);
        if (!next) break;
        a += delta;
        cur = *next;
        if (cur.max_abs() < best) {
            best = cur.max_abs();
            best_alpha = a;
        }
        if (best < 1e-9 || std::abs(delta) < 1e-16) break;
    }
    return best_alpha;
}

}  // namespace detail

enum class IterationStatus : unsigned char {
    aligned,     ///< bisector and mid radius agree within tol
    antipodal,   ///< tangent directions cancel; current heading is optimal
    stalled,     ///< no damped step could improve the alignment objective
    max_iter,    ///< iteration budget exhausted before alignment
    infeasible,  ///< no inner tangent exists at the starting heading
};

struct IterationResult {
    double alpha = 0.0;
    int iterations = 0;
    IterationStatus status = IterationStatus::infeasible;

    [[nodiscard]] bool converged() const {
        return status == IterationStatus::aligned || status == IterationStatus::antipodal ||
               status == IterationStatus::stalled;
    }
};

/// Refine a class heading by aligning the tangent bisector with the mid
/// circle radius through the waypoint.
///
/// Each step rotates the mid circle center about the waypoint by the signed
/// angle from v_m = mid - x_c to the bisector v of the incoming and reversed
/// outgoing tangent directions. The alignment objective e_v . v_m never
/// decreases across an accepted step; a step that would decrease it (or land
/// where an inner tangent vanishes) is halved.
inline IterationResult iterate_heading(const ThreePointInstance& inst, const PathClass& cls,
                                       double alpha0, double tol = 1e-10, int max_iter = 64) {
    struct State {
        Vec2 v, vm;
        double objective;
    };
    const auto eval = [&](double alpha) -> std::optional<State> {
        const Point xc = mid_center(inst.mid, alpha, cls.c3, inst.rmin);
        const auto dirs = tangent_directions(inst, cls, xc);
        if (!dirs) return std::nullopt;
        const Vec2 v = dirs->dir_in - dirs->dir_out;
        const Vec2 vm = inst.mid - xc;
        const double n = v.norm();
        return State{v, vm, n > 0.0 ? dot(v, vm) / n : -inst.rmin};
    };

    double alpha = norm_2pi(alpha0);
    auto state = eval(alpha);
    if (!state) return {alpha, 0, IterationStatus::infeasible};

    double prev_gamma = 0.0;
    double prev_step = 0.0;
    bool have_prev = false;
    for (int it = 0; it < max_iter; ++it) {
        if (state->v.norm() < tol) return {alpha, it, IterationStatus::antipodal};
        const double gamma = signed_angle(state->vm, state->v);
        if (std::abs(gamma) < tol) {
            // Aligned to the requested tolerance. The stationarity residuals
            // are steep in alpha when the inverted radius is large, so a few
            // more full steps toward the numeric fixpoint buy real digits.
            double last = std::abs(gamma);
            double step = gamma;
            for (int p = 0; p < 8; ++p) {
                const auto next = eval(norm_2pi(alpha + step));
                if (!next) break;
                alpha = norm_2pi(alpha + step);
                state = next;
                ++it;
                if (state->v.norm() < tol) break;
                step = signed_angle(state->vm, state->v);
                if (std::abs(step) >= last) break;
                last = std::abs(step);
            }
            // Let the stationarity equations place the last digits, but only
            // keep the polished heading if it still satisfies the alignment
            // contract.
            const double polished = detail::residual_polish(inst, cls, alpha);
            if (polished != alpha) {
                const auto check = eval(polished);
                if (check && std::abs(signed_angle(check->vm, check->v)) < tol) alpha = polished;
            }
            return {alpha, it, IterationStatus::aligned};
        }

        // Plain gamma steps contract only linearly, and overshoot-prone
        // geometries leave long alternating-sign tails. Once gamma starts
        // contracting (the iterate is inside a basin), a secant step on
        // gamma as a function of alpha converges superlinearly; the
        // acceptance safeguard below still vets it, falling back to the
        // plain step on rejection.
        double step = gamma;
        if (have_prev && std::abs(gamma) <= std::abs(prev_gamma) && prev_step != 0.0) {
            const double dg = gamma - prev_gamma;
            if (dg != 0.0) {
                const double secant = -gamma * prev_step / dg;
                if (std::isfinite(secant) && std::abs(secant) < pi) step = secant;
            }
        }
        bool accepted = false;
        double taken = 0.0;
        for (int h = 0; h < 48 && !accepted; ++h) {
            const double cand = alpha + step;
            if (auto next = eval(cand); next && next->objective >= state->objective - 1e-15) {
                alpha = norm_2pi(cand);
                state = next;
                accepted = true;
                taken = step;
            } else {
                step = (h == 0 && step != gamma) ? gamma : step * 0.5;
            }
        }
        if (!accepted) return {alpha, it + 1, IterationStatus::stalled};
        prev_gamma = gamma;
        prev_step = taken;
        have_prev = true;
    }
    return {alpha, max_iter, IterationStatus::max_iter};
}

struct HeadingLength {
    double heading = 0.0;
    double total_length = std::numeric_limits<double>::infinity();
};

/// Baseline: try k uniformly spaced mid headings and keep the best. Ties
/// resolve to the smallest heading.
inline HeadingLength discretize_heading(const ThreePointInstance& inst, int k) {
    validate(inst);
    if (k < 1) throw std::invalid_argument("discretize_heading: k must be >= 1");
    HeadingLength best;
    for (int j = 0; j < k; ++j) {
        const double alpha = two_pi * j / k;
        const double len = two_leg_length(inst, alpha);
        if (len < best.total_length) best = {alpha, len};
    }
    return best;
}

namespace detail {

// Fallback for closely spaced waypoints: heading grid, then golden-section
// refinement inside every bracket holding a local minimum of the samples.
// The two-leg length switches Dubins words as the heading sweeps, leaving
// several basins of similar depth, so refining only the best few samples
// can settle on the wrong one.
inline HeadingLength fallback_heading(const ThreePointInstance& inst, int k) {
    std::vector<double> len(static_cast<std::size_t>(k));
    HeadingLength best;
    for (int j = 0; j < k; ++j) {
        len[static_cast<std::size_t>(j)] = two_leg_length(inst, two_pi * j / k);
        if (len[static_cast<std::size_t>(j)] < best.total_length)
            best = {two_pi * j / k, len[static_cast<std::size_t>(j)]};
    }
    const double h = two_pi / k;
    for (int j = 0; j < k; ++j) {
        const double prev = len[static_cast<std::size_t>((j + k - 1) % k)];
        const double next = len[static_cast<std::size_t>((j + 1) % k)];
        if (len[static_cast<std::size_t>(j)] > prev || len[static_cast<std::size_t>(j)] > next) continue;
        const double center = two_pi * j / k;
        auto [x, fx] = golden_min([&](double a) { return two_leg_length(inst, a); },
                                  center - h, center + h, 1e-10);
        if (fx < best.total_length) best = {norm_2pi(x), fx};
    }
    return best;
}

}  // namespace detail

enum class SolveMethod : unsigned char { approx, iterative, discretized_fallback };

struct ThreePointOptions {
    double tol = 1e-10;
    int max_iter = 64;
    /// Grid size for the close-waypoint fallback. The optimal heading's
    /// basin can be narrower than a degree when the points are within a few
    /// turn radii, so the default matches the resolution the quality bound
    /// is stated against.
    int fallback_k = 3600;
    /// Stop at the closed-form heading instead of refining it.
    bool approx_only = false;
};

struct ThreePointSolution {
    double heading = 0.0;
    /// Winning class; empty when the discretized fallback won.
    std::optional<PathClass> path_class;
    DubinsPath first_leg;
    DubinsPath second_leg;
    double total_length = 0.0;
    int iterations = 0;
    SolveMethod method = SolveMethod::iterative;
};

/// Optimize the heading at the waypoint.
///
/// Every class gets the closed-form heading and, unless approx_only is set,
/// bisector-alignment refinement; infeasible classes drop out silently. When
/// any pairwise distance falls below 4*rmin the class analysis no longer
/// covers every optimal path shape, so a discretized fallback with local
/// refinement competes as well. Ties prefer classes in word order, then the
/// fallback.
inline ThreePointSolution solve_three_point(const ThreePointInstance& inst,
                                            const ThreePointOptions& opts = {}) {
    validate(inst);

    struct Candidate {
        double length = std::numeric_limits<double>::infinity();
        double heading = 0.0;
        int class_index = -1;
        int iterations = 0;
        SolveMethod method = SolveMethod::iterative;
    };
    Candidate best;

    const auto classes = enumerate_classes(inst);
    for (int i = 0; i < 8; ++i) {
        const PathClass& cls = classes[i];
        if ((cls.center_b - cls.center_a).norm() < 1e-9) continue;
        const double a0 = approx_heading(inst, cls);
        double heading = a0;
        int iters = 0;
        SolveMethod method = SolveMethod::approx;
        if (!opts.approx_only) {
            const auto it = iterate_heading(inst, cls, a0, opts.tol, opts.max_iter);
            if (it.status == IterationStatus::infeasible) continue;
            heading = it.alpha;
            iters = it.iterations;
            method = SolveMethod::iterative;
        }
        const double len = two_leg_length(inst, heading);
        if (len < best.length) best = {len, heading, i, iters, method};
    }

    const bool relaxed = min_pairwise_distance(inst) < 4.0 * inst.rmin;
    if ((relaxed && !opts.approx_only) || best.class_index < 0) {
        const auto fb = detail::fallback_heading(inst, opts.fallback_k);
        if (fb.total_length < best.length)
            best = {fb.total_length, fb.heading, -1, 0, SolveMethod::discretized_fallback};
    }

    ThreePointSolution sol;
    sol.heading = norm_2pi(best.heading);
    if (best.class_index >= 0) sol.path_class = classes[best.class_index];
    const Pose m{inst.mid, sol.heading};
    sol.first_leg = solve_pair(inst.start, m, inst.rmin);
    sol.second_leg = solve_pair(m, inst.end, inst.rmin);
    sol.total_length = sol.first_leg.total_length + sol.second_leg.total_length;
    sol.iterations = best.iterations;
    sol.method = best.method;
    return sol;
}

}  // namespace dubins3
