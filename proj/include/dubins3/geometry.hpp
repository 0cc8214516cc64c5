#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>

namespace dubins3 {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Normalize an angle into [0, 2*pi). Values a hair below 2*pi collapse to 0
/// so that a full turn produced by rounding never survives normalization.
inline double norm_2pi(double a) {
    double m = std::fmod(a, two_pi);
    if (m < 0.0) m += two_pi;
    if (two_pi - m < 1e-12) m = 0.0;
    return m;
}

/// Wrap an angle into (-pi, pi].
inline double wrap_pi(double a) {
    double m = std::fmod(a + pi, two_pi);
    if (m <= 0.0) m += two_pi;
    return m - pi;
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }

    [[nodiscard]] double norm() const { return std::hypot(x, y); }
    [[nodiscard]] double norm_sq() const { return x * x + y * y; }

    [[nodiscard]] Vec2 normalized() const {
        const double n = norm();
        if (n == 0.0) throw std::domain_error("cannot normalize a zero vector");
        return {x / n, y / n};
    }

    /// Counterclockwise rotation by `angle` radians.
    [[nodiscard]] Vec2 rotated(double angle) const {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c * x - s * y, s * x + c * y};
    }

    /// Counterclockwise quarter turn.
    [[nodiscard]] Vec2 perp() const { return {-y, x}; }
};

using Point = Vec2;

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Point a, Point b) { return (a - b).norm(); }

/// Unit vector with the given direction angle.
inline Vec2 unit_vec(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Direction angle of a vector, in (-pi, pi].
inline double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

/// Signed angle that rotates `from` onto `to`, in (-pi, pi].
inline double signed_angle(Vec2 from, Vec2 to) {
    return std::atan2(cross(from, to), dot(from, to));
}

struct Circle {
    Point center;
    double radius = 1.0;

    Circle() = default;
    Circle(Point c, double r) : center(c), radius(r) {
        if (!(r > 0.0)) throw std::invalid_argument("circle radius must be positive");
    }
};

/// Directed infinite line; `direction` is kept unit length.
struct Line {
    Point point;
    Vec2 direction;

    Line() : point{}, direction{1.0, 0.0} {}
    Line(Point p, Vec2 d) : point(p), direction(d.normalized()) {}

    /// Unsigned distance from `q` to the line.
    [[nodiscard]] double distance_to(Point q) const {
        return std::abs(cross(direction, q - point));
    }

    /// Positive when `q` lies to the left of the direction of travel.
    [[nodiscard]] double signed_offset(Point q) const {
        return cross(direction, q - point);
    }

    [[nodiscard]] Point foot(Point q) const {
        return point + direction * dot(q - point, direction);
    }
};

/// A circle or a line: the closure of circles under inversion.
using GeneralizedCircle = std::variant<Circle, Line>;

inline bool is_circle(const GeneralizedCircle& g) { return std::holds_alternative<Circle>(g); }
inline const Circle& as_circle(const GeneralizedCircle& g) { return std::get<Circle>(g); }
inline const Line& as_line(const GeneralizedCircle& g) { return std::get<Line>(g); }

namespace detail {
// Points closer than this to the inversion center have no usable image.
inline constexpr double inversion_eps = 1e-9;
}  // namespace detail

/// Invert `p` through `inv`: the image lies on the ray center->p at distance
/// radius^2 / |p - center|.
inline Point invert_point(Point p, const Circle& inv) {
    const Vec2 d = p - inv.center;
    const double n = d.norm();
    if (n < detail::inversion_eps)
        throw std::domain_error("invert_point: point coincides with the inversion center");
    const double k = inv.radius * inv.radius / (n * n);
    return inv.center + d * k;
}

/// Invert a line. A line through the center maps to itself; any other line
/// maps to a circle through the center whose diameter ends at the image of
/// the line's closest point.
inline GeneralizedCircle invert_line(const Line& l, const Circle& inv) {
    const Point f = l.foot(inv.center);
    const double h = distance(f, inv.center);
    if (h < detail::inversion_eps) return l;
    const Vec2 u = (f - inv.center) * (1.0 / h);
    const double r = inv.radius * inv.radius / (2.0 * h);
    return Circle{inv.center + u * r, r};
}

/// Invert a circle. A circle through the center maps to a line perpendicular
/// to the center ray; any other circle maps to a circle.
inline GeneralizedCircle invert_circle(const Circle& c, const Circle& inv) {
    const Vec2 d = c.center - inv.center;
    const double dist_c = d.norm();
    if (std::abs(dist_c - c.radius) < detail::inversion_eps) {
        // Image line: through the image of the point opposite the center,
        // perpendicular to the ray joining the centers.
        if (dist_c < detail::inversion_eps)
            throw std::domain_error("invert_circle: circle is centered on the inversion center");
        const Vec2 u = d * (1.0 / dist_c);
        const Point through = inv.center + u * (inv.radius * inv.radius / (2.0 * c.radius));
        return Line{through, u.perp()};
    }
    const double s = inv.radius * inv.radius / (dist_c * dist_c - c.radius * c.radius);
    return Circle{inv.center + d * s, std::abs(s) * c.radius};
}

enum class TangentKind { outer, inner };
enum class TangentSide { left, right };

/// Common tangent of two equal-radius circles, oriented from c1 toward c2.
///
/// Outer tangents run parallel to the center line; `left` selects the one
/// offset a quarter turn counterclockwise from it. Inner tangents cross
/// between the circles and exist only when the centers are more than 2r
/// apart; `left` selects the one rotated +asin(2r/d) from the center line.
/// Returns nullopt when the requested tangent does not exist.
inline std::optional<Line> common_tangent(const Circle& c1, const Circle& c2,
                                          TangentKind kind, TangentSide side) {
    if (std::abs(c1.radius - c2.radius) > 1e-9)
        throw std::invalid_argument("common_tangent: radii must be equal");
    const double r = c1.radius;
    const Vec2 sep = c2.center - c1.center;
    const double d = sep.norm();
    if (d < detail::inversion_eps) return std::nullopt;
    const Vec2 u = sep * (1.0 / d);
    const double sgn = (side == TangentSide::left) ? 1.0 : -1.0;
    if (kind == TangentKind::outer) {
        const Point contact = c1.center + u.perp() * (sgn * r);
        return Line{contact, u};
    }
    if (d <= 2.0 * r * (1.0 + 1e-12)) return std::nullopt;
    const Vec2 t = u.rotated(sgn * std::asin(2.0 * r / d));
    // Contact sits a quarter turn from the travel direction, on the side
    // opposite the crossing.
    const Point contact = c1.center + t.perp() * (-sgn * r);
    return Line{contact, t};
}

/// Rotate `p` about `pivot` by `angle` radians (counterclockwise).
inline Point rotate_about(Point p, Point pivot, double angle) {
    return pivot + (p - pivot).rotated(angle);
}

}  // namespace dubins3
