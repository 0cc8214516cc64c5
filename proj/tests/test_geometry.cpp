#include <cmath>
#include <random>

#include "doctest.h"
#include "dubins3/geometry.hpp"

using namespace dubins3;

namespace {

std::mt19937_64 rng_for(const char* tag) {
    std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
    return std::mt19937_64(seq);
}

Point random_point(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return {u(rng), u(rng)};
}

}  // namespace

TEST_CASE("angle normalization") {
    CHECK(norm_2pi(-pi / 2) == doctest::Approx(3 * pi / 2));
    CHECK(norm_2pi(two_pi) == 0.0);
    CHECK(norm_2pi(two_pi - 1e-14) == 0.0);
    CHECK(wrap_pi(3 * pi / 2) == doctest::Approx(-pi / 2));
    CHECK(wrap_pi(pi) == doctest::Approx(pi));
}

TEST_CASE("invert_point maps along the center ray") {
    const Circle inv{{0, 0}, 1.0};
    const Point a = invert_point({2, 0}, inv);
    CHECK(a.x == doctest::Approx(0.5));
    CHECK(a.y == doctest::Approx(0.0).epsilon(1e-12));

    const Point b = invert_point({0.5, 0}, inv);
    CHECK(b.x == doctest::Approx(2.0));

    CHECK_THROWS_AS((void)invert_point({0, 0}, inv), std::domain_error);
    CHECK_THROWS_AS((void)invert_point({1e-12, 0}, inv), std::domain_error);
}

TEST_CASE("invert_point is an involution") {
    auto rng = rng_for("inv-involution");
    for (int i = 0; i < 500; ++i) {
        const Circle inv{random_point(rng, -5, 5), std::uniform_real_distribution<double>(0.1, 3.0)(rng)};
        Point p = random_point(rng, -10, 10);
        if (distance(p, inv.center) < 1e-3) continue;
        const Point back = invert_point(invert_point(p, inv), inv);
        CHECK(distance(back, p) < 1e-9);
    }
}

TEST_CASE("invert_line") {
    const Circle inv{{0, 0}, 1.0};

    SUBCASE("off-center line becomes a circle through the center") {
        const auto g = invert_line(Line{{2, 0}, {0, 1}}, inv);
        REQUIRE(is_circle(g));
        CHECK(as_circle(g).center.x == doctest::Approx(0.25));
        CHECK(as_circle(g).center.y == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(as_circle(g).radius == doctest::Approx(0.25));
    }
    SUBCASE("line through the center is fixed") {
        const auto g = invert_line(Line{{0, 0}, {1, 1}}, inv);
        REQUIRE(!is_circle(g));
    }
    SUBCASE("image passes through the inversion center") {
        auto rng = rng_for("line-image");
        for (int i = 0; i < 200; ++i) {
            const Circle c{random_point(rng, -3, 3), std::uniform_real_distribution<double>(0.2, 2.0)(rng)};
            const Line l{random_point(rng, -10, 10), random_point(rng, -1, 1)};
            if (l.distance_to(c.center) < 1e-3 || l.direction.norm() < 1e-6) continue;
            const auto g = invert_line(l, c);
            REQUIRE(is_circle(g));
            CHECK(std::abs(distance(as_circle(g).center, c.center) - as_circle(g).radius) < 1e-9);
        }
    }
}

TEST_CASE("invert_circle") {
    const Circle inv{{0, 0}, 1.0};

    SUBCASE("circle away from the center") {
        const auto g = invert_circle(Circle{{3, 0}, 1.0}, inv);
        REQUIRE(is_circle(g));
        CHECK(as_circle(g).center.x == doctest::Approx(0.375));
        CHECK(as_circle(g).radius == doctest::Approx(0.125));
    }
    SUBCASE("circle through the center becomes a line") {
        const auto g = invert_circle(Circle{{1, 0}, 1.0}, inv);
        REQUIRE(!is_circle(g));
        // The image line passes through the inverse of the far point (2, 0).
        CHECK(as_line(g).distance_to({0.5, 0}) < 1e-12);
        CHECK(std::abs(dot(as_line(g).direction, Vec2{1, 0})) < 1e-12);
    }
    SUBCASE("involution on circles") {
        auto rng = rng_for("circle-involution");
        for (int i = 0; i < 200; ++i) {
            const Circle inv2{random_point(rng, -2, 2), std::uniform_real_distribution<double>(0.3, 2.0)(rng)};
            const Circle c{random_point(rng, -8, 8), std::uniform_real_distribution<double>(0.2, 2.0)(rng)};
            if (std::abs(distance(c.center, inv2.center) - c.radius) < 1e-2) continue;
            const auto g = invert_circle(c, inv2);
            REQUIRE(is_circle(g));
            const auto back = invert_circle(as_circle(g), inv2);
            REQUIRE(is_circle(back));
            CHECK(distance(as_circle(back).center, c.center) < 1e-8);
            CHECK(as_circle(back).radius == doctest::Approx(c.radius).epsilon(1e-8));
        }
    }
}

TEST_CASE("inversion preserves angles") {
    auto rng = rng_for("conformal");
    std::uniform_real_distribution<double> ang(0.0, two_pi);
    int done = 0;
    while (done < 200) {
        const Circle inv{random_point(rng, -2, 2), std::uniform_real_distribution<double>(0.5, 2.0)(rng)};
        const Point p = random_point(rng, -5, 5);
        if (distance(p, inv.center) < 0.2) continue;
        const Line l1{p, unit_vec(ang(rng))};
        const Line l2{p, unit_vec(ang(rng))};
        if (l1.distance_to(inv.center) < 1e-3 || l2.distance_to(inv.center) < 1e-3) continue;
        const double between = std::abs(wrap_pi(signed_angle(l1.direction, l2.direction)));
        const double folded = std::min(between, pi - between);

        const auto g1 = invert_line(l1, inv);
        const auto g2 = invert_line(l2, inv);
        REQUIRE(is_circle(g1));
        REQUIRE(is_circle(g2));
        const Point ip = invert_point(p, inv);
        // Tangents at the shared image point are perpendicular to the radii.
        const Vec2 t1 = (ip - as_circle(g1).center).perp();
        const Vec2 t2 = (ip - as_circle(g2).center).perp();
        const double between_img = std::abs(wrap_pi(signed_angle(t1, t2)));
        const double folded_img = std::min(between_img, pi - between_img);
        CHECK(std::abs(folded - folded_img) < 1e-7);
        ++done;
    }
}

TEST_CASE("common_tangent outer") {
    const Circle c1{{0, 0}, 1.0}, c2{{4, 0}, 1.0};
    const auto left = common_tangent(c1, c2, TangentKind::outer, TangentSide::left);
    REQUIRE(left.has_value());
    CHECK(left->distance_to({0, 1}) < 1e-12);
    CHECK(left->direction.x == doctest::Approx(1.0));
    CHECK(left->direction.y == doctest::Approx(0.0).epsilon(1e-12));

    const auto right = common_tangent(c1, c2, TangentKind::outer, TangentSide::right);
    REQUIRE(right.has_value());
    CHECK(right->distance_to({0, -1}) < 1e-12);
}

TEST_CASE("common_tangent inner") {
    const Circle c1{{0, 0}, 1.0}, c2{{4, 0}, 1.0};
    const auto t = common_tangent(c1, c2, TangentKind::inner, TangentSide::left);
    REQUIRE(t.has_value());
    CHECK(angle_of(t->direction) == doctest::Approx(std::asin(0.5)));

    const auto t3 = common_tangent(c1, Circle{{3, 0}, 1.0}, TangentKind::inner, TangentSide::right);
    REQUIRE(t3.has_value());
    CHECK(angle_of(t3->direction) == doctest::Approx(-std::asin(2.0 / 3.0)));

    CHECK(!common_tangent(c1, Circle{{2, 0}, 1.0}, TangentKind::inner, TangentSide::left));
    CHECK(!common_tangent(c1, Circle{{1.5, 0}, 1.0}, TangentKind::inner, TangentSide::left));
}

TEST_CASE("common_tangent touches both circles") {
    auto rng = rng_for("tangent-dist");
    std::uniform_real_distribution<double> rad(0.2, 2.0);
    int done = 0;
    while (done < 300) {
        const double r = rad(rng);
        const Circle c1{random_point(rng, -10, 10), r};
        const Circle c2{random_point(rng, -10, 10), r};
        const double d = distance(c1.center, c2.center);
        if (d < 1e-3) continue;
        for (auto kind : {TangentKind::outer, TangentKind::inner}) {
            for (auto side : {TangentSide::left, TangentSide::right}) {
                const auto t = common_tangent(c1, c2, kind, side);
                if (kind == TangentKind::inner && d <= 2 * r) {
                    CHECK(!t);
                    continue;
                }
                REQUIRE(t.has_value());
                CHECK(std::abs(t->distance_to(c1.center) - r) < 1e-9);
                CHECK(std::abs(t->distance_to(c2.center) - r) < 1e-9);
                // Inner tangents separate the centers, outer ones do not.
                const double s1 = t->signed_offset(c1.center);
                const double s2 = t->signed_offset(c2.center);
                if (kind == TangentKind::inner)
                    CHECK(s1 * s2 < 0.0);
                else
                    CHECK(s1 * s2 > 0.0);
            }
        }
        ++done;
    }
}

TEST_CASE("rotate_about") {
    const Point p = rotate_about({1, 0}, {0, 0}, pi / 2);
    CHECK(p.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(1.0));

    const Point q = rotate_about({2, 1}, {1, 1}, pi);
    CHECK(q.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(q.y == doctest::Approx(1.0));

    auto rng = rng_for("rotate");
    for (int i = 0; i < 100; ++i) {
        const Point a = random_point(rng, -5, 5);
        const Point pivot = random_point(rng, -5, 5);
        const double ang = std::uniform_real_distribution<double>(-10, 10)(rng);
        CHECK(distance(rotate_about(a, pivot, ang), pivot) ==
              doctest::Approx(distance(a, pivot)).epsilon(1e-10));
    }
}
