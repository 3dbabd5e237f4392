#pragma once
/**
 * @file   geometry.hpp
 * @brief  Planar primitives for wedge-shaped relay regions.
 *
 * A wedge is the sector of a disk of radius @c radius centred at @c apex,
 * spanning +/- @c half_angle around the bisector direction @c orientation.
 * A wedge with half angle pi/2 is the forward half-disk; pi is the full disk.
 *
 * Membership is closed: points on both bounding rays and on the arc belong
 * to the wedge. All angles are radians; normalized angles lie in (-pi, pi].
 */

#include <halfdisk/random.hpp>

#include <cmath>
#include <numbers>

namespace halfdisk
{
    struct Point2D
    {
        double x{0.0};
        double y{0.0};

        constexpr Point2D operator+ (const Point2D &o) const noexcept { return {x + o.x, y + o.y}; }
        constexpr Point2D operator- (const Point2D &o) const noexcept { return {x - o.x, y - o.y}; }
        constexpr Point2D operator* (double s) const noexcept { return {x * s, y * s}; }
        constexpr bool operator== (const Point2D &) const noexcept = default;

        [[nodiscard]] constexpr double dot (const Point2D &o) const noexcept { return x * o.x + y * o.y; }
        [[nodiscard]] double norm () const noexcept { return std::hypot (x, y); }
        [[nodiscard]] double angle () const noexcept { return std::atan2 (y, x); }
    };

    [[nodiscard]] inline double distance (const Point2D &a, const Point2D &b) noexcept { return (a - b).norm (); }

    /// Unit vector at angle @p theta.
    [[nodiscard]] inline Point2D unit_vector (double theta) noexcept { return {std::cos (theta), std::sin (theta)}; }

    /// Wrap an angle to (-pi, pi].
    [[nodiscard]] double normalize_angle (double angle) noexcept;

    /// Absolute angular separation of two directions, in [0, pi].
    [[nodiscard]] double angular_distance (double a, double b) noexcept;

    struct Wedge
    {
        Point2D apex;
        double orientation{0.0};
        double radius{1.0};
        double half_angle{std::numbers::pi / 2.0};

        /// Wedge of angle 2*eta*pi oriented from @p apex toward @p target.
        [[nodiscard]] static Wedge toward (const Point2D &apex, const Point2D &target, double radius, double eta);

        [[nodiscard]] double area () const noexcept { return half_angle * radius * radius; }
    };

    /// Displacement of a relay expressed in the local frame of the sender:
    /// x axis along the sender-to-destination direction.
    struct LocalStep
    {
        double x_prime{0.0};
        double y_prime{0.0};
    };

    [[nodiscard]] bool wedge_contains (const Wedge &w, const Point2D &p) noexcept;

    /// Area of the intersection of two discs with radii @p r1, @p r2 whose centres are @p d apart.
    [[nodiscard]] double lens_area (double r1, double r2, double d);

    /// Area of the intersection of two wedges. Absolute error below 1e-6 times the larger squared radius.
    [[nodiscard]] double wedge_overlap_area (const Wedge &w1, const Wedge &w2);

    /// Uniform point on the wedge of radius @p R and angle 2*eta*pi centred on the local x axis.
    [[nodiscard]] LocalStep sample_uniform_wedge (Rng &rng, double R, double eta);

} // namespace halfdisk
