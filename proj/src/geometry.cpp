#include <halfdisk/geometry.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace halfdisk
{
    namespace
    {
        constexpr double kPi = std::numbers::pi;
        constexpr double kAngleSlack = 1e-12;

        double cross (const Point2D &a, const Point2D &b) noexcept { return a.x * b.y - a.y * b.x; }

        // Ray parameters t >= 0 where origin + t*dir meets the circle (centre, radius).
        void ray_circle (const Point2D &origin, const Point2D &dir, const Point2D &centre, double radius, std::vector<double> &out)
        {
            const Point2D m = origin - centre;
            const double b = m.dot (dir);
            const double c = m.dot (m) - radius * radius;
            const double disc = b * b - c;
            if (disc < 0.0)
                return;
            const double s = std::sqrt (disc);
            out.push_back (-b - s);
            out.push_back (-b + s);
        }

        // Ray parameter where origin + t*dir crosses the line through p with direction q.
        void ray_line (const Point2D &origin, const Point2D &dir, const Point2D &p, const Point2D &q, std::vector<double> &out)
        {
            const double denom = cross (dir, q);
            if (std::fabs (denom) < 1e-15)
                return;
            out.push_back (cross (p - origin, q) / denom);
        }

        // Integral of t dt over the part of the ray {apex1 + t u(theta), 0 <= t <= R1} inside w2.
        double radial_moment (const Wedge &w1, const Wedge &w2, double theta, std::vector<double> &cuts)
        {
            const Point2D dir = unit_vector (theta);
            cuts.clear ();
            cuts.push_back (0.0);
            cuts.push_back (w1.radius);
            ray_circle (w1.apex, dir, w2.apex, w2.radius, cuts);
            if (w2.half_angle < kPi)
            {
                ray_line (w1.apex, dir, w2.apex, unit_vector (w2.orientation - w2.half_angle), cuts);
                ray_line (w1.apex, dir, w2.apex, unit_vector (w2.orientation + w2.half_angle), cuts);
            }
            for (double &c : cuts)
                c = std::clamp (c, 0.0, w1.radius);
            std::sort (cuts.begin (), cuts.end ());

            double moment = 0.0;
            for (std::size_t i = 0; i + 1 < cuts.size (); ++i)
            {
                const double lo = cuts[i];
                const double hi = cuts[i + 1];
                if (hi - lo <= 0.0)
                    continue;
                const double mid = 0.5 * (lo + hi);
                if (wedge_contains (w2, w1.apex + dir * mid))
                    moment += 0.5 * (hi * hi - lo * lo);
            }
            return moment;
        }

        // Directions (seen from w1's apex) at which the integrand can kink.
        std::vector<double> critical_directions (const Wedge &w1, const Wedge &w2)
        {
            std::vector<Point2D> points{w2.apex};
            if (w2.half_angle < kPi)
            {
                for (double side : {-1.0, 1.0})
                {
                    const Point2D edge = unit_vector (w2.orientation + side * w2.half_angle);
                    points.push_back (w2.apex + edge * w2.radius);
                    // Bounding segment of w2 against circle 1.
                    std::vector<double> ts;
                    ray_circle (w2.apex, edge, w1.apex, w1.radius, ts);
                    for (double t : ts)
                        if (t >= 0.0 && t <= w2.radius)
                            points.push_back (w2.apex + edge * t);
                }
            }
            // Circle-circle intersections.
            const Point2D delta = w2.apex - w1.apex;
            const double d = delta.norm ();
            if (d > 0.0 && d <= w1.radius + w2.radius && d >= std::fabs (w1.radius - w2.radius))
            {
                const double a = (d * d + w1.radius * w1.radius - w2.radius * w2.radius) / (2.0 * d);
                const double h = std::sqrt (std::max (0.0, w1.radius * w1.radius - a * a));
                const Point2D e = delta * (1.0 / d);
                const Point2D n{-e.y, e.x};
                points.push_back (w1.apex + e * a + n * h);
                points.push_back (w1.apex + e * a - n * h);
            }

            std::vector<double> dirs;
            for (const auto &p : points)
            {
                const Point2D v = p - w1.apex;
                if (v.norm () > 1e-14)
                    dirs.push_back (v.angle ());
            }
            // Tangents from apex 1 to circle 2.
            if (d > w2.radius)
            {
                const double spread = std::asin (w2.radius / d);
                dirs.push_back (delta.angle () - spread);
                dirs.push_back (delta.angle () + spread);
            }
            return dirs;
        }
    } // namespace

    double normalize_angle (double angle) noexcept
    {
        double a = std::remainder (angle, 2.0 * kPi);
        if (a <= -kPi)
            a += 2.0 * kPi;
        return a;
    }

    double angular_distance (double a, double b) noexcept { return std::fabs (normalize_angle (a - b)); }

    Wedge Wedge::toward (const Point2D &apex, const Point2D &target, double radius, double eta)
    {
        return Wedge{apex, normalize_angle ((target - apex).angle ()), radius, eta * kPi};
    }

    bool wedge_contains (const Wedge &w, const Point2D &p) noexcept
    {
        const Point2D d = p - w.apex;
        const double r = d.norm ();
        if (r > w.radius)
            return false;
        if (r == 0.0 || w.half_angle >= kPi)
            return true;
        return angular_distance (d.angle (), w.orientation) <= w.half_angle + kAngleSlack;
    }

    double lens_area (double r1, double r2, double d)
    {
        if (!(r1 > 0.0) || !(r2 > 0.0) || !(d >= 0.0))
            throw std::invalid_argument ("lens_area: radii must be positive and distance non-negative");
        if (d >= r1 + r2)
            return 0.0;
        const double rmin = std::min (r1, r2);
        if (d <= std::fabs (r1 - r2))
            return kPi * rmin * rmin;

        const double c1 = std::clamp ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0);
        const double c2 = std::clamp ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0);
        const double kite = 0.5 * std::sqrt (std::max (0.0, (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)));
        const double area = r1 * r1 * std::acos (c1) + r2 * r2 * std::acos (c2) - kite;
        return std::clamp (area, 0.0, kPi * rmin * rmin);
    }

    double wedge_overlap_area (const Wedge &w1, const Wedge &w2)
    {
        const double lo = w1.orientation - w1.half_angle;
        const double hi = w1.orientation + w1.half_angle;

        // Split w1's angular range at every critical direction, unwrapped into [lo, hi].
        std::vector<double> splits{lo, hi};
        for (double dir : critical_directions (w1, w2))
        {
            double a = lo + std::fmod (std::fmod (dir - lo, 2.0 * kPi) + 2.0 * kPi, 2.0 * kPi);
            if (a > lo && a < hi)
                splits.push_back (a);
        }
        std::sort (splits.begin (), splits.end ());

        std::vector<double> cuts;
        cuts.reserve (8);
        auto integrand = [&] (double theta) { return radial_moment (w1, w2, theta, cuts); };

        const double scale = std::max (w1.radius, w2.radius);
        double area = 0.0;
        for (std::size_t i = 0; i + 1 < splits.size (); ++i)
        {
            const double a = splits[i];
            const double b = splits[i + 1];
            if (b - a < 1e-15)
                continue;
            area += boost::math::quadrature::gauss_kronrod<double, 15>::integrate (integrand, a, b, 12, 1e-11);
        }
        return std::clamp (area, 0.0, std::min (w1.area (), w2.area ()) + 1e-9 * scale * scale);
    }

    LocalStep sample_uniform_wedge (Rng &rng, double R, double eta)
    {
        const double theta = (2.0 * uniform01 (rng) - 1.0) * eta * kPi;
        const double v = std::sqrt (uniform01 (rng));
        return {R * v * std::cos (theta), R * v * std::sin (theta)};
    }

} // namespace halfdisk
