#include <halfdisk/bounds.hpp>
#include <halfdisk/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace halfdisk
{
    namespace
    {
        constexpr double kPi = std::numbers::pi;

        void require_eta (double eta)
        {
            if (!(eta > 0.0) || eta > 1.0)
                throw std::invalid_argument ("eta must lie in (0, 1]");
        }

        void require_network (double N, double d)
        {
            if (!(N > 0.0) || !std::isfinite (N))
                throw std::invalid_argument ("N must be positive");
            if (!(d > 0.0) || d > 1.0)
                throw std::invalid_argument ("d must lie in (0, 1]");
        }

        double log_binomial (double n, double k) { return std::lgamma (n + 1.0) - std::lgamma (k + 1.0) - std::lgamma (n - k + 1.0); }

        // Polar tensor-product rule over the unit half-disk, weights include the Jacobian
        // and the uniform density 2/pi.
        struct HalfDiskRule
        {
            std::vector<double> x, y, w;

            explicit HalfDiskRule (std::size_t n)
            {
                const auto radial = gauss_legendre (n, 0.0, 1.0);
                const auto angular = gauss_legendre (n, -kPi / 2.0, kPi / 2.0);
                x.reserve (n * n);
                y.reserve (n * n);
                w.reserve (n * n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                    {
                        const double v = radial.nodes[i];
                        const double t = angular.nodes[j];
                        x.push_back (v * std::cos (t));
                        y.push_back (v * std::sin (t));
                        w.push_back (2.0 / kPi * radial.weights[i] * angular.weights[j] * v);
                    }
            }

            // E g(r, .) with lengths scaled by R = 1.
            [[nodiscard]] double expected_g (double rho) const
            {
                double sum = 0.0;
                for (std::size_t k = 0; k < w.size (); ++k)
                {
                    // sqrt((rho - x)^2 + y^2) - rho without cancellation at large rho.
                    const double num = x[k] * x[k] + y[k] * y[k] - 2.0 * rho * x[k];
                    const double den = std::sqrt ((rho - x[k]) * (rho - x[k]) + y[k] * y[k]) + rho;
                    sum += w[k] * num / den;
                }
                return sum;
            }
        };

        const HalfDiskRule &half_disk_rule (std::size_t n)
        {
            static const HalfDiskRule coarse (256);
            static const HalfDiskRule fine (512);
            return n == 256 ? coarse : fine;
        }

        void require_drift_args (double r, double R)
        {
            if (!(R > 0.0) || !(r >= R) || !std::isfinite (r))
                throw std::invalid_argument ("expected_g requires r >= R > 0");
        }
    } // namespace

    double empty_wedge_prob_exact (std::size_t i, double eta)
    {
        require_eta (eta);
        if (i == 0)
            return 1.0;
        if (i == 1)
            return 1.0;
        const auto kmax = std::min<std::size_t> (static_cast<std::size_t> (std::floor (1.0 / eta)), i);
        const double n = static_cast<double> (i);
        double sum = 0.0;
        double first = 0.0;
        double binom = 1.0;
        for (std::size_t k = 1; k <= kmax; ++k)
        {
            const double kk = static_cast<double> (k);
            binom = binom * (n - kk + 1.0) / kk;
            const double base = 1.0 - kk * eta;
            double term = 0.0;
            if (base > 0.0)
                term = std::isfinite (binom) ? binom * std::pow (base, n - 1.0) : std::exp (log_binomial (n, kk) + (n - 1.0) * std::log (base));
            if (k == 1)
                first = term;
            sum += (k % 2 == 1) ? term : -term;
        }
        // The first term is the union bound; keep roundoff from crossing it.
        return std::clamp (std::min (sum, first), 0.0, 1.0);
    }

    double empty_wedge_prob_upper (std::size_t i, double eta)
    {
        require_eta (eta);
        if (i == 0)
            throw std::invalid_argument ("empty_wedge_prob_upper requires i >= 1");
        return static_cast<double> (i) * std::pow (1.0 - eta, static_cast<double> (i) - 1.0);
    }

    double sigma_interior (double N, double d, double eta, InteriorCount count)
    {
        require_network (N, d);
        require_eta (eta);
        const double sd = std::sqrt (d);
        const double fraction = count == InteriorCount::simplified ? 1.0 - 2.0 * sd : 1.0 - (2.0 - sd) * sd;
        if (fraction <= 0.0)
            return 0.0;
        const double dN = d * N;
        return fraction * N * (dN + 1.0) * std::exp (-eta * dN);
    }

    double sigma_edge (double N, double d, double eta)
    {
        require_network (N, d);
        require_eta (eta);
        const double dN = d * N;
        const double sd = std::sqrt (d);
        const double log_dN = std::log (dN);
        return (96.0 * kPi * log_dN * log_dN + 1.0) / sd * std::exp (-eta * dN / 2.0) + 2.0 * sd * N * std::exp (-dN / 2.0);
    }

    BoundReport sigma_total (double N, double d, double eta)
    {
        BoundReport report;
        report.sigma_interior = sigma_interior (N, d, eta);
        report.sigma_edge = sigma_edge (N, d, eta);
        report.sigma_total = report.sigma_interior + report.sigma_edge;
        report.N = N;
        report.d = d;
        report.eta = eta;
        return report;
    }

    double step_support_max (double r, double R) { return std::sqrt (r * r + R * R) - r; }

    double step_cdf (double x, double r, double R)
    {
        if (!(R > 0.0) || !(r > R))
            throw std::invalid_argument ("step_cdf requires r > R > 0");
        const double hi = step_support_max (r, R);
        const double slack = 1e-12 * R;
        if (!(x >= -R - slack) || !(x <= hi + slack))
            throw std::invalid_argument ("step_cdf: x outside the support [-R, sqrt(r^2+R^2)-r]");
        x = std::clamp (x, -R, hi);

        // Area of the half-disk inside the circle of radius rho = r + x about the destination:
        // the full lens, minus the circular segment behind the diameter when x > 0.
        const double rho = r + x;
        const double c = R * R - x * x;
        const double t1 = R * R * std::acos (std::clamp ((r * r + R * R - rho * rho) / (2.0 * r * R), -1.0, 1.0));
        const double t2 = rho * rho * std::acos (std::clamp ((2.0 * r * rho - c) / (2.0 * r * rho), -1.0, 1.0));
        const double t3 = 0.5 * std::sqrt (std::max (0.0, c * (4.0 * r * rho - c)));
        double t4 = 0.0;
        if (x > 0.0)
            t4 = rho * rho * std::acos (std::clamp (r / rho, -1.0, 1.0)) - r * std::sqrt (std::max (0.0, rho * rho - r * r));
        const double value = 2.0 / (kPi * R * R) * (t1 + t2 - t3 - t4);
        return std::clamp (value, 0.0, 1.0);
    }

    double expected_x_prime (double R)
    {
        if (!(R > 0.0))
            throw std::invalid_argument ("expected_x_prime requires R > 0");
        return 4.0 * R / (3.0 * kPi);
    }

    double expected_g (double r, double R)
    {
        require_drift_args (r, R);
        return R * half_disk_rule (256).expected_g (r / R);
    }

    QuadratureEstimate expected_g_checked (double r, double R)
    {
        require_drift_args (r, R);
        const double coarse = half_disk_rule (256).expected_g (r / R);
        const double fine = half_disk_rule (512).expected_g (r / R);
        return {R * coarse, R * std::fabs (coarse - fine)};
    }

    HopBounds hop_bounds (double h, double r, double R)
    {
        if (!(R > 0.0) || !(r >= R) || !(h > r))
            throw std::invalid_argument ("hop_bounds requires h > r >= R > 0");
        HopBounds b;
        b.lower = 3.0 * kPi * (h - r) / (4.0 * R);
        b.upper = (h - r + R) / (-expected_g (r, R));
        if (r == R)
            b.simplified = std::pair{3.0 * kPi / 4.0 * (h / R - 1.0), 4.0 * h / R};
        return b;
    }

    double asymptotic_hop_ratio () { return 3.0 * kPi / 4.0; }

    HopRatioProfile hop_ratio_profile ()
    {
        HopRatioProfile profile;
        profile.r_over_R = {1.0, 2.0, 5.0, 10.0, 100.0, 1e4};
        for (double rr : profile.r_over_R)
            profile.ratio.push_back (1.0 / -expected_g (rr, 1.0));
        profile.decreasing = std::is_sorted (profile.ratio.rbegin (), profile.ratio.rend ()) &&
                             std::adjacent_find (profile.ratio.begin (), profile.ratio.end ()) == profile.ratio.end () &&
                             profile.ratio.back () >= asymptotic_hop_ratio ();
        return profile;
    }

    double mean_sd_distance (const RegionSpec &region)
    {
        if (!(region.size > 0.0))
            throw std::invalid_argument ("region size must be positive");
        if (region.kind == RegionKind::disk)
        {
            const double diameter = 2.0 * region.size;
            return 64.0 * diameter / (45.0 * kPi);
        }
        const double s2 = std::sqrt (2.0);
        return (2.0 + s2 + 5.0 * std::log (s2 + 1.0)) * region.size / 15.0;
    }

    SelectionBounds overlap_selection_bounds (double overlap_area, double wedge_area, double lambda)
    {
        if (!(wedge_area > 0.0) || !(lambda > 0.0))
            throw std::invalid_argument ("overlap_selection_bounds: lambda and wedge area must be positive");
        if (!(overlap_area >= 0.0) || overlap_area > wedge_area * (1.0 + 1e-12))
            throw std::invalid_argument ("overlap_selection_bounds: overlap must lie in [0, wedge area]");
        const double upper = std::min (1.0, overlap_area / wedge_area);
        const double lower = std::max (0.0, (1.0 - 1.0 / (lambda * wedge_area)) * upper);
        return {lower, upper};
    }

} // namespace halfdisk
