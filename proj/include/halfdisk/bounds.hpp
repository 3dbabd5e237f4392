#pragma once
/**
 * @file   bounds.hpp
 * @brief  Closed-form connectivity and hop-count quantities for eta-disk routing.
 *
 * Notation: N = lambda*|A| is the expected node count, d = pi*R^2/|A| the
 * transmission-disk area relative to the region, and eta the wedge fraction
 * (a wedge of angle 2*eta*pi). Logarithms are natural.
 */

#include <halfdisk/network.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace halfdisk
{
    /// Probability that @p i uniform directions leave an empty arc of angle at least 2*eta*pi
    /// (inclusion-exclusion). U_0 = 1.
    [[nodiscard]] double empty_wedge_prob_exact (std::size_t i, double eta);

    /// Union bound i*(1-eta)^(i-1). Requires i >= 1.
    [[nodiscard]] double empty_wedge_prob_upper (std::size_t i, double eta);

    enum class InteriorCount
    {
        simplified, ///< (1 - 2*sqrt(d)) N, the form that enters the total bound
        disk_region ///< (1 - (2 - sqrt(d)) sqrt(d)) N, exact interior count for a disk region
    };

    /// Bound on the probability that some interior node has an empty wedge:
    /// (1 - 2 sqrt(d)) N (dN + 1) exp(-eta dN), zero when 1 - 2 sqrt(d) <= 0.
    [[nodiscard]] double sigma_interior (double N, double d, double eta, InteriorCount count = InteriorCount::simplified);

    /// Bound on the probability that some edge node has an empty effective wedge:
    /// (96 pi log^2(dN) + 1)/sqrt(d) exp(-eta dN/2) + 2 sqrt(d) N exp(-dN/2).
    [[nodiscard]] double sigma_edge (double N, double d, double eta);

    struct BoundReport
    {
        double sigma_interior{0.0};
        double sigma_edge{0.0};
        double sigma_total{0.0};
        double N{0.0};
        double d{0.0};
        double eta{0.0};
    };

    /// Disconnection bound with its interior/edge breakdown. Values above 1 are returned as-is.
    [[nodiscard]] BoundReport sigma_total (double N, double d, double eta);

    /// P(next-hop distance change <= x | current distance r) for uniform relay choice on the
    /// half-disk. Support: -R <= x <= sqrt(r^2 + R^2) - r, with r > R.
    [[nodiscard]] double step_cdf (double x, double r, double R);

    /// Upper end of the step-size support, sqrt(r^2 + R^2) - r.
    [[nodiscard]] double step_support_max (double r, double R);

    /// Mean forward projection of a uniform half-disk point: 4R/(3 pi).
    [[nodiscard]] double expected_x_prime (double R);

    /// E[sqrt((r - x')^2 + y'^2) - r] for (x', y') uniform on the half-disk of radius R.
    /// 256x256 Gauss-Legendre in polar coordinates; requires r >= R > 0.
    [[nodiscard]] double expected_g (double r, double R);

    struct QuadratureEstimate
    {
        double value;
        /// |I(256x256) - I(512x512)|
        double error_estimate;
    };

    /// expected_g together with a refinement check against the 512x512 rule.
    [[nodiscard]] QuadratureEstimate expected_g_checked (double r, double R);

    struct HopBounds
    {
        double lower{0.0};
        double upper{0.0};
        /// (3 pi/4 (h/R - 1), 4h/R), reported when r == R.
        std::optional<std::pair<double, double>> simplified;
    };

    /// Bounds on the expected number of steps until the distance first drops to r, from distance h.
    /// Requires h > r >= R.
    [[nodiscard]] HopBounds hop_bounds (double h, double r, double R);

    /// Limit of E(steps)/(h/R) as h/R grows: 3 pi/4.
    [[nodiscard]] double asymptotic_hop_ratio ();

    struct HopRatioProfile
    {
        std::vector<double> r_over_R;
        std::vector<double> ratio; ///< R / -expected_g(r, R)
        bool decreasing{false};
    };

    /// R / -E g(r, R) over r/R in {1, 2, 5, 10, 100, 1e4}; decreases toward 3 pi/4.
    [[nodiscard]] HopRatioProfile hop_ratio_profile ();

    /// Mean distance between two uniform points: 64a/(45 pi) for a disk of diameter a,
    /// (2 + sqrt 2 + 5 log(sqrt 2 + 1)) a / 15 for a square of side a.
    [[nodiscard]] double mean_sd_distance (const RegionSpec &region);

    struct SelectionBounds
    {
        double lower;
        double upper;
    };

    /// Sandwich on the probability that the next relay falls in the overlap of the current
    /// and previous relay regions: upper = overlap/area, lower = (1 - 1/(lambda*area)) * upper, floored at 0.
    [[nodiscard]] SelectionBounds overlap_selection_bounds (double overlap_area, double wedge_area, double lambda);

} // namespace halfdisk
