#include <halfdisk/quadrature.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace halfdisk
{
    QuadratureRule gauss_legendre (std::size_t n)
    {
        if (n == 0)
            throw std::invalid_argument ("gauss_legendre: need at least one node");

        QuadratureRule rule;
        rule.nodes.assign (n, 0.0);
        rule.weights.assign (n, 0.0);

        const std::size_t half = (n + 1) / 2;
        const double dn = static_cast<double> (n);
        for (std::size_t i = 0; i < half; ++i)
        {
            // Tricomi initial guess, then Newton on P_n.
            double z = std::cos (std::numbers::pi * (static_cast<double> (i) + 0.75) / (dn + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter)
            {
                double p0 = 1.0;
                double p1 = 0.0;
                for (std::size_t j = 1; j <= n; ++j)
                {
                    const double p2 = p1;
                    p1 = p0;
                    const double dj = static_cast<double> (j);
                    p0 = ((2.0 * dj - 1.0) * z * p1 - (dj - 1.0) * p2) / dj;
                }
                dp = dn * (z * p0 - p1) / (z * z - 1.0);
                const double dz = p0 / dp;
                z -= dz;
                if (std::fabs (dz) < 1e-15)
                    break;
            }
            const double w = 2.0 / ((1.0 - z * z) * dp * dp);
            rule.nodes[i] = -z;
            rule.nodes[n - 1 - i] = z;
            rule.weights[i] = w;
            rule.weights[n - 1 - i] = w;
        }
        if (n % 2 == 1)
            rule.nodes[n / 2] = 0.0;
        return rule;
    }

    QuadratureRule gauss_legendre (std::size_t n, double a, double b)
    {
        QuadratureRule rule = gauss_legendre (n);
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        for (std::size_t i = 0; i < n; ++i)
        {
            rule.nodes[i] = mid + half * rule.nodes[i];
            rule.weights[i] *= half;
        }
        return rule;
    }

} // namespace halfdisk
