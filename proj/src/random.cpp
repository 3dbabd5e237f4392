#include <halfdisk/random.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace halfdisk
{
    std::uint64_t uniform_index (Rng &rng, std::uint64_t n)
    {
        if (n == 0)
            throw std::invalid_argument ("uniform_index: empty range");
        // Rejection on the largest multiple of n below 2^64.
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max () - std::numeric_limits<std::uint64_t>::max () % n;
        std::uint64_t draw = rng ();
        while (draw >= limit)
            draw = rng ();
        return draw % n;
    }

    namespace
    {
        std::uint64_t poisson_inversion (Rng &rng, double mean)
        {
            const double u = uniform01 (rng);
            double p = std::exp (-mean);
            double cdf = p;
            std::uint64_t k = 0;
            while (u >= cdf && p > 0.0)
            {
                ++k;
                p *= mean / static_cast<double> (k);
                cdf += p;
            }
            return k;
        }

        // Hormann (1993), "The transformed rejection method for generating Poisson random variables".
        std::uint64_t poisson_ptrs (Rng &rng, double mean)
        {
            const double slam = std::sqrt (mean);
            const double loglam = std::log (mean);
            const double b = 0.931 + 2.53 * slam;
            const double a = -0.059 + 0.02483 * b;
            const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
            const double vr = 0.9277 - 3.6224 / (b - 2.0);

            for (;;)
            {
                const double u = uniform01 (rng) - 0.5;
                const double v = uniform01_open_low (rng);
                const double us = 0.5 - std::fabs (u);
                const double k = std::floor ((2.0 * a / us + b) * u + mean + 0.43);
                if (us >= 0.07 && v <= vr)
                    return static_cast<std::uint64_t> (k);
                if (k < 0.0 || (us < 0.013 && v > us))
                    continue;
                if (std::log (v) + std::log (inv_alpha) - std::log (a / (us * us) + b) <= -mean + k * loglam - std::lgamma (k + 1.0))
                    return static_cast<std::uint64_t> (k);
            }
        }
    } // namespace

    std::uint64_t poisson (Rng &rng, double mean)
    {
        if (!(mean >= 0.0) || !std::isfinite (mean))
            throw std::invalid_argument ("poisson: mean must be finite and non-negative");
        if (mean == 0.0)
            return 0;
        return mean < 10.0 ? poisson_inversion (rng, mean) : poisson_ptrs (rng, mean);
    }

} // namespace halfdisk
