#include <halfdisk/stats.hpp>

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace halfdisk
{
    double RunningStats::std_error () const noexcept
    {
        return n_ > 1 ? std::sqrt (variance () / static_cast<double> (n_)) : 0.0;
    }

    Estimate summarize (std::span<const double> values)
    {
        RunningStats s;
        for (double v : values)
            s.add (v);
        return {s.mean (), s.std_error (), s.count ()};
    }

    Estimate proportion (std::size_t hits, std::size_t trials)
    {
        if (trials == 0)
            return {};
        const double p = static_cast<double> (hits) / static_cast<double> (trials);
        return {p, std::sqrt (p * (1.0 - p) / static_cast<double> (trials)), trials};
    }

    double ks_statistic (std::vector<double> &samples, const std::function<double (double)> &cdf)
    {
        if (samples.empty ())
            throw std::invalid_argument ("ks_statistic: no samples");
        std::sort (samples.begin (), samples.end ());
        const double n = static_cast<double> (samples.size ());
        double sup = 0.0;
        for (std::size_t i = 0; i < samples.size (); ++i)
        {
            const double f = cdf (samples[i]);
            sup = std::max ({sup, static_cast<double> (i + 1) / n - f, f - static_cast<double> (i) / n});
        }
        return sup;
    }

    double ks_radius (std::size_t n, double alpha)
    {
        if (n == 0 || !(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument ("ks_radius: need n > 0 and alpha in (0, 1)");
        return std::sqrt (-std::log (alpha / 2.0) / 2.0) / std::sqrt (static_cast<double> (n));
    }

    double chi_square_uniform (std::span<const std::size_t> observed)
    {
        if (observed.empty ())
            throw std::invalid_argument ("chi_square_uniform: no cells");
        double total = 0.0;
        for (auto o : observed)
            total += static_cast<double> (o);
        const double expected = total / static_cast<double> (observed.size ());
        double stat = 0.0;
        for (auto o : observed)
        {
            const double diff = static_cast<double> (o) - expected;
            stat += diff * diff / expected;
        }
        return stat;
    }

    double chi_square_critical (double dof, double alpha)
    {
        const boost::math::chi_squared dist (dof);
        return boost::math::quantile (boost::math::complement (dist, alpha));
    }

} // namespace halfdisk
