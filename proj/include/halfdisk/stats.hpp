#pragma once
/**
 * @file   stats.hpp
 * @brief  Sample summaries and goodness-of-fit helpers for the Monte Carlo checks.
 */

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace halfdisk
{
    /// Streaming mean and variance (Welford).
    class RunningStats
    {
      public:
        void add (double x) noexcept
        {
            ++n_;
            const double delta = x - mean_;
            mean_ += delta / static_cast<double> (n_);
            m2_ += delta * (x - mean_);
        }

        [[nodiscard]] std::size_t count () const noexcept { return n_; }
        [[nodiscard]] double mean () const noexcept { return mean_; }
        [[nodiscard]] double variance () const noexcept { return n_ > 1 ? m2_ / static_cast<double> (n_ - 1) : 0.0; }
        [[nodiscard]] double std_error () const noexcept;

      private:
        std::size_t n_{0};
        double mean_{0.0};
        double m2_{0.0};
    };

    struct Estimate
    {
        double mean{0.0};
        double std_error{0.0};
        std::size_t samples{0};
    };

    [[nodiscard]] Estimate summarize (std::span<const double> values);

    /// Bernoulli frequency with standard error sqrt(p(1-p)/n).
    [[nodiscard]] Estimate proportion (std::size_t hits, std::size_t trials);

    /// sup_x |F_n(x) - F(x)| for the empirical CDF of @p samples (sorted in place).
    [[nodiscard]] double ks_statistic (std::vector<double> &samples, const std::function<double (double)> &cdf);

    /// Asymptotic one-sample KS radius sqrt(-ln(alpha/2)/2)/sqrt(n).
    [[nodiscard]] double ks_radius (std::size_t n, double alpha);

    /// Pearson statistic for @p observed against equal expected counts.
    [[nodiscard]] double chi_square_uniform (std::span<const std::size_t> observed);

    /// Upper @p alpha quantile of the chi-square distribution with @p dof degrees of freedom.
    [[nodiscard]] double chi_square_critical (double dof, double alpha);

} // namespace halfdisk
