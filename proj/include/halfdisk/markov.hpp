#pragma once
/**
 * @file   markov.hpp
 * @brief  Distance-to-destination walk under uniform relay placement.
 *
 * The packet's distance r evolves as r' = sqrt((r - x')^2 + y'^2) with
 * (x', y') uniform on the wedge pointing at the destination. No network is
 * materialized. The walk is absorbed once r <= R.
 */

#include <halfdisk/geometry.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace halfdisk
{
    struct WalkState
    {
        double r{0.0};
        std::size_t t{0};
    };

    struct StoppingTimeSample
    {
        std::size_t nu{0};
        double h{0.0};
        double r_threshold{0.0};
        /// False when the walk ran out of steps before reaching r_threshold.
        bool reached{true};
    };

    /// One step from @p state with a relay displacement @p step in local coordinates.
    [[nodiscard]] WalkState apply_step (const WalkState &state, const LocalStep &step) noexcept;

    /// One step with a freshly drawn uniform wedge displacement. Requires state.r > R.
    [[nodiscard]] WalkState step_markov (const WalkState &state, double R, double eta, Rng &rng);

    /// Default cap: 100*h/R + 10^4 steps.
    [[nodiscard]] std::size_t default_walk_hop_cap (double h, double R);

    /// Steps from r = h until r <= r_threshold. Requires h > r_threshold >= R, except that
    /// h <= r_threshold returns nu = 0 immediately.
    [[nodiscard]] StoppingTimeSample simulate_stopping_time (double h, double r_threshold, double R, double eta, std::size_t hop_cap,
                                                             Rng &rng);
    [[nodiscard]] StoppingTimeSample simulate_stopping_time (double h, double r_threshold, double R, double eta, std::size_t hop_cap,
                                                             std::uint64_t seed);

    /// Full trajectory from r = h, ending at the first r <= R or after hop_cap steps.
    [[nodiscard]] std::vector<WalkState> walk_trace (double h, double R, double eta, std::size_t hop_cap, std::uint64_t seed);

    /// CSV `t,r,xi` with xi = r(t+1) - r(t); blank on the final row.
    void write_trace_csv (const std::vector<WalkState> &trace, std::ostream &out);

} // namespace halfdisk
