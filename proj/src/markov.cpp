#include <halfdisk/csv.hpp>
#include <halfdisk/markov.hpp>

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace halfdisk
{
    WalkState apply_step (const WalkState &state, const LocalStep &step) noexcept
    {
        const double dx = state.r - step.x_prime;
        return {std::sqrt (dx * dx + step.y_prime * step.y_prime), state.t + 1};
    }

    WalkState step_markov (const WalkState &state, double R, double eta, Rng &rng)
    {
        if (!(state.r > R))
            throw std::invalid_argument ("step_markov: walk already absorbed (r <= R)");
        return apply_step (state, sample_uniform_wedge (rng, R, eta));
    }

    std::size_t default_walk_hop_cap (double h, double R) { return static_cast<std::size_t> (std::ceil (100.0 * h / R)) + 10000; }

    StoppingTimeSample simulate_stopping_time (double h, double r_threshold, double R, double eta, std::size_t hop_cap, Rng &rng)
    {
        if (!(R > 0.0) || !(r_threshold >= R))
            throw std::invalid_argument ("simulate_stopping_time requires r_threshold >= R > 0");
        if (!(eta > 0.0) || eta > 1.0)
            throw std::invalid_argument ("eta must lie in (0, 1]");

        StoppingTimeSample sample{0, h, r_threshold, true};
        WalkState state{h, 0};
        while (state.r > r_threshold)
        {
            if (state.t >= hop_cap)
            {
                sample.reached = false;
                break;
            }
            state = apply_step (state, sample_uniform_wedge (rng, R, eta));
        }
        sample.nu = state.t;
        return sample;
    }

    StoppingTimeSample simulate_stopping_time (double h, double r_threshold, double R, double eta, std::size_t hop_cap,
                                               std::uint64_t seed)
    {
        Rng rng = make_rng (seed, {});
        return simulate_stopping_time (h, r_threshold, R, eta, hop_cap, rng);
    }

    std::vector<WalkState> walk_trace (double h, double R, double eta, std::size_t hop_cap, std::uint64_t seed)
    {
        if (!(R > 0.0) || !(h >= 0.0))
            throw std::invalid_argument ("walk_trace requires R > 0 and h >= 0");
        if (!(eta > 0.0) || eta > 1.0)
            throw std::invalid_argument ("eta must lie in (0, 1]");
        Rng rng = make_rng (seed, {});
        std::vector<WalkState> trace{{h, 0}};
        while (trace.back ().r > R && trace.back ().t < hop_cap)
            trace.push_back (step_markov (trace.back (), R, eta, rng));
        return trace;
    }

    void write_trace_csv (const std::vector<WalkState> &trace, std::ostream &out)
    {
        out << "t,r,xi\n";
        for (std::size_t k = 0; k < trace.size (); ++k)
        {
            out << trace[k].t << ',' << format_number (trace[k].r) << ',';
            if (k + 1 < trace.size ())
                out << format_number (trace[k + 1].r - trace[k].r);
            out << '\n';
        }
    }

} // namespace halfdisk
