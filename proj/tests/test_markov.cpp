#include <halfdisk/bounds.hpp>
#include <halfdisk/markov.hpp>
#include <halfdisk/stats.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

using namespace halfdisk;

TEST_CASE ("one step in local coordinates")
{
    const auto s = apply_step ({5.0, 2}, {3.0, 4.0});
    CHECK (s.r == doctest::Approx (std::sqrt (20.0)));
    CHECK (s.t == 3);
    CHECK (apply_step ({2.0, 0}, {1.0, 0.0}).r == doctest::Approx (1.0));

    Rng rng{1};
    CHECK_THROWS_AS ((void)step_markov ({1.0, 0}, 1.0, 0.5, rng), std::invalid_argument);
    for (int k = 0; k < 1000; ++k)
    {
        const auto next = step_markov ({3.0, 0}, 1.0, 0.5, rng);
        REQUIRE (next.r >= 2.0 - 1e-12);
        REQUIRE (next.r <= std::sqrt (10.0) + 1e-12);
    }
}

TEST_CASE ("stopping time")
{
    const auto zero = simulate_stopping_time (1.0, 1.0, 1.0, 0.5, 100, std::uint64_t{1});
    CHECK (zero.nu == 0);
    CHECK (zero.reached);

    // From just above R the walk stops in one step with probability F(R - r).
    Rng rng = make_rng (2, {});
    std::size_t one_step = 0;
    constexpr int n = 20000;
    for (int k = 0; k < n; ++k)
    {
        const auto x = simulate_stopping_time (1.01, 1.0, 1.0, 0.5, 1000, rng);
        REQUIRE (x.reached);
        REQUIRE (x.nu >= 1);
        one_step += x.nu == 1;
    }
    const Estimate f = proportion (one_step, n);
    CHECK (std::abs (f.mean - step_cdf (-0.01, 1.01, 1.0)) < 4 * f.std_error);

    const auto capped = simulate_stopping_time (50.0, 1.0, 1.0, 0.5, 5, std::uint64_t{3});
    CHECK_FALSE (capped.reached);
    CHECK (capped.nu == 5);
    CHECK (default_walk_hop_cap (10.0, 1.0) == 11000);
    CHECK_THROWS_AS ((void)simulate_stopping_time (5.0, 0.5, 1.0, 0.5, 10, std::uint64_t{1}), std::invalid_argument);
}

TEST_CASE ("mean stopping time sits between the hop bounds")
{
    Rng rng = make_rng (4, {});
    RunningStats s;
    for (int k = 0; k < 20000; ++k)
        s.add (static_cast<double> (simulate_stopping_time (10.0, 1.0, 1.0, 0.5, 10000, rng).nu));
    CHECK (s.mean () > 3 * std::numbers::pi / 4 * 9);
    CHECK (s.mean () < 40.0);
}

TEST_CASE ("trace")
{
    const auto a = walk_trace (6.0, 1.0, 0.5, 1000, 9);
    const auto b = walk_trace (6.0, 1.0, 0.5, 1000, 9);
    REQUIRE (a.size () == b.size ());
    CHECK (a.front ().r == 6.0);
    CHECK (a.back ().r <= 1.0);
    for (std::size_t k = 0; k < a.size (); ++k)
    {
        CHECK (a[k].t == k);
        CHECK (a[k].r == b[k].r);
        if (k + 1 < a.size ())
            CHECK (a[k].r > 1.0);
    }
    // Same stream as the stopping time with the same seed.
    CHECK (simulate_stopping_time (6.0, 1.0, 1.0, 0.5, 1000, std::uint64_t{9}).nu == a.back ().t);

    const auto capped = walk_trace (60.0, 1.0, 0.5, 4, 9);
    CHECK (capped.size () == 5);

    std::ostringstream csv;
    write_trace_csv ({{3.0, 0}, {2.5, 1}, {0.5, 2}}, csv);
    CHECK (csv.str () == "t,r,xi\n0,3,-0.5\n1,2.5,-2\n2,0.5,\n");
}
