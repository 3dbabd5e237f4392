#include <halfdisk/bounds.hpp>
#include <halfdisk/experiments.hpp>

#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

using namespace halfdisk;
using std::numbers::pi;

namespace
{
    std::string as_json (const ExperimentReport &r)
    {
        std::ostringstream out;
        write_report_json (r, out);
        return out.str ();
    }

    // Brute-force orientation scan: an empty wedge of angle 2*eta*pi exists with
    // orientation in the admissible set.
    bool scan_orientations (const NodeSet &nodes, NodeId id, double R, double eta, bool effective)
    {
        const Point2D p = nodes.position (id);
        const auto nb = nodes.neighbors_in_disk (p, R, id);
        const double delta = nodes.region ().boundary_distance (p) / R;
        const double phi = (!effective || delta >= 1.0) ? 0.0 : std::acos (delta);
        const double normal = nodes.region ().outward_normal (p);
        constexpr int steps = 20000;
        for (int k = 0; k < steps; ++k)
        {
            const double o = -pi + 2 * pi * k / steps;
            if (angular_distance (o, normal) < phi)
                continue;
            const Wedge w{p, o, R, eta * pi};
            bool empty = true;
            for (NodeId n : nb)
                if (wedge_contains (w, nodes.position (n)))
                {
                    empty = false;
                    break;
                }
            if (empty)
                return true;
        }
        return false;
    }
} // namespace

TEST_CASE ("experiment names")
{
    for (auto k : {ExperimentKind::connectivity, ExperimentKind::hopcount, ExperimentKind::stepdist, ExperimentKind::prop1,
                   ExperimentKind::eta, ExperimentKind::uwedge})
        CHECK (experiment_kind_from_string (to_string (k)) == k);
    CHECK_THROWS_AS ((void)experiment_kind_from_string ("nope"), std::invalid_argument);
}

TEST_CASE ("parallel_for visits every index once and forwards errors")
{
    for (unsigned threads : {1u, 3u, 0u})
    {
        std::vector<std::atomic<int>> seen (1000);
        parallel_for (seen.size (), threads, [&] (std::size_t i) { seen[i]++; });
        for (auto &s : seen)
            CHECK (s.load () == 1);
    }
    CHECK_THROWS_AS (parallel_for (100, 4, [] (std::size_t i) {
                         if (i == 37)
                             throw std::runtime_error ("boom");
                     }),
                     std::runtime_error);
    parallel_for (0, 4, [] (std::size_t) { FAIL ("called"); });
}

TEST_CASE ("angular gaps")
{
    const NodeSet nodes ({RegionKind::disk, 10.0}, 1.0, {{0, 0}, {0.5, 0}, {0, 0.5}, {-0.5, 0}});
    const std::vector<NodeId> nb{1, 2, 3};
    const auto gaps = angular_gaps (nodes, {0, 0}, nb);
    REQUIRE (gaps.size () == 3);
    double total = 0.0;
    for (const auto &g : gaps)
        total += g.width;
    const auto widest = *std::max_element (gaps.begin (), gaps.end (), [] (const auto &a, const auto &b) { return a.width < b.width; });
    CHECK (widest.width == doctest::Approx (pi));
    CHECK (widest.centre == doctest::Approx (-pi / 2));
    CHECK (total == doctest::Approx (2 * pi));
    const auto none = angular_gaps (nodes, {0, 0}, std::vector<NodeId>{});
    REQUIRE (none.size () == 1);
    CHECK (none[0].width == doctest::Approx (2 * pi));
}

TEST_CASE ("empty wedge test on hand-built neighbourhoods")
{
    const RegionSpec big{RegionKind::disk, 100.0};
    SUBCASE ("lone node")
    {
        const NodeSet nodes (big, 1.0, {{0, 0}});
        CHECK (node_has_empty_wedge (nodes, 0, 1.0, 1.0, EdgeRule::effective));
    }
    SUBCASE ("a semicircle gap is exactly a half-disk wedge")
    {
        const NodeSet nodes (big, 1.0, {{0, 0}, {0.5, 0}, {0, 0.5}, {-0.5, 0}});
        CHECK (node_has_empty_wedge (nodes, 0, 1.0, 0.5, EdgeRule::effective));
        CHECK_FALSE (node_has_empty_wedge (nodes, 0, 1.0, 0.51, EdgeRule::effective));
        CHECK_FALSE (node_has_empty_wedge (nodes, 0, 1.0, 1.0, EdgeRule::effective));
    }
    SUBCASE ("edge node with its only gap facing out of the region")
    {
        const RegionSpec disk{RegionKind::disk, 5.0};
        // Node 0 sits 0.2 from the boundary; neighbours cover the inward half.
        std::vector<Point2D> pts{{4.8, 0}};
        for (int k = 0; k <= 8; ++k)
        {
            const double a = pi / 2 + pi * k / 8;
            pts.push_back ({4.8 + 0.6 * std::cos (a), 0.6 * std::sin (a)});
        }
        const NodeSet nodes (disk, 1.0, pts);
        CHECK_FALSE (node_has_empty_wedge (nodes, 0, 1.0, 0.5, EdgeRule::effective));
        CHECK (node_has_empty_wedge (nodes, 0, 1.0, 0.5, EdgeRule::unrestricted));
    }
}

TEST_CASE ("gap test agrees with an orientation scan")
{
    for (auto kind : {RegionKind::disk, RegionKind::square})
    {
        NetworkParams p;
        p.lambda = 3.0;
        p.region = {kind, 6.0};
        for (double eta : {0.25, 0.5, 0.75})
            for (std::uint64_t seed = 0; seed < 3; ++seed)
            {
                const NodeSet nodes = generate_ppp (p, seed);
                for (std::size_t i = 0; i < nodes.size (); ++i)
                {
                    const auto id = static_cast<NodeId> (i);
                    CAPTURE (eta);
                    CAPTURE (i);
                    for (bool effective : {true, false})
                    {
                        const bool fast = node_has_empty_wedge (nodes, id, p.R, eta, effective ? EdgeRule::effective : EdgeRule::unrestricted);
                        // The scan is discretized, so it may only miss wedges the exact test finds.
                        if (scan_orientations (nodes, id, p.R, eta, effective))
                            CHECK (fast);
                    }
                }
            }
    }
}

TEST_CASE ("empty arc frequency matches the exact law")
{
    for (std::size_t i : {1u, 2u, 3u, 6u})
    {
        const auto f = empty_arc_frequency (i, 0.5, 100000, 3, 2);
        CHECK (std::abs (f.mean - empty_wedge_prob_exact (i, 0.5)) <= 4 * f.std_error + 1e-12);
    }
    CHECK (empty_arc_frequency (3, 0.25, 20000, 3, 1).mean == 1.0);
}

TEST_CASE ("walk summary")
{
    const auto w = mean_stopping_time (10.0, 1.0, 1.0, 0.5, 20000, 5, 2);
    CHECK (w.capped == 0);
    CHECK (w.nu.samples == 20000);
    CHECK (w.nu.mean > 21.2);
    CHECK (w.nu.mean < 40.0);
    const auto capped = mean_stopping_time (10.0, 1.0, 1.0, 0.5, 100, 5, 1, 3);
    CHECK (capped.capped == 100);
}

TEST_CASE ("reports do not depend on the thread count")
{
    for (auto kind : {ExperimentKind::connectivity, ExperimentKind::hopcount, ExperimentKind::stepdist, ExperimentKind::prop1,
                      ExperimentKind::eta, ExperimentKind::uwedge})
    {
        auto cfg = default_config (kind);
        cfg.trials = kind == ExperimentKind::uwedge || kind == ExperimentKind::stepdist ? 40000 : 30;
        cfg.network_trials = 200;
        cfg.r_over_R = {2.0};
        cfg.h_over_R = {5.0};
        cfg.dN = {30.0};
        cfg.N = 500;
        cfg.max_i = 4;
        cfg.lambda_area = {5.0};
        cfg.bins = 4;
        cfg.threads = 1;
        const auto one = as_json (run_experiment (kind, cfg));
        cfg.threads = 3;
        CAPTURE (to_string (kind));
        CHECK (as_json (run_experiment (kind, cfg)) == one);
        cfg.seed = 2;
        CHECK (as_json (run_experiment (kind, cfg)) != one);
    }
}

TEST_CASE ("small experiments produce consistent cells")
{
    SUBCASE ("connectivity")
    {
        auto cfg = default_config (ExperimentKind::connectivity);
        cfg.trials = 50;
        const auto r = run_connectivity (cfg);
        REQUIRE (r.cells.size () == 3);
        for (const auto &c : r.cells)
        {
            CHECK (c.verdict != Verdict::violated);
            CHECK ((c.verdict == Verdict::vacuous) == (*c.upper >= 1.0));
            CHECK (*c.param ("lambda") * (pi * 1.0 / *c.param ("d")) == doctest::Approx (3000.0));
        }
    }
    SUBCASE ("hopcount")
    {
        auto cfg = default_config (ExperimentKind::hopcount);
        cfg.h_over_R = {0.5, 10.0};
        cfg.trials = 300;
        const auto r = run_hopcount (cfg);
        REQUIRE (r.cells.size () == 2);
        CHECK (r.cells[0].estimate == 1.0);
        CHECK (r.cells[0].verdict == Verdict::consistent);
        CHECK (r.cells[1].verdict == Verdict::consistent);
        CHECK (*r.cells[1].extra ("delivery_rate") > 0.9);
    }
    SUBCASE ("stepdist")
    {
        auto cfg = default_config (ExperimentKind::stepdist);
        cfg.trials = 50000;
        cfg.network_trials = 2000;
        cfg.r_over_R = {1.5, 5.0};
        const auto r = run_stepdist (cfg);
        REQUIRE (r.cells.size () == 6);
        CHECK_FALSE (r.any_violated ());
        CHECK (r.cells[1].estimate == 0.0);
    }
    SUBCASE ("prop1")
    {
        auto cfg = default_config (ExperimentKind::prop1);
        cfg.trials = 4000;
        cfg.lambda_area = {20.0};
        cfg.bins = 5;
        const auto r = run_overlap_selection (cfg);
        REQUIRE (r.cells.size () == 6);
        CHECK_FALSE (r.any_violated ());
        CHECK (r.cells.back ().label.find ("deficit") != std::string::npos);
    }
    SUBCASE ("eta")
    {
        auto cfg = default_config (ExperimentKind::eta);
        cfg.trials = 20;
        cfg.N = 500;
        const auto r = run_eta_sweep (cfg);
        REQUIRE (r.cells.size () == 4);
        for (const auto &c : r.cells)
            CHECK (c.verdict == Verdict::exploratory);
        // Wider wedges are never empty more often on the same networks.
        for (std::size_t k = 1; k < r.cells.size (); ++k)
            CHECK (r.cells[k].estimate <= r.cells[k - 1].estimate);
    }
    SUBCASE ("uwedge")
    {
        auto cfg = default_config (ExperimentKind::uwedge);
        cfg.trials = 20000;
        cfg.max_i = 5;
        const auto r = run_uwedge (cfg);
        REQUIRE (r.cells.size () == 15);
        CHECK_FALSE (r.any_violated ());
        for (const auto &c : r.cells)
            CHECK (*c.upper <= *c.extra ("union_bound"));
    }
}

TEST_CASE ("bad experiment configs are rejected")
{
    auto cfg = default_config (ExperimentKind::stepdist);
    cfg.r_over_R = {0.5};
    CHECK_THROWS_AS ((void)run_stepdist (cfg), std::invalid_argument);
    cfg = default_config (ExperimentKind::uwedge);
    cfg.trials = 0;
    CHECK_THROWS_AS ((void)run_uwedge (cfg), std::invalid_argument);
    cfg = default_config (ExperimentKind::hopcount);
    cfg.h_over_R = {-1.0};
    CHECK_THROWS_AS ((void)run_hopcount (cfg), std::invalid_argument);
}
