#include <halfdisk/network.hpp>
#include <halfdisk/stats.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

using namespace halfdisk;
using std::numbers::pi;

namespace
{
    std::vector<NodeId> brute_disk (const NodeSet &nodes, const Point2D &c, double r, NodeId exclude)
    {
        std::vector<NodeId> out;
        for (std::size_t i = 0; i < nodes.size (); ++i)
            if (static_cast<NodeId> (i) != exclude && distance (nodes.position (static_cast<NodeId> (i)), c) <= r)
                out.push_back (static_cast<NodeId> (i));
        return out;
    }
} // namespace

TEST_CASE ("region geometry")
{
    const RegionSpec disk{RegionKind::disk, 2.0};
    CHECK (disk.area () == doctest::Approx (4 * pi));
    CHECK (disk.contains ({1.9, 0.0}));
    CHECK_FALSE (disk.contains ({1.5, 1.5}));
    CHECK (disk.boundary_distance ({0.5, 0.0}) == doctest::Approx (1.5));
    CHECK (disk.outward_normal ({0.0, -1.0}) == doctest::Approx (-pi / 2));

    const RegionSpec square{RegionKind::square, 4.0};
    CHECK (square.area () == 16.0);
    CHECK (square.contains ({-2.0, 2.0}));
    CHECK_FALSE (square.contains ({2.1, 0.0}));
    CHECK (square.boundary_distance ({1.5, -0.5}) == doctest::Approx (0.5));
    CHECK (square.outward_normal ({1.5, -0.5}) == doctest::Approx (0.0));
    CHECK (std::abs (square.outward_normal ({0.2, -1.9})) == doctest::Approx (pi / 2));
    CHECK (square.outward_normal ({-1.9, 0.2}) == doctest::Approx (pi));

    CHECK (to_string (RegionKind::square) == "square");
    CHECK (region_kind_from_string ("disk") == RegionKind::disk);
    CHECK_THROWS_AS ((void)region_kind_from_string ("hexagon"), std::invalid_argument);
}

TEST_CASE ("parameter validation")
{
    NetworkParams p;
    p.region.size = 10.0;
    CHECK_NOTHROW (p.validate ());
    CHECK (p.normalized_disk_area () == doctest::Approx (0.01));
    auto bad = p;
    bad.lambda = 0.0;
    CHECK_THROWS_AS (bad.validate (), std::invalid_argument);
    bad = p;
    bad.eta = 1.5;
    CHECK_THROWS_AS (bad.validate (), std::invalid_argument);
    bad = p;
    bad.region.size = 0.5;
    CHECK_THROWS_AS (bad.validate (), std::invalid_argument);
    bad = p;
    bad.R = -1;
    CHECK_THROWS_AS (bad.validate (), std::invalid_argument);
}

TEST_CASE ("poisson network count and placement")
{
    NetworkParams p;
    p.lambda = 5.0;
    p.region = {RegionKind::square, 4.0};
    const double mean = p.expected_nodes ();
    RunningStats counts;
    std::vector<std::size_t> quadrants (4, 0);
    for (std::uint64_t s = 0; s < 2000; ++s)
    {
        const NodeSet nodes = generate_ppp (p, s);
        counts.add (static_cast<double> (nodes.size ()));
        for (const auto &q : nodes.positions ())
        {
            REQUIRE (p.region.contains (q));
            quadrants[(q.x > 0) + 2 * (q.y > 0)]++;
        }
    }
    CHECK (std::abs (counts.mean () - mean) < 4 * std::sqrt (mean / 2000));
    CHECK (std::abs (counts.variance () - mean) < 0.1 * mean);
    CHECK (chi_square_uniform (quadrants) < chi_square_critical (3, 0.001));

    p.region = {RegionKind::disk, 3.0};
    std::size_t inner = 0, total = 0;
    for (std::uint64_t s = 0; s < 500; ++s)
        for (const auto &q : generate_ppp (p, s).positions ())
        {
            REQUIRE (q.norm () <= 3.0);
            inner += q.norm () <= 1.5;
            ++total;
        }
    const Estimate f = proportion (inner, total);
    CHECK (std::abs (f.mean - 0.25) < 4 * f.std_error);
}

TEST_CASE ("same seed same network")
{
    NetworkParams p;
    p.lambda = 3.0;
    p.region.size = 5.0;
    const auto a = generate_ppp (p, 99);
    const auto b = generate_ppp (p, 99);
    REQUIRE (a.size () == b.size ());
    CHECK (std::equal (a.positions ().begin (), a.positions ().end (), b.positions ().begin ()));
}

TEST_CASE ("neighbour queries agree with a linear scan")
{
    NetworkParams p;
    p.lambda = 4.0;
    p.R = 1.3;
    p.region = {RegionKind::square, 12.0};
    const NodeSet nodes = generate_ppp (p, 5);
    Rng rng = make_rng (6, {});
    for (int k = 0; k < 200; ++k)
    {
        const auto id = static_cast<NodeId> (uniform_index (rng, nodes.size ()));
        const Point2D c = k % 2 ? nodes.position (id) : p.region.sample (rng);
        const NodeId exclude = k % 2 ? id : NodeSet::kNoNode;
        const double r = uniform_real (rng, 0.1, 2.5);
        CHECK (nodes.neighbors_in_disk (c, r, exclude) == brute_disk (nodes, c, r, exclude));

        const Wedge w{c, uniform_real (rng, -pi, pi), p.R, uniform_real (rng, 0.1, 1.0) * pi};
        std::vector<NodeId> expected;
        for (NodeId n : brute_disk (nodes, c, p.R, exclude))
            if (wedge_contains (w, nodes.position (n)))
                expected.push_back (n);
        CHECK (neighbors_in_wedge (nodes, w, exclude) == expected);
    }
}

TEST_CASE ("interior and edge classification")
{
    const NodeSet nodes ({RegionKind::disk, 5.0}, 1.0, {{0, 0}, {4.5, 0}, {0, 3.9}, {0, 4.0}});
    const auto part = classify_nodes (nodes, 1.0);
    CHECK (part.interior == std::vector<NodeId>{0, 2});
    CHECK (part.edge == std::vector<NodeId>{1, 3});
}

TEST_CASE ("node csv round trip and errors")
{
    NetworkParams p;
    p.region.size = 4.0;
    p.lambda = 2.0;
    const NodeSet nodes = generate_ppp (p, 1);
    std::ostringstream out;
    write_nodes_csv (nodes, out);
    CHECK (out.str ().rfind ("id,x,y\n", 0) == 0);

    std::istringstream in (out.str ());
    const NodeSet back = read_nodes_csv (in, p.region, p.R);
    REQUIRE (back.size () == nodes.size ());
    for (std::size_t i = 0; i < nodes.size (); ++i)
        CHECK (back.position (static_cast<NodeId> (i)) == nodes.position (static_cast<NodeId> (i)));

    auto error_of = [&] (const std::string &text) {
        std::istringstream s (text);
        try
        {
            (void)read_nodes_csv (s, p.region, p.R);
        }
        catch (const std::runtime_error &e)
        {
            return std::string (e.what ());
        }
        return std::string ("no error");
    };
    CHECK (error_of ("x,y\n").find ("line 1") != std::string::npos);
    CHECK (error_of ("id,x,y\n0,1,1\n1,zz,0\n").find ("line 3") != std::string::npos);
    CHECK (error_of ("id,x,y\n0,1,1\n2,0,0\n").find ("line 3") != std::string::npos);
    CHECK (error_of ("id,x,y\n0,9,9\n").find ("line 2") != std::string::npos);
}
