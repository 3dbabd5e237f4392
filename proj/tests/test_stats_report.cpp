#include <halfdisk/report.hpp>
#include <halfdisk/stats.hpp>

#include <doctest.h>

#include <sstream>
#include <stdexcept>

using namespace halfdisk;

TEST_CASE ("running statistics")
{
    RunningStats s;
    for (double x : {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0})
        s.add (x);
    CHECK (s.count () == 8);
    CHECK (s.mean () == doctest::Approx (5.0));
    CHECK (s.variance () == doctest::Approx (32.0 / 7.0));
    CHECK (s.std_error () == doctest::Approx (std::sqrt (32.0 / 7.0 / 8.0)));
    const std::vector<double> v{1.0, 3.0};
    const auto e = summarize (v);
    CHECK (e.mean == 2.0);
    CHECK (e.samples == 2);
    const auto p = proportion (25, 100);
    CHECK (p.mean == 0.25);
    CHECK (p.std_error == doctest::Approx (std::sqrt (0.25 * 0.75 / 100)));
    CHECK (proportion (0, 0).samples == 0);
}

TEST_CASE ("kolmogorov-smirnov")
{
    std::vector<double> grid;
    for (int k = 0; k < 100; ++k)
        grid.push_back ((k + 0.5) / 100.0);
    CHECK (ks_statistic (grid, [] (double x) { return x; }) == doctest::Approx (0.005));
    std::vector<double> shifted{0.9, 0.95};
    CHECK (ks_statistic (shifted, [] (double x) { return x; }) == doctest::Approx (0.9));
    CHECK (ks_radius (1000000, 0.001) == doctest::Approx (0.0019495).epsilon (1e-4));
    std::vector<double> none;
    CHECK_THROWS ((void)ks_statistic (none, [] (double x) { return x; }));
    CHECK_THROWS ((void)ks_radius (0, 0.1));

    Rng rng = make_rng (1, {});
    std::vector<double> u (100000);
    for (auto &x : u)
        x = uniform01 (rng);
    CHECK (ks_statistic (u, [] (double x) { return x; }) < ks_radius (u.size (), 0.001));
}

TEST_CASE ("chi-square helpers")
{
    CHECK (chi_square_critical (1, 0.05) == doctest::Approx (3.841458820694124));
    CHECK (chi_square_critical (10, 0.001) == doctest::Approx (29.588298445074));
    const std::vector<std::size_t> even{10, 10, 10};
    CHECK (chi_square_uniform (even) == 0.0);
    const std::vector<std::size_t> skew{20, 10, 0};
    CHECK (chi_square_uniform (skew) == doctest::Approx (20.0));
}

TEST_CASE ("verdict rule")
{
    CHECK (judge (0.5, 0.1, 0.0, 1.0) == Verdict::consistent);
    CHECK (judge (1.29, 0.1, 0.0, 1.0) == Verdict::consistent);
    CHECK (judge (1.31, 0.1, 0.0, 1.0) == Verdict::violated);
    CHECK (judge (-0.31, 0.1, 0.0, 1.0) == Verdict::violated);
    CHECK (judge (5.0, 0.0, std::nullopt, std::nullopt) == Verdict::consistent);
    CHECK (judge (1.0, 0.0, std::nullopt, 1.0 - 1e-16) == Verdict::consistent);
    CHECK (judge (1.0 + 1e-9, 0.0, 1.0, 1.0) == Verdict::violated);
    CHECK (to_string (Verdict::vacuous) == "vacuous");
}

TEST_CASE ("report encodings")
{
    ExperimentReport r{"demo", {}};
    ReportCell a;
    a.label = "x=1";
    a.params = {{"x", 1.0}};
    a.lower = 0.0;
    a.upper = 0.5;
    a.estimate = 0.25;
    a.std_error = 0.125;
    a.samples = 10;
    a.verdict = Verdict::consistent;
    a.extras = {{"note", 3.0}};
    ReportCell b;
    b.label = "y=2";
    b.params = {{"y", 2.0}};
    b.estimate = 0.1;
    b.samples = 4;
    r.cells = {a, b};
    CHECK_FALSE (r.any_violated ());
    CHECK (a.param ("x") == 1.0);
    CHECK_FALSE (a.extra ("missing").has_value ());

    std::ostringstream csv;
    write_report_csv (r, csv);
    CHECK (csv.str () == "name,label,x,y,lower,upper,estimate,std_error,samples,verdict,note\n"
                         "demo,x=1,1,,0,0.5,0.25,0.125,10,consistent,3\n"
                         "demo,y=2,,2,,,0.10000000000000001,0,4,exploratory,\n");

    std::ostringstream json;
    write_report_json (r, json);
    const auto doc = Json::parse (json.str ());
    CHECK (doc["name"] == "demo");
    REQUIRE (doc["cells"].size () == 2);
    CHECK (doc["cells"][0]["verdict"] == "consistent");
    CHECK (doc["cells"][1]["lower"].is_null ());
    CHECK (doc["cells"][0]["params"]["x"] == 1.0);
    CHECK (json.str ().back () == '\n');

    r.cells[1].verdict = Verdict::violated;
    CHECK (r.any_violated ());

    const Json hb = HopBounds{1.0, 2.0, std::pair{3.0, 4.0}};
    CHECK (hb.dump () == R"({"lower":1.0,"upper":2.0,"simplified":{"lower":3.0,"upper":4.0}})");
}
