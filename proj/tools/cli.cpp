#include "cli.hpp"

#include <halfdisk/bounds.hpp>
#include <halfdisk/csv.hpp>
#include <halfdisk/experiments.hpp>
#include <halfdisk/markov.hpp>
#include <halfdisk/network.hpp>
#include <halfdisk/report.hpp>
#include <halfdisk/routing.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace halfdisk::cli
{
    namespace
    {
        /// Bad flag or config value; reported with exit code 2.
        struct ConfigError : std::runtime_error
        {
            using std::runtime_error::runtime_error;
        };

        struct FlagInfo
        {
            const char *name;
            const char *help;
            const char *default_text;
        };

        // clang-format off
        constexpr FlagInfo kFlags[] = {
            {"config", "flat JSON object whose keys are flag names; flags on the command line win", ""},
            {"seed", "64-bit master seed", "1"},
            {"out", "output file (stdout when absent)", ""},
            {"format", "json or csv", "json"},
            {"threads", "worker threads, 0 = one per hardware thread", "0"},
            {"lambda", "node intensity per unit area", "20 (stepdist: 50; connectivity, prop1: derived)"},
            {"R", "transmission range", "1"},
            {"eta", "wedge fraction: the relay region spans an angle of 2*eta*pi (bounds: list)", "0.5"},
            {"region", "disk or square, centred at the origin", "disk"},
            {"size", "disk radius or square side", "10"},
            {"N", "expected node count (bounds: list)", "3000 (bounds: 1e5)"},
            {"d", "normalized disk area pi R^2/|A|, list", "1e-3"},
            {"dN", "list of d*N values; lambda and region size follow from N", "20,30,40 (eta: 30)"},
            {"h-over-R", "source-destination distance in units of R (list for bounds and exp)", "10 (hopcount: 10,25,50)"},
            {"r-over-R", "distance of the walk from the destination in units of R, list", "bounds: 1; stepdist: 1.01,1.5,2,5,20"},
            {"trials", "Monte Carlo trials per cell", "connectivity, eta: 1000; hopcount: 1e4; prop1: 1e5; stepdist, uwedge: 1e6"},
            {"hop-cap", "maximum transmissions per packet or walk, 0 = default", "0"},
            {"policy", "relay rule: random_wedge, greedy, mfr, nfp, compass", "random_wedge"},
            {"nodes", "CSV file of nodes (id,x,y) to route over instead of a fresh network", ""},
            {"src", "source node id (needs --dst); default is a synthetic point at (-h/2, 0)", ""},
            {"dst", "destination node id (needs --src); default is a synthetic point at (h/2, 0)", ""},
            {"eta-list", "eta values for the eta and uwedge experiments", "0.25,0.5,0.75,1 (uwedge: 0.25,0.5,0.75)"},
            {"lambda-area", "lambda*|wedge| values for prop1", "5,20,100"},
            {"bins", "overlap-ratio bins for prop1", "20"},
            {"min-bin-trials", "fewest trials for a judged prop1 bin", "50"},
            {"max-i", "largest point count in the empty-wedge table", "10"},
            {"network-trials", "networked stepdist trials per r/R, 0 disables", "20000"},
        };
        // clang-format on

        const FlagInfo &flag_info (const std::string &name)
        {
            for (const auto &f : kFlags)
                if (name == f.name)
                    return f;
            throw std::logic_error ("undocumented flag " + name);
        }

        /// Raw flag values, keyed by flag name without dashes.
        class Values
        {
          public:
            void bind (CLI::App &app, const std::string &name)
            {
                const auto &info = flag_info (name);
                auto &slot = values_[name];
                auto *opt = app.add_option ("--" + name, slot, info.help);
                if (name != "config" && name != "out" && name != "nodes")
                    opt->delimiter (',');
                if (*info.default_text)
                    opt->default_str (info.default_text);
                options_[name] = opt;
            }

            [[nodiscard]] bool known (const std::string &name) const { return options_.count (name) > 0; }
            [[nodiscard]] bool given_on_command_line (const std::string &name) const { return options_.at (name)->count () > 0; }
            void set (const std::string &name, std::vector<std::string> v) { values_[name] = std::move (v); }

            [[nodiscard]] bool has (const std::string &name) const
            {
                const auto it = values_.find (name);
                return it != values_.end () && !it->second.empty ();
            }

            [[nodiscard]] std::string text (const std::string &name) const { return values_.at (name).back (); }

            [[nodiscard]] double number (const std::string &name) const { return parse (name, text (name)); }

            [[nodiscard]] std::vector<double> numbers (const std::string &name) const
            {
                std::vector<double> out;
                for (const auto &s : values_.at (name))
                    out.push_back (parse (name, s));
                return out;
            }

            /// Non-negative integer; scientific notation allowed ("1e6").
            [[nodiscard]] std::uint64_t count (const std::string &name) const
            {
                const double v = number (name);
                if (!(v >= 0.0) || v != std::floor (v) || v > 1.8e19)
                    throw ConfigError ("--" + name + ": expected a non-negative integer, got '" + text (name) + "'");
                return static_cast<std::uint64_t> (v);
            }

            /// Seeds must be exact; integers beyond 2^53 are read digit by digit.
            [[nodiscard]] std::uint64_t seed () const
            {
                const std::string s = text ("seed");
                std::uint64_t v = 0;
                const auto res = std::from_chars (s.data (), s.data () + s.size (), v);
                if (res.ec == std::errc{} && res.ptr == s.data () + s.size ())
                    return v;
                return count ("seed");
            }

          private:
            static double parse (const std::string &name, const std::string &s)
            {
                double v = 0.0;
                if (!parse_number (s, v))
                    throw ConfigError ("--" + name + ": '" + s + "' is not a number");
                return v;
            }

            std::map<std::string, std::vector<std::string>> values_;
            std::map<std::string, CLI::Option *> options_;
        };

        std::size_t line_of_offset (const std::string &text, std::size_t offset)
        {
            offset = std::min (offset, text.size ());
            return 1 + static_cast<std::size_t> (std::count (text.begin (), text.begin () + static_cast<std::ptrdiff_t> (offset), '\n'));
        }

        std::string json_scalar (const Json &v, const std::string &path, const std::string &key, std::size_t line)
        {
            if (v.is_string ())
                return v.get<std::string> ();
            if (v.is_number_unsigned ())
                return std::to_string (v.get<std::uint64_t> ());
            if (v.is_number_integer ())
                return std::to_string (v.get<std::int64_t> ());
            if (v.is_number ())
                return format_number (v.get<double> ());
            throw ConfigError (path + ":" + std::to_string (line) + ": key '" + key + "' must be a number, string or array of those");
        }

        /// Fills flags not given on the command line from a flat JSON config file.
        void apply_config_file (const std::string &path, Values &values)
        {
            std::ifstream in (path, std::ios::binary);
            if (!in)
                throw ConfigError (path + ": cannot open config file");
            std::stringstream buffer;
            buffer << in.rdbuf ();
            const std::string text = buffer.str ();

            Json doc;
            try
            {
                doc = Json::parse (text);
            }
            catch (const Json::parse_error &e)
            {
                throw ConfigError (path + ":" + std::to_string (line_of_offset (text, e.byte > 0 ? e.byte - 1 : 0)) + ": malformed JSON: " +
                                   e.what ());
            }
            if (!doc.is_object ())
                throw ConfigError (path + ":1: config must be a JSON object");

            for (const auto &[key, value] : doc.items ())
            {
                const auto at = text.find ("\"" + key + "\"");
                const std::size_t line = at == std::string::npos ? 1 : line_of_offset (text, at);
                if (key == "config" || !values.known (key))
                    throw ConfigError (path + ":" + std::to_string (line) + ": unknown key '" + key + "'");
                if (values.given_on_command_line (key))
                    continue;
                std::vector<std::string> parsed;
                if (value.is_array ())
                    for (const auto &item : value)
                        parsed.push_back (json_scalar (item, path, key, line));
                else
                    parsed.push_back (json_scalar (value, path, key, line));
                values.set (key, std::move (parsed));
            }
        }

        enum class Format
        {
            json,
            csv
        };

        Format output_format (const Values &v)
        {
            if (!v.has ("format"))
                return Format::json;
            const auto f = v.text ("format");
            if (f == "json")
                return Format::json;
            if (f == "csv")
                return Format::csv;
            throw ConfigError ("--format: expected json or csv, got '" + f + "'");
        }

        double number_or (const Values &v, const std::string &name, double fallback) { return v.has (name) ? v.number (name) : fallback; }

        std::vector<double> numbers_or (const Values &v, const std::string &name, std::vector<double> fallback)
        {
            return v.has (name) ? v.numbers (name) : std::move (fallback);
        }

        NetworkParams network_params (const Values &v, NetworkParams p)
        {
            p.lambda = number_or (v, "lambda", p.lambda);
            p.R = number_or (v, "R", p.R);
            p.eta = number_or (v, "eta", p.eta);
            if (v.has ("region"))
                p.region.kind = region_kind_from_string (v.text ("region"));
            p.region.size = number_or (v, "size", p.region.size);
            return p;
        }

        NetworkParams cli_network_defaults ()
        {
            NetworkParams p;
            p.lambda = 20.0;
            p.region.size = 10.0;
            return p;
        }

        void write_json (const Json &j, std::ostream &out) { out << j.dump (2) << '\n'; }

        Json point_json (const Point2D &p) { return Json{{"x", p.x}, {"y", p.y}}; }

        // ---- subcommands -------------------------------------------------------

        int cmd_bounds (const Values &v, std::ostream &out)
        {
            const auto Ns = numbers_or (v, "N", {1e5});
            const auto ds = numbers_or (v, "d", {1e-3});
            const auto etas = numbers_or (v, "eta", {0.5});
            const double R = number_or (v, "R", 1.0);
            const auto hs = numbers_or (v, "h-over-R", {10.0});
            const auto rs = numbers_or (v, "r-over-R", {1.0});
            const std::size_t max_i = v.has ("max-i") ? v.count ("max-i") : 10;

            std::vector<BoundReport> grid;
            for (double N : Ns)
                for (double d : ds)
                    for (double eta : etas)
                        grid.push_back (sigma_total (N, d, eta));

            if (output_format (v) == Format::csv)
            {
                out << "N,d,eta,sigma_interior,sigma_edge,sigma_total\n";
                for (const auto &b : grid)
                    out << format_number (b.N) << ',' << format_number (b.d) << ',' << format_number (b.eta) << ',' << format_number (b.sigma_interior)
                        << ',' << format_number (b.sigma_edge) << ',' << format_number (b.sigma_total) << '\n';
                return kExitOk;
            }

            Json doc = Json::object ();
            doc["bounds"] = grid;
            doc["hop_bounds"] = Json::array ();
            for (double h : hs)
                for (double r : rs)
                    if (h > r && r >= 1.0)
                    {
                        Json entry{{"h_over_R", h}, {"r_over_R", r}, {"R", R}};
                        entry["bounds"] = hop_bounds (h * R, r * R, R);
                        doc["hop_bounds"].push_back (entry);
                    }
            doc["empty_wedge"] = Json::array ();
            for (double eta : etas)
                for (std::size_t i = 1; i <= max_i; ++i)
                    doc["empty_wedge"].push_back (
                        Json{{"eta", eta}, {"i", i}, {"exact", empty_wedge_prob_exact (i, eta)}, {"upper", empty_wedge_prob_upper (i, eta)}});
            write_json (doc, out);
            return kExitOk;
        }

        int cmd_route (const Values &v, std::ostream &out)
        {
            const NetworkParams params = network_params (v, cli_network_defaults ());
            params.validate ();
            const std::uint64_t seed = v.has ("seed") ? v.seed () : 1;
            const double h = number_or (v, "h-over-R", 10.0) * params.R;
            const RelayPolicy policy = v.has ("policy") ? relay_policy_from_string (v.text ("policy")) : RelayPolicy::random_wedge;
            const std::size_t cap = v.has ("hop-cap") && v.count ("hop-cap") > 0 ? v.count ("hop-cap") : default_route_hop_cap (h, params.R);
            if (v.has ("src") != v.has ("dst"))
                throw ConfigError ("--src and --dst go together");

            std::unique_ptr<NodeSet> nodes;
            if (v.has ("nodes"))
            {
                std::ifstream in (v.text ("nodes"));
                if (!in)
                    throw ConfigError (v.text ("nodes") + ": cannot open node file");
                nodes = std::make_unique<NodeSet> (read_nodes_csv (in, params.region, params.R));
            }
            else
                nodes = std::make_unique<NodeSet> (generate_ppp (params, make_rng (seed, {0}) ()));

            Rng rng = make_rng (seed, {1});
            RouteEndpoints ends;
            RouteOutcome outcome;
            if (v.has ("src"))
            {
                const auto src = static_cast<NodeId> (v.count ("src"));
                const auto dst = static_cast<NodeId> (v.count ("dst"));
                if (src >= nodes->size () || dst >= nodes->size ())
                    throw ConfigError ("--src/--dst: node id out of range (network has " + std::to_string (nodes->size ()) + " nodes)");
                ends = {nodes->position (src), src, nodes->position (dst), dst};
                outcome = route_packet (*nodes, src, dst, policy, params, cap, rng);
            }
            else
            {
                ends = {{-h / 2.0, 0.0}, std::nullopt, {h / 2.0, 0.0}, std::nullopt};
                outcome = route_between (*nodes, ends.source, ends.destination, policy, params, cap, rng);
            }

            if (output_format (v) == Format::csv)
            {
                write_route_csv (*nodes, outcome, ends, out);
                return kExitOk;
            }
            Json doc{{"status", to_string (outcome.status)},
                     {"hops", outcome.hops},
                     {"final_distance", outcome.final_distance},
                     {"policy", to_string (policy)},
                     {"nodes", nodes->size ()},
                     {"source", point_json (ends.source)},
                     {"destination", point_json (ends.destination)},
                     {"path", Json::array ()}};
            for (NodeId id : outcome.path)
            {
                const Point2D p = nodes->position (id);
                doc["path"].push_back (Json{{"node_id", id}, {"x", p.x}, {"y", p.y}, {"distance_to_dst", distance (p, ends.destination)}});
            }
            write_json (doc, out);
            return kExitOk;
        }

        int cmd_walk (const Values &v, std::ostream &out)
        {
            const double R = number_or (v, "R", 1.0);
            const double eta = number_or (v, "eta", 0.5);
            const double h = number_or (v, "h-over-R", 10.0) * R;
            const std::uint64_t seed = v.has ("seed") ? v.seed () : 1;
            const std::size_t cap = v.has ("hop-cap") && v.count ("hop-cap") > 0 ? v.count ("hop-cap") : default_walk_hop_cap (h, R);
            const auto trace = walk_trace (h, R, eta, cap, seed);

            if (output_format (v) == Format::csv)
            {
                write_trace_csv (trace, out);
                return kExitOk;
            }
            Json doc{{"h", h}, {"R", R}, {"eta", eta}, {"reached", trace.back ().r <= R}, {"steps", trace.back ().t}, {"trace", Json::array ()}};
            for (const auto &s : trace)
                doc["trace"].push_back (Json{{"t", s.t}, {"r", s.r}});
            write_json (doc, out);
            return kExitOk;
        }

        int cmd_gen (const Values &v, std::ostream &out)
        {
            const NetworkParams params = network_params (v, cli_network_defaults ());
            params.validate ();
            const NodeSet nodes = generate_ppp (params, make_rng (v.has ("seed") ? v.seed () : 1, {0}) ());
            if (output_format (v) == Format::csv)
            {
                write_nodes_csv (nodes, out);
                return kExitOk;
            }
            Json doc{{"region", to_string (params.region.kind)}, {"size", params.region.size}, {"lambda", params.lambda}, {"nodes", Json::array ()}};
            for (std::size_t i = 0; i < nodes.size (); ++i)
            {
                const Point2D p = nodes.position (static_cast<NodeId> (i));
                doc["nodes"].push_back (Json{{"id", i}, {"x", p.x}, {"y", p.y}});
            }
            write_json (doc, out);
            return kExitOk;
        }

        int cmd_exp (const std::string &name, const Values &v, std::ostream &out)
        {
            const ExperimentKind kind = experiment_kind_from_string (name);
            ExperimentConfig cfg = default_config (kind);
            cfg.params = network_params (v, cfg.params);
            if (v.has ("seed"))
                cfg.seed = v.seed ();
            if (v.has ("threads"))
                cfg.threads = static_cast<unsigned> (v.count ("threads"));
            if (v.has ("trials"))
                cfg.trials = v.count ("trials");
            if (v.has ("hop-cap"))
                cfg.hop_cap = v.count ("hop-cap");
            cfg.N = number_or (v, "N", cfg.N);
            cfg.dN = numbers_or (v, "dN", cfg.dN);
            cfg.h_over_R = numbers_or (v, "h-over-R", cfg.h_over_R);
            cfg.r_over_R = numbers_or (v, "r-over-R", cfg.r_over_R);
            cfg.eta_list = numbers_or (v, "eta-list", cfg.eta_list);
            cfg.lambda_area = numbers_or (v, "lambda-area", cfg.lambda_area);
            if (v.has ("bins"))
                cfg.bins = v.count ("bins");
            if (v.has ("min-bin-trials"))
                cfg.min_bin_trials = v.count ("min-bin-trials");
            if (v.has ("max-i"))
                cfg.max_i = v.count ("max-i");
            if (v.has ("network-trials"))
                cfg.network_trials = v.count ("network-trials");

            const ExperimentReport report = run_experiment (kind, cfg);
            if (output_format (v) == Format::csv)
                write_report_csv (report, out);
            else
                write_report_json (report, out);
            return report.any_violated () ? kExitViolated : kExitOk;
        }

        const std::vector<std::string> kCommon{"config", "seed", "out", "format", "threads"};
        const std::vector<std::string> kNetwork{"lambda", "R", "eta", "region", "size"};

        void bind_all (CLI::App &app, Values &values, std::initializer_list<std::vector<std::string>> groups)
        {
            for (const auto &g : groups)
                for (const auto &name : g)
                    values.bind (app, name);
        }

        std::string experiment_names ()
        {
            std::string s;
            for (auto k : {ExperimentKind::connectivity, ExperimentKind::hopcount, ExperimentKind::stepdist, ExperimentKind::prop1,
                           ExperimentKind::eta, ExperimentKind::uwedge})
                s += (s.empty () ? "" : "|") + to_string (k);
            return s;
        }
    } // namespace

    int run (const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Half-disk geometric routing: bounds, simulations and experiments", "halfdisk"};
        app.require_subcommand (1);
        app.set_help_all_flag ("--help-all", "help for every subcommand");

        Values bounds_v, route_v, walk_v, exp_v, gen_v;

        auto *bounds = app.add_subcommand ("bounds", "disconnection bounds, hop-count bounds and the empty-wedge table over a grid");
        bind_all (*bounds, bounds_v, {kCommon, {"N", "d", "eta", "R", "h-over-R", "r-over-R", "max-i"}});

        auto *route = app.add_subcommand ("route", "route one packet over a network and print its path");
        bind_all (*route, route_v, {kCommon, kNetwork, {"h-over-R", "policy", "hop-cap", "nodes", "src", "dst"}});

        auto *walk = app.add_subcommand ("walk", "trace of the distance-to-destination chain");
        bind_all (*walk, walk_v, {kCommon, {"R", "eta", "h-over-R", "hop-cap"}});

        std::string exp_name;
        auto *exp = app.add_subcommand ("exp", "run a Monte Carlo experiment");
        exp->add_option ("name", exp_name, experiment_names ())->required ();
        bind_all (*exp, exp_v,
                  {kCommon, kNetwork,
                   {"trials", "hop-cap", "N", "dN", "h-over-R", "r-over-R", "eta-list", "lambda-area", "bins", "min-bin-trials", "max-i",
                    "network-trials"}});

        auto *gen = app.add_subcommand ("gen", "dump one Poisson network");
        bind_all (*gen, gen_v, {kCommon, kNetwork});

        std::vector<std::string> reversed (args.rbegin (), args.rend ());
        try
        {
            app.parse (reversed);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit (e, out, err);
            return code == 0 ? kExitOk : kExitConfig;
        }

        struct Active
        {
            CLI::App *app;
            Values *values;
        };
        const Active active = bounds->parsed () ? Active{bounds, &bounds_v}
                            : route->parsed ()  ? Active{route, &route_v}
                            : walk->parsed ()   ? Active{walk, &walk_v}
                            : exp->parsed ()    ? Active{exp, &exp_v}
                                                : Active{gen, &gen_v};
        Values &v = *active.values;

        try
        {
            if (v.has ("config"))
                apply_config_file (v.text ("config"), v);
            output_format (v);

            std::ofstream file;
            std::ostream *sink = &out;
            if (v.has ("out"))
            {
                file.open (v.text ("out"), std::ios::binary);
                if (!file)
                    throw ConfigError (v.text ("out") + ": cannot open output file");
                sink = &file;
            }

            int code = kExitOk;
            if (active.app == bounds)
                code = cmd_bounds (v, *sink);
            else if (active.app == route)
                code = cmd_route (v, *sink);
            else if (active.app == walk)
                code = cmd_walk (v, *sink);
            else if (active.app == exp)
                code = cmd_exp (exp_name, v, *sink);
            else
                code = cmd_gen (v, *sink);
            sink->flush ();
            if (!*sink)
                throw std::runtime_error ("failed writing output");
            return code;
        }
        catch (const ConfigError &e)
        {
            err << "error: " << e.what () << '\n';
            return kExitConfig;
        }
        catch (const std::invalid_argument &e)
        {
            err << "error: " << e.what () << '\n';
            return kExitConfig;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what () << '\n';
            return kExitFailure;
        }
    }

} // namespace halfdisk::cli
