#include <halfdisk/bounds.hpp>
#include <halfdisk/csv.hpp>
#include <halfdisk/experiments.hpp>
#include <halfdisk/markov.hpp>
#include <halfdisk/routing.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace halfdisk
{
    namespace
    {
        constexpr double kPi = std::numbers::pi;
        constexpr std::size_t kSampleBlock = 1u << 14;

        std::uint64_t tag (ExperimentKind kind) { return static_cast<std::uint64_t> (kind) + 1; }

        std::string label (const std::string &key, double value) { return key + "=" + format_number (value); }

        void require_trials (const ExperimentConfig &cfg)
        {
            if (cfg.trials < 1)
                throw std::invalid_argument ("trials must be at least 1");
        }

        // Runs `blocks` sample blocks of at most kSampleBlock draws each; fn(rng, first, count) -> hits.
        template <typename Fn> std::size_t count_in_blocks (std::size_t samples, std::uint64_t seed, std::initializer_list<std::uint64_t> path,
                                                            unsigned threads, Fn &&fn)
        {
            const std::size_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
            std::vector<std::size_t> hits (blocks, 0);
            const std::vector<std::uint64_t> prefix (path);
            parallel_for (blocks, threads, [&] (std::size_t b) {
                std::uint64_t s = seed;
                for (auto id : prefix)
                    s = derive_seed (s, id);
                Rng rng{derive_seed (s, b)};
                const std::size_t first = b * kSampleBlock;
                hits[b] = fn (rng, first, std::min (kSampleBlock, samples - first));
            });
            std::size_t total = 0;
            for (auto h : hits)
                total += h;
            return total;
        }

        NetworkParams connectivity_params (const ExperimentConfig &cfg, double dN)
        {
            NetworkParams p = cfg.params;
            const double d = dN / cfg.N;
            const double area = kPi * p.R * p.R / d;
            p.region.size = p.region.kind == RegionKind::disk ? std::sqrt (area / kPi) : std::sqrt (area);
            p.lambda = cfg.N / area;
            return p;
        }
    } // namespace

    std::string to_string (ExperimentKind kind)
    {
        switch (kind)
        {
        case ExperimentKind::connectivity: return "connectivity";
        case ExperimentKind::hopcount: return "hopcount";
        case ExperimentKind::stepdist: return "stepdist";
        case ExperimentKind::prop1: return "prop1";
        case ExperimentKind::eta: return "eta";
        case ExperimentKind::uwedge: return "uwedge";
        }
        return "unknown";
    }

    ExperimentKind experiment_kind_from_string (const std::string &name)
    {
        for (auto k : {ExperimentKind::connectivity, ExperimentKind::hopcount, ExperimentKind::stepdist, ExperimentKind::prop1,
                       ExperimentKind::eta, ExperimentKind::uwedge})
            if (to_string (k) == name)
                return k;
        throw std::invalid_argument ("unknown experiment '" + name + "'");
    }

    ExperimentConfig default_config (ExperimentKind kind)
    {
        ExperimentConfig cfg;
        switch (kind)
        {
        case ExperimentKind::connectivity: cfg.trials = 1000; break;
        case ExperimentKind::hopcount:
            cfg.params.lambda = 20.0;
            cfg.params.region.size = 10.0;
            cfg.h_over_R = {10.0, 25.0, 50.0};
            cfg.trials = 10000;
            break;
        case ExperimentKind::stepdist:
            cfg.params.lambda = 50.0;
            cfg.trials = 1000000;
            break;
        case ExperimentKind::prop1: cfg.trials = 100000; break;
        case ExperimentKind::eta:
            cfg.dN = {30.0};
            cfg.trials = 1000;
            break;
        case ExperimentKind::uwedge:
            cfg.eta_list = {0.25, 0.5, 0.75};
            cfg.trials = 1000000;
            break;
        }
        return cfg;
    }

    void parallel_for (std::size_t n, unsigned threads, const std::function<void (std::size_t)> &fn)
    {
        if (threads == 0)
            threads = std::max (1u, std::thread::hardware_concurrency ());
        threads = static_cast<unsigned> (std::min<std::size_t> (threads, n));
        if (threads <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn (i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::jthread> workers;
        workers.reserve (threads);
        for (unsigned t = 0; t < threads; ++t)
            workers.emplace_back ([&] {
                for (std::size_t i = next++; i < n; i = next++)
                {
                    try
                    {
                        fn (i);
                    }
                    catch (...)
                    {
                        const std::lock_guard lock (failure_mutex);
                        if (!failure)
                            failure = std::current_exception ();
                        next = n;
                    }
                }
            });
        workers.clear ();
        if (failure)
            std::rethrow_exception (failure);
    }

    // ---- kernels -------------------------------------------------------------

    std::vector<AngularGap> angular_gaps (const NodeSet &nodes, const Point2D &apex, std::span<const NodeId> neighbours)
    {
        std::vector<AngularGap> gaps;
        if (neighbours.empty ())
        {
            gaps.push_back ({2.0 * kPi, 0.0});
            return gaps;
        }
        std::vector<double> angles;
        angles.reserve (neighbours.size ());
        for (NodeId id : neighbours)
            angles.push_back ((nodes.position (id) - apex).angle ());
        std::sort (angles.begin (), angles.end ());
        gaps.reserve (angles.size ());
        for (std::size_t k = 0; k < angles.size (); ++k)
        {
            const double start = angles[k];
            const double end = k + 1 < angles.size () ? angles[k + 1] : angles.front () + 2.0 * kPi;
            const double width = end - start;
            gaps.push_back ({width, normalize_angle (start + 0.5 * width)});
        }
        return gaps;
    }

    bool node_has_empty_wedge (const NodeSet &nodes, NodeId id, double R, double eta, EdgeRule rule)
    {
        const Point2D p = nodes.position (id);
        const auto neighbours = nodes.neighbors_in_disk (p, R, id);
        if (neighbours.empty ())
            return true;
        // A full-disk wedge is empty only when there is no neighbour at all.
        if (eta >= 1.0)
            return false;

        const double delta = nodes.region ().boundary_distance (p) / R;
        const double phi = (rule == EdgeRule::unrestricted || delta >= 1.0) ? 0.0 : std::acos (std::clamp (delta, 0.0, 1.0));
        const double normal = nodes.region ().outward_normal (p);
        const double wedge_angle = 2.0 * eta * kPi;

        for (const auto &gap : angular_gaps (nodes, p, neighbours))
        {
            if (gap.width < wedge_angle)
                continue;
            // Orientations of empty wedges fill an arc of half-width (gap - wedge)/2 about the gap centre;
            // it must reach at least phi away from the outward normal.
            const double spread = 0.5 * (gap.width - wedge_angle);
            if (phi == 0.0 || angular_distance (gap.centre, normal) + spread >= phi)
                return true;
        }
        return false;
    }

    DisconnectionScan scan_disconnection (const NodeSet &nodes, double R, double eta, EdgeRule rule)
    {
        DisconnectionScan scan;
        for (std::size_t i = 0; i < nodes.size (); ++i)
        {
            const auto id = static_cast<NodeId> (i);
            const bool interior = nodes.region ().boundary_distance (nodes.position (id)) > R;
            if (interior ? scan.interior_flagged : scan.edge_flagged)
                continue;
            if (node_has_empty_wedge (nodes, id, R, eta, rule))
                (interior ? scan.interior_flagged : scan.edge_flagged) = true;
            if (scan.interior_flagged && scan.edge_flagged)
                break;
        }
        return scan;
    }

    Estimate empty_arc_frequency (std::size_t i, double eta, std::size_t tuples, std::uint64_t seed, unsigned threads)
    {
        if (i == 0)
            return {1.0, 0.0, tuples};
        const double wedge_angle = 2.0 * eta * kPi;
        const std::size_t hits = count_in_blocks (tuples, seed, {}, threads, [&] (Rng &rng, std::size_t, std::size_t count) {
            std::vector<double> angles (i);
            std::size_t local = 0;
            for (std::size_t s = 0; s < count; ++s)
            {
                for (auto &a : angles)
                    a = 2.0 * kPi * uniform01 (rng);
                std::sort (angles.begin (), angles.end ());
                double widest = angles.front () + 2.0 * kPi - angles.back ();
                for (std::size_t k = 0; k + 1 < i; ++k)
                    widest = std::max (widest, angles[k + 1] - angles[k]);
                if (widest >= wedge_angle)
                    ++local;
            }
            return local;
        });
        return proportion (hits, tuples);
    }

    WalkSummary mean_stopping_time (double h, double r_threshold, double R, double eta, std::size_t walks, std::uint64_t seed,
                                    unsigned threads, std::size_t hop_cap)
    {
        if (hop_cap == 0)
            hop_cap = default_walk_hop_cap (h, R);
        std::vector<double> nu (walks, 0.0);
        std::vector<char> reached (walks, 1);
        const std::size_t blocks = (walks + kSampleBlock - 1) / kSampleBlock;
        parallel_for (blocks, threads, [&] (std::size_t b) {
            Rng rng{derive_seed (seed, b)};
            const std::size_t first = b * kSampleBlock;
            const std::size_t last = std::min (walks, first + kSampleBlock);
            for (std::size_t w = first; w < last; ++w)
            {
                const auto s = simulate_stopping_time (h, r_threshold, R, eta, hop_cap, rng);
                nu[w] = static_cast<double> (s.nu);
                reached[w] = s.reached ? 1 : 0;
            }
        });

        WalkSummary summary;
        RunningStats stats;
        for (std::size_t w = 0; w < walks; ++w)
        {
            if (reached[w])
                stats.add (nu[w]);
            else
                ++summary.capped;
        }
        summary.nu = {stats.mean (), stats.std_error (), stats.count ()};
        return summary;
    }

    // ---- connectivity --------------------------------------------------------

    ExperimentReport run_connectivity (const ExperimentConfig &cfg)
    {
        require_trials (cfg);
        ExperimentReport report{"connectivity", {}};
        const double eta = cfg.params.eta;

        for (std::size_t cell = 0; cell < cfg.dN.size (); ++cell)
        {
            const double dN = cfg.dN[cell];
            const NetworkParams params = connectivity_params (cfg, dN);
            params.validate ();

            std::vector<DisconnectionScan> effective (cfg.trials);
            std::vector<char> unrestricted (cfg.trials, 0);
            parallel_for (cfg.trials, cfg.threads, [&] (std::size_t t) {
                Rng rng = make_rng (cfg.seed, {tag (ExperimentKind::connectivity), cell, t});
                const NodeSet nodes = generate_ppp (params, rng);
                effective[t] = scan_disconnection (nodes, params.R, eta, EdgeRule::effective);
                unrestricted[t] = effective[t].disconnected () || scan_disconnection (nodes, params.R, eta, EdgeRule::unrestricted).disconnected ();
            });

            std::size_t any = 0, interior = 0, edge = 0, loose = 0;
            for (std::size_t t = 0; t < cfg.trials; ++t)
            {
                any += effective[t].disconnected ();
                interior += effective[t].interior_flagged;
                edge += effective[t].edge_flagged;
                loose += static_cast<std::size_t> (unrestricted[t]);
            }

            const double d = dN / cfg.N;
            const BoundReport bound = sigma_total (cfg.N, d, eta);
            const Estimate freq = proportion (any, cfg.trials);

            ReportCell c;
            c.label = label ("dN", dN);
            c.params = {{"N", cfg.N}, {"dN", dN}, {"d", d}, {"eta", eta}, {"lambda", params.lambda}};
            c.lower = 0.0;
            c.upper = bound.sigma_total;
            c.estimate = freq.mean;
            c.std_error = freq.std_error;
            c.samples = cfg.trials;
            c.verdict = bound.sigma_total >= 1.0 ? Verdict::vacuous : judge (c.estimate, c.std_error, c.lower, c.upper);
            c.extras = {{"sigma_interior", bound.sigma_interior},
                        {"sigma_edge", bound.sigma_edge},
                        {"interior_frequency", proportion (interior, cfg.trials).mean},
                        {"edge_frequency", proportion (edge, cfg.trials).mean},
                        {"unrestricted_frequency", proportion (loose, cfg.trials).mean}};
            report.cells.push_back (std::move (c));
        }
        return report;
    }

    // ---- hop count -----------------------------------------------------------

    ExperimentReport run_hopcount (const ExperimentConfig &cfg)
    {
        require_trials (cfg);
        ExperimentReport report{"hopcount", {}};
        const double R = cfg.params.R;

        for (std::size_t cell = 0; cell < cfg.h_over_R.size (); ++cell)
        {
            const double ratio = cfg.h_over_R[cell];
            if (!(ratio > 0.0))
                throw std::invalid_argument ("h/R must be positive");
            const double h = ratio * R;
            NetworkParams params = cfg.params;
            params.region.size = std::max (cfg.params.region.size, params.region.kind == RegionKind::disk ? h / 2.0 + 5.0 * R : h + 10.0 * R);
            params.validate ();
            const Point2D source{-h / 2.0, 0.0};
            const Point2D destination{h / 2.0, 0.0};
            const std::size_t cap = cfg.hop_cap > 0 ? cfg.hop_cap : default_route_hop_cap (h, R);

            std::vector<RouteOutcome> outcomes (cfg.trials);
            parallel_for (cfg.trials, cfg.threads, [&] (std::size_t t) {
                Rng rng = make_rng (cfg.seed, {tag (ExperimentKind::hopcount), cell, t});
                const NodeSet nodes = generate_ppp (params, rng);
                outcomes[t] = route_between (nodes, source, destination, RelayPolicy::random_wedge, params, cap, rng);
                outcomes[t].path.clear ();
                outcomes[t].path.shrink_to_fit ();
            });

            RunningStats hops;
            std::size_t stuck = 0, capped = 0;
            for (const auto &o : outcomes)
            {
                if (o.status == RouteStatus::delivered)
                    hops.add (static_cast<double> (o.hops));
                else if (o.status == RouteStatus::stuck)
                    ++stuck;
                else
                    ++capped;
            }

            ReportCell c;
            c.label = label ("h/R", ratio);
            c.params = {{"h_over_R", ratio}, {"lambda_R2", params.lambda * R * R}, {"eta", params.eta}, {"region_size", params.region.size}};
            if (ratio > 1.0)
            {
                c.lower = 3.0 * kPi / 4.0 * (ratio - 1.0) + 1.0;
                c.upper = 4.0 * ratio + 1.0;
            }
            else
            {
                c.lower = 1.0;
                c.upper = 1.0;
            }
            c.estimate = hops.mean ();
            c.std_error = hops.std_error ();
            c.samples = hops.count ();
            if (hops.count () < 2)
                c.verdict = Verdict::inconclusive;
            else if (params.eta != 0.5 && ratio > 1.0)
                c.verdict = Verdict::exploratory;
            else
                c.verdict = judge (c.estimate, c.std_error, c.lower, c.upper);
            const double n = static_cast<double> (cfg.trials);
            c.extras = {{"delivery_rate", static_cast<double> (hops.count ()) / n},
                        {"stuck_rate", static_cast<double> (stuck) / n},
                        {"hop_cap_rate", static_cast<double> (capped) / n},
                        {"hops_per_h_over_R", hops.mean () / ratio},
                        {"hops_per_h_over_R_se", hops.std_error () / ratio}};
            report.cells.push_back (std::move (c));
        }
        return report;
    }

    // ---- step distribution ---------------------------------------------------

    ExperimentReport run_stepdist (const ExperimentConfig &cfg)
    {
        require_trials (cfg);
        ExperimentReport report{"stepdist", {}};
        const double R = cfg.params.R;
        const double eta = 0.5;
        constexpr double alpha = 0.001;

        for (std::size_t cell = 0; cell < cfg.r_over_R.size (); ++cell)
        {
            const double ratio = cfg.r_over_R[cell];
            if (!(ratio > 1.0))
                throw std::invalid_argument ("r/R must exceed 1");
            const double r = ratio * R;
            const double hi = step_support_max (r, R);
            auto cdf = [&] (double x) { return step_cdf (std::clamp (x, -R, hi), r, R); };

            // Uniform-wedge model.
            std::vector<double> xi (cfg.trials);
            const std::size_t blocks = (cfg.trials + kSampleBlock - 1) / kSampleBlock;
            parallel_for (blocks, cfg.threads, [&] (std::size_t b) {
                Rng rng = make_rng (cfg.seed, {tag (ExperimentKind::stepdist), cell, 0, b});
                const std::size_t first = b * kSampleBlock;
                const std::size_t last = std::min (cfg.trials, first + kSampleBlock);
                for (std::size_t k = first; k < last; ++k)
                    xi[k] = apply_step ({r, 0}, sample_uniform_wedge (rng, R, eta)).r - r;
            });
            const double slack = 1e-12 * R;
            const auto outside = static_cast<std::size_t> (
                std::count_if (xi.begin (), xi.end (), [&] (double x) { return x < -R - slack || x > hi + slack; }));

            ReportCell model;
            model.label = label ("model r/R", ratio);
            model.params = {{"r_over_R", ratio}};
            model.upper = ks_radius (cfg.trials, alpha);
            model.estimate = ks_statistic (xi, cdf);
            model.samples = cfg.trials;
            model.verdict = judge (model.estimate, 0.0, std::nullopt, model.upper);
            model.extras = {{"support_min", xi.front ()}, {"support_max", xi.back ()}};
            report.cells.push_back (std::move (model));

            ReportCell support;
            support.label = label ("support r/R", ratio);
            support.params = {{"r_over_R", ratio}};
            support.lower = 0.0;
            support.upper = 0.0;
            support.estimate = static_cast<double> (outside);
            support.samples = cfg.trials;
            support.verdict = judge (support.estimate, 0.0, support.lower, support.upper);
            support.extras = {{"x_min", -R}, {"x_max", hi}};
            report.cells.push_back (std::move (support));

            if (cfg.network_trials == 0)
                continue;

            // Relays picked among the nodes of a network around a sender at distance r.
            NetworkParams params = cfg.params;
            params.eta = eta;
            params.region = {RegionKind::disk, R};
            params.validate ();
            const Point2D destination{r, 0.0};
            std::vector<double> net_xi (cfg.network_trials, std::nan (""));
            parallel_for (cfg.network_trials, cfg.threads, [&] (std::size_t t) {
                Rng rng = make_rng (cfg.seed, {tag (ExperimentKind::stepdist), cell, 1, t});
                const NodeSet nodes = generate_ppp (params, rng);
                const Wedge w = Wedge::toward ({0.0, 0.0}, destination, R, eta);
                std::vector<Candidate> candidates;
                for (NodeId id : neighbors_in_wedge (nodes, w))
                    candidates.push_back ({id, nodes.position (id)});
                if (candidates.empty ())
                    return;
                const auto next = select_relay (RelayPolicy::random_wedge, candidates, {0.0, 0.0}, destination, rng);
                net_xi[t] = distance (nodes.position (*next), destination) - r;
            });
            std::erase_if (net_xi, [] (double x) { return std::isnan (x); });

            ReportCell net;
            net.label = label ("network r/R", ratio);
            net.params = {{"r_over_R", ratio}, {"lambda_R2", params.lambda * R * R}};
            net.samples = net_xi.size ();
            if (net_xi.empty ())
                net.verdict = Verdict::inconclusive;
            else
            {
                net.upper = ks_radius (net_xi.size (), alpha);
                net.estimate = ks_statistic (net_xi, cdf);
                net.verdict = judge (net.estimate, 0.0, std::nullopt, net.upper);
            }
            net.extras = {{"empty_wedge_rate", 1.0 - static_cast<double> (net_xi.size ()) / static_cast<double> (cfg.network_trials)}};
            report.cells.push_back (std::move (net));
        }
        return report;
    }

    // ---- overlap selection ---------------------------------------------------

    ExperimentReport run_overlap_selection (const ExperimentConfig &cfg)
    {
        require_trials (cfg);
        if (cfg.bins < 1)
            throw std::invalid_argument ("bins must be at least 1");
        ExperimentReport report{"prop1", {}};
        const double R = cfg.params.R;
        const double eta = cfg.params.eta;
        const Point2D previous{0.0, 0.0};
        const Point2D destination{1000.0 * R, 0.0};
        const Wedge previous_region = Wedge::toward (previous, destination, R, eta);
        const double wedge_area = previous_region.area ();

        struct Trial
        {
            bool accepted{false};
            bool in_overlap{false};
            double ratio{0.0};
        };

        for (std::size_t cell = 0; cell < cfg.lambda_area.size (); ++cell)
        {
            const double mass = cfg.lambda_area[cell];
            NetworkParams params = cfg.params;
            params.lambda = mass / wedge_area;
            params.region = {RegionKind::disk, 2.0 * R * (1.0 + 1e-9)};
            params.validate ();

            std::vector<Trial> trials (cfg.trials);
            parallel_for (cfg.trials, cfg.threads, [&] (std::size_t t) {
                Rng rng = make_rng (cfg.seed, {tag (ExperimentKind::prop1), cell, t});
                const NodeSet nodes = generate_ppp (params, rng);
                const auto first = neighbors_in_wedge (nodes, previous_region);
                if (first.empty ())
                    return;
                const NodeId current = first[uniform_index (rng, first.size ())];
                const Point2D here = nodes.position (current);
                const Wedge region = Wedge::toward (here, destination, R, eta);

                const auto members = neighbors_in_wedge (nodes, region, current);
                // The previous holder is a node too and competes when it lies in the new region.
                const bool previous_eligible = wedge_contains (region, previous);
                const std::size_t count = members.size () + (previous_eligible ? 1 : 0);
                if (count == 0)
                    return;
                const std::size_t pick = uniform_index (rng, count);
                Trial &out = trials[t];
                out.accepted = true;
                out.in_overlap = pick == members.size () || wedge_contains (previous_region, nodes.position (members[pick]));
                out.ratio = wedge_overlap_area (region, previous_region) / region.area ();
            });

            std::vector<std::size_t> n (cfg.bins, 0), hits (cfg.bins, 0);
            std::vector<double> ratio_sum (cfg.bins, 0.0);
            RunningStats deficit;
            std::size_t accepted = 0;
            for (const auto &tr : trials)
            {
                if (!tr.accepted)
                    continue;
                ++accepted;
                const auto bin = std::min (cfg.bins - 1, static_cast<std::size_t> (tr.ratio * static_cast<double> (cfg.bins)));
                ++n[bin];
                hits[bin] += tr.in_overlap;
                ratio_sum[bin] += tr.ratio;
                deficit.add (tr.ratio - (tr.in_overlap ? 1.0 : 0.0));
            }

            double mean_ratio = 0.0;
            for (std::size_t b = 0; b < cfg.bins; ++b)
            {
                if (n[b] == 0)
                    continue;
                mean_ratio += ratio_sum[b];
                const double ratio = ratio_sum[b] / static_cast<double> (n[b]);
                const auto bounds = overlap_selection_bounds (ratio * wedge_area, wedge_area, params.lambda);
                const Estimate freq = proportion (hits[b], n[b]);

                ReportCell c;
                c.label = label ("lambda_area", mass) + " bin=" + std::to_string (b);
                c.params = {{"lambda_area", mass},
                            {"bin_lo", static_cast<double> (b) / static_cast<double> (cfg.bins)},
                            {"bin_hi", static_cast<double> (b + 1) / static_cast<double> (cfg.bins)}};
                c.lower = bounds.lower;
                c.upper = bounds.upper;
                c.estimate = freq.mean;
                c.std_error = freq.std_error;
                c.samples = n[b];
                c.verdict = n[b] < cfg.min_bin_trials ? Verdict::inconclusive : judge (c.estimate, c.std_error, c.lower, c.upper);
                c.extras = {{"mean_ratio", ratio}};
                report.cells.push_back (std::move (c));
            }
            mean_ratio = accepted > 0 ? mean_ratio / static_cast<double> (accepted) : 0.0;

            // Shortfall of the selection frequency below the overlap ratio, pooled over bins.
            ReportCell gap;
            gap.label = label ("lambda_area", mass) + " deficit";
            gap.params = {{"lambda_area", mass}};
            gap.lower = 0.0;
            gap.upper = mean_ratio / mass;
            gap.estimate = deficit.mean ();
            gap.std_error = deficit.std_error ();
            gap.samples = accepted;
            gap.verdict = accepted < 2 ? Verdict::inconclusive : judge (gap.estimate, gap.std_error, gap.lower, gap.upper);
            gap.extras = {{"acceptance_rate", static_cast<double> (accepted) / static_cast<double> (cfg.trials)}, {"mean_ratio", mean_ratio}};
            report.cells.push_back (std::move (gap));
        }
        return report;
    }

    // ---- eta sweep -----------------------------------------------------------

    ExperimentReport run_eta_sweep (const ExperimentConfig &cfg)
    {
        require_trials (cfg);
        if (cfg.dN.empty () || cfg.h_over_R.empty ())
            throw std::invalid_argument ("eta sweep needs one dN and one h/R value");
        ExperimentReport report{"eta", {}};
        const double dN = cfg.dN.front ();
        const double ratio = cfg.h_over_R.front ();
        const NetworkParams base = connectivity_params (cfg, dN);
        base.validate ();
        const double R = base.R;

        for (std::size_t cell = 0; cell < cfg.eta_list.size (); ++cell)
        {
            const double eta = cfg.eta_list[cell];
            if (!(eta > 0.0) || eta > 1.0)
                throw std::invalid_argument ("eta must lie in (0, 1]");

            // Same networks for every eta, so the frequencies are comparable trial by trial.
            std::vector<char> flagged (cfg.trials, 0);
            parallel_for (cfg.trials, cfg.threads, [&] (std::size_t t) {
                Rng rng = make_rng (cfg.seed, {tag (ExperimentKind::eta), 0, t});
                const NodeSet nodes = generate_ppp (base, rng);
                flagged[t] = scan_disconnection (nodes, R, eta, EdgeRule::effective).disconnected () ? 1 : 0;
            });
            std::size_t hits = 0;
            for (char f : flagged)
                hits += static_cast<std::size_t> (f);
            const Estimate freq = proportion (hits, cfg.trials);

            const auto walks = mean_stopping_time (ratio * R, R, R, eta, cfg.trials,
                                                   derive_seed (derive_seed (cfg.seed, tag (ExperimentKind::eta)), 1 + cell), cfg.threads,
                                                   cfg.hop_cap);

            ReportCell c;
            c.label = label ("eta", eta);
            c.params = {{"eta", eta}, {"N", cfg.N}, {"dN", dN}, {"h_over_R", ratio}};
            c.estimate = freq.mean;
            c.std_error = freq.std_error;
            c.samples = cfg.trials;
            c.verdict = Verdict::exploratory;
            c.extras = {{"sigma_total", sigma_total (cfg.N, dN / cfg.N, eta).sigma_total},
                        {"mean_hops", walks.nu.mean + 1.0},
                        {"mean_hops_se", walks.nu.std_error},
                        {"capped_walks", static_cast<double> (walks.capped)}};
            report.cells.push_back (std::move (c));
        }
        return report;
    }

    // ---- empty-wedge law -----------------------------------------------------

    ExperimentReport run_uwedge (const ExperimentConfig &cfg)
    {
        require_trials (cfg);
        ExperimentReport report{"uwedge", {}};
        std::size_t cell = 0;
        for (double eta : cfg.eta_list)
        {
            for (std::size_t i = 1; i <= cfg.max_i; ++i, ++cell)
            {
                const double exact = empty_wedge_prob_exact (i, eta);
                const Estimate freq = empty_arc_frequency (i, eta, cfg.trials, make_rng (cfg.seed, {tag (ExperimentKind::uwedge), cell}) (),
                                                           cfg.threads);
                ReportCell c;
                c.label = label ("eta", eta) + " i=" + std::to_string (i);
                c.params = {{"eta", eta}, {"i", static_cast<double> (i)}};
                c.lower = exact;
                c.upper = exact;
                c.estimate = freq.mean;
                c.std_error = freq.std_error;
                c.samples = cfg.trials;
                c.verdict = judge (c.estimate, c.std_error, c.lower, c.upper);
                c.extras = {{"union_bound", empty_wedge_prob_upper (i, eta)}};
                report.cells.push_back (std::move (c));
            }
        }
        return report;
    }

    ExperimentReport run_experiment (ExperimentKind kind, const ExperimentConfig &cfg)
    {
        switch (kind)
        {
        case ExperimentKind::connectivity: return run_connectivity (cfg);
        case ExperimentKind::hopcount: return run_hopcount (cfg);
        case ExperimentKind::stepdist: return run_stepdist (cfg);
        case ExperimentKind::prop1: return run_overlap_selection (cfg);
        case ExperimentKind::eta: return run_eta_sweep (cfg);
        case ExperimentKind::uwedge: return run_uwedge (cfg);
        }
        throw std::invalid_argument ("unknown experiment");
    }

} // namespace halfdisk
