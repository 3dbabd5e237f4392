#pragma once
/**
 * @file   experiments.hpp
 * @brief  Monte Carlo harness pairing simulations with the closed-form quantities.
 *
 * Every trial draws from its own stream make_rng(seed, {experiment, cell, trial})
 * (or a block of samples, for the cheap samplers), and results are reduced in
 * trial order, so reports do not depend on the thread count.
 */

#include <halfdisk/network.hpp>
#include <halfdisk/report.hpp>
#include <halfdisk/stats.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace halfdisk
{
    enum class ExperimentKind
    {
        connectivity,
        hopcount,
        stepdist,
        prop1,
        eta,
        uwedge
    };

    [[nodiscard]] std::string to_string (ExperimentKind kind);
    [[nodiscard]] ExperimentKind experiment_kind_from_string (const std::string &name);

    struct ExperimentConfig
    {
        /// lambda, R, eta and region. Experiments that derive lambda or the region
        /// from other knobs say so below.
        NetworkParams params{};
        std::size_t trials{1000};
        std::uint64_t seed{1};
        /// 0 picks std::thread::hardware_concurrency().
        unsigned threads{0};
        /// 0 picks the per-experiment default cap.
        std::size_t hop_cap{0};

        std::vector<double> h_over_R{10.0};
        std::vector<double> eta_list{0.25, 0.5, 0.75, 1.0};
        std::vector<double> r_over_R{1.01, 1.5, 2.0, 5.0, 20.0};

        /// Connectivity: expected node count and the dN grid (lambda and region size follow).
        double N{3000.0};
        std::vector<double> dN{20.0, 30.0, 40.0};

        /// Overlap selection: lambda*|wedge| grid, ratio bins, minimum trials per judged bin.
        std::vector<double> lambda_area{5.0, 20.0, 100.0};
        std::size_t bins{20};
        std::size_t min_bin_trials{50};

        /// Empty-wedge law: largest point count.
        std::size_t max_i{10};

        /// Step distribution: trials of the networked variant (0 disables it).
        std::size_t network_trials{20000};
    };

    /// Defaults matching the reference scenario of each experiment.
    [[nodiscard]] ExperimentConfig default_config (ExperimentKind kind);

    /// Runs @p fn(i) for i in [0, n) on up to @p threads workers.
    void parallel_for (std::size_t n, unsigned threads, const std::function<void (std::size_t)> &fn);

    // ---- kernels -------------------------------------------------------------

    /// Widest empty arc among the directions from @p apex to @p neighbours (2 pi when empty).
    struct AngularGap
    {
        double width{0.0};
        double centre{0.0}; ///< bisector of the widest arc
    };

    /// All maximal empty arcs between consecutive neighbour directions.
    [[nodiscard]] std::vector<AngularGap> angular_gaps (const NodeSet &nodes, const Point2D &apex, std::span<const NodeId> neighbours);

    enum class EdgeRule
    {
        effective,   ///< edge nodes only count empty wedges oriented away from the boundary by more than acos(delta)
        unrestricted ///< every orientation counts for every node
    };

    /// True when some wedge of angle 2*eta*pi at node @p id, in an admissible orientation, is empty.
    [[nodiscard]] bool node_has_empty_wedge (const NodeSet &nodes, NodeId id, double R, double eta, EdgeRule rule);

    struct DisconnectionScan
    {
        bool interior_flagged{false};
        bool edge_flagged{false};
        [[nodiscard]] bool disconnected () const noexcept { return interior_flagged || edge_flagged; }
    };

    [[nodiscard]] DisconnectionScan scan_disconnection (const NodeSet &nodes, double R, double eta, EdgeRule rule);

    /// Fraction of i-tuples of uniform directions leaving an arc of at least 2*eta*pi empty.
    [[nodiscard]] Estimate empty_arc_frequency (std::size_t i, double eta, std::size_t tuples, std::uint64_t seed, unsigned threads);

    struct WalkSummary
    {
        Estimate nu;             ///< steps until the distance first drops to the threshold
        std::size_t capped{0};   ///< walks stopped by the hop cap (excluded from nu)
    };

    /// Mean stopping time over @p walks independent walks from distance h. hop_cap 0 uses the default.
    [[nodiscard]] WalkSummary mean_stopping_time (double h, double r_threshold, double R, double eta, std::size_t walks,
                                                  std::uint64_t seed, unsigned threads, std::size_t hop_cap = 0);

    // ---- experiments ---------------------------------------------------------

    /// Disconnection frequency of disk/square networks against the total bound. lambda = N/|A|,
    /// |A| = pi R^2 / d with d = dN/N.
    [[nodiscard]] ExperimentReport run_connectivity (const ExperimentConfig &cfg);

    /// Random-wedge routing between synthetic endpoints h apart over fresh networks.
    /// The region grows to at least radius h/2 + 5R.
    [[nodiscard]] ExperimentReport run_hopcount (const ExperimentConfig &cfg);

    /// Step-size law against uniform wedge samples and against relays picked in networks.
    [[nodiscard]] ExperimentReport run_stepdist (const ExperimentConfig &cfg);

    /// Two consecutive relay choices; frequency of landing in the overlap of the two relay
    /// regions against the overlap-ratio sandwich, binned by ratio.
    [[nodiscard]] ExperimentReport run_overlap_selection (const ExperimentConfig &cfg);

    /// Disconnection frequency and walk length per eta. Exploratory, no verdicts.
    [[nodiscard]] ExperimentReport run_eta_sweep (const ExperimentConfig &cfg);

    /// Empty-arc frequency against the inclusion-exclusion formula.
    [[nodiscard]] ExperimentReport run_uwedge (const ExperimentConfig &cfg);

    [[nodiscard]] ExperimentReport run_experiment (ExperimentKind kind, const ExperimentConfig &cfg);

} // namespace halfdisk
