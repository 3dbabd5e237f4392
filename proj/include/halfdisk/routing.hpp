#pragma once
/**
 * @file   routing.hpp
 * @brief  Localized geometric forwarding over a NodeSet.
 *
 * At every step the current holder delivers directly when the destination
 * is within R. Otherwise it forms the wedge of radius R and half angle
 * eta*pi pointing at the destination and hands the packet to a relay chosen
 * among the wedge members by the policy. Relays may be revisited.
 */

#include <halfdisk/network.hpp>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace halfdisk
{
    enum class RelayPolicy
    {
        random_wedge, ///< uniform choice among wedge members
        greedy,       ///< closest to the destination, strictly closer than the sender
        mfr,          ///< most forward progress
        nfp,          ///< nearest node with positive progress
        compass       ///< smallest angular deviation from the sender-destination axis
    };

    [[nodiscard]] std::string to_string (RelayPolicy policy);
    [[nodiscard]] RelayPolicy relay_policy_from_string (const std::string &name);

    enum class RouteStatus
    {
        delivered,
        stuck,
        hop_cap_exceeded
    };

    [[nodiscard]] std::string to_string (RouteStatus status);

    struct RouteOutcome
    {
        RouteStatus status{RouteStatus::stuck};
        /// Transmissions, including the final one to the destination when delivered.
        std::size_t hops{0};
        /// Node ids that held the packet, in order. Starts with the source when it is a node.
        std::vector<NodeId> path;
        /// Distance from the last holder to the destination.
        double final_distance{0.0};
    };

    struct Candidate
    {
        NodeId id;
        Point2D position;
    };

    /// Picks the next relay among @p candidates. Returns nullopt when the policy
    /// rejects every candidate (no progress). Throws std::invalid_argument on an empty list.
    [[nodiscard]] std::optional<NodeId> select_relay (RelayPolicy policy, std::span<const Candidate> candidates, const Point2D &current,
                                                      const Point2D &destination, Rng &rng);

    /// Default transmission cap: ceil(40*h/R) + 100.
    [[nodiscard]] std::size_t default_route_hop_cap (double h, double R);

    /// Routes between node ids.
    [[nodiscard]] RouteOutcome route_packet (const NodeSet &nodes, NodeId source, NodeId destination, RelayPolicy policy,
                                             const NetworkParams &params, std::size_t hop_cap, Rng &rng);

    /// Routes from an arbitrary source point to an arbitrary destination point.
    /// Neither endpoint needs to be a node; the path lists relays only.
    [[nodiscard]] RouteOutcome route_between (const NodeSet &nodes, const Point2D &source, const Point2D &destination,
                                              RelayPolicy policy, const NetworkParams &params, std::size_t hop_cap, Rng &rng);

    struct RouteEndpoints
    {
        Point2D source;
        std::optional<NodeId> source_id;
        Point2D destination;
        std::optional<NodeId> destination_id;
    };

    /// Trace CSV `hop,node_id,x,y,distance_to_dst`: the source, each relay, and the
    /// destination when delivered. Synthetic endpoints get node_id -1.
    void write_route_csv (const NodeSet &nodes, const RouteOutcome &outcome, const RouteEndpoints &ends, std::ostream &out);

} // namespace halfdisk
