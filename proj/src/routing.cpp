#include <halfdisk/csv.hpp>
#include <halfdisk/routing.hpp>

#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace halfdisk
{
    std::string to_string (RelayPolicy policy)
    {
        switch (policy)
        {
        case RelayPolicy::random_wedge: return "random_wedge";
        case RelayPolicy::greedy: return "greedy";
        case RelayPolicy::mfr: return "mfr";
        case RelayPolicy::nfp: return "nfp";
        case RelayPolicy::compass: return "compass";
        }
        return "unknown";
    }

    RelayPolicy relay_policy_from_string (const std::string &name)
    {
        for (auto p : {RelayPolicy::random_wedge, RelayPolicy::greedy, RelayPolicy::mfr, RelayPolicy::nfp, RelayPolicy::compass})
            if (to_string (p) == name)
                return p;
        throw std::invalid_argument ("unknown relay policy '" + name + "'");
    }

    std::string to_string (RouteStatus status)
    {
        switch (status)
        {
        case RouteStatus::delivered: return "Delivered";
        case RouteStatus::stuck: return "Stuck";
        case RouteStatus::hop_cap_exceeded: return "HopCapExceeded";
        }
        return "unknown";
    }

    std::optional<NodeId> select_relay (RelayPolicy policy, std::span<const Candidate> candidates, const Point2D &current,
                                        const Point2D &destination, Rng &rng)
    {
        if (candidates.empty ())
            throw std::invalid_argument ("select_relay: empty candidate list");

        const Point2D axis = destination - current;
        const double axis_len = axis.norm ();
        const Point2D u = axis_len > 0.0 ? axis * (1.0 / axis_len) : Point2D{1.0, 0.0};

        // Index of the candidate minimizing score among those passing the filter.
        auto best_by = [&] (auto &&admit, auto &&score) -> std::optional<NodeId> {
            std::optional<NodeId> best;
            double best_score = std::numeric_limits<double>::infinity ();
            for (const auto &c : candidates)
            {
                if (!admit (c))
                    continue;
                const double s = score (c);
                if (s < best_score)
                {
                    best_score = s;
                    best = c.id;
                }
            }
            return best;
        };
        auto progress = [&] (const Candidate &c) { return (c.position - current).dot (u); };
        auto any = [] (const Candidate &) { return true; };

        switch (policy)
        {
        case RelayPolicy::random_wedge: return candidates[uniform_index (rng, candidates.size ())].id;
        case RelayPolicy::greedy:
            return best_by ([&] (const Candidate &c) { return distance (c.position, destination) < axis_len; },
                            [&] (const Candidate &c) { return distance (c.position, destination); });
        case RelayPolicy::mfr:
            return best_by ([&] (const Candidate &c) { return progress (c) > 0.0; }, [&] (const Candidate &c) { return -progress (c); });
        case RelayPolicy::nfp:
            return best_by ([&] (const Candidate &c) { return progress (c) > 0.0; },
                            [&] (const Candidate &c) { return distance (c.position, current); });
        case RelayPolicy::compass:
            return best_by (any, [&] (const Candidate &c) { return angular_distance ((c.position - current).angle (), u.angle ()); });
        }
        return std::nullopt;
    }

    std::size_t default_route_hop_cap (double h, double R) { return static_cast<std::size_t> (std::ceil (40.0 * h / R)) + 100; }

    namespace
    {
        RouteOutcome route_core (const NodeSet &nodes, Point2D current, NodeId current_id, const Point2D &destination,
                                 RelayPolicy policy, const NetworkParams &params, std::size_t hop_cap, Rng &rng)
        {
            if (hop_cap < 1)
                throw std::invalid_argument ("route: hop cap must be at least 1");

            RouteOutcome outcome;
            if (current_id != NodeSet::kNoNode)
                outcome.path.push_back (current_id);

            std::vector<Candidate> candidates;
            std::size_t transmissions = 0;
            for (;;)
            {
                const double remaining = distance (current, destination);
                outcome.final_distance = remaining;
                if (transmissions >= hop_cap)
                {
                    outcome.status = RouteStatus::hop_cap_exceeded;
                    break;
                }
                if (remaining <= params.R)
                {
                    outcome.status = RouteStatus::delivered;
                    ++transmissions;
                    break;
                }

                const Wedge w = Wedge::toward (current, destination, params.R, params.eta);
                candidates.clear ();
                for (NodeId id : neighbors_in_wedge (nodes, w, current_id))
                    candidates.push_back ({id, nodes.position (id)});
                if (candidates.empty ())
                {
                    outcome.status = RouteStatus::stuck;
                    break;
                }
                const auto next = select_relay (policy, candidates, current, destination, rng);
                if (!next)
                {
                    outcome.status = RouteStatus::stuck;
                    break;
                }
                assert (wedge_contains (w, nodes.position (*next)));
                current_id = *next;
                current = nodes.position (current_id);
                outcome.path.push_back (current_id);
                ++transmissions;
            }
            outcome.hops = transmissions;
            return outcome;
        }
    } // namespace

    RouteOutcome route_packet (const NodeSet &nodes, NodeId source, NodeId destination, RelayPolicy policy,
                               const NetworkParams &params, std::size_t hop_cap, Rng &rng)
    {
        if (source >= nodes.size () || destination >= nodes.size ())
            throw std::out_of_range ("route_packet: unknown node id");
        if (source == destination)
            throw std::invalid_argument ("route_packet: source equals destination");
        return route_core (nodes, nodes.position (source), source, nodes.position (destination), policy, params, hop_cap, rng);
    }

    RouteOutcome route_between (const NodeSet &nodes, const Point2D &source, const Point2D &destination, RelayPolicy policy,
                                const NetworkParams &params, std::size_t hop_cap, Rng &rng)
    {
        return route_core (nodes, source, NodeSet::kNoNode, destination, policy, params, hop_cap, rng);
    }

    void write_route_csv (const NodeSet &nodes, const RouteOutcome &outcome, const RouteEndpoints &ends, std::ostream &out)
    {
        out << "hop,node_id,x,y,distance_to_dst\n";
        auto row = [&] (std::size_t hop, std::optional<NodeId> id, const Point2D &p) {
            out << hop << ',' << (id ? std::to_string (*id) : std::string ("-1")) << ',' << format_number (p.x) << ','
                << format_number (p.y) << ',' << format_number (distance (p, ends.destination)) << '\n';
        };

        std::size_t hop = 0;
        std::size_t first_relay = 0;
        if (ends.source_id)
            first_relay = 1;
        row (hop++, ends.source_id, ends.source);
        for (std::size_t k = first_relay; k < outcome.path.size (); ++k)
            row (hop++, outcome.path[k], nodes.position (outcome.path[k]));
        if (outcome.status == RouteStatus::delivered)
            row (hop, ends.destination_id, ends.destination);
    }

} // namespace halfdisk
