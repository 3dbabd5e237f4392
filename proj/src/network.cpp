#include <halfdisk/csv.hpp>
#include <halfdisk/network.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace halfdisk
{
    std::string to_string (RegionKind kind) { return kind == RegionKind::disk ? "disk" : "square"; }

    RegionKind region_kind_from_string (const std::string &name)
    {
        if (name == "disk")
            return RegionKind::disk;
        if (name == "square")
            return RegionKind::square;
        throw std::invalid_argument ("unknown region kind '" + name + "' (expected disk or square)");
    }

    double RegionSpec::area () const noexcept { return kind == RegionKind::disk ? std::numbers::pi * size * size : size * size; }

    bool RegionSpec::contains (const Point2D &p) const noexcept
    {
        if (kind == RegionKind::disk)
            return p.x * p.x + p.y * p.y <= size * size;
        const double h = 0.5 * size;
        return std::fabs (p.x) <= h && std::fabs (p.y) <= h;
    }

    double RegionSpec::boundary_distance (const Point2D &p) const noexcept
    {
        if (kind == RegionKind::disk)
            return std::max (0.0, size - p.norm ());
        const double h = 0.5 * size;
        return std::max (0.0, std::min (h - std::fabs (p.x), h - std::fabs (p.y)));
    }

    double RegionSpec::outward_normal (const Point2D &p) const noexcept
    {
        constexpr double pi = std::numbers::pi;
        if (kind == RegionKind::disk)
            return p.norm () > 0.0 ? p.angle () : 0.0;
        const double h = 0.5 * size;
        if (h - std::fabs (p.x) <= h - std::fabs (p.y))
            return p.x >= 0.0 ? 0.0 : pi;
        return p.y >= 0.0 ? pi / 2.0 : -pi / 2.0;
    }

    double RegionSpec::half_extent () const noexcept { return kind == RegionKind::disk ? size : 0.5 * size; }

    Point2D RegionSpec::sample (Rng &rng) const
    {
        if (kind == RegionKind::disk)
        {
            const double rho = size * std::sqrt (uniform01 (rng));
            const double theta = 2.0 * std::numbers::pi * uniform01 (rng);
            return {rho * std::cos (theta), rho * std::sin (theta)};
        }
        const double x = (uniform01 (rng) - 0.5) * size;
        const double y = (uniform01 (rng) - 0.5) * size;
        return {x, y};
    }

    double NetworkParams::normalized_disk_area () const noexcept { return std::numbers::pi * R * R / region.area (); }

    void NetworkParams::validate () const
    {
        if (!(lambda > 0.0) || !std::isfinite (lambda))
            throw std::invalid_argument ("lambda must be positive");
        if (!(R > 0.0) || !std::isfinite (R))
            throw std::invalid_argument ("R must be positive");
        if (!(eta > 0.0) || eta > 1.0)
            throw std::invalid_argument ("eta must lie in (0, 1]");
        if (!(region.size > 0.0) || !std::isfinite (region.size))
            throw std::invalid_argument ("region size must be positive");
        if (normalized_disk_area () > 1.0)
            throw std::invalid_argument ("transmission disk larger than the region (d > 1)");
    }

    // ---- NodeSet -------------------------------------------------------------

    NodeSet::NodeSet (RegionSpec region, double cell_size, std::vector<Point2D> positions)
        : region_ (region), cell_size_ (cell_size), positions_ (std::move (positions))
    {
        if (!(cell_size_ > 0.0))
            throw std::invalid_argument ("NodeSet: cell size must be positive");
        if (positions_.size () >= kNoNode)
            throw std::length_error ("NodeSet: too many nodes");

        const double extent = region_.half_extent ();
        origin_ = -extent;
        cols_ = std::max<std::int64_t> (1, static_cast<std::int64_t> (std::ceil (2.0 * extent / cell_size_)));
        const auto cells = static_cast<std::size_t> (cols_ * cols_);

        // Counting sort of node ids into cells.
        std::vector<std::size_t> cell_of_node (positions_.size ());
        cell_start_.assign (cells + 1, 0);
        for (std::size_t i = 0; i < positions_.size (); ++i)
        {
            const auto [c, r] = cell_of (positions_[i]);
            cell_of_node[i] = static_cast<std::size_t> (r * cols_ + c);
            ++cell_start_[cell_of_node[i] + 1];
        }
        for (std::size_t c = 0; c < cells; ++c)
            cell_start_[c + 1] += cell_start_[c];
        cell_items_.resize (positions_.size ());
        std::vector<std::uint32_t> fill (cell_start_.begin (), cell_start_.end () - 1);
        for (std::size_t i = 0; i < positions_.size (); ++i)
            cell_items_[fill[cell_of_node[i]]++] = static_cast<NodeId> (i);
    }

    std::pair<std::int64_t, std::int64_t> NodeSet::cell_of (const Point2D &p) const noexcept
    {
        auto index = [&] (double v) {
            const double f = std::floor ((v - origin_) / cell_size_);
            if (!(f > 0.0))
                return std::int64_t{0};
            return std::min<std::int64_t> (cols_ - 1, static_cast<std::int64_t> (f));
        };
        return {index (p.x), index (p.y)};
    }

    std::vector<NodeId> NodeSet::neighbors_in_disk (const Point2D &centre, double radius, NodeId exclude) const
    {
        std::vector<NodeId> out;
        const double r2 = radius * radius;
        for_each_in_box ({centre.x - radius, centre.y - radius}, {centre.x + radius, centre.y + radius}, [&] (NodeId id) {
            if (id == exclude)
                return;
            const Point2D d = positions_[id] - centre;
            if (d.dot (d) <= r2)
                out.push_back (id);
        });
        std::sort (out.begin (), out.end ());
        return out;
    }

    // ---- generation and queries ----------------------------------------------

    NodeSet generate_ppp (const NetworkParams &params, Rng &rng)
    {
        params.validate ();
        const auto count = poisson (rng, params.expected_nodes ());
        std::vector<Point2D> positions;
        positions.reserve (count);
        for (std::uint64_t i = 0; i < count; ++i)
            positions.push_back (params.region.sample (rng));
        return NodeSet (params.region, params.R, std::move (positions));
    }

    NodeSet generate_ppp (const NetworkParams &params, std::uint64_t seed)
    {
        Rng rng = make_rng (seed, {});
        return generate_ppp (params, rng);
    }

    std::vector<NodeId> neighbors_in_wedge (const NodeSet &nodes, const Wedge &w, NodeId exclude)
    {
        std::vector<NodeId> out;
        if (nodes.empty ())
            return out;
        const double r = w.radius;
        nodes.for_each_in_box ({w.apex.x - r, w.apex.y - r}, {w.apex.x + r, w.apex.y + r}, [&] (NodeId id) {
            if (id != exclude && wedge_contains (w, nodes.position (id)))
                out.push_back (id);
        });
        std::sort (out.begin (), out.end ());
        return out;
    }

    NodePartition classify_nodes (const NodeSet &nodes, double R)
    {
        NodePartition part;
        for (std::size_t i = 0; i < nodes.size (); ++i)
        {
            const auto id = static_cast<NodeId> (i);
            if (nodes.region ().boundary_distance (nodes.position (id)) > R)
                part.interior.push_back (id);
            else
                part.edge.push_back (id);
        }
        return part;
    }

    void write_nodes_csv (const NodeSet &nodes, std::ostream &out)
    {
        out << "id,x,y\n";
        for (std::size_t i = 0; i < nodes.size (); ++i)
        {
            const auto &p = nodes.position (static_cast<NodeId> (i));
            out << i << ',' << format_number (p.x) << ',' << format_number (p.y) << '\n';
        }
    }

    NodeSet read_nodes_csv (std::istream &in, RegionSpec region, double cell_size)
    {
        std::string line;
        std::size_t line_no = 1;
        if (!std::getline (in, line) || (line != "id,x,y" && line != "id,x,y\r"))
            throw std::runtime_error ("nodes csv line 1: expected header 'id,x,y'");

        std::vector<Point2D> positions;
        while (std::getline (in, line))
        {
            ++line_no;
            if (line.empty () || line == "\r")
                continue;
            const auto fields = split_csv_line (line);
            double id = 0.0;
            Point2D p;
            if (fields.size () != 3 || !parse_number (fields[0], id) || !parse_number (fields[1], p.x) || !parse_number (fields[2], p.y))
                throw std::runtime_error ("nodes csv line " + std::to_string (line_no) + ": expected 'id,x,y'");
            if (id != static_cast<double> (positions.size ()))
                throw std::runtime_error ("nodes csv line " + std::to_string (line_no) + ": ids must be dense and ordered");
            if (!region.contains (p))
                throw std::runtime_error ("nodes csv line " + std::to_string (line_no) + ": node outside region");
            positions.push_back (p);
        }
        return NodeSet (region, cell_size, std::move (positions));
    }

} // namespace halfdisk
