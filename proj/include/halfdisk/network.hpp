#pragma once
/**
 * @file   network.hpp
 * @brief  Homogeneous Poisson node placements and spatial queries.
 *
 * Regions are centred on the origin: a disk of radius @c size, or the square
 * [-size/2, size/2]^2. Node ids are dense indices in generation order.
 */

#include <halfdisk/geometry.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace halfdisk
{
    using NodeId = std::uint32_t;

    enum class RegionKind
    {
        disk,
        square
    };

    [[nodiscard]] std::string to_string (RegionKind kind);
    [[nodiscard]] RegionKind region_kind_from_string (const std::string &name);

    struct RegionSpec
    {
        RegionKind kind{RegionKind::disk};
        double size{1.0};

        [[nodiscard]] double area () const noexcept;
        [[nodiscard]] bool contains (const Point2D &p) const noexcept;
        /// Distance from an interior point to the region boundary.
        [[nodiscard]] double boundary_distance (const Point2D &p) const noexcept;
        /// Direction of the outward normal at the boundary point nearest to @p p.
        [[nodiscard]] double outward_normal (const Point2D &p) const noexcept;
        /// Half-width of the axis-aligned bounding box.
        [[nodiscard]] double half_extent () const noexcept;
        [[nodiscard]] Point2D sample (Rng &rng) const;
    };

    struct NetworkParams
    {
        double lambda{1.0};
        double R{1.0};
        double eta{0.5};
        RegionSpec region{};

        /// Expected node count lambda*|A|.
        [[nodiscard]] double expected_nodes () const noexcept { return lambda * region.area (); }
        /// Normalized transmission-disk area pi*R^2/|A|.
        [[nodiscard]] double normalized_disk_area () const noexcept;
        /// Throws std::invalid_argument when an invariant is broken.
        void validate () const;
    };

    struct NodePartition
    {
        std::vector<NodeId> interior;
        std::vector<NodeId> edge;
    };

    /// Immutable node placement with a uniform grid of cell size R.
    class NodeSet
    {
      public:
        NodeSet (RegionSpec region, double cell_size, std::vector<Point2D> positions);

        [[nodiscard]] std::size_t size () const noexcept { return positions_.size (); }
        [[nodiscard]] bool empty () const noexcept { return positions_.empty (); }
        [[nodiscard]] const Point2D &position (NodeId id) const { return positions_.at (id); }
        [[nodiscard]] std::span<const Point2D> positions () const noexcept { return positions_; }
        [[nodiscard]] const RegionSpec &region () const noexcept { return region_; }
        [[nodiscard]] double cell_size () const noexcept { return cell_size_; }

        /// Calls fn(id) for every node in grid cells overlapping the box [lo, hi].
        template <typename Fn> void for_each_in_box (const Point2D &lo, const Point2D &hi, Fn &&fn) const
        {
            const auto [c0, r0] = cell_of (lo);
            const auto [c1, r1] = cell_of (hi);
            for (std::int64_t row = r0; row <= r1; ++row)
                for (std::int64_t col = c0; col <= c1; ++col)
                {
                    const std::size_t cell = static_cast<std::size_t> (row * cols_ + col);
                    for (std::uint32_t k = cell_start_[cell]; k < cell_start_[cell + 1]; ++k)
                        fn (cell_items_[k]);
                }
        }

        /// Nodes within distance @p radius of @p centre, excluding @p exclude.
        [[nodiscard]] std::vector<NodeId> neighbors_in_disk (const Point2D &centre, double radius, NodeId exclude = kNoNode) const;

        static constexpr NodeId kNoNode = 0xFFFFFFFFu;

      private:
        [[nodiscard]] std::pair<std::int64_t, std::int64_t> cell_of (const Point2D &p) const noexcept;

        RegionSpec region_;
        double cell_size_;
        std::vector<Point2D> positions_;
        double origin_;
        std::int64_t cols_;
        std::vector<std::uint32_t> cell_start_;
        std::vector<NodeId> cell_items_;
    };

    /// Poisson(lambda*|A|) nodes placed uniformly on the region.
    [[nodiscard]] NodeSet generate_ppp (const NetworkParams &params, std::uint64_t seed);
    [[nodiscard]] NodeSet generate_ppp (const NetworkParams &params, Rng &rng);

    /// Exactly the nodes other than @p exclude inside @p w.
    [[nodiscard]] std::vector<NodeId> neighbors_in_wedge (const NodeSet &nodes, const Wedge &w, NodeId exclude = NodeSet::kNoNode);

    /// Interior nodes lie farther than R from the boundary; the rest are edge nodes.
    [[nodiscard]] NodePartition classify_nodes (const NodeSet &nodes, double R);

    /// CSV with header `id,x,y`, 17 significant digits.
    void write_nodes_csv (const NodeSet &nodes, std::ostream &out);
    /// Inverse of write_nodes_csv. Ids must be dense and in order.
    [[nodiscard]] NodeSet read_nodes_csv (std::istream &in, RegionSpec region, double cell_size);

} // namespace halfdisk
