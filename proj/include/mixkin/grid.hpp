#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "mixkin/vec3.hpp"

namespace mixkin {

// Cell-centered uniform Cartesian lattice in velocity space with midpoint quadrature.
// Immutable after construction; shareable across threads.
class VelocityGrid {
public:
    Vec3 bounds_min() const { return min_; }
    Vec3 bounds_max() const { return max_; }
    int points_per_axis() const { return n_; }
    Vec3 spacing() const { return spacing_; }
    double cell_weight() const { return cell_weight_; }
    double box_volume() const;
    std::size_t node_count() const { return static_cast<std::size_t>(n_) * n_ * n_; }

    // Node linear index is (ix*n + iy)*n + iz.
    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n_ + iy) * n_ + iz;
    }
    Vec3 node(std::size_t k) const {
        int iz = static_cast<int>(k % n_);
        int iy = static_cast<int>((k / n_) % n_);
        int ix = static_cast<int>(k / (static_cast<std::size_t>(n_) * n_));
        return {axis_[0][ix], axis_[1][iy], axis_[2][iz]};
    }
    std::span<const double> axis(int a) const { return axis_[a]; }

    // Midpoint quadrature of nodal values (fixed-order serial sum).
    double quadrature(std::span<const double> values) const;

    bool same_lattice(const VelocityGrid& o) const;

    friend VelocityGrid build_velocity_grid(Vec3 bounds_min, Vec3 bounds_max,
                                            int points_per_axis);

private:
    VelocityGrid() = default;
    Vec3 min_, max_, spacing_;
    int n_ = 0;
    double cell_weight_ = 0.0;
    std::array<std::vector<double>, 3> axis_;
};

// Unit-sphere quadrature: uniform azimuth x Gauss-Legendre in the polar cosine.
struct AngularQuadrature {
    std::vector<Vec3> nodes;
    std::vector<double> weights;
    double total_weight = 0.0; // running sum of weights, fixed order
};

// 1D physical grid, cell-centered.
struct SpatialGrid {
    double length = 1.0;
    int cells = 1;
    double dx = 1.0;
    double center(int c) const { return (c + 0.5) * dx; }
};

VelocityGrid build_velocity_grid(Vec3 bounds_min, Vec3 bounds_max, int points_per_axis);
AngularQuadrature build_angular_quadrature(int order);
SpatialGrid build_spatial_grid(double length, int cells);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace mixkin
