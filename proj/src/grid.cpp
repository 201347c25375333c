#include "mixkin/grid.hpp"

#include <cmath>
#include <numbers>

#include "mixkin/errors.hpp"

namespace mixkin {

double VelocityGrid::box_volume() const {
    Vec3 d = max_ - min_;
    return d.x * d.y * d.z;
}

double VelocityGrid::quadrature(std::span<const double> values) const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * cell_weight_;
}

bool VelocityGrid::same_lattice(const VelocityGrid& o) const {
    return n_ == o.n_ && min_.x == o.min_.x && min_.y == o.min_.y && min_.z == o.min_.z &&
           max_.x == o.max_.x && max_.y == o.max_.y && max_.z == o.max_.z;
}

VelocityGrid build_velocity_grid(Vec3 bounds_min, Vec3 bounds_max, int points_per_axis) {
    if (points_per_axis < 2)
        throw ConfigError("velocity grid needs at least 2 points per axis");
    Vec3 d = bounds_max - bounds_min;
    if (!(d.x > 0.0 && d.y > 0.0 && d.z > 0.0))
        throw ConfigError("velocity grid bounds must satisfy max > min componentwise");

    VelocityGrid g;
    g.min_ = bounds_min;
    g.max_ = bounds_max;
    g.n_ = points_per_axis;
    g.spacing_ = {d.x / points_per_axis, d.y / points_per_axis, d.z / points_per_axis};
    g.cell_weight_ = g.spacing_.x * g.spacing_.y * g.spacing_.z;
    const double mins[3] = {bounds_min.x, bounds_min.y, bounds_min.z};
    const double steps[3] = {g.spacing_.x, g.spacing_.y, g.spacing_.z};
    for (int a = 0; a < 3; ++a) {
        g.axis_[a].resize(points_per_axis);
        for (int i = 0; i < points_per_axis; ++i)
            g.axis_[a][i] = mins[a] + (i + 0.5) * steps[a];
    }
    return g;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton on P_n, starting from the Chebyshev-like estimate.
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            double p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (t * p0 - p1) / (t * t - 1.0);
            double step = -p0 / dp;
            t += step;
            if (std::fabs(step) < 1e-15) break;
        }
        p0 = 1.0;
        double p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
        }
        dp = n * (t * p0 - p1) / (t * t - 1.0);
        nodes[i] = t;
        weights[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

AngularQuadrature build_angular_quadrature(int order) {
    if (order < 2) throw ConfigError("angular quadrature order must be >= 2");
    std::vector<double> gx, gw;
    gauss_legendre(order, gx, gw);

    AngularQuadrature q;
    q.nodes.reserve(static_cast<std::size_t>(order) * order);
    q.weights.reserve(static_cast<std::size_t>(order) * order);
    const double dphi = 2.0 * std::numbers::pi / order;
    for (int p = 0; p < order; ++p) {
        double ct = gx[p];
        double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int a = 0; a < order; ++a) {
            // Half-offset azimuth keeps nodes off the coordinate planes.
            double phi = dphi * (a + 0.5);
            q.nodes.push_back({st * std::cos(phi), st * std::sin(phi), ct});
            q.weights.push_back(gw[p] * dphi);
        }
    }
    for (double w : q.weights) q.total_weight += w;
    return q;
}

SpatialGrid build_spatial_grid(double length, int cells) {
    if (!(length > 0.0)) throw ConfigError("spatial grid length must be positive");
    if (cells < 1) throw ConfigError("spatial grid needs at least 1 cell");
    return {length, cells, length / cells};
}

} // namespace mixkin
