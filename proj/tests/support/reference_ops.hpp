#pragma once

// Brute-force reference implementations used as independent oracles in tests.

#include <cmath>
#include <span>
#include <vector>

#include "mixkin/grid.hpp"
#include "mixkin/kernels.hpp"

namespace mixkin::testing {

// Naive scatter-form binary Boltzmann operator: outer v, inner w, innermost omega.
// Loss at the node, gain deposited at the post-collision point with trilinear weights,
// zero extension outside the box. No threading, no skipping.
inline std::vector<double> boltzmann_reference(std::span<const double> f_i,
                                               std::span<const double> f_j,
                                               const CollisionPair& pair,
                                               const KernelModel& kernel,
                                               const VelocityGrid& grid,
                                               const AngularQuadrature& ang) {
    const std::size_t nv = grid.node_count();
    const int n = grid.points_per_axis();
    const double h = grid.cell_weight();
    const Vec3 dv = grid.spacing();
    const Vec3 vmin = grid.bounds_min();
    std::vector<double> q(nv, 0.0);
    for (std::size_t kv = 0; kv < nv; ++kv) {
        const Vec3 v = grid.node(kv);
        for (std::size_t kw = 0; kw < nv; ++kw) {
            if (kv == kw) continue;
            const Vec3 w = grid.node(kw);
            const double gmod = (v - w).norm();
            const double sigma = kernel_eval(kernel, gmod);
            const double prod = f_i[kv] * f_j[kw];
            for (std::size_t a = 0; a < ang.nodes.size(); ++a) {
                const double rate = h * ang.weights[a] * sigma * prod;
                q[kv] -= rate;
                Vec3 vp = v + pair.alpha_ji * ((w - v) + gmod * ang.nodes[a]);
                double tx = (vp.x - vmin.x) / dv.x - 0.5;
                double ty = (vp.y - vmin.y) / dv.y - 0.5;
                double tz = (vp.z - vmin.z) / dv.z - 0.5;
                int bx = (int)std::floor(tx), by = (int)std::floor(ty),
                    bz = (int)std::floor(tz);
                double fx = tx - bx, fy = ty - by, fz = tz - bz;
                const double cx[2] = {1.0 - fx, fx}, cy[2] = {1.0 - fy, fy},
                             cz[2] = {1.0 - fz, fz};
                for (int i = 0; i < 2; ++i) {
                    int jx = bx + i;
                    if (jx < 0 || jx >= n) continue;
                    for (int j = 0; j < 2; ++j) {
                        int jy = by + j;
                        if (jy < 0 || jy >= n) continue;
                        for (int k = 0; k < 2; ++k) {
                            int jz = bz + k;
                            if (jz < 0 || jz >= n) continue;
                            q[grid.index(jx, jy, jz)] += rate * cx[i] * cy[j] * cz[k];
                        }
                    }
                }
            }
        }
    }
    return q;
}

// Moments of an operator output: (mass, momentum m v, energy 1/2 m |v|^2).
struct OperatorMoments {
    double mass = 0.0;
    Vec3 momentum;
    double energy = 0.0;
};

inline OperatorMoments operator_moments(std::span<const double> q, const VelocityGrid& grid,
                                        double mass) {
    OperatorMoments m;
    for (std::size_t k = 0; k < q.size(); ++k) {
        Vec3 v = grid.node(k);
        m.mass += q[k];
        m.momentum += (mass * q[k]) * v;
        m.energy += 0.5 * mass * q[k] * v.norm2();
    }
    double w = grid.cell_weight();
    m.mass *= w;
    m.momentum *= w;
    m.energy *= w;
    return m;
}

} // namespace mixkin::testing
