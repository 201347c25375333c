#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mixkin/grid.hpp"
#include "mixkin/kernels.hpp"

namespace mixkin {

struct BoltzmannOptions {
    int threads = 0;             // 0 = library default
    double skip_threshold = 1e-16; // relative product floor below which a lattice
                                   // offset is skipped (gain and loss together, so
                                   // conservation is unaffected); 0 disables
};

// Binary Boltzmann operator on one spatial cell, direct quadrature over the velocity
// lattice and the angular rule. The loss term is evaluated at the nodes; the gain term
// deposits each collision at the off-lattice post-collision velocity through the
// adjoint of trilinear interpolation (weights of the 8 surrounding nodes, zero
// extension outside the box). Deposit weights reproduce constants and linear
// functions, so mass and momentum exchange are exact up to round-off and boundary
// clipping; the energy defect is O(spacing^2) and is monitored by the tests, not
// corrected. Cost O(N_v^2 N_ang); loops are organized by lattice offset d = w - v so
// the stencil is shared across the sweep, with static-chunk deterministic threading.
void boltzmann_operator_into(std::span<const double> f_i, std::span<const double> f_j,
                             const CollisionPair& pair, const KernelModel& kernel,
                             const VelocityGrid& grid, const AngularQuadrature& ang,
                             std::span<double> out, const BoltzmannOptions& opt = {});

std::vector<double> boltzmann_operator(std::span<const double> f_i,
                                       std::span<const double> f_j,
                                       const CollisionPair& pair, const KernelModel& kernel,
                                       const VelocityGrid& grid, const AngularQuadrature& ang,
                                       const BoltzmannOptions& opt = {});

// General form for species living on different velocity lattices (disparate masses).
// Same scatter semantics, brute-force sweep; intended for small grids.
void boltzmann_operator_cross_into(std::span<const double> f_i, const VelocityGrid& grid_i,
                                   std::span<const double> f_j, const VelocityGrid& grid_j,
                                   const CollisionPair& pair, const KernelModel& kernel,
                                   const AngularQuadrature& ang, std::span<double> out,
                                   const BoltzmannOptions& opt = {});

// Weak form -1/2 sum sigma [phi(v') - phi(v)] [f_i(v')f_j(w') - f_i(v)f_j(w)] with the
// distributions gathered by trilinear interpolation and phi evaluated in closed form.
// Independent evaluation path of the same integral; used as the moment oracle.
double weak_form_moment(std::span<const double> f_i, std::span<const double> f_j,
                        const std::function<double(Vec3)>& phi, const CollisionPair& pair,
                        const KernelModel& kernel, const VelocityGrid& grid,
                        const AngularQuadrature& ang);

// Trilinear gather of nodal values at an off-lattice point, zero outside the box.
double trilinear_gather(std::span<const double> f, const VelocityGrid& grid, const Vec3& p);

} // namespace mixkin
