#pragma once

#include <utility>

#include "mixkin/vec3.hpp"

namespace mixkin {

// Isotropic collision kernels: sigma independent of the deflection angle.
enum class KernelKind { maxwell_molecules, hard_sphere };

struct KernelModel {
    KernelKind kind = KernelKind::maxwell_molecules;
    double coeff = 1.0; // sigma0 for Maxwell molecules, diameter coefficient for hard spheres

    static KernelModel maxwell(double sigma0) { return {KernelKind::maxwell_molecules, sigma0}; }
    static KernelModel hard_sphere(double c) { return {KernelKind::hard_sphere, c}; }
};

// sigma(|g|): constant for Maxwell molecules, C|g| for hard spheres.
double kernel_eval(const KernelModel& model, double g_mod);

struct CollisionPair {
    int species_i = 0, species_j = 0;
    double alpha_ij = 0.5; // m_i / (m_i + m_j)
    double alpha_ji = 0.5; // m_j / (m_i + m_j)
};

CollisionPair make_collision_pair(int i, int j, double m_i, double m_j);

// Elastic collision map:
//   v' = a_ij v + a_ji w + a_ji |v-w| omega
//   w' = a_ij v + a_ji w - a_ij |v-w| omega
std::pair<Vec3, Vec3> post_collision_velocities(const Vec3& v, const Vec3& w,
                                                const Vec3& omega, const CollisionPair& pair);

} // namespace mixkin
