#include "mixkin/kernels.hpp"

#include "mixkin/errors.hpp"

namespace mixkin {

double kernel_eval(const KernelModel& model, double g_mod) {
    switch (model.kind) {
        case KernelKind::maxwell_molecules: return model.coeff;
        case KernelKind::hard_sphere: return model.coeff * g_mod;
    }
    return 0.0;
}

CollisionPair make_collision_pair(int i, int j, double m_i, double m_j) {
    if (!(m_i > 0.0) || !(m_j > 0.0)) throw ConfigError("species masses must be positive");
    double s = m_i + m_j;
    return {i, j, m_i / s, m_j / s};
}

std::pair<Vec3, Vec3> post_collision_velocities(const Vec3& v, const Vec3& w,
                                                const Vec3& omega, const CollisionPair& pair) {
    Vec3 cm = pair.alpha_ij * v + pair.alpha_ji * w;
    double g = (v - w).norm();
    return {cm + (pair.alpha_ji * g) * omega, cm - (pair.alpha_ij * g) * omega};
}

} // namespace mixkin
