#include "mixkin/collision_bgk.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mixkin/errors.hpp"

namespace mixkin {

double mean_relative_speed(const SpeciesMoments& mom_i, const SpeciesMoments& mom_j,
                           double m_i, double m_j) {
    double thermal = 3.0 * (mom_i.T / m_i + mom_j.T / m_j);
    return std::sqrt(thermal + (mom_i.u - mom_j.u).norm2());
}

double lambda_coefficient(const KernelModel& kernel, double g_bar) {
    return 4.0 * std::numbers::pi * kernel_eval(kernel, g_bar);
}

double default_frequency(double lambda_ij, double n_j, double safety) {
    double nu = safety * lambda_ij * n_j;
    if (nu < 0.5 * lambda_ij * n_j)
        throw ConstraintViolationError("nu = " + std::to_string(nu) + " < lambda n_j / 2 = " +
                                       std::to_string(0.5 * lambda_ij * n_j));
    return nu;
}

BgkCoefficients bgk_coefficients(double m_i, double m_j, const SpeciesMoments& mom_i,
                                 const SpeciesMoments& mom_j, const KernelModel& kernel,
                                 double nu_multiplier) {
    BgkCoefficients c;
    double g_bar = mean_relative_speed(mom_i, mom_j, m_i, m_j);
    c.lambda = lambda_coefficient(kernel, g_bar);
    c.nu = default_frequency(c.lambda, mom_j.n, nu_multiplier);
    if (c.nu == 0.0) return c; // vacuum partner: pair contributes nothing
    double msum = m_i + m_j;
    c.a = c.lambda * m_j * mom_j.n / (c.nu * msum);
    c.b = 2.0 * c.a * m_i / msum;
    c.gamma = (m_i * c.a / 3.0) * (2.0 * m_j / msum - c.a);
    return c;
}

AuxiliaryFields auxiliary_fields(const BgkCoefficients& c, const SpeciesMoments& mom_i,
                                 const SpeciesMoments& mom_j) {
    AuxiliaryFields aux;
    aux.n = mom_i.n;
    aux.u = (1.0 - c.a) * mom_i.u + c.a * mom_j.u;
    aux.T = (1.0 - c.b) * mom_i.T + c.b * mom_j.T + c.gamma * (mom_i.u - mom_j.u).norm2();
    if (!(aux.T > 0.0))
        throw InvalidStateError("auxiliary temperature T_ij = " + std::to_string(aux.T) +
                                " <= 0; frequency constraint should forbid this");
    return aux;
}

void bgk_operator_into(std::span<const double> f_i, const AuxiliaryFields& aux, double m_i,
                       double nu_ij, const VelocityGrid& grid, bool matched,
                       std::span<double> out) {
    if (nu_ij == 0.0) {
        for (auto& q : out) q = 0.0;
        return;
    }
    SpeciesMoments target{aux.n, aux.u, aux.T};
    if (matched)
        moment_matched_maxwellian_into(m_i, target, grid, out);
    else
        maxwellian_into(m_i, target, grid, out);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = nu_ij * (out[k] - f_i[k]);
}

std::vector<double> bgk_operator(std::span<const double> f_i, const AuxiliaryFields& aux,
                                 double m_i, double nu_ij, const VelocityGrid& grid,
                                 bool matched) {
    std::vector<double> q(grid.node_count());
    bgk_operator_into(f_i, aux, m_i, nu_ij, grid, matched, q);
    return q;
}

ExchangeRates exchange_rates_closed_form(double m_1, double m_2, const SpeciesMoments& mom_1,
                                         const SpeciesMoments& mom_2, double lambda_12) {
    double msum = m_1 + m_2;
    double mu = m_1 * m_2 / msum;
    double nn = mom_1.n * mom_2.n;
    Vec3 du = mom_2.u - mom_1.u;
    ExchangeRates r;
    r.R = (lambda_12 * mu * nn) * du;
    Vec3 pw = m_1 * mom_1.u + m_2 * mom_2.u;
    r.S = lambda_12 * (m_1 * m_2 / (msum * msum)) * nn * (3.0 * (mom_2.T - mom_1.T) + pw.dot(du));
    return r;
}

} // namespace mixkin
