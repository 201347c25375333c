#pragma once

#include <span>
#include <vector>

#include "mixkin/grid.hpp"
#include "mixkin/kernels.hpp"
#include "mixkin/moments.hpp"

namespace mixkin {

// Coefficients of the consistent bi-species BGK closure, per ordered pair (i,j).
struct BgkCoefficients {
    double a = 0.0;      // velocity mixing weight
    double b = 0.0;      // temperature mixing weight, b = 2 a m_i/(m_i+m_j)
    double gamma = 0.0;  // drift-heating weight
    double lambda = 0.0; // momentum-transfer rate coefficient, lambda_ij = lambda_ji
    double nu = 0.0;     // relaxation frequency
};

struct AuxiliaryFields {
    double n = 0.0; // equals n_i
    Vec3 u;
    double T = 0.0;
};

// g_bar = sqrt(3 (T_i/m_i + T_j/m_j) + |u_i - u_j|^2).
double mean_relative_speed(const SpeciesMoments& mom_i, const SpeciesMoments& mom_j,
                           double m_i, double m_j);

// Isotropic kernels: the omega-integral of sigma*omega vanishes, so lambda = 4 pi sigma(g_bar).
double lambda_coefficient(const KernelModel& kernel, double g_bar);

// nu_ij = safety * lambda_ij * n_j; safety < 1/2 violates the positivity constraint.
double default_frequency(double lambda_ij, double n_j, double safety = 1.0);

// Full coefficient set for ordered pair (i,j) with j != i.
BgkCoefficients bgk_coefficients(double m_i, double m_j, const SpeciesMoments& mom_i,
                                 const SpeciesMoments& mom_j, const KernelModel& kernel,
                                 double nu_multiplier = 1.0);

// n_ij = n_i, u_ij = (1-a)u_i + a u_j, T_ij = (1-b)T_i + b T_j + gamma |u_i-u_j|^2.
AuxiliaryFields auxiliary_fields(const BgkCoefficients& coeffs, const SpeciesMoments& mom_i,
                                 const SpeciesMoments& mom_j);

// Q_ij(v) = nu_ij (M_ij(v) - f_i(v)); the attractor is moment-matched by default.
std::vector<double> bgk_operator(std::span<const double> f_i, const AuxiliaryFields& aux,
                                 double m_i, double nu_ij, const VelocityGrid& grid,
                                 bool matched = true);
void bgk_operator_into(std::span<const double> f_i, const AuxiliaryFields& aux, double m_i,
                       double nu_ij, const VelocityGrid& grid, bool matched,
                       std::span<double> out);

// Exact Maxwell-molecule exchange rates: momentum R_12 and energy S_12 (1/2 m |v|^2
// moment); R_21 = -R_12, S_21 = -S_12.
struct ExchangeRates {
    Vec3 R;
    double S = 0.0;
};
ExchangeRates exchange_rates_closed_form(double m_1, double m_2, const SpeciesMoments& mom_1,
                                         const SpeciesMoments& mom_2, double lambda_12);

} // namespace mixkin
