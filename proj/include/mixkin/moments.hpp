#pragma once

#include <span>
#include <string>
#include <vector>

#include "mixkin/grid.hpp"
#include "mixkin/vec3.hpp"

namespace mixkin {

struct SpeciesMoments {
    double n = 0.0; // number density
    Vec3 u;         // mean velocity
    double T = 0.0; // temperature (k_B = 1)
};

struct GlobalMoments {
    double n = 0.0;   // total number density
    double rho = 0.0; // mass density
    Vec3 u;           // mass-averaged mixture velocity
    double T = 0.0;   // mixture temperature
};

struct SpeciesParams {
    std::string name;
    double mass = 1.0;
};

// Density floor below which moments are undefined: 1e-14 scaled by the box volume.
double density_floor(const VelocityGrid& grid);

// Extra context for error messages; negative means unknown.
struct MomentContext {
    int species = -1;
    int cell = -1;
};

// n = sum w f, u = (1/n) sum w v f, T = (m/3n) sum w |v-u|^2 f.
SpeciesMoments species_moments(std::span<const double> f, const VelocityGrid& grid,
                               double mass, MomentContext ctx = {});

// Mixture fields; the mixture velocity is mass-averaged, u = (1/rho) sum m_i n_i u_i.
GlobalMoments global_moments(
    std::span<const std::pair<SpeciesParams, SpeciesMoments>> per_species);

// Pointwise analytic Maxwellian n (m/2piT)^{3/2} exp(-m|v-u|^2 / 2T).
std::vector<double> maxwellian(double mass, const SpeciesMoments& moments,
                               const VelocityGrid& grid);
void maxwellian_into(double mass, const SpeciesMoments& moments, const VelocityGrid& grid,
                     std::span<double> out);

// Discrete distribution exp(a + b.(v-u*) + c|v-u*|^2), c < 0, whose grid-quadrature
// moments equal the target to 1e-12 relative. Damped Newton in the 5 exponential-family
// parameters, warm-started from the analytic Maxwellian.
std::vector<double> moment_matched_maxwellian(double mass, const SpeciesMoments& target,
                                              const VelocityGrid& grid);
void moment_matched_maxwellian_into(double mass, const SpeciesMoments& target,
                                    const VelocityGrid& grid, std::span<double> out);

} // namespace mixkin
