#include "mixkin/moments.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "mixkin/errors.hpp"

namespace mixkin {

namespace {

std::string context_suffix(const MomentContext& ctx) {
    std::string s;
    if (ctx.species >= 0) s += " species " + std::to_string(ctx.species);
    if (ctx.cell >= 0) s += " cell " + std::to_string(ctx.cell);
    return s;
}

} // namespace

double density_floor(const VelocityGrid& grid) { return 1e-14 * grid.box_volume(); }

SpeciesMoments species_moments(std::span<const double> f, const VelocityGrid& grid,
                               double mass, MomentContext ctx) {
    const int n = grid.points_per_axis();
    const auto ax = grid.axis(0), ay = grid.axis(1), az = grid.axis(2);

    double s0 = 0.0;
    Vec3 s1;
    std::size_t k = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++k) {
                double fv = f[k];
                s0 += fv;
                s1.x += fv * ax[ix];
                s1.y += fv * ay[iy];
                s1.z += fv * az[iz];
            }
    const double w = grid.cell_weight();
    SpeciesMoments m;
    m.n = s0 * w;
    if (!(m.n > density_floor(grid)))
        throw DegenerateDensityError("n = " + std::to_string(m.n) + context_suffix(ctx));
    m.u = s1 * (w / m.n);

    double s2 = 0.0;
    k = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++k) {
                double dx = ax[ix] - m.u.x, dy = ay[iy] - m.u.y, dz = az[iz] - m.u.z;
                s2 += f[k] * (dx * dx + dy * dy + dz * dz);
            }
    m.T = mass * s2 * w / (3.0 * m.n);
    return m;
}

GlobalMoments global_moments(
    std::span<const std::pair<SpeciesParams, SpeciesMoments>> per_species) {
    if (per_species.empty()) throw ConfigError("global moments need at least one species");
    GlobalMoments g;
    for (const auto& [p, m] : per_species) {
        g.n += m.n;
        g.rho += p.mass * m.n;
        g.u += (p.mass * m.n) * m.u;
    }
    g.u = g.u / g.rho;
    double tsum = 0.0, drift = 0.0;
    for (const auto& [p, m] : per_species) {
        tsum += m.n * m.T;
        drift += p.mass * m.n * (m.u - g.u).norm2();
    }
    g.T = tsum / g.n + drift / (3.0 * g.n);
    return g;
}

void maxwellian_into(double mass, const SpeciesMoments& mom, const VelocityGrid& grid,
                     std::span<double> out) {
    if (!(mom.T > 0.0))
        throw InvalidStateError("maxwellian needs T > 0, got T = " + std::to_string(mom.T));
    const int n = grid.points_per_axis();
    const auto ax = grid.axis(0), ay = grid.axis(1), az = grid.axis(2);
    const double pref = mom.n * std::pow(mass / (2.0 * std::numbers::pi * mom.T), 1.5);
    const double c = -mass / (2.0 * mom.T);
    // Separable exponentials: one exp per axis value instead of one per node.
    std::vector<double> ex(n), ey(n), ez(n);
    for (int i = 0; i < n; ++i) {
        double dx = ax[i] - mom.u.x;
        ex[i] = std::exp(c * dx * dx);
        double dy = ay[i] - mom.u.y;
        ey[i] = std::exp(c * dy * dy);
        double dz = az[i] - mom.u.z;
        ez[i] = std::exp(c * dz * dz);
    }
    std::size_t k = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            double pxy = pref * ex[ix] * ey[iy];
            for (int iz = 0; iz < n; ++iz, ++k) out[k] = pxy * ez[iz];
        }
}

std::vector<double> maxwellian(double mass, const SpeciesMoments& mom,
                               const VelocityGrid& grid) {
    std::vector<double> f(grid.node_count());
    maxwellian_into(mass, mom, grid, f);
    return f;
}

namespace {

// Cholesky solve for the SPD 5x5 Gram matrix of the Newton system.
bool solve_spd5(std::array<double, 25>& A, std::array<double, 5>& b) {
    for (int j = 0; j < 5; ++j) {
        double d = A[j * 5 + j];
        for (int k = 0; k < j; ++k) d -= A[j * 5 + k] * A[j * 5 + k];
        if (!(d > 0.0)) return false;
        d = std::sqrt(d);
        A[j * 5 + j] = d;
        for (int i = j + 1; i < 5; ++i) {
            double s = A[i * 5 + j];
            for (int k = 0; k < j; ++k) s -= A[i * 5 + k] * A[j * 5 + k];
            A[i * 5 + j] = s / d;
        }
    }
    for (int i = 0; i < 5; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= A[i * 5 + k] * b[k];
        b[i] = s / A[i * 5 + i];
    }
    for (int i = 4; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < 5; ++k) s -= A[k * 5 + i] * b[k];
        b[i] = s / A[i * 5 + i];
    }
    return true;
}

} // namespace

void moment_matched_maxwellian_into(double mass, const SpeciesMoments& target,
                                    const VelocityGrid& grid, std::span<double> out) {
    if (!(target.T > 0.0))
        throw InvalidStateError("moment matching needs T > 0, got T = " +
                                std::to_string(target.T));
    if (!(target.n > 0.0))
        throw InvalidStateError("moment matching needs n > 0");

    const int n = grid.points_per_axis();
    const std::size_t nv = grid.node_count();
    const double w = grid.cell_weight();
    const auto ax = grid.axis(0), ay = grid.axis(1), az = grid.axis(2);

    // Work in coordinates centered at the target velocity: f = exp(p0 + p.(v-u) + p4|v-u|^2).
    // Targets in that frame: mass n, momentum 0, second raw moment 3nT/m.
    const double m0 = target.n;
    const double m4 = 3.0 * target.n * target.T / mass;
    std::array<double, 5> p{}; // p0, px, py, pz, p4
    p[0] = std::log(target.n * std::pow(mass / (2.0 * std::numbers::pi * target.T), 1.5));
    p[4] = -mass / (2.0 * target.T);

    // Scales for the relative convergence test.
    const double scale[5] = {m0, m0 * std::sqrt(target.T / mass),
                             m0 * std::sqrt(target.T / mass),
                             m0 * std::sqrt(target.T / mass), m4};
    const double tol = 1e-13;

    auto eval = [&](const std::array<double, 5>& q, std::span<double> f,
                    std::array<double, 5>& mom) {
        for (int i = 0; i < 5; ++i) mom[i] = 0.0;
        std::size_t k = 0;
        for (int ix = 0; ix < n; ++ix) {
            double dx = ax[ix] - target.u.x;
            double tx = q[1] * dx + q[4] * dx * dx;
            for (int iy = 0; iy < n; ++iy) {
                double dy = ay[iy] - target.u.y;
                double txy = tx + q[2] * dy + q[4] * dy * dy;
                for (int iz = 0; iz < n; ++iz, ++k) {
                    double dz = az[iz] - target.u.z;
                    double e = std::exp(q[0] + txy + q[3] * dz + q[4] * dz * dz);
                    f[k] = e;
                    double r2 = dx * dx + dy * dy + dz * dz;
                    mom[0] += e;
                    mom[1] += e * dx;
                    mom[2] += e * dy;
                    mom[3] += e * dz;
                    mom[4] += e * r2;
                }
            }
        }
        for (int i = 0; i < 5; ++i) mom[i] *= w;
    };

    auto residual_norm = [&](const std::array<double, 5>& mom) {
        double r = 0.0;
        const double tgt[5] = {m0, 0.0, 0.0, 0.0, m4};
        for (int i = 0; i < 5; ++i) r = std::max(r, std::fabs(mom[i] - tgt[i]) / scale[i]);
        return r;
    };

    std::array<double, 5> mom{};
    eval(p, out, mom);
    double res = residual_norm(mom);

    for (int iter = 0; iter < 50 && res > tol; ++iter) {
        // Gram matrix of (1, dx, dy, dz, r^2) under the current f: Newton Jacobian.
        std::array<double, 25> J{};
        std::size_t k = 0;
        for (int ix = 0; ix < n; ++ix) {
            double dx = ax[ix] - target.u.x;
            for (int iy = 0; iy < n; ++iy) {
                double dy = ay[iy] - target.u.y;
                for (int iz = 0; iz < n; ++iz, ++k) {
                    double dz = az[iz] - target.u.z;
                    double e = out[k];
                    double r2 = dx * dx + dy * dy + dz * dz;
                    const double phi[5] = {1.0, dx, dy, dz, r2};
                    for (int a = 0; a < 5; ++a)
                        for (int b = a; b < 5; ++b) J[a * 5 + b] += e * phi[a] * phi[b];
                }
            }
        }
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < a; ++b) J[a * 5 + b] = J[b * 5 + a];
        for (auto& x : J) x *= w;

        std::array<double, 5> rhs = {m0 - mom[0], -mom[1], -mom[2], -mom[3], m4 - mom[4]};
        if (!solve_spd5(J, rhs))
            throw NonConvergenceError("moment matching: singular Newton system", res);

        // Damped update: backtrack until the residual decreases and c stays negative.
        double step = 1.0;
        std::array<double, 5> pn;
        std::array<double, 5> momn{};
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            for (int i = 0; i < 5; ++i) pn[i] = p[i] + step * rhs[i];
            if (pn[4] < 0.0) {
                eval(pn, out, momn);
                double rn = residual_norm(momn);
                if (rn < res || rn <= tol) {
                    p = pn;
                    mom = momn;
                    res = rn;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted)
            throw NonConvergenceError(
                "moment matching stalled (grid likely under-resolves the target)", res);
    }
    if (res > tol)
        throw NonConvergenceError(
            "moment matching did not converge in 50 iterations "
            "(grid likely under-resolves the target)", res);
    (void)nv;
}

std::vector<double> moment_matched_maxwellian(double mass, const SpeciesMoments& target,
                                              const VelocityGrid& grid) {
    std::vector<double> f(grid.node_count());
    moment_matched_maxwellian_into(mass, target, grid, f);
    return f;
}

} // namespace mixkin
