#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mixkin/collision_bgk.hpp"
#include "mixkin/errors.hpp"
#include "mixkin/moments.hpp"

using namespace mixkin;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("kernel evaluation") {
    CHECK(kernel_eval(KernelModel::maxwell(0.25), 17.0) == doctest::Approx(0.25));
    CHECK(kernel_eval(KernelModel::hard_sphere(1.0), 0.0) == doctest::Approx(0.0));
    CHECK(kernel_eval(KernelModel::hard_sphere(2.0), 1.5) == doctest::Approx(3.0));
}

TEST_CASE("mean relative speed") {
    SpeciesMoments a{1.0, {0, 0, 0}, 2.0}, b{1.0, {0, 0, 0}, 3.0};
    CHECK(mean_relative_speed(a, b, 2.0, 3.0) == doctest::Approx(std::sqrt(6.0)));

    // symmetric under swap
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(0.1, 3.0);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 100; ++t) {
        SpeciesMoments mi{uni(rng), {gauss(rng), gauss(rng), gauss(rng)}, uni(rng)};
        SpeciesMoments mj{uni(rng), {gauss(rng), gauss(rng), gauss(rng)}, uni(rng)};
        double m1 = uni(rng), m2 = uni(rng);
        CHECK(mean_relative_speed(mi, mj, m1, m2) ==
              doctest::Approx(mean_relative_speed(mj, mi, m2, m1)));
    }

    // drift-only limit
    SpeciesMoments c{1.0, {2, 0, 0}, 1e-300}, d{1.0, {0, 0, 0}, 1e-300};
    CHECK(mean_relative_speed(c, d, 1.0, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("lambda coefficient closed forms") {
    CHECK(lambda_coefficient(KernelModel::maxwell(1.0 / (4.0 * kPi)), 0.37) ==
          doctest::Approx(1.0));
    CHECK(lambda_coefficient(KernelModel::maxwell(1.0 / (4.0 * kPi)), 12.0) ==
          doctest::Approx(1.0));
    CHECK(lambda_coefficient(KernelModel::hard_sphere(0.7), 0.0) == doctest::Approx(0.0));
    CHECK(lambda_coefficient(KernelModel::hard_sphere(0.7), 2.0) ==
          doctest::Approx(4.0 * kPi * 1.4));
}

TEST_CASE("lambda matches the brute-force angular integral for random directions") {
    // lambda ghat = int (ghat - omega) sigma domega; isotropic sigma leaves 4 pi sigma.
    auto q = build_angular_quadrature(8);
    std::mt19937 rng(99);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 20; ++t) {
        Vec3 ghat{gauss(rng), gauss(rng), gauss(rng)};
        ghat = ghat / ghat.norm();
        double gbar = std::fabs(gauss(rng)) + 0.1;
        for (auto kern : {KernelModel::maxwell(0.3), KernelModel::hard_sphere(0.8)}) {
            double sigma = kernel_eval(kern, gbar);
            Vec3 integral;
            for (std::size_t a = 0; a < q.nodes.size(); ++a)
                integral += q.weights[a] * sigma * (ghat - q.nodes[a]);
            CHECK(integral.dot(ghat) ==
                  doctest::Approx(lambda_coefficient(kern, gbar)).epsilon(1e-10));
        }
    }
}

TEST_CASE("default frequency rule and constraint") {
    CHECK(default_frequency(2.0, 3.0, 1.0) == doctest::Approx(6.0));
    CHECK_THROWS_AS(default_frequency(2.0, 3.0, 0.4), ConstraintViolationError);
    CHECK(default_frequency(0.0, 3.0) == doctest::Approx(0.0)); // vacuum partner
}

TEST_CASE("bgk coefficients: printed formulas at a hand-checked point") {
    // m_i = m_j = 1, n_j = 1, lambda = 1, nu = 1 gives a = 1/2, b = 1/2, gamma = 1/12.
    SpeciesMoments mi{1.0, {0, 0, 0}, 1.0}, mj{1.0, {0, 0, 0}, 1.0};
    // Choose sigma0 so that lambda(gbar) = 1; nu = lambda * n_j = 1.
    auto kern = KernelModel::maxwell(1.0 / (4.0 * kPi));
    auto c = bgk_coefficients(1.0, 1.0, mi, mj, kern);
    CHECK(c.lambda == doctest::Approx(1.0));
    CHECK(c.nu == doctest::Approx(1.0));
    CHECK(c.a == doctest::Approx(0.5));
    CHECK(c.b == doctest::Approx(0.5));
    CHECK(c.gamma == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("bgk coefficients: large nu collapses the attractor to the species state") {
    SpeciesMoments mi{1.0, {0.5, 0, 0}, 1.0}, mj{2.0, {-0.5, 0, 0}, 2.0};
    auto kern = KernelModel::maxwell(1.0 / (4.0 * kPi));
    auto c = bgk_coefficients(1.0, 3.0, mi, mj, kern, 1e8);
    CHECK(c.a < 1e-7);
    CHECK(c.b < 1e-7);
    CHECK(c.gamma < 1e-7);
    auto aux = auxiliary_fields(c, mi, mj);
    CHECK(aux.u.x == doctest::Approx(mi.u.x).epsilon(1e-6));
    CHECK(aux.T == doctest::Approx(mi.T).epsilon(1e-6));
}

TEST_CASE("frequency symmetry identity nu_ij n_i b_ij = nu_ji n_j b_ji") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uni(0.1, 4.0);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 100; ++t) {
        double m1 = uni(rng), m2 = uni(rng);
        SpeciesMoments a{uni(rng), {gauss(rng), gauss(rng), gauss(rng)}, uni(rng)};
        SpeciesMoments b{uni(rng), {gauss(rng), gauss(rng), gauss(rng)}, uni(rng)};
        auto kern = (t % 2) ? KernelModel::maxwell(uni(rng)) : KernelModel::hard_sphere(uni(rng));
        double mult = 0.5 + uni(rng); // keep nu >= lambda n / 2
        auto cij = bgk_coefficients(m1, m2, a, b, kern, mult);
        auto cji = bgk_coefficients(m2, m1, b, a, kern, mult);
        CHECK(cij.lambda == doctest::Approx(cji.lambda).epsilon(1e-14));
        double lhs = cij.nu * a.n * cij.b, rhs = cji.nu * b.n * cji.b;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
}

TEST_CASE("gamma and T_ij positivity under the frequency constraint") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> uni(0.05, 5.0);
    std::uniform_real_distribution<double> safety(0.5, 3.0);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 10000; ++t) {
        double m1 = uni(rng), m2 = uni(rng);
        SpeciesMoments a{uni(rng), {gauss(rng), gauss(rng), gauss(rng)}, uni(rng)};
        SpeciesMoments b{uni(rng), {gauss(rng), gauss(rng), gauss(rng)}, uni(rng)};
        auto kern = (t % 2) ? KernelModel::maxwell(uni(rng)) : KernelModel::hard_sphere(uni(rng));
        auto c = bgk_coefficients(m1, m2, a, b, kern, safety(rng));
        CHECK(c.gamma >= 0.0);
        auto aux = auxiliary_fields(c, a, b);
        CHECK(aux.T > 0.0);
        CHECK(aux.n == doctest::Approx(a.n));
    }
}

TEST_CASE("auxiliary fields: consensus moments are a fixed point") {
    SpeciesMoments m{1.2, {0.3, -0.2, 0.1}, 0.8};
    BgkCoefficients c{0.37, 0.21, 0.05, 1.0, 1.0};
    auto aux = auxiliary_fields(c, m, m);
    CHECK(aux.u.x == doctest::Approx(m.u.x));
    CHECK(aux.u.y == doctest::Approx(m.u.y));
    CHECK(aux.T == doctest::Approx(m.T));
}

TEST_CASE("auxiliary fields: hand-evaluated mixing point") {
    SpeciesMoments mi{1.0, {1, 0, 0}, 1.0}, mj{1.0, {-1, 0, 0}, 1.0};
    BgkCoefficients c{0.5, 0.5, 1.0 / 12.0, 1.0, 1.0};
    auto aux = auxiliary_fields(c, mi, mj);
    CHECK(std::fabs(aux.u.x) < 1e-15);
    CHECK(aux.T == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("bgk operator: exact attractor state gives a zero operator") {
    double mass = 1.0;
    SpeciesMoments target{1.0, {0.2, 0, 0}, 1.1};
    auto g = build_velocity_grid({-7, -7, -7}, {7, 7, 7}, 20);
    auto f = moment_matched_maxwellian(mass, target, g);
    AuxiliaryFields aux{target.n, target.u, target.T};
    auto q = bgk_operator(f, aux, mass, 2.0, g, true);
    for (double v : q) CHECK(std::fabs(v) < 1e-13);
}

TEST_CASE("bgk operator: matched attractor zeroes the mass moment") {
    double mass = 2.0;
    auto g = build_velocity_grid({-5, -5, -5}, {5, 5, 5}, 20);
    auto f = maxwellian(mass, {1.3, {0.1, 0.2, -0.1}, 0.9}, g);
    auto mom = species_moments(f, g, mass);
    AuxiliaryFields aux{mom.n, {0.4, 0, 0}, 1.4}; // any admissible auxiliary state
    auto q = bgk_operator(f, aux, mass, 1.7, g, true);
    CHECK(std::fabs(g.quadrature(q)) < 1e-12);
}

TEST_CASE("bgk cross pair moments cancel and match the closed forms") {
    // The discrete mirror of the momentum/energy exchange cancellation display.
    double m1 = 1.0, m2 = 3.0;
    SpeciesMoments s1{1.0, {0.4, 0.1, 0.0}, 1.0};
    SpeciesMoments s2{1.4, {-0.3, 0.0, 0.2}, 1.8};
    auto kern = KernelModel::maxwell(0.9 / (4.0 * kPi));

    double sig1 = std::sqrt(s1.T / m1), sig2 = std::sqrt(s2.T / m2);
    double half = 6.0 * std::max(sig1, sig2) + 0.6;
    auto g = build_velocity_grid({-half, -half, -half}, {half, half, half}, 28);

    auto f1 = moment_matched_maxwellian(m1, s1, g);
    auto f2 = moment_matched_maxwellian(m2, s2, g);
    auto mom1 = species_moments(f1, g, m1);
    auto mom2 = species_moments(f2, g, m2);

    auto c12 = bgk_coefficients(m1, m2, mom1, mom2, kern);
    auto c21 = bgk_coefficients(m2, m1, mom2, mom1, kern);
    auto q12 = bgk_operator(f1, auxiliary_fields(c12, mom1, mom2), m1, c12.nu, g, true);
    auto q21 = bgk_operator(f2, auxiliary_fields(c21, mom2, mom1), m2, c21.nu, g, true);

    auto moment = [&](const std::vector<double>& q, double mass) {
        Vec3 p;
        double e = 0.0;
        for (std::size_t k = 0; k < q.size(); ++k) {
            Vec3 v = g.node(k);
            p += (mass * q[k]) * v;
            e += 0.5 * mass * q[k] * v.norm2();
        }
        double w = g.cell_weight();
        return std::make_pair(p * w, e * w);
    };
    auto [p12, e12] = moment(q12, m1);
    auto [p21, e21] = moment(q21, m2);

    CHECK(std::fabs(p12.x + p21.x) < 1e-11);
    CHECK(std::fabs(p12.y + p21.y) < 1e-11);
    CHECK(std::fabs(p12.z + p21.z) < 1e-11);
    CHECK(std::fabs(e12 + e21) < 1e-11);

    auto rates = exchange_rates_closed_form(m1, m2, mom1, mom2, c12.lambda);
    CHECK(p12.x == doctest::Approx(rates.R.x).epsilon(1e-10));
    CHECK(p12.y == doctest::Approx(rates.R.y).epsilon(1e-10));
    CHECK(p12.z == doctest::Approx(rates.R.z).epsilon(1e-10));
    CHECK(e12 == doctest::Approx(rates.S).epsilon(1e-10));
}

TEST_CASE("exchange rates closed form") {
    SpeciesMoments s1{1.0, {1, 0, 0}, 1.0}, s2{1.0, {0, 0, 0}, 1.0};
    auto r = exchange_rates_closed_form(1.0, 1.0, s1, s2, 1.0);
    CHECK(r.R.x == doctest::Approx(-0.5));
    CHECK(r.R.y == doctest::Approx(0.0));
    CHECK(r.S == doctest::Approx(-0.25));

    // equilibrium: both vanish
    auto r0 = exchange_rates_closed_form(2.0, 3.0, {1, {0.3, 0, 0}, 1.2},
                                         {2, {0.3, 0, 0}, 1.2}, 0.7);
    CHECK(std::fabs(r0.R.norm()) < 1e-15);
    CHECK(std::fabs(r0.S) < 1e-15);

    // swap antisymmetry
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> uni(0.1, 3.0);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 50; ++t) {
        double m1 = uni(rng), m2 = uni(rng), lam = uni(rng);
        SpeciesMoments a{uni(rng), {gauss(rng), gauss(rng), gauss(rng)}, uni(rng)};
        SpeciesMoments b{uni(rng), {gauss(rng), gauss(rng), gauss(rng)}, uni(rng)};
        auto rij = exchange_rates_closed_form(m1, m2, a, b, lam);
        auto rji = exchange_rates_closed_form(m2, m1, b, a, lam);
        CHECK(rij.R.x == doctest::Approx(-rji.R.x).epsilon(1e-12));
        CHECK(rij.S == doctest::Approx(-rji.S).epsilon(1e-12));
    }
}
