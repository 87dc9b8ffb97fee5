#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fhd/errors.hpp"
#include "fhd/noise.hpp"
#include "fhd/stats.hpp"
#include "oracles.hpp"

using namespace fhd;

namespace {

ParticleField small_wave(double amp_rho, double amp_u, double amp_T, double phase) {
    const double L = 1.25e-4;
    ParticleField f = init_uniform(L, 40, PrimitiveState{1.78e-3, 0.0, 273.0},
                                   BoundaryKind::Periodic);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double a = 2.0 * M_PI * f.x[i] / L + phase;
        f.rho[i] = 1.78e-3 * (1.0 + amp_rho * std::sin(a));
        f.u[i] = amp_u * std::sin(2.0 * a);
        f.T[i] = 273.0 * (1.0 + amp_T * std::cos(a));
    }
    return f;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("compensated sums survive cancellation") {
    Neumaier acc;
    acc.add(1e16);
    acc.add(1.0);
    acc.add(-1e16);
    CHECK(acc.value() == 1.0);  // a plain sum gives 0 here
}

TEST_CASE("accumulator moments match a two-pass reference") {
    const GasModel gas = GasModel::argon();
    const ParticleField fields[] = {
        small_wave(0.1, 2500.0, 0.04, 0.0),
        small_wave(0.05, -1200.0, 0.08, 1.1),
        small_wave(0.2, 400.0, 0.01, 2.4),
    };

    StatsAccumulator acc;
    std::vector<double> rho, J, E;
    for (const auto& f : fields) {
        acc.add_field(f, gas);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const ConservedState c =
                conserved_from_primitive(PrimitiveState{f.rho[i], f.u[i], f.T[i]}, gas);
            rho.push_back(c.rho);
            J.push_back(c.J);
            E.push_back(c.E);
        }
    }
    CHECK(acc.count() == 120);

    const ConservedState m = acc.mean();
    CHECK(m.rho == doctest::Approx(static_cast<double>(oracle::mean_ld(rho))).epsilon(1e-12));
    CHECK(m.J == doctest::Approx(static_cast<double>(oracle::mean_ld(J))).epsilon(1e-12));
    CHECK(m.E == doctest::Approx(static_cast<double>(oracle::mean_ld(E))).epsilon(1e-12));

    const ConservedState v = acc.variance();
    CHECK(v.rho == doctest::Approx(static_cast<double>(oracle::var_two_pass(rho))).epsilon(1e-10));
    CHECK(v.J == doctest::Approx(static_cast<double>(oracle::var_two_pass(J))).epsilon(1e-10));
    CHECK(v.E == doctest::Approx(static_cast<double>(oracle::var_two_pass(E))).epsilon(1e-10));
}

TEST_CASE("per-field and per-sample accumulation agree, and merging pools") {
    const GasModel gas = GasModel::argon();
    const ParticleField a = small_wave(0.1, 900.0, 0.02, 0.3);
    const ParticleField b = small_wave(0.07, -500.0, 0.05, 1.9);

    StatsAccumulator fields;
    fields.add_field(a, gas);
    fields.add_field(b, gas);

    StatsAccumulator samples;
    for (const ParticleField* f : {&a, &b}) {
        for (std::size_t i = 0; i < f->size(); ++i) {
            samples.add_sample(
                conserved_from_primitive(PrimitiveState{f->rho[i], f->u[i], f->T[i]}, gas));
        }
    }
    CHECK(fields.count() == samples.count());
    CHECK(fields.variance().E == doctest::Approx(samples.variance().E).epsilon(1e-12));

    StatsAccumulator left, right;
    left.add_field(a, gas);
    right.add_field(b, gas);
    left.merge(right);
    CHECK(left.count() == fields.count());
    CHECK(left.mean().J == doctest::Approx(fields.mean().J).epsilon(1e-13));
    CHECK(left.variance().rho == doctest::Approx(fields.variance().rho).epsilon(1e-12));

    StatsAccumulator empty;
    CHECK_THROWS_AS(empty.mean(), InsufficientData);
    empty.add_sample(ConservedState{1.0, 2.0, 3.0});
    CHECK_THROWS_AS(empty.variance(), InsufficientData);
    CHECK(empty.mean().J == 2.0);
}

TEST_CASE("density mode amplitudes on exact sine data") {
    ParticleField f = init_uniform(8.0, 8, PrimitiveState{1.0, 0.0, 300.0},
                                   BoundaryKind::Periodic, -4.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.rho[i] = std::sin(2.0 * M_PI * (f.x[i] - f.x_min) / 8.0);
    }
    CHECK(density_mode(f, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(density_mode(f, 2)) < 1e-13);  // orthogonal mode

    ParticleField uni = init_uniform(8.0, 8, PrimitiveState{1.0, 0.0, 300.0},
                                     BoundaryKind::Periodic);
    CHECK(std::abs(density_mode(uni, 1)) < 1e-13);

    CHECK_THROWS_AS(density_mode(f, 0), InvalidConfig);
    ParticleField empty;
    empty.x_min = 0.0;
    empty.x_max = 1.0;
    CHECK_THROWS_AS(density_mode(empty, 1), InsufficientData);
}

TEST_CASE("lagged covariance on short exact series") {
    const std::vector<double> r{1.0, 2.0, 3.0, 4.0};
    CHECK(time_covariance(r, 0) == doctest::Approx(7.5).epsilon(1e-15));
    CHECK(time_covariance(r, 1) == doctest::Approx(20.0 / 3.0).epsilon(1e-15));
    CHECK(time_covariance(r, 3) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(time_covariance(r, 4), InsufficientData);
}

TEST_CASE("lagged covariance of white noise") {
    NoiseStream ns(31, 0);
    std::vector<double> r(1000000);
    for (auto& x : r) x = ns.gaussian();
    CHECK(time_covariance(r, 0) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(time_covariance(r, 5)) < 5e-3);
}

TEST_CASE("batch means error bar") {
    const std::vector<double> flat(200, 1.25);
    CHECK(batch_means_se(flat, 10) == 0.0);

    NoiseStream ns(8, 0);
    std::vector<double> iid(100000);
    for (auto& x : iid) x = ns.gaussian();
    const double se = batch_means_se(iid);
    CHECK(se > 1.9e-3);  // about 1/sqrt(n) for independent draws
    CHECK(se < 4.7e-3);

    // strongly autocorrelated input must widen the error bar well past 1/sqrt(n)
    std::vector<double> ar(100000);
    double prev = 0.0;
    for (auto& x : ar) {
        prev = 0.99 * prev + ns.gaussian();
        x = prev;
    }
    CHECK(batch_means_se(ar) > 3.0 / std::sqrt(100000.0));

    CHECK_THROWS_AS(batch_means_se(iid, 1), InvalidConfig);
    const std::vector<double> tiny(63, 0.0);
    CHECK_THROWS_AS(batch_means_se(tiny, 32), InsufficientData);
}

TEST_CASE("hydrodynamic parameters at the reference state") {
    const GasModel gas = GasModel::argon();
    const HydroParams p = HydroParams::from(gas, 1.78e-3, 273.0, 1.25e-4);
    CHECK(p.gamma == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(p.c_s == doctest::Approx(30781.556420789942).epsilon(1e-13));
    CHECK(p.D_v == doctest::Approx(0.15585164045304798).epsilon(1e-13));
    CHECK(p.D_T == doctest::Approx(0.29222182584946497).epsilon(1e-13));
    CHECK(p.Gamma == doctest::Approx(0.17533309550967898).epsilon(1e-13));
    CHECK(p.L == 1.25e-4);
    CHECK_THROWS_AS(HydroParams::from(gas, 0.0, 273.0, 1.0), InvalidConfig);
}

TEST_CASE("analytical mode covariance") {
    const GasModel gas = GasModel::argon();
    const HydroParams p = HydroParams::from(gas, 1.78e-3, 273.0, 1.25e-4);

    // at zero lag the three contributions sum to exactly the mode variance
    CHECK(analytical_time_covariance(p, 1, 0.0, 0.7) == doctest::Approx(0.7).epsilon(1e-14));
    // one nanosecond into the decay, reference value from 50-digit evaluation
    CHECK(analytical_time_covariance(p, 1, 1e-9, 1.0) ==
          doctest::Approx(0.33991788161484112).epsilon(1e-12));
    // linear in the equal-time variance
    CHECK(analytical_time_covariance(p, 1, 1e-9, 2.5) ==
          doctest::Approx(2.5 * analytical_time_covariance(p, 1, 1e-9, 1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(analytical_time_covariance(p, 0, 0.0, 1.0), InvalidConfig);
}

TEST_CASE("shock location from the mean density") {
    ParticleField f = init_uniform(4.0, 8, PrimitiveState{1.0, 0.0, 300.0},
                                   BoundaryKind::FixedState, -2.0);
    for (std::size_t i = 0; i < f.size(); ++i) f.rho[i] = f.x[i] < 0.5 ? 3.0 : 1.0;
    CHECK(shock_location(f, 3.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));

    // only the mean enters, so particle order cannot matter
    std::reverse(f.rho.begin(), f.rho.end());
    CHECK(shock_location(f, 3.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));

    CHECK_THROWS_AS(shock_location(f, 2.0, 2.0), DegenerateField);
    ParticleField empty;
    empty.x_min = -2.0;
    empty.x_max = 2.0;
    CHECK_THROWS_AS(shock_location(empty, 3.0, 1.0), InsufficientData);
}

TEST_CASE("normal shock jump conditions") {
    const GasModel gas = GasModel::argon();
    const PrimitiveState right{1.78e-3, 12345.0, 273.0};  // input velocity is ignored

    const ShockStates s2 = rankine_hugoniot(2.0, right, gas);
    CHECK(s2.right.rho == 1.78e-3);
    CHECK(s2.right.T == 273.0);
    CHECK(s2.right.u == doctest::Approx(-2.0 * sound_speed(273.0, gas)).epsilon(1e-14));
    CHECK(s2.right.u == doctest::Approx(-61563.112841579883).epsilon(1e-9));
    CHECK(s2.left.rho == doctest::Approx(1.78e-3 * 16.0 / 7.0).epsilon(1e-13));
    CHECK(s2.left.T == doctest::Approx(273.0 * 133.0 / 64.0).epsilon(1e-13));
    CHECK(s2.left.u == doctest::Approx(s2.right.u * 7.0 / 16.0).epsilon(1e-13));
    CHECK(s2.left.u == doctest::Approx(-26933.8618682).epsilon(1e-9));

    const ShockStates s14 = rankine_hugoniot(1.4, right, gas);
    CHECK(s14.left.rho == doctest::Approx(1.78e-3 * 49.0 / 31.0).epsilon(1e-13));
    CHECK(s14.left.T == doctest::Approx(379.971428571).epsilon(1e-9));
    CHECK(s14.right.u == doctest::Approx(-43094.1789891).epsilon(1e-9));
    CHECK(s14.left.u == doctest::Approx(-27263.6642584).epsilon(1e-9));

    const ShockStates s11 = rankine_hugoniot(1.1, right, gas);
    CHECK(s11.left.rho == doctest::Approx(2.0463657957244655e-3).epsilon(1e-9));
    CHECK(s11.left.T == doctest::Approx(299.799405992).epsilon(1e-9));
    CHECK(s11.left.u == doctest::Approx(-29452.3528481).epsilon(1e-9));

    const ShockStates s5 = rankine_hugoniot(5.0, right, gas);
    CHECK(s5.left.rho == doctest::Approx(1.78e-3 * 25.0 / 7.0).epsilon(1e-13));
    CHECK(s5.left.T == doctest::Approx(273.0 * 8.68).epsilon(1e-12));

    // the jump preserves the mass flux at every strength
    for (const ShockStates* s : {&s2, &s14, &s11, &s5}) {
        CHECK(s->left.rho * s->left.u ==
              doctest::Approx(s->right.rho * s->right.u).epsilon(1e-12));
    }

    CHECK_THROWS_AS(rankine_hugoniot(1.0, right, gas), InvalidMach);
    CHECK_THROWS_AS(rankine_hugoniot(0.9, right, gas), InvalidMach);
    CHECK_THROWS_AS(rankine_hugoniot(2.0, PrimitiveState{0.0, 0.0, 273.0}, gas),
                    InvalidConfig);
}

}  // TEST_SUITE
