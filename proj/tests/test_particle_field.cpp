#include <doctest.h>

#include <cstdio>
#include <sstream>
#include <vector>

#include "fhd/errors.hpp"
#include "fhd/particle_field.hpp"

using namespace fhd;

namespace {

// unit-spacing periodic test field: 8 particles on [0, 8)
ParticleField unit_field(BoundaryKind bk) {
    return init_uniform(8.0, 8, PrimitiveState{1.0, 0.0, 300.0}, bk);
}

bool strictly_sorted(const std::vector<double>& v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (!(v[i] < v[i + 1])) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("particle_field") {

TEST_CASE("uniform initialisation") {
    const PrimitiveState s{1.78e-3, 123.0, 273.0};
    const ParticleField f = init_uniform(1.25e-4, 40, s, BoundaryKind::Periodic);
    CHECK(f.size() == 40);
    CHECK(f.x_min == 0.0);
    CHECK(f.x_max == 1.25e-4);
    CHECK(f.dx0 == doctest::Approx(3.125e-6).epsilon(1e-15));
    CHECK(f.h == doctest::Approx(3.0 * 3.125e-6).epsilon(1e-15));
    CHECK(f.x[0] == doctest::Approx(0.5 * f.dx0).epsilon(1e-15));
    CHECK(f.x[39] == doctest::Approx(39.5 * f.dx0).epsilon(1e-14));
    CHECK(strictly_sorted(f.x));
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(f.rho[i] == s.rho);
        CHECK(f.u[i] == s.u);
        CHECK(f.T[i] == s.T);
    }

    const ParticleField wide = init_uniform(8.0, 8, s, BoundaryKind::Periodic, -4.0, 4.0);
    CHECK(wide.x_min == -4.0);
    CHECK(wide.x[0] == doctest::Approx(-3.5).epsilon(1e-15));
    CHECK(wide.h == doctest::Approx(4.0).epsilon(1e-15));

    CHECK_THROWS_AS(init_uniform(0.0, 8, s, BoundaryKind::Periodic), InvalidConfig);
    CHECK_THROWS_AS(init_uniform(1.0, 3, s, BoundaryKind::Periodic), InvalidConfig);
    CHECK_THROWS_AS(init_uniform(1.0, 8, PrimitiveState{0.0, 0.0, 1.0}, BoundaryKind::Periodic),
                    InvalidConfig);
    CHECK_THROWS_AS(init_uniform(1.0, 8, s, BoundaryKind::Periodic, 0.0, 0.0), InvalidConfig);
}

TEST_CASE("neighbour queries use the wrapped distance") {
    const ParticleField f = unit_field(BoundaryKind::Periodic);

    CHECK(neighbors(f, 3.8) == std::vector<std::size_t>{3, 4, 2, 5, 1, 6});
    // position near the left wall picks up right-edge particles through the seam
    CHECK(neighbors(f, 0.2) == std::vector<std::size_t>{0, 7, 1, 6, 2, 5});
    CHECK(neighbors(f, 0.2, 0) == std::vector<std::size_t>{7, 1, 6, 2, 5});

    const ParticleField g = unit_field(BoundaryKind::FixedState);
    CHECK(neighbors(g, 0.2) == std::vector<std::size_t>{0, 1, 2});

    ParticleField tiny = unit_field(BoundaryKind::Periodic);
    tiny.h = 0.4;
    CHECK_THROWS_AS(neighbors(tiny, 0.2), InsufficientNeighborhood);
}

TEST_CASE("close pairs merge into their midpoint") {
    ParticleField f = unit_field(BoundaryKind::Periodic);
    f.x[4] = f.x[3] + 0.2;  // below gap_min * dx0 = 0.25
    f.x[5] = 5.05;          // keeps both surrounding gaps legal after the merge
    f.rho[3] = 2.0;
    f.rho[4] = 4.0;

    const ManageResult r = manage_particles(f);
    CHECK(r.removed == 1);
    CHECK(r.added == 0);
    CHECK(f.size() == 7);
    CHECK(f.x[3] == doctest::Approx(3.6).epsilon(1e-14));
    CHECK(f.rho[3] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(strictly_sorted(f.x));

    const ManageResult again = manage_particles(f);
    CHECK(again.removed == 0);
    CHECK(again.added == 0);
}

TEST_CASE("wide gaps get a midpoint particle") {
    ParticleField f = unit_field(BoundaryKind::Periodic);
    // drop the particle at 4.5 by hand
    f.x.erase(f.x.begin() + 4);
    f.rho.erase(f.rho.begin() + 4);
    f.u.erase(f.u.begin() + 4);
    f.T.erase(f.T.begin() + 4);

    const ManageResult r = manage_particles(f);
    CHECK(r.added == 1);
    CHECK(r.removed == 0);
    CHECK(f.size() == 8);
    CHECK(f.x[4] == doctest::Approx(4.5).epsilon(1e-14));
    CHECK(strictly_sorted(f.x));
}

TEST_CASE("merging refuses to drop below four particles") {
    ParticleField f = init_uniform(4.0, 4, PrimitiveState{1.0, 0.0, 300.0},
                                   BoundaryKind::Periodic);
    f.x[1] = f.x[0] + 0.2;
    CHECK_THROWS_AS(manage_particles(f), DegenerateField);
}

TEST_CASE("gap management crosses the periodic seam") {
    // oversized seam gap after removing the last particle
    ParticleField f = unit_field(BoundaryKind::Periodic);
    f.x.pop_back();
    f.rho.pop_back();
    f.u.pop_back();
    f.T.pop_back();
    const ManageResult r = manage_particles(f);
    CHECK(r.added == 1);
    CHECK(f.size() == 8);
    CHECK(f.x.back() == doctest::Approx(7.5).epsilon(1e-14));

    // close pair straddling the seam collapses onto the wrap point
    ParticleField g = unit_field(BoundaryKind::Periodic);
    g.x[0] = 0.05;
    g.x[7] = 7.95;
    g.rho[0] = 10.0;
    g.rho[7] = 20.0;
    const ManageResult rm = manage_particles(g);
    CHECK(rm.removed == 1);
    CHECK(rm.added == 0);
    CHECK(g.size() == 7);
    CHECK(g.x[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(g.rho[0] == doctest::Approx(15.0).epsilon(1e-15));
    CHECK(strictly_sorted(g.x));
}

TEST_CASE("periodic boundary wraps and re-sorts") {
    ParticleField f = unit_field(BoundaryKind::Periodic);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.x[i] += 2.3;
        f.rho[i] = static_cast<double>(i);  // tag to follow the permutation
    }
    apply_boundary(f);
    CHECK(strictly_sorted(f.x));
    const double expect_x[] = {0.8, 1.8, 2.8, 3.8, 4.8, 5.8, 6.8, 7.8};
    const double expect_rho[] = {6, 7, 0, 1, 2, 3, 4, 5};
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(f.x[i] == doctest::Approx(expect_x[i]).epsilon(1e-14));
        CHECK(f.rho[i] == expect_rho[i]);
    }
}

TEST_CASE("fixed boundary drops leavers and tops up from the reservoir") {
    ParticleField f = unit_field(BoundaryKind::FixedState);
    f.left_state = PrimitiveState{5.0, -1.0, 100.0};
    f.right_state = PrimitiveState{9.0, 1.0, 900.0};
    f.x[0] = -0.3;
    f.x[1] = -0.1;
    f.x[7] = 8.2;

    apply_boundary(f);
    CHECK(f.size() == 6);
    CHECK(f.x.front() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(f.rho.front() == 5.0);
    CHECK(f.u.front() == -1.0);
    CHECK(f.x.back() == doctest::Approx(6.5).epsilon(1e-14));
    CHECK(strictly_sorted(f.x));

    ParticleField g = unit_field(BoundaryKind::FixedState);
    for (auto& xi : g.x) xi += 10.0;
    CHECK_THROWS_AS(apply_boundary(g), DegenerateField);
}

TEST_CASE("extended field carries periodic images with their sources") {
    ParticleField f = unit_field(BoundaryKind::Periodic);
    for (std::size_t i = 0; i < f.size(); ++i) f.rho[i] = static_cast<double>(i);

    ExtendedField e;
    build_extended(f, e);
    CHECK(e.ng_left == 3);
    CHECK(e.ng_right == 3);
    CHECK(e.size() == 14);
    CHECK(e.interior() == 8);
    CHECK(strictly_sorted(e.x));

    const double lx[] = {-2.5, -1.5, -0.5};
    const long lsrc[] = {5, 6, 7};
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(e.x[k] == doctest::Approx(lx[k]).epsilon(1e-14));
        CHECK(e.ghost_src[k] == lsrc[k]);
        CHECK(e.rho[k] == static_cast<double>(lsrc[k]));
    }
    for (std::size_t j = 0; j < 8; ++j) {
        CHECK(e.x[e.ng_left + j] == f.x[j]);
        CHECK(e.rho[e.ng_left + j] == f.rho[j]);
    }
    const double rx[] = {8.5, 9.5, 10.5};
    const long rsrc[] = {0, 1, 2};
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(e.x[11 + k] == doctest::Approx(rx[k]).epsilon(1e-14));
        CHECK(e.ghost_src[3 + k] == rsrc[k]);
        CHECK(e.rho[11 + k] == static_cast<double>(rsrc[k]));
    }
}

TEST_CASE("extended field fills reservoirs at fixed boundaries") {
    ParticleField f = unit_field(BoundaryKind::FixedState);
    f.left_state = PrimitiveState{5.0, -1.0, 100.0};
    f.right_state = PrimitiveState{9.0, 1.0, 900.0};

    ExtendedField e;
    build_extended(f, e);
    CHECK(e.ng_left == 4);  // ceil(h/dx0 + 1/2) lattice sites per side
    CHECK(e.ng_right == 4);
    CHECK(e.size() == 16);
    CHECK(strictly_sorted(e.x));
    CHECK(e.x[0] == doctest::Approx(-3.5).epsilon(1e-14));
    CHECK(e.x[3] == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(e.x[12] == doctest::Approx(8.5).epsilon(1e-14));
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(e.ghost_src[k] == -1);
        CHECK(e.ghost_src[4 + k] == -1);
        CHECK(e.rho[k] == 5.0);
        CHECK(e.T[k] == 100.0);
        CHECK(e.rho[12 + k] == 9.0);
        CHECK(e.u[12 + k] == 1.0);
    }
}

TEST_CASE("snapshots round-trip through text") {
    ParticleField f = init_uniform(4.0, 4, PrimitiveState{1.78e-3, -12.25, 273.0},
                                   BoundaryKind::Periodic);
    std::ostringstream os;
    snapshot_header(os);
    snapshot_csv(f, 3, os);
    CHECK(os.precision() == 6);  // stream formatting restored

    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "step,x,rho,u,T");
    std::size_t i = 0;
    while (std::getline(is, line)) {
        long step = 0;
        double x = 0, rho = 0, u = 0, T = 0;
        REQUIRE(std::sscanf(line.c_str(), "%ld,%lf,%lf,%lf,%lf", &step, &x, &rho, &u, &T) == 5);
        CHECK(step == 3);
        REQUIRE(i < f.size());
        CHECK(x == f.x[i]);
        CHECK(rho == f.rho[i]);
        CHECK(u == f.u[i]);
        CHECK(T == f.T[i]);
        ++i;
    }
    CHECK(i == 4);
}

}  // TEST_SUITE
