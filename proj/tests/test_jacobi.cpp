#include "oracles.hpp"

#include <doctest.h>

using namespace azeta;
using oracle::pi;

TEST_CASE("complete integrals at zero modulus")
{
    const auto [K, E] = complete_elliptic_integrals(0.0);
    CHECK(std::abs(K - pi / 2) < 1e-15);
    CHECK(std::abs(E - pi / 2) < 1e-15);
}

TEST_CASE("complete integrals against quadrature")
{
    std::vector<cx> params{0.3, 0.9, cx{0.4, 0.3}, cx{-0.7, 0.2}, cx{0.5, -0.6}};
    for (const auto &ref : oracle::reference_lattices())
        params.push_back(oracle::build(ref.tau).constants().ksq);
    for (cx m : params) {
        CAPTURE(m);
        const auto [K, E] = complete_elliptic_integrals(m);
        const auto [Kq, Eq] = oracle::elliptic_KE_quadrature(m);
        CHECK(std::abs(K - Kq) < 1e-10);
        CHECK(std::abs(E - Eq) < 1e-10);
    }
}

TEST_CASE("parameters tie the modulus to the lattice")
{
    for (const auto &ref : oracle::reference_lattices()) {
        CAPTURE(ref.name);
        const Lattice lat = oracle::build(ref.tau);
        const JacobiParams p = jacobi_params(lat);
        CHECK(std::abs(p.k * p.k - p.ksq) < 1e-15);
        CHECK(std::abs(p.kprime * p.kprime - (1.0 - p.ksq)) < 1e-15);
        CHECK(oracle::rel(p.scale * p.scale, lat.constants().e[0] - lat.constants().e[2]) < 1e-14);
        CHECK(oracle::rel(p.K, p.scale * lat.omega1()) < 1e-12);
    }
}

TEST_CASE("normalisation, parity and periods")
{
    for (const auto &ref : oracle::reference_lattices()) {
        CAPTURE(ref.name);
        const JacobiParams p = jacobi_params(oracle::build(ref.tau));
        const auto z = sn_cn_dn(p, 0.0);
        CHECK(std::abs(z.sn) < 1e-15);
        CHECK(std::abs(z.cn - 1.0) < 1e-15);
        CHECK(std::abs(z.dn - 1.0) < 1e-15);
        oracle::Sampler s(p.lat, 53);
        for (int i = 0; i < 20; ++i) {
            const cx x = p.scale * s.next({p.lat.omega3()});
            const auto a = sn_cn_dn(p, x);
            const auto b = sn_cn_dn(p, -x);
            CHECK(oracle::rel(b.sn, -a.sn) < 1e-12);
            CHECK(oracle::rel(b.cn, a.cn) < 1e-12);
            CHECK(oracle::rel(b.dn, a.dn) < 1e-12);
            const auto c = sn_cn_dn(p, x + 4.0 * p.K);
            CHECK(oracle::rel(c.sn, a.sn) < 1e-10);
            const auto d = sn_cn_dn(p, x + 2.0 * p.K);
            CHECK(oracle::rel(d.sn, -a.sn) < 1e-10);
        }
        CHECK_THROWS_AS(sn_cn_dn(p, p.scale * p.lat.omega3()), pole_proximity);
    }
}

TEST_CASE("Pythagorean relations at random arguments")
{
    const JacobiParams p = jacobi_params(oracle::default_lattice());
    oracle::Sampler s(p.lat, 59);
    for (int i = 0; i < 50; ++i) {
        const cx x = p.scale * s.next({p.lat.omega3()});
        const auto j = sn_cn_dn(p, x);
        CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-11);
        CHECK(std::abs(j.dn * j.dn + p.ksq * j.sn * j.sn - 1.0) < 1e-11);
    }
}

TEST_CASE("real arguments on a rectangular lattice match the real AGM")
{
    for (cx tau : {cx{0.0, 1.0}, cx{0.0, 2.0}, cx{0.0, 0.6}}) {
        const JacobiParams p = jacobi_params(oracle::build(tau));
        REQUIRE(std::abs(p.k.imag()) < 1e-15);
        for (double t : {0.05, 0.3, 0.7, 1.1, 1.6, 2.9}) {
            const double x = t * p.K.real();
            const auto j = sn_cn_dn(p, x);
            const auto o = oracle::jacobi_real_agm(x, p.k.real());
            CHECK(std::abs(j.sn - o.sn) < 1e-12);
            CHECK(std::abs(j.cn - o.cn) < 1e-12);
            CHECK(std::abs(j.dn - o.dn) < 1e-12);
        }
    }
}

TEST_CASE("transformation formulas")
{
    for (const auto &ref : oracle::reference_lattices()) {
        CAPTURE(ref.name);
        const JacobiParams p = jacobi_params(oracle::build(ref.tau));
        oracle::Sampler s(p.lat, 61);
        for (int i = 0; i < 30; ++i) {
            const cx u = s.next_regular();
            for (double r : check_thm211_squared(p, u))
                CHECK(r <= 1e-9);
            if (p.lat.is_rectangular()) {
                for (double r : check_thm211(p, u))
                    CHECK(r <= 1e-9);
                for (double r : check_cor212(p, u))
                    CHECK(r <= 1e-9);
            }
        }
    }
}

TEST_CASE("square-root-free ns row on a generic lattice")
{
    const JacobiParams p = jacobi_params(oracle::default_lattice());
    const auto &c = p.lat.constants();
    oracle::Sampler s(p.lat, 67);
    for (int i = 0; i < 20; ++i) {
        const cx u = s.next_regular();
        const auto j = sn_cn_dn(p, p.scale * u);
        const cx lhs = delta(p.lat, HalfPeriod::one, u).value * delta(p.lat, HalfPeriod::two, u).value;
        CHECK(oracle::rel(lhs, (c.e[0] - c.e[2]) / (j.sn * j.sn)) < 1e-9);
    }
}

TEST_CASE("dn row near the origin")
{
    const Lattice lat = oracle::default_lattice();
    const cx u{1e-4, 1e-4};
    const cx q = delta(lat, HalfPeriod::three, u).value / delta(lat, HalfPeriod::two, u).value;
    CHECK(std::abs(q - 1.0) < 1e-6);
}

TEST_CASE("first-kind difference through the second kind")
{
    const Lattice lat = oracle::default_lattice();
    const auto &c = lat.constants();
    oracle::Sampler s(lat, 71);
    for (int i = 0; i < 20; ++i) {
        const cx u = s.next_regular();
        const cx lhs = c.e_diff(HalfPeriod::two, HalfPeriod::three) /
                       delta2(lat, HalfPeriod::two, HalfPeriod::three, u).value;
        CHECK(oracle::rel(lhs, delta(lat, HalfPeriod::one, u).value) < 1e-10);
    }
}

TEST_CASE("integrals of the second and third kind")
{
    for (const auto &ref : oracle::reference_lattices()) {
        CAPTURE(ref.name);
        const JacobiParams p = jacobi_params(oracle::build(ref.tau));
        const cx a{0.11, 0.07};
        const auto zero = jacobi_E_Z_Pi(p, 0.0, a);
        CHECK(std::abs(zero.E) == 0.0);
        CHECK(std::abs(zero.Z) == 0.0);
        CHECK(zero.Pi == cx{0.0, 0.0});
        oracle::Sampler s(p.lat, 73, 0.2);
        for (int i = 0; i < 10; ++i) {
            const cx u = s.next({p.lat.omega3()});
            const auto f = [&](cx x) { return jacobi_E_Z_Pi(p, x, a).E; };
            const cx dn = sn_cn_dn(p, p.scale * u).dn;
            CHECK(std::abs(oracle::central_difference(f, u) - p.scale * dn * dn) < 1e-6);
            const auto v = jacobi_E_Z_Pi(p, u, a);
            CHECK(oracle::rel(v.Z, v.E - p.E / p.K * p.scale * u) < 1e-10);
        }
        if (p.lat.is_rectangular()) {
            const auto k = jacobi_E_Z_Pi(p, p.lat.omega1(), a);
            CHECK(std::abs(k.Z) <= 1e-9);
            CHECK(oracle::rel(k.E, p.E) < 1e-10);
        }
    }
}
