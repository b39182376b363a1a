#include "oracles.hpp"

#include <doctest.h>

using namespace azeta;

namespace
{
const std::array<DeltaRoute, 4> routes{DeltaRoute::zeta_diff, DeltaRoute::wp_quotient, DeltaRoute::sigma_quotient,
                                       DeltaRoute::theta_quotient};
const std::array<std::pair<HalfPeriod, HalfPeriod>, 6> pairs{{{HalfPeriod::one, HalfPeriod::two},
                                                              {HalfPeriod::one, HalfPeriod::three},
                                                              {HalfPeriod::two, HalfPeriod::one},
                                                              {HalfPeriod::two, HalfPeriod::three},
                                                              {HalfPeriod::three, HalfPeriod::one},
                                                              {HalfPeriod::three, HalfPeriod::two}}};
} // namespace

TEST_CASE("first-kind differences vanish at the other half-periods")
{
    const Lattice lat = oracle::default_lattice();
    for (HalfPeriod h : all_half_periods) {
        const auto [m, n] = complement(h);
        for (DeltaRoute r : routes) {
            CHECK(std::abs(delta(lat, h, lat.omega(m), r).value) < 1e-12);
            CHECK(std::abs(delta(lat, h, lat.omega(n), r).value) < 1e-12);
            CHECK(delta(lat, h, 0.0, r).status == Status::at_pole);
            CHECK(delta(lat, h, lat.omega(h), r).status == Status::at_pole);
        }
    }
}

TEST_CASE("first-kind differences are odd and agree across routes")
{
    for (const auto &ref : oracle::reference_lattices()) {
        CAPTURE(ref.name);
        const Lattice lat = oracle::build(ref.tau);
        oracle::Sampler s(lat, 31);
        for (int i = 0; i < 50; ++i) {
            const cx u = s.next_regular();
            for (HalfPeriod h : all_half_periods) {
                const cx base = delta(lat, h, u).value;
                CHECK(oracle::rel(delta(lat, h, -u).value, -base) < 1e-13);
                for (DeltaRoute r : routes)
                    CHECK(oracle::rel(delta(lat, h, u, r).value, base) < 1e-10);
            }
        }
    }
}

TEST_CASE("first-kind derivative special values and differences")
{
    const Lattice lat = oracle::default_lattice();
    const auto &c = lat.constants();
    for (HalfPeriod h : all_half_periods) {
        const auto [m, n] = complement(h);
        const double S = std::abs(c.e[0] - c.e[2]);
        CHECK(std::abs(delta_prime(lat, h, lat.omega(m)).value - c.e_diff(m, n)) < 1e-12 * S);
        CHECK(std::abs(delta_prime(lat, h, lat.omega(n)).value - c.e_diff(n, m)) < 1e-12 * S);
    }
    oracle::Sampler s(lat, 37, 0.2);
    for (int i = 0; i < 20; ++i) {
        const cx u = s.next_regular();
        for (HalfPeriod h : all_half_periods) {
            const auto f = [&](cx x) { return delta(lat, h, x).value; };
            CHECK(std::abs(oracle::central_difference(f, u) - delta_prime(lat, h, u).value) < 1e-6);
        }
    }
}

TEST_CASE("second-kind differences")
{
    const Lattice lat = oracle::default_lattice();
    CHECK_THROWS_AS(delta2(lat, HalfPeriod::two, HalfPeriod::two, 0.3), identical_indices);
    CHECK_THROWS_AS(delta2_prime(lat, HalfPeriod::one, HalfPeriod::one, 0.3), identical_indices);
    const Delta2ThetaQuotient tq(lat);
    for (auto [h, k] : pairs) {
        const HalfPeriod n = third(h, k);
        CHECK(std::abs(tq.sign(h, k)) == 1);
        for (DeltaRoute r : routes) {
            CHECK(std::abs(delta2(lat, h, k, 0.0, r).value) < 1e-12);
            CHECK(std::abs(delta2(lat, h, k, lat.omega(n), r).value) < 1e-12);
            CHECK(delta2(lat, h, k, lat.omega(h), r).status == Status::at_pole);
        }
    }
    oracle::Sampler s(lat, 41);
    for (int i = 0; i < 50; ++i) {
        const cx u = s.next_regular();
        for (auto [h, k] : pairs) {
            const cx base = delta2(lat, h, k, u, DeltaRoute::zeta_diff).value;
            CHECK(oracle::rel(delta2(lat, k, h, u).value, -base) < 1e-12);
            for (DeltaRoute r : routes)
                CHECK(oracle::rel(delta2(lat, h, k, u, r).value, base) < 1e-10);
            CHECK(oracle::rel(tq(h, k, u).value, base) < 1e-10);
        }
    }
}

TEST_CASE("second-kind derivative")
{
    const Lattice lat = oracle::default_lattice();
    oracle::Sampler s(lat, 43, 0.2);
    for (int i = 0; i < 20; ++i) {
        const cx u = s.next_regular();
        for (auto [h, k] : pairs) {
            const cx d = delta2_prime(lat, h, k, u).value;
            CHECK(oracle::rel(d, wp(lat, u + lat.omega(k)).value - wp(lat, u + lat.omega(h)).value) < 1e-10);
            CHECK(oracle::rel(delta2_prime(lat, k, h, u).value, -d) < 1e-13);
            const auto f = [&](cx x) { return delta2(lat, h, k, x).value; };
            CHECK(std::abs(oracle::central_difference(f, u) - d) < 1e-6);
        }
    }
}

TEST_CASE("constants recovered from the differences")
{
    for (const auto &ref : oracle::reference_lattices()) {
        CAPTURE(ref.name);
        const Lattice lat = oracle::build(ref.tau);
        const auto &c = lat.constants();
        const double S = std::abs(c.e[0] - c.e[2]);
        oracle::Sampler s(lat, 47);
        const auto a = constants_from_deltas(lat, s.next_regular());
        const auto b = constants_from_deltas(lat, s.next_regular());
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(a.e[i] - b.e[i]) < 1e-9 * S);
            CHECK(std::abs(a.e[i] - c.e[i]) < 1e-9 * S);
        }
        CHECK(std::abs(a.g2 - c.g2) < 1e-9 * S * S);
        CHECK(std::abs(a.g3 - c.g3) < 1e-9 * S * S * S);
        const cx d = c.e_diffs[0] * c.e_diffs[1] * c.e_diffs[2];
        CHECK(oracle::rel(a.disc, 16.0 * d * d) < 1e-9);
        CHECK(oracle::rel(a.disc, c.disc) < 1e-9);
    }
    const Lattice lat = oracle::default_lattice();
    CHECK_THROWS_AS(constants_from_deltas(lat, lat.omega2()), pole_proximity);
    CHECK_THROWS_AS(constants_from_deltas(lat, 0.0), pole_proximity);
}
