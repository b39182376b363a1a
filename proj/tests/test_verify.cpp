#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace azeta;

namespace
{
double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}
} // namespace

TEST_CASE("empty suite gives an empty report")
{
    CHECK(run_suite(oracle::default_lattice(), {}, 10, 0).empty());
}

TEST_CASE("registry contents")
{
    const auto &suite = default_suite();
    CHECK(suite.size() >= 30);
    std::set<std::string> names;
    for (const auto &s : suite) {
        CHECK_MESSAGE(names.insert(s.name).second, s.name);
        CHECK(s.tol > 0.0);
        CHECK((s.arity == 1 || s.arity == 2));
        CHECK(evaluator_registry().count(s.lhs) == 1);
        CHECK(evaluator_registry().count(s.rhs) == 1);
    }
    CHECK(names.count("eq14_delta2_times_delta_constant") == 1);
    for (const char *form : {"exponential", "cosine"})
        for (int l = 1; l <= 3; ++l)
            CHECK(names.count(std::string("prop23_") + form + "_l" + std::to_string(l)) == 1);
    const auto fs = std::find_if(suite.begin(), suite.end(),
                                 [](const IdentitySpec &s) { return s.name == "frobenius_stickelberger"; });
    REQUIRE(fs != suite.end());
    CHECK(fs->arity == 2);
    for (const char *n : {"sigma_identity", "weierstrass_three_term", "eq11_duplication", "wp_differential_equation"})
        CHECK_MESSAGE(names.count(n) == 1, n);
}

TEST_CASE("glob filtering")
{
    CHECK(glob_match("eq14_*", "eq14_delta_reciprocal"));
    CHECK_FALSE(glob_match("eq14_*", "eq1_x"));
    CHECK(glob_match("prop23_?osine_l?", "prop23_cosine_l2"));
    CHECK(glob_match("*", ""));
    const auto only = filter_suite(default_suite(), "eq14_*");
    REQUIRE_FALSE(only.empty());
    for (const auto &s : only)
        CHECK(s.name.rfind("eq14_", 0) == 0);
}

TEST_CASE("difference, product and reciprocal identities pass on the default lattice")
{
    const auto suite = [] {
        std::vector<IdentitySpec> s;
        for (const char *p : {"eq4_*", "eq5_*", "eq14_*"}) {
            const auto f = filter_suite(default_suite(), p);
            REQUIRE_FALSE(f.empty());
            s.insert(s.end(), f.begin(), f.end());
        }
        return s;
    }();
    for (const auto &r : run_suite(oracle::default_lattice(), suite, 100, 0)) {
        CAPTURE(r.name);
        CHECK(r.passed);
        CHECK(r.samples == 100);
        CHECK(r.tol == 1e-9);
        CHECK(r.max_rel <= 1e-9);
        CHECK(r.failures.empty());
    }
}

TEST_CASE("reports are deterministic for a fixed seed")
{
    const Lattice lat = oracle::default_lattice();
    const auto suite = filter_suite(default_suite(), "*delta*");
    const auto a = to_json(run_suite(lat, suite, 20, 9)).dump();
    const auto b = to_json(run_suite(lat, suite, 20, 9)).dump();
    CHECK(a == b);
    CHECK(a != to_json(run_suite(lat, suite, 20, 10)).dump());
}

TEST_CASE("configuration errors")
{
    const Lattice lat = oracle::default_lattice();
    IdentitySpec bad;
    bad.name = "bogus";
    bad.lhs = "nope.lhs";
    bad.rhs = "nope.rhs";
    CHECK_THROWS_AS(run_suite(lat, {bad}, 5, 0), suite_config);
    CHECK_THROWS_AS(run_suite(lat, filter_suite(default_suite(), "eq14_*"), 0, 0), suite_config);
    IdentitySpec arity = default_suite().front();
    arity.arity = 3;
    CHECK_THROWS_AS(run_suite(lat, {arity}, 5, 0), suite_config);
}

TEST_CASE("failing identities are reported with their points")
{
    const Lattice lat = oracle::default_lattice();
    // pair one identity's left side with a different identity's right side
    IdentitySpec wrong;
    wrong.name = "mismatch";
    wrong.lhs = "prop23_cosine_l1.lhs";
    wrong.rhs = "prop23_cosine_l2.rhs";
    wrong.exclusions = {{1, 0, 0.5, 0.0}, {1, 0, 0.5, 0.5}};
    const auto r = run_suite(lat, {wrong}, 10, 0);
    REQUIRE(r.size() == 1);
    CHECK_FALSE(r[0].passed);
    CHECK(r[0].failures.size() == 10);
    const auto j = to_json(r);
    CHECK(j[0]["passed"] == false);
    CHECK(j[0]["failures"][0]["point"].size() == 2);
    CHECK(j[0].contains("maxRel"));
    CHECK(j[0].contains("meanRel"));
    CHECK(j[0]["samples"] == 10);
}

TEST_CASE("sampled points respect the pole guard")
{
    // residuals are finite everywhere when the guard is honoured
    const Lattice lat = oracle::build({0.1, 3.0});
    for (const auto &r : run_suite(lat, filter_suite(default_suite(), "eq20_*"), 100, 3)) {
        CAPTURE(r.name);
        CHECK(std::isfinite(r.max_rel));
        CHECK(r.passed);
    }
}

TEST_CASE("rectangular-only identities are left out on oblique lattices")
{
    const auto suite = filter_suite(default_suite(), "thm211_transformations");
    REQUIRE(suite.size() == 1);
    CHECK(suite[0].applies == Applicability::rectangular);
    CHECK(run_suite(oracle::default_lattice(), suite, 5, 0).empty());
    CHECK(run_suite(oracle::build({0.0, 1.0}), suite, 5, 0).size() == 1);
}

TEST_CASE("residuals shrink with the truncation tolerance")
{
    // |q| = exp(-0.06 pi) so that truncation, not rounding, dominates
    const Lattice lat = build_lattice(0.5, cx{0.0, 0.06}, {}, 0.95);
    std::vector<IdentitySpec> suite;
    for (const char *n : {"eq7_delta_theta_log_derivative", "eq12_delta2_theta_log_derivative",
                          "eq12_delta2_theta_products", "zeta_aux_qseries_theta"}) {
        const auto f = filter_suite(default_suite(), n);
        REQUIRE(f.size() == 1);
        suite.push_back(f[0]);
    }
    SeriesConfig loose;
    loose.abs_tol = 1e-6;
    loose.rel_tol = 0.0;
    SeriesConfig tight = loose;
    tight.abs_tol = 1e-7;
    const auto a = run_suite(lat, suite, 50, 0, loose);
    const auto b = run_suite(lat, suite, 50, 0, tight);
    std::vector<double> ra, rb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ra.insert(ra.end(), a[i].residuals.begin(), a[i].residuals.end());
        rb.insert(rb.end(), b[i].residuals.begin(), b[i].residuals.end());
    }
    CHECK(median(ra) >= 5.0 * median(rb));
}

TEST_CASE("relative residual definition")
{
    CHECK(relative_residual(1.0, 1.0) == 0.0);
    CHECK(relative_residual(2.0, 1.0) == doctest::Approx(0.5));
    CHECK(relative_residual(0.0, 0.0) == 0.0);
    CHECK(relative_residual(1e-40, 0.0) == doctest::Approx(1e-10));
}
