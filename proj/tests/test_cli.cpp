#include "cli.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <json.hpp>

#include <set>
#include <sstream>

using azeta::cli::run_cli;

namespace
{
struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &s)
{
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        v.push_back(l);
    return v;
}
} // namespace

TEST_CASE("eval at a half-period keyword")
{
    const Run r = cli({"eval", "--fn", "delta1", "--u", "ω2"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "Finite");
    CHECK(std::hypot(j["value"][0].get<double>(), j["value"][1].get<double>()) < 1e-12);
    CHECK(cli({"eval", "--fn", "delta1", "--u", "w2"}).out == r.out);
}

TEST_CASE("eval of an auxiliary zeta at the origin")
{
    const Run r = cli({"eval", "--fn", "zeta1", "--u", "0,0"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"][0].get<double>() == 0.0);
    CHECK(j["value"][1].get<double>() == 0.0);
}

TEST_CASE("eval at a pole exits with the pole code")
{
    const Run r = cli({"eval", "--fn", "wp", "--u", "0,0"});
    CHECK(r.code == azeta::cli::pole);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "AtPole");
    CHECK(j["value"].is_null());
}

TEST_CASE("eval matches the library and honours routes")
{
    const auto lat = oracle::default_lattice();
    const azeta::cx u{0.2, 0.15};
    const auto j = nlohmann::json::parse(cli({"eval", "--fn", "wp", "--u", "0.2,0.15"}).out);
    const azeta::cx v{j["value"][0].get<double>(), j["value"][1].get<double>()};
    CHECK(oracle::rel(v, azeta::wp(lat, u).value) < 1e-15);
    for (const char *route : {"shift", "theta", "qseries", "partial_fraction"}) {
        const Run r = cli({"eval", "--fn", "zeta2", "--route", route, "--u", "0.2,0.15"});
        CHECK(r.code == 0);
    }
    CHECK(cli({"eval", "--fn", "zeta2", "--route", "nonsense", "--u", "0.2,0.15"}).code == azeta::cli::usage);
}

TEST_CASE("eval in csv")
{
    const Run r = cli({"eval", "--fn", "sn", "--u", "0.2,0.1", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "re_u,im_u,re_f,im_f,status");
    CHECK(l[1].rfind("0.2,0.1,", 0) == 0);
    CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("usage errors")
{
    CHECK(cli({"eval", "--fn", "nope", "--u", "0,0"}).code == azeta::cli::usage);
    CHECK(cli({"eval", "--fn", "wp", "--u", "abc"}).code == azeta::cli::usage);
    CHECK(cli({"eval", "--fn", "wp"}).code == azeta::cli::usage);
    CHECK(cli({"frobnicate"}).code == azeta::cli::usage);
    CHECK(cli({"table", "--fn", "wp", "--rows", "0"}).code == azeta::cli::usage);
    CHECK(cli({"eval", "--fn", "wp", "--u", "0.1,0.1", "--tau", "0,1", "--omega3", "0,1"}).code ==
          azeta::cli::usage);
    const Run r = cli({"eval", "--fn", "wp", "--u", "0.1,0.1", "--format", "xml"});
    CHECK(r.code == azeta::cli::usage);
    CHECK_FALSE(r.err.empty());
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("table with a single point")
{
    const Run r = cli({"table", "--fn", "zeta", "--from", "0.3,0.2", "--to", "0.3,0.2", "--rows", "1", "--cols", "1",
                       "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 2);
    CHECK(l[1].find("Finite") != std::string::npos);
}

TEST_CASE("table rows at poles carry empty values")
{
    const std::vector<std::string> args{"table", "--fn", "wp", "--from", "0,0", "--to", "1,0", "--rows", "1",
                                        "--cols", "3", "--format", "csv"};
    const Run r = cli(args);
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 4);
    CHECK(l[1] == "0,0,,,AtPole");
    CHECK(l[2].find("Finite") != std::string::npos);
    CHECK(l[3] == "1,0,,,AtPole");
    CHECK(cli(args).out == r.out);

    const Run j = cli({"table", "--fn", "wp", "--from", "0,0", "--to", "1,0", "--rows", "1", "--cols", "3"});
    const auto arr = nlohmann::json::parse(j.out);
    REQUIRE(arr.size() == 3);
    CHECK(arr[0]["status"] == "AtPole");
    CHECK(arr[0]["value"].is_null());
}

TEST_CASE("table ordering is row-major")
{
    const Run r = cli({"table", "--fn", "wp", "--from", "0.1,0.1", "--to", "0.2,0.3", "--rows", "2", "--cols", "2",
                       "--format", "csv"});
    const auto l = lines(r.out);
    REQUIRE(l.size() == 5);
    CHECK(l[1].rfind("0.1,0.1,", 0) == 0);
    CHECK(l[2].rfind("0.2,0.1,", 0) == 0);
    CHECK(l[3].rfind("0.1,0.3,", 0) == 0);
    CHECK(l[4].rfind("0.2,0.3,", 0) == 0);
}

TEST_CASE("constants of the square lattice")
{
    const Run r = cli({"constants", "--tau", "0,1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const azeta::cx g2{j["g2"][0].get<double>(), j["g2"][1].get<double>()};
    const azeta::cx g3{j["g3"][0].get<double>(), j["g3"][1].get<double>()};
    const azeta::cx disc{j["disc"][0].get<double>(), j["disc"][1].get<double>()};
    CHECK(std::abs(g3) <= 1e-12 * std::abs(g2));
    CHECK(oracle::rel(disc, g2 * g2 * g2 - 27.0 * g3 * g3) < 1e-12);
    CHECK(cli({"constants", "--tau", "0.3,-1"}).code == azeta::cli::usage);
    CHECK(cli({"constants", "--omega1", "0.5,0", "--omega3", "1,0"}).code == azeta::cli::usage);
}

TEST_CASE("verify on the default lattice")
{
    const Run a = cli({"verify", "--n", "100", "--seed", "0"});
    CHECK(a.code == 0);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.size() >= 30);
    for (const auto &r : j)
        CHECK_MESSAGE(r["passed"] == true, r["name"].get<std::string>());
}

TEST_CASE("verify filter and determinism")
{
    const Run a = cli({"verify", "--n", "20", "--seed", "4", "--only", "eq14_*"});
    REQUIRE(a.code == 0);
    const auto j = nlohmann::json::parse(a.out);
    REQUIRE(j.size() >= 1);
    for (const auto &r : j)
        CHECK(r["name"].get<std::string>().rfind("eq14_", 0) == 0);
    CHECK(cli({"verify", "--n", "20", "--seed", "4", "--only", "eq14_*"}).out == a.out);
    CHECK(cli({"verify", "--n", "0"}).code == azeta::cli::usage);
}

TEST_CASE("every listed function evaluates")
{
    const Run r = cli({"--list-fns"});
    REQUIRE(r.code == 0);
    const auto listed = lines(r.out);
    CHECK(listed == azeta::cli::function_names());
    const std::set<std::string> names(listed.begin(), listed.end());
    for (const char *n : {"wp", "wp_prime", "zeta", "sigma", "sigma1", "sigma2", "sigma3", "zeta1", "zeta2",
                          "zeta3", "delta1", "delta2", "delta3", "delta12", "delta23", "delta31", "sn", "cn", "dn",
                          "E", "Z", "Pi"})
        CHECK_MESSAGE(names.count(n) == 1, n);
    for (const auto &n : listed) {
        const Run e = cli({"eval", "--fn", n, "--u", "0.21,0.13"});
        CHECK_MESSAGE(e.code == 0, n);
    }
}
