// Acceptance run: one PASS/FAIL line per criterion over the five reference
// lattices. Exit status is nonzero when any criterion fails.
#include "cli.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace azeta;

namespace
{

// tolerances and sizes
constexpr double cross_route_tol = 1e-10;
constexpr double partial_fraction_tol = 1e-5;
constexpr double cross_route_seconds = 10.0;
constexpr double suite_seconds = 60.0;
constexpr std::size_t suite_samples = 100;
constexpr double constants_tol = 1e-9;
constexpr int constants_points = 20;
constexpr int eisenstein_radius = 200;
constexpr double eisenstein_tol = 1e-6;
constexpr double fd_tol = 1e-6;
constexpr double fd_step = 1e-5;
constexpr int fd_points = 50;
// finite differences are sampled further from the poles than the identities;
// see the README for the truncation estimate behind this radius
constexpr double fd_guard = 0.2;
constexpr double jacobi_tol = 1e-9;
constexpr double pythagorean_tol = 1e-11;
constexpr double zk_tol = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char *title, bool pass, const std::string &detail)
{
    std::printf("criterion %d %s: %s  %s\n", id, title, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

std::string fmt(const char *f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::vector<Lattice> lattices()
{
    std::vector<Lattice> v;
    for (const auto &r : oracle::reference_lattices())
        v.push_back(oracle::build(r.tau));
    return v;
}

std::vector<cx> half_periods(const Lattice &lat)
{
    return {0.0, lat.omega1(), lat.omega2(), lat.omega3()};
}

void cross_route()
{
    const auto t0 = Clock::now();
    double worst = 0.0, worst_pf = 0.0;
    for (const Lattice &lat : lattices()) {
        for (HalfPeriod h : all_half_periods) {
            oracle::Sampler s(lat, 100 + static_cast<int>(h));
            for (int i = 0; i < 100; ++i) {
                const cx u = s.next({lat.omega(h)});
                const cx a = zeta_aux(lat, h, u, ZetaRoute::shift).value;
                const cx b = zeta_aux(lat, h, u, ZetaRoute::theta).value;
                const cx c = zeta_aux(lat, h, u, ZetaRoute::qseries).value;
                const cx d = zeta_aux(lat, h, u, ZetaRoute::partial_fraction).value;
                worst = std::max({worst, oracle::rel(a, b), oracle::rel(a, c), oracle::rel(b, c)});
                worst_pf = std::max({worst_pf, oracle::rel(d, a), oracle::rel(d, b), oracle::rel(d, c)});
            }
        }
    }
    const double t = seconds_since(t0);
    const bool pass = worst <= cross_route_tol && worst_pf <= partial_fraction_tol && t < cross_route_seconds;
    report(1, "auxiliary zeta routes", pass,
           fmt("max pairwise %.2e", worst) + fmt(", partial fraction %.2e", worst_pf) + fmt(", %.1f s", t));
}

void full_suite()
{
    const auto t0 = Clock::now();
    std::size_t count = default_suite().size();
    int failed = 0;
    std::string names;
    for (std::size_t i = 0; i < lattices().size(); ++i) {
        const Lattice lat = lattices()[i];
        for (const auto &r : run_suite(lat, default_suite(), suite_samples, 0)) {
            if (!r.passed) {
                ++failed;
                names += " " + oracle::reference_lattices()[i].name + "/" + r.name;
            }
        }
    }
    const double t = seconds_since(t0);
    const bool pass = failed == 0 && count >= 30 && t < suite_seconds;
    report(2, "identity suite", pass,
           std::to_string(count) + " identities, " + std::to_string(failed) + " failing" + names + fmt(", %.1f s", t));
}

void recovered_constants()
{
    double worst = 0.0;
    for (const Lattice &lat : lattices()) {
        const auto &c = lat.constants();
        // g2 vanishes on the rhombic lattice and e2 on the square one, so
        // each quantity is compared on the scale of the root spread
        const double S = std::abs(c.e[0] - c.e[2]);
        oracle::Sampler s(lat, 300);
        for (int i = 0; i < constants_points; ++i) {
            const auto d = constants_from_deltas(lat, s.next(half_periods(lat)));
            for (int k = 0; k < 3; ++k)
                worst = std::max(worst, std::abs(d.e[k] - c.e[k]) / S);
            worst = std::max(worst, std::abs(d.g2 - c.g2) / (S * S));
            worst = std::max(worst, std::abs(d.g3 - c.g3) / (S * S * S));
            worst = std::max(worst, oracle::rel(d.disc, c.disc));
        }
    }
    report(3, "constants from differences", worst <= constants_tol, fmt("max scaled error %.2e", worst));
}

void eisenstein()
{
    double worst = 0.0, raw = 0.0;
    for (const Lattice &lat : lattices()) {
        const auto &c = lat.constants();
        const double S = std::abs(c.e[0] - c.e[2]);
        const auto [g2, g3] = eisenstein_invariants(lat, eisenstein_radius, ShellTail::continuum);
        worst = std::max({worst, std::abs(g2 - c.g2) / (S * S), std::abs(g3 - c.g3) / (S * S * S)});
        const auto [r2, r3] = eisenstein_invariants(lat, eisenstein_radius, ShellTail::none);
        raw = std::max({raw, std::abs(r2 - c.g2) / (S * S), std::abs(r3 - c.g3) / (S * S * S)});
    }
    report(4, "Eisenstein sums", worst <= eisenstein_tol,
           fmt("max scaled error %.2e", worst) + fmt(" (without shell tail %.2e)", raw));
}

double derivative_errors(double guard)
{
    double worst = 0.0;
    const std::array<std::pair<HalfPeriod, HalfPeriod>, 3> pairs{
        {{HalfPeriod::one, HalfPeriod::two}, {HalfPeriod::one, HalfPeriod::three}, {HalfPeriod::two, HalfPeriod::three}}};
    for (const Lattice &lat : lattices()) {
        oracle::Sampler s(lat, 500, guard);
        for (int i = 0; i < fd_points; ++i) {
            const cx u = s.next(half_periods(lat));
            for (HalfPeriod h : all_half_periods) {
                const auto f = [&](cx x) { return delta(lat, h, x).value; };
                worst = std::max(worst, std::abs(oracle::central_difference(f, u, fd_step) -
                                                 delta_prime(lat, h, u).value));
            }
            for (auto [h, k] : pairs) {
                const auto f = [&](cx x) { return delta2(lat, h, k, x).value; };
                worst = std::max(worst, std::abs(oracle::central_difference(f, u, fd_step) -
                                                 delta2_prime(lat, h, k, u).value));
            }
        }
    }
    return worst;
}

void derivatives()
{
    const double worst = derivative_errors(fd_guard);
    const double near = derivative_errors(pole_guard_factor);
    report(5, "difference derivatives", worst <= fd_tol,
           fmt("max abs error %.2e", worst) + fmt(" (at the identity guard radius %.2e)", near));
}

void jacobi_layer()
{
    double transform = 0.0, squared = 0.0, pyth = 0.0;
    std::string pyth_detail;
    const auto lats = lattices();
    for (std::size_t li = 0; li < lats.size(); ++li) {
        const JacobiParams p = jacobi_params(lats[li]);
        oracle::Sampler s(p.lat, 600);
        double lat_pyth = 0.0;
        for (int i = 0; i < 100; ++i) {
            const cx u = s.next(half_periods(p.lat));
            for (double r : check_thm211_squared(p, u))
                squared = std::max(squared, r);
            if (p.lat.is_rectangular()) {
                for (double r : check_thm211(p, u))
                    transform = std::max(transform, r);
                for (double r : check_cor212(p, u))
                    transform = std::max(transform, r);
            }
            const auto j = sn_cn_dn(p, p.scale * u);
            lat_pyth = std::max({lat_pyth, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0),
                                 std::abs(j.dn * j.dn + p.ksq * j.sn * j.sn - 1.0)});
        }
        pyth = std::max(pyth, lat_pyth);
        pyth_detail += " " + oracle::reference_lattices()[li].name + fmt(" %.1e", lat_pyth);
    }
    const bool pass = transform <= jacobi_tol && squared <= jacobi_tol && pyth <= pythagorean_tol;
    report(6, "Jacobi layer", pass,
           fmt("transformations %.2e", transform) + fmt(", squared %.2e", squared) + ", sn/cn/dn relations" +
               pyth_detail);
}

void integrals()
{
    double fd = 0.0, zk = 0.0;
    bool pi_zero = true;
    for (const Lattice &lat : lattices()) {
        const JacobiParams p = jacobi_params(lat);
        oracle::Sampler s(lat, 700, fd_guard);
        for (int i = 0; i < fd_points; ++i) {
            const cx u = s.next({lat.omega3()});
            const auto f = [&](cx x) { return jacobi_E_Z_Pi(p, x, 0.1).E; };
            const cx dn = sn_cn_dn(p, p.scale * u).dn;
            fd = std::max(fd, std::abs(oracle::central_difference(f, u, fd_step) - p.scale * dn * dn));
        }
        if (lat.is_rectangular())
            zk = std::max(zk, std::abs(jacobi_E_Z_Pi(p, lat.omega1(), 0.1).Z));
        for (cx a : {cx{0.1, 0.05}, cx{0.3, -0.2}, cx{-0.17, 0.4}})
            pi_zero = pi_zero && jacobi_E_Z_Pi(p, 0.0, a).Pi == cx{0.0, 0.0};
    }
    report(7, "integrals E, Z, Pi", fd <= fd_tol && zk <= zk_tol && pi_zero,
           fmt("E derivative %.2e", fd) + fmt(", Z(K) %.2e", zk) + (pi_zero ? ", Pi(0, a) = 0" : ", Pi(0, a) != 0"));
}

void determinism()
{
    const std::vector<std::string> args{"verify", "--n", "100", "--seed", "12345"};
    std::ostringstream a, b, err;
    const int ca = cli::run_cli(args, a, err);
    const int cb = cli::run_cli(args, b, err);
    const bool same = a.str() == b.str() && ca == cb && !a.str().empty();
    report(8, "deterministic verify report", same,
           std::to_string(a.str().size()) + " bytes, exit " + std::to_string(ca) + (same ? ", identical" : ", differs"));
}

} // namespace

int main()
{
    const std::vector<std::function<void()>> criteria{cross_route, full_suite, recovered_constants, eisenstein,
                                                      derivatives, jacobi_layer, integrals,   determinism};
    for (const auto &c : criteria) {
        try {
            c();
        } catch (const std::exception &e) {
            std::printf("criterion threw: %s\n", e.what());
            ++failures;
        }
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
