#include <azeta/errors.hpp>
#include <azeta/lattice.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace azeta
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr cx I{0.0, 1.0};

nlohmann::json pair_of(cx z)
{
    return nlohmann::json::array({z.real(), z.imag()});
}

// Hurwitz zeta SUM_{r >= N} r^-s by Euler-Maclaurin; N ~ 200 makes the
// dropped terms ~N^-(s+5).
double hurwitz_tail(double s, double N)
{
    return std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s) + s * std::pow(N, -s - 1.0) / 12.0
           - s * (s + 1.0) * (s + 2.0) * std::pow(N, -s - 3.0) / 720.0;
}

cx boundary_integral(cx a, cx b, int p)
{
    // integral over t in [-1, 1] of (c + d t)^-p
    auto side = [p](cx c, cx d) {
        const double e = 1.0 - p;
        return (std::pow(c + d, e) - std::pow(c - d, e)) / (e * d);
    };
    return 2.0 * side(a, b) + 2.0 * side(b, a);
}

} // namespace

cx Lattice::omega(HalfPeriod h) const
{
    switch (h) {
        case HalfPeriod::one:
            return m_omega1;
        case HalfPeriod::two:
            return m_omega2;
        default:
            return m_omega3;
    }
}

double Lattice::min_period() const
{
    return std::min(std::abs(2.0 * m_omega1), std::abs(2.0 * m_omega3));
}

Reduced Lattice::reduce(cx u) const
{
    const cx v = u / (2.0 * m_omega1);
    const double y = v.imag() / m_tau.imag();
    const double x = v.real() - y * m_tau.real();
    Reduced r;
    r.m = std::lround(y);
    r.n = std::lround(x);
    r.u = u - 2.0 * static_cast<double>(r.n) * m_omega1 - 2.0 * static_cast<double>(r.m) * m_omega3;
    if (r.n == 0 && r.m == 0) {
        r.u = u;
    }
    return r;
}

cx Lattice::nearest_lattice_point(cx z) const
{
    const auto r = reduce(z);
    cx best = z - r.u;
    double best_d = std::abs(r.u);
    for (int dn = -1; dn <= 1; ++dn) {
        for (int dm = -1; dm <= 1; ++dm) {
            const cx p = 2.0 * static_cast<double>(dn) * m_omega1 + 2.0 * static_cast<double>(dm) * m_omega3;
            const double d = std::abs(r.u - p);
            if (d < best_d) {
                best_d = d;
                best = z - r.u + p;
            }
        }
    }
    return best;
}

double Lattice::lattice_distance(cx z) const
{
    const auto r = reduce(z);
    double best = std::numeric_limits<double>::infinity();
    for (int dn = -1; dn <= 1; ++dn) {
        for (int dm = -1; dm <= 1; ++dm) {
            const cx p = 2.0 * static_cast<double>(dn) * m_omega1 + 2.0 * static_cast<double>(dm) * m_omega3;
            best = std::min(best, std::abs(r.u - p));
        }
    }
    return best;
}

bool Lattice::is_rectangular(double tol) const
{
    return std::abs(m_tau.real()) <= tol * std::abs(m_tau);
}

Lattice build_lattice(cx omega1, cx omega3, const SeriesConfig &cfg, double q_max)
{
    cfg.validate();
    if (omega1 == 0.0 || omega3 == 0.0) {
        throw zero_period("half-periods must be non-zero");
    }
    const cx tau = omega3 / omega1;
    if (!(tau.imag() > 0.0)) {
        throw invalid_period_ratio("Im(omega3 / omega1) must be positive");
    }
    const cx q = std::exp(I * pi * tau);
    if (std::abs(q) > q_max) {
        throw convergence_policy("|q| = " + std::to_string(std::abs(q)) + " exceeds q_max");
    }
    Lattice lat;
    lat.m_omega1 = omega1;
    lat.m_omega3 = omega3;
    lat.m_omega2 = -(omega1 + omega3);
    lat.m_tau = tau;
    lat.m_q = q;
    lat.m_cfg = cfg;
    lat.m_constants = std::make_shared<const LatticeConstants>(constants(lat, cfg));
    return lat;
}

cx LatticeConstants::e_diff(HalfPeriod h, HalfPeriod k) const
{
    if (h == k)
        return 0.0;
    if (h > k)
        return -e_diff(k, h);
    // (1,2) -> 0, (1,3) -> 1, (2,3) -> 2
    return e_diffs[static_cast<std::size_t>(static_cast<int>(h) + static_cast<int>(k) - 3)];
}

LatticeConstants constants(const Lattice &lat, const SeriesConfig &cfg)
{
    LatticeConstants c;
    c.nullwerte = theta_nullwerte(lat.tau(), cfg);
    const auto &nw = c.nullwerte;
    const cx w1 = lat.omega1();
    const cx scale = (pi / (2.0 * w1)) * (pi / (2.0 * w1));

    // e-differences from the nullwerte; root-free, so no branch choice.
    const cx d12 = scale * std::pow(nw.theta3, 4);
    const cx d13 = scale * std::pow(nw.theta2, 4);
    const cx d23 = scale * std::pow(nw.theta1, 4);

    c.e_diffs = {d12, d13, d23};
    c.e[0] = (d12 + d13) / 3.0;
    c.e[1] = (d23 - d12) / 3.0;
    c.e[2] = -(d13 + d23) / 3.0;

    c.eta[0] = -nw.d3theta / (12.0 * w1 * nw.dtheta);
    // Legendre: eta1 omega3 - eta3 omega1 = i pi / 2
    c.eta[2] = (c.eta[0] * lat.omega3() - I * pi / 2.0) / w1;
    c.eta[1] = -(c.eta[0] + c.eta[2]);

    c.g2 = 2.0 / 3.0 * (d12 * d12 + d13 * d13 + d23 * d23);
    c.g3 = 4.0 * c.e[0] * c.e[1] * c.e[2];
    c.disc = c.g2 * c.g2 * c.g2 - 27.0 * c.g3 * c.g3;
    c.ksq = d23 / d13;
    c.kpsq = d12 / d13;
    return c;
}

std::pair<cx, cx> eisenstein_invariants(const Lattice &lat, int shell_radius, ShellTail tail)
{
    if (shell_radius < 1) {
        throw invalid_argument("shell_radius must be at least 1");
    }
    const cx a = 2.0 * lat.omega1();
    const cx b = 2.0 * lat.omega3();
    cx s4 = 0.0;
    cx s6 = 0.0;
    for (int r = 1; r <= shell_radius; ++r) {
        cx shell4 = 0.0;
        cx shell6 = 0.0;
        auto add = [&](int n, int m) {
            const cx w = static_cast<double>(n) * a + static_cast<double>(m) * b;
            const cx w2 = 1.0 / (w * w);
            const cx w4 = w2 * w2;
            shell4 += w4;
            shell6 += w4 * w2;
        };
        for (int k = -r; k <= r; ++k) {
            add(r, k);
            add(-r, k);
        }
        for (int k = -r + 1; k <= r - 1; ++k) {
            add(k, r);
            add(k, -r);
        }
        s4 += shell4;
        s6 += shell6;
    }
    if (tail == ShellTail::continuum) {
        const double next = static_cast<double>(shell_radius) + 1.0;
        s4 += boundary_integral(a, b, 4) * hurwitz_tail(3.0, next);
        s6 += boundary_integral(a, b, 6) * hurwitz_tail(5.0, next);
    }
    return {60.0 * s4, 140.0 * s6};
}

nlohmann::json to_json(const Lattice &lat)
{
    const auto &c = lat.constants();
    nlohmann::json j;
    j["omega1"] = pair_of(lat.omega1());
    j["omega3"] = pair_of(lat.omega3());
    j["tau"] = pair_of(lat.tau());
    j["q"] = pair_of(lat.q());
    j["e"] = nlohmann::json::array({pair_of(c.e[0]), pair_of(c.e[1]), pair_of(c.e[2])});
    j["eta"] = nlohmann::json::array({pair_of(c.eta[0]), pair_of(c.eta[1]), pair_of(c.eta[2])});
    j["g2"] = pair_of(c.g2);
    j["g3"] = pair_of(c.g3);
    j["disc"] = pair_of(c.disc);
    j["ksq"] = pair_of(c.ksq);
    j["kpsq"] = pair_of(c.kpsq);
    return j;
}

} // namespace azeta
