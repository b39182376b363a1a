#include <azeta/errors.hpp>
#include <azeta/jacobi.hpp>

#include <cmath>
#include <numbers>

namespace azeta
{

namespace
{

constexpr double pi = std::numbers::pi;

void require_regular(const Lattice &lat, cx u, const char *what)
{
    for (cx o : {cx{0.0}, lat.omega1(), lat.omega2(), lat.omega3()}) {
        if (pole_check(lat, u, o)) {
            throw pole_proximity(std::string(what) + " needs u away from 0 and the half-periods");
        }
    }
}

struct Deltas {
    std::array<cx, 3> d;  // Delta_lambda
    std::array<cx, 3> dd; // Delta_{2,3}, Delta_{1,3}, Delta_{1,2}
    std::array<cx, 3> e;
    std::array<cx, 3> r; // sigma_lambda / sigma

    cx D(int i) const { return d[static_cast<std::size_t>(i - 1)]; }
    cx E(int i) const { return e[static_cast<std::size_t>(i - 1)]; }
    cx R(int i) const { return r[static_cast<std::size_t>(i - 1)]; }
    // Delta_{i,j} for i != j
    cx DD(int i, int j) const
    {
        const int n = 6 - i - j;
        const cx v = dd[static_cast<std::size_t>(n - 1)];
        return (i < j) ? v : -v;
    }
};

Deltas deltas_at(const Lattice &lat, cx u, const SeriesConfig &cfg)
{
    Deltas out;
    const auto cell = detail::make_cell(lat, u, cfg);
    for (HalfPeriod h : all_half_periods) {
        out.d[slot(h)] = delta(lat, h, u, DeltaRoute::sigma_quotient, cfg).value;
        const auto [a, b] = complement(h);
        out.dd[slot(h)] = delta2(lat, a, b, u, DeltaRoute::wp_quotient, cfg).value;
        out.e[slot(h)] = lat.constants().e_of(h);
        out.r[slot(h)] = cell.ratio(h);
    }
    return out;
}

} // namespace

cx aligned_sqrt(cx z, cx ref)
{
    const cx w = std::sqrt(z);
    return (std::abs(w - ref) <= std::abs(w + ref)) ? w : -w;
}

std::array<TransformRow, 6> transformation_rows(const JacobiParams &p, cx u, const SeriesConfig &cfg)
{
    require_regular(p.lat, u, "Jacobi transformation check");
    const auto t = deltas_at(p.lat, u, cfg);
    const cx s = p.scale;
    const cx x = s * u;
    const auto f = sn_cn_dn(p, x, cfg);
    const auto g = sn_cn_dn(p, p.K - x, cfg);
    return {{
        {t.D(1) * t.D(2), (t.E(1) - t.E(3)) * (t.E(2) - t.E(3)) / (t.DD(1, 3) * t.DD(2, 3)), t.R(3), s / f.sn},
        {t.D(1) * t.D(3), (t.E(1) - t.E(2)) * (t.E(3) - t.E(2)) / (t.DD(1, 2) * t.DD(3, 2)), t.R(2), s * f.dn / f.sn},
        {t.D(2) * t.D(3), (t.E(2) - t.E(1)) * (t.E(3) - t.E(1)) / (t.DD(2, 1) * t.DD(3, 1)), t.R(1), s * f.cn / f.sn},
        {t.D(2) / t.D(1), (t.E(1) - t.E(3)) * t.DD(2, 3) / ((t.E(2) - t.E(3)) * t.DD(1, 3)), t.R(1) / t.R(2), g.sn},
        {t.D(3) / t.D(2), (t.E(2) - t.E(1)) * t.DD(3, 1) / ((t.E(3) - t.E(1)) * t.DD(2, 1)), t.R(2) / t.R(3), f.dn},
        {t.D(1) / t.D(3), (t.E(3) - t.E(2)) * t.DD(1, 2) / ((t.E(1) - t.E(2)) * t.DD(3, 2)), t.R(3) / t.R(1),
         1.0 / f.cn},
    }};
}

std::pair<cx, cx> complete_elliptic_integrals(cx ksq, double tol, int max_iter)
{
    const cx kpsq = 1.0 - ksq;
    if (kpsq == 0.0) {
        throw invalid_argument("complete elliptic integrals diverge at k^2 = 1");
    }
    cx a = 1.0;
    cx b = std::sqrt(kpsq);
    double weight = 0.5; // 2^(n-1)
    cx sum = weight * ksq;
    for (int n = 1; n <= max_iter; ++n) {
        const cx c = 0.5 * (a - b);
        const cx a1 = 0.5 * (a + b);
        cx b1 = std::sqrt(a * b);
        if (std::abs(a1 - b1) > std::abs(a1 + b1)) {
            b1 = -b1;
        }
        weight *= 2.0;
        sum += weight * c * c;
        a = a1;
        b = b1;
        if (std::abs(c) <= tol * std::abs(a)) {
            const cx K = pi / (2.0 * a);
            return {K, K * (1.0 - sum)};
        }
    }
    throw series_divergence("AGM iteration did not converge");
}

JacobiParams jacobi_params(const Lattice &lat, const SeriesConfig &cfg)
{
    (void)cfg;
    const auto &c = lat.constants();
    const cx d13 = c.e[0] - c.e[2];
    const double scale = std::max(std::pow(std::abs(c.g2), 3.0), 27.0 * std::norm(c.g3));
    if (d13 == 0.0 || std::abs(c.disc) <= 1e-12 * scale) {
        throw degenerate_lattice("discriminant vanishes; no Jacobi modulus");
    }
    const auto [K, E] = complete_elliptic_integrals(c.ksq);
    return JacobiParams{c.ksq, std::sqrt(c.ksq), std::sqrt(1.0 - c.ksq), K, E, std::sqrt(d13), lat};
}

SnCnDn sn_cn_dn(const JacobiParams &p, cx x, const SeriesConfig &cfg)
{
    // x = s u with either root s of e1 - e3 gives the same functions of x. The
    // theta form takes s = pi theta_2^2 / (2 omega1), for which
    //
    //   sn = theta_2 theta(v) / (theta_1 theta_3(v)),  cn = theta_3 theta_1(v) / (theta_1 theta_3(v)),
    //   dn = theta_3 theta_2(v) / (theta_2 theta_3(v)).
    //
    // Near the poles sn^2 + cn^2 = 1 cancels the leading digits of large
    // terms, so the quotients are formed in long double.
    const Lattice &lat = p.lat;
    const auto &nw = lat.constants().nullwerte;
    const cx s = pi * nw.theta2 * nw.theta2 / (2.0 * lat.omega1());
    const cx u = x / s;
    if (pole_check(lat, u, lat.omega3())) {
        throw pole_proximity("sn, cn, dn have poles at scale * (omega3 + Omega)");
    }
    const auto red = lat.reduce(u);
    const lcx tau{lat.tau()};
    const lcx v = lcx{red.u} / (2.0L * lcx{lat.omega1()});
    const auto t = theta_values_extended(v, tau, cfg);
    const auto t0 = theta_values_extended(0.0L, tau, cfg);
    const long double s1 = detail::ratio_sign(HalfPeriod::one, red.n, red.m);
    const long double s2 = detail::ratio_sign(HalfPeriod::two, red.n, red.m);
    const long double s3 = detail::ratio_sign(HalfPeriod::three, red.n, red.m);
    const lcx den = s3 * t0[1] * t[3];
    return {cx(t0[2] * t[0] / den), cx(s1 * t0[3] * t[1] / den), cx(s2 * t0[3] * t0[1] * t[2] / (t0[2] * den))};
}

std::array<double, 6> check_thm211(const JacobiParams &p, cx u, const SeriesConfig &cfg)
{
    std::array<double, 6> out{};
    const auto rows = transformation_rows(p, u, cfg);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &r = rows[i];
        out[i] = std::max(std::abs(aligned_sqrt(r.lhs, r.ref) - r.rhs), std::abs(aligned_sqrt(r.mid, r.ref) - r.rhs));
    }
    return out;
}

std::array<double, 6> check_thm211_squared(const JacobiParams &p, cx u, const SeriesConfig &cfg)
{
    std::array<double, 6> out{};
    const auto rows = transformation_rows(p, u, cfg);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &r = rows[i];
        const cx sq = r.rhs * r.rhs;
        out[i] = std::max(std::abs(r.lhs - sq), std::abs(r.mid - sq));
    }
    return out;
}

std::array<double, 3> check_cor212(const JacobiParams &p, cx u, const SeriesConfig &cfg)
{
    require_regular(p.lat, u, "Jacobi transformation check");
    const auto t = deltas_at(p.lat, u, cfg);
    const cx s = p.scale;
    const cx x = s * u;
    const auto f = sn_cn_dn(p, x, cfg);
    const auto g = sn_cn_dn(p, p.K - x, cfg);
    const std::array<TransformRow, 3> rows{{
        {t.D(1), (t.E(2) - t.E(3)) / t.DD(2, 3), 0.0, -s * f.dn / (f.sn * f.cn)},
        {t.D(2), (t.E(1) - t.E(3)) / t.DD(1, 3), 0.0, -s * g.sn / f.sn},
        {t.D(3), (t.E(1) - t.E(2)) / t.DD(1, 2), 0.0, -s * f.cn * f.dn / f.sn},
    }};
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out[i] = std::max(std::abs(rows[i].lhs - rows[i].rhs), std::abs(rows[i].lhs - rows[i].mid));
    }
    return out;
}

EZPi jacobi_E_Z_Pi(const JacobiParams &p, cx u, cx a, const SeriesConfig &cfg)
{
    const Lattice &lat = p.lat;
    const auto &c = lat.constants();
    const auto z3 = zeta_aux(lat, HalfPeriod::three, u, ZetaRoute::theta, cfg);
    if (!z3.finite()) {
        throw pole_proximity("E and Z have poles at omega3 + Omega");
    }
    EZPi out;
    out.E = (z3.value + c.e[0] * u) / p.scale;
    out.Z = (z3.value - c.eta[0] * u / lat.omega1()) / p.scale;
    if (u == 0.0) {
        out.Pi = 0.0;
        return out;
    }
    const auto za = zeta_aux(lat, HalfPeriod::three, a, ZetaRoute::theta, cfg);
    if (!za.finite()) {
        throw pole_proximity("Pi needs a away from omega3 + Omega");
    }

    auto quotient = [&](double t) {
        const cx num = sigma_aux(lat, HalfPeriod::three, t * u - a, cfg);
        const cx den = sigma_aux(lat, HalfPeriod::three, t * u + a, cfg);
        return num / den;
    };
    const cx end = quotient(1.0);
    if (!std::isfinite(std::abs(end)) || end == 0.0) {
        throw branch_ambiguity("sigma_3(u - a) / sigma_3(u + a) is singular at the end point");
    }
    // Continued logarithm: 64 equal steps, each bisected until the quotient
    // turns by at most pi/4 across it.
    constexpr double max_step_turn = pi / 4.0;
    constexpr int max_depth = 40;
    auto segment = [&](auto &&self, double t0, cx q0, double t1, cx q1, int depth) -> cx {
        const cx step = std::log(q1 / q0);
        if (std::isfinite(std::abs(step)) && std::abs(step.imag()) <= max_step_turn) {
            return step;
        }
        const double tm = 0.5 * (t0 + t1);
        const cx qm = quotient(tm);
        if (depth >= max_depth || !std::isfinite(std::abs(qm)) || qm == 0.0) {
            throw branch_ambiguity("log of sigma_3(t u - a) / sigma_3(t u + a) cannot be continued along [0, u]");
        }
        return self(self, t0, q0, tm, qm, depth + 1) + self(self, tm, qm, t1, q1, depth + 1);
    };
    constexpr int base_steps = 64;
    cx log_sum = 0.0;
    cx prev = 1.0;
    for (int j = 1; j <= base_steps; ++j) {
        const double t0 = static_cast<double>(j - 1) / base_steps;
        const double t1 = static_cast<double>(j) / base_steps;
        const cx cur = (j == base_steps) ? end : quotient(t1);
        log_sum += segment(segment, t0, prev, t1, cur, 0);
        prev = cur;
    }
    out.Pi = 0.5 * log_sum + za.value * u;
    return out;
}

} // namespace azeta
