#include <azeta/errors.hpp>
#include <azeta/zeta_diff.hpp>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>

namespace azeta
{

namespace
{

constexpr double pi = std::numbers::pi;

std::optional<EvalResult> first_pole(const Lattice &lat, cx u, std::initializer_list<cx> offsets)
{
    for (cx o : offsets) {
        if (auto p = pole_check(lat, u, o)) {
            return p;
        }
    }
    return std::nullopt;
}

bool near_translate(const Lattice &lat, cx u, cx offset)
{
    return lat.lattice_distance(u - offset) < pole_radius_factor * lat.min_period();
}

std::size_t theta_slot(HalfPeriod h)
{
    return static_cast<std::size_t>(h);
}

cx nullwert(const Lattice &lat, HalfPeriod h)
{
    const auto &n = lat.constants().nullwerte;
    switch (h) {
        case HalfPeriod::one:
            return n.theta1;
        case HalfPeriod::two:
            return n.theta2;
        default:
            return n.theta3;
    }
}

void check_distinct(HalfPeriod h, HalfPeriod k)
{
    if (h == k) {
        throw identical_indices("Delta_{lambda,mu} needs lambda != mu");
    }
}

// Sigma form: sigma(w_l - w_m) / (sigma(w_l) sigma(w_m)) * sigma(u - w_n) sigma(u) / (sigma(u + w_l) sigma(u + w_m))
cx delta2_sigma(const Lattice &lat, HalfPeriod h, HalfPeriod k, cx u, const SeriesConfig &cfg)
{
    const HalfPeriod n = third(h, k);
    const cx wl = lat.omega(h);
    const cx wm = lat.omega(k);
    const cx wn = lat.omega(n);
    const cx c = sigma(lat, wl - wm, cfg) / (sigma(lat, wl, cfg) * sigma(lat, wm, cfg));
    return c * sigma(lat, u - wn, cfg) * sigma(lat, u, cfg) / (sigma(lat, u + wl, cfg) * sigma(lat, u + wm, cfg));
}

} // namespace

std::string_view to_string(DeltaRoute r)
{
    switch (r) {
        case DeltaRoute::zeta_diff:
            return "zeta_diff";
        case DeltaRoute::wp_quotient:
            return "wp_quotient";
        case DeltaRoute::sigma_quotient:
            return "sigma_quotient";
        default:
            return "theta_quotient";
    }
}

EvalResult delta(const Lattice &lat, HalfPeriod h, cx u, DeltaRoute route, const SeriesConfig &cfg)
{
    if (auto p = first_pole(lat, u, {0.0, lat.omega(h)})) {
        return *p;
    }
    const auto [m, n] = complement(h);
    switch (route) {
        case DeltaRoute::zeta_diff: {
            const auto z = zeta_w(lat, u, cfg);
            const auto zl = zeta_aux(lat, h, u, ZetaRoute::shift, cfg);
            return EvalResult::ok(zl.value - z.value);
        }
        case DeltaRoute::wp_quotient: {
            const auto c = detail::make_cell(lat, u, cfg);
            const cx r1 = c.ratio(HalfPeriod::one);
            const cx p = lat.constants().e[0] + r1 * r1;
            const cx dp = -2.0 * r1 * c.ratio(HalfPeriod::two) * c.ratio(HalfPeriod::three);
            return EvalResult::ok(0.5 * dp / (p - lat.constants().e_of(h)));
        }
        case DeltaRoute::sigma_quotient: {
            const auto c = detail::make_cell(lat, u, cfg);
            return EvalResult::ok(-c.ratio(m) * c.ratio(n) / c.ratio(h));
        }
        default: {
            // elliptic, so the reduced argument suffices
            const auto c = detail::make_cell(lat, u, cfg);
            const auto &t = c.th.value;
            const cx t0 = nullwert(lat, h);
            return EvalResult::ok(-(pi * t0 * t0 / (2.0 * lat.omega1())) * t[theta_slot(m)] * t[theta_slot(n)]
                                  / (t[theta_slot(h)] * t[0]));
        }
    }
}

EvalResult delta_prime(const Lattice &lat, HalfPeriod h, cx u, const SeriesConfig &cfg)
{
    if (auto p = first_pole(lat, u, {0.0, lat.omega(h)})) {
        return *p;
    }
    const auto [m, n] = complement(h);
    const auto &k = lat.constants();
    const cx r = detail::make_cell(lat, u, cfg).ratio(h);
    const cx d = r * r; // wp - e_lambda
    return EvalResult::ok((d * d - k.e_diff(h, m) * k.e_diff(h, n)) / d);
}

EvalResult delta2(const Lattice &lat, HalfPeriod h, HalfPeriod k, cx u, DeltaRoute route, const SeriesConfig &cfg)
{
    check_distinct(h, k);
    if (auto p = first_pole(lat, u, {lat.omega(h), lat.omega(k)})) {
        return *p;
    }
    const HalfPeriod n = third(h, k);
    const auto &c = lat.constants();
    switch (route) {
        case DeltaRoute::zeta_diff: {
            const auto a = zeta_aux(lat, h, u, ZetaRoute::theta, cfg);
            const auto b = zeta_aux(lat, k, u, ZetaRoute::theta, cfg);
            return EvalResult::ok(a.value - b.value);
        }
        case DeltaRoute::wp_quotient: {
            // wp' and wp - e_nu both vanish on the zero loci
            if (near_translate(lat, u, 0.0) || near_translate(lat, u, lat.omega(n))) {
                return EvalResult::ok(delta2_sigma(lat, h, k, u, cfg));
            }
            // wp through the nu-route, so wp - e_nu carries no cancellation
            const auto cell = detail::make_cell(lat, u, cfg);
            const cx rn = cell.ratio(n);
            const cx dp = -2.0 * cell.ratio(HalfPeriod::one) * cell.ratio(HalfPeriod::two) * cell.ratio(HalfPeriod::three);
            return EvalResult::ok(2.0 * c.e_diff(h, k) * rn * rn / dp);
        }
        case DeltaRoute::sigma_quotient:
            return EvalResult::ok(delta2_sigma(lat, h, k, u, cfg));
        default:
            return Delta2ThetaQuotient(lat, cfg)(h, k, u);
    }
}

EvalResult delta2_prime(const Lattice &lat, HalfPeriod h, HalfPeriod k, cx u, const SeriesConfig &cfg)
{
    check_distinct(h, k);
    if (auto p = first_pole(lat, u, {lat.omega(h), lat.omega(k)})) {
        return *p;
    }
    const auto &c = lat.constants();
    const auto cell = detail::make_cell(lat, u, cfg);
    // -(e_h - e_k)((e_h - e_n) / (wp - e_h) + (e_k - e_n) / (wp - e_k) + 1), with
    // wp - e_x = (sigma_x / sigma)^2 so that no difference of nearby values is formed
    const HalfPeriod n = third(h, k);
    const cx rl = cell.ratio(h);
    const cx rm = cell.ratio(k);
    return EvalResult::ok(-c.e_diff(h, k) * (c.e_diff(h, n) / (rl * rl) + c.e_diff(k, n) / (rm * rm) + 1.0));
}

Delta2ThetaQuotient::Delta2ThetaQuotient(const Lattice &lat, const SeriesConfig &cfg) : m_lat(&lat), m_cfg(cfg)
{
    const cx probe = 0.37 * 2.0 * lat.omega1() + 0.23 * 2.0 * lat.omega3();
    for (HalfPeriod n : all_half_periods) {
        const auto [h, k] = complement(n);
        const cx ref = zeta_aux(lat, h, probe, ZetaRoute::theta, cfg).value
                       - zeta_aux(lat, k, probe, ZetaRoute::theta, cfg).value;
        m_sign[slot(n)] = (std::real(ref / raw(h, k, probe)) >= 0.0) ? 1 : -1;
    }
}

int Delta2ThetaQuotient::sign(HalfPeriod h, HalfPeriod k) const
{
    check_distinct(h, k);
    // the formula is symmetric in (lambda, mu) apart from eps
    const int s = m_sign[slot(third(h, k))];
    return (h < k) ? s : -s;
}

cx Delta2ThetaQuotient::raw(HalfPeriod h, HalfPeriod k, cx u) const
{
    const HalfPeriod n = third(h, k);
    const auto c = detail::make_cell(*m_lat, u, m_cfg);
    const auto &t = c.th.value;
    const cx tn = nullwert(*m_lat, n);
    return (pi / (2.0 * m_lat->omega1())) * tn * tn * t[theta_slot(n)] * t[0] / (t[theta_slot(h)] * t[theta_slot(k)]);
}

EvalResult Delta2ThetaQuotient::operator()(HalfPeriod h, HalfPeriod k, cx u) const
{
    check_distinct(h, k);
    if (auto p = first_pole(*m_lat, u, {m_lat->omega(h), m_lat->omega(k)})) {
        return *p;
    }
    const HalfPeriod lo = std::min(h, k);
    const HalfPeriod hi = std::max(h, k);
    return EvalResult::ok(static_cast<double>(sign(h, k)) * raw(lo, hi, u));
}

DeltaConstants constants_from_deltas(const Lattice &lat, cx u, const SeriesConfig &cfg)
{
    if (first_pole(lat, u, {0.0, lat.omega1(), lat.omega2(), lat.omega3()})) {
        throw pole_proximity("constants_from_deltas needs u away from 0 and the half-periods");
    }
    std::array<cx, 3> d{};
    for (HalfPeriod h : all_half_periods) {
        d[slot(h)] = delta(lat, h, u, DeltaRoute::sigma_quotient, cfg).value;
    }
    // Delta_{i,j} = Delta_i - Delta_j
    auto dd = [&](int i, int j) { return d[static_cast<std::size_t>(i - 1)] - d[static_cast<std::size_t>(j - 1)]; };
    auto D = [&](int i) { return d[static_cast<std::size_t>(i - 1)]; };

    DeltaConstants out;
    out.e[0] = (dd(1, 2) * D(3) + dd(1, 3) * D(2)) / 3.0;
    out.e[1] = (dd(2, 1) * D(3) + dd(2, 3) * D(1)) / 3.0;
    out.e[2] = (dd(3, 1) * D(2) + dd(3, 2) * D(1)) / 3.0;
    const cx a = dd(3, 2) * D(1);
    const cx b = dd(1, 3) * D(2);
    const cx c = dd(1, 2) * D(3);
    out.g2 = (2.0 / 3.0) * (a * a + b * b + c * c);
    out.g3 = 4.0 * out.e[0] * out.e[1] * out.e[2];
    const cx p = D(1) * D(2) * D(3) * dd(1, 2) * dd(2, 3) * dd(3, 1);
    out.disc = 16.0 * p * p;
    return out;
}

} // namespace azeta
