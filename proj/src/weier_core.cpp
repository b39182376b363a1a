#include <azeta/errors.hpp>
#include <azeta/weier_core.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace azeta
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr cx I{0.0, 1.0};
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double parity(long k)
{
    return (k % 2 == 0) ? 1.0 : -1.0;
}

cx theta_nullwert(const LatticeConstants &c, HalfPeriod h)
{
    switch (h) {
        case HalfPeriod::one:
            return c.nullwerte.theta1;
        case HalfPeriod::two:
            return c.nullwerte.theta2;
        default:
            return c.nullwerte.theta3;
    }
}

template <typename Term>
cx shell_sum(int radius, Term term)
{
    cx total = 0.0;
    for (int r = 1; r <= radius; ++r) {
        cx shell = 0.0;
        for (int k = -r; k <= r; ++k) {
            shell += term(r, k) + term(-r, k);
        }
        for (int k = -r + 1; k <= r - 1; ++k) {
            shell += term(k, r) + term(k, -r);
        }
        total += shell;
    }
    return total;
}

} // namespace

std::string_view to_string(Status s)
{
    switch (s) {
        case Status::finite:
            return "Finite";
        case Status::at_pole:
            return "AtPole";
        default:
            return "NearPole";
    }
}

std::optional<EvalResult> pole_check(const Lattice &lat, cx u, cx offset)
{
    const cx z = u - offset;
    const cx p = lat.nearest_lattice_point(z);
    const double d = std::abs(z - p);
    const double scale = lat.min_period();
    if (d < at_pole_factor * scale) {
        return EvalResult{cx{nan, nan}, Status::at_pole, p + offset};
    }
    if (d < pole_radius_factor * scale) {
        return EvalResult{cx{nan, nan}, Status::near_pole, p + offset};
    }
    return std::nullopt;
}

namespace detail
{

double ratio_sign(HalfPeriod h, long n, long m)
{
    switch (h) {
        case HalfPeriod::one:
            return parity(m);
        case HalfPeriod::two:
            return parity(n + m);
        default:
            return parity(n);
    }
}

Cell make_cell(const Lattice &lat, cx u, const SeriesConfig &cfg)
{
    Cell c;
    c.lat = &lat;
    c.red = lat.reduce(u);
    c.v = c.red.u / (2.0 * lat.omega1());
    c.th = theta_all(c.v, lat.tau(), cfg);
    return c;
}

cx Cell::aux_part(HalfPeriod h) const
{
    const auto i = static_cast<std::size_t>(h);
    return ratio_sign(h, red.n, red.m) * th.value[i] / theta_nullwert(lat->constants(), h);
}

cx Cell::plain_part() const
{
    return 2.0 * lat->omega1() * th.value[0] / lat->constants().nullwerte.dtheta;
}

cx Cell::ratio(HalfPeriod h) const
{
    return aux_part(h) / plain_part();
}

cx Cell::quasi_increment() const
{
    const auto &k = lat->constants();
    return 2.0 * static_cast<double>(red.n) * k.eta[0] + 2.0 * static_cast<double>(red.m) * k.eta[2];
}

cx Cell::zeta() const
{
    const cx w1 = lat->omega1();
    return lat->constants().eta[0] * red.u / w1 + th.d1[0] / (2.0 * w1 * th.value[0]) + quasi_increment();
}

cx Cell::zeta_aux(HalfPeriod h) const
{
    const cx w1 = lat->omega1();
    const auto i = static_cast<std::size_t>(h);
    return lat->constants().eta[0] * red.u / w1 + th.d1[i] / (2.0 * w1 * th.value[i]) + quasi_increment();
}

cx Cell::log_sigma_factor() const
{
    const long n = red.n;
    const long m = red.m;
    const cx shift = static_cast<double>(n) * lat->omega1() + static_cast<double>(m) * lat->omega3();
    const double sign_phase = ((n + m + n * m) % 2 == 0) ? 0.0 : pi;
    return I * sign_phase + quasi_increment() * (red.u + shift);
}

} // namespace detail

cx sigma(const Lattice &lat, cx u, const SeriesConfig &cfg)
{
    const auto red = lat.reduce(u);
    const cx w1 = lat.omega1();
    const auto &k = lat.constants();
    const cx th = theta_eval(ThetaIndex::plain, red.u / (2.0 * w1), lat.tau(), cfg);
    if (th == 0.0) {
        return 0.0;
    }
    const cx base = (2.0 * w1 / k.nullwerte.dtheta) * th;
    if (red.n == 0 && red.m == 0) {
        return base * std::exp(k.eta[0] * red.u * red.u / (2.0 * w1));
    }
    detail::Cell c;
    c.lat = &lat;
    c.red = red;
    return base * std::exp(k.eta[0] * red.u * red.u / (2.0 * w1) + c.log_sigma_factor());
}

cx sigma_aux(const Lattice &lat, HalfPeriod h, cx u, const SeriesConfig &cfg)
{
    const auto red = lat.reduce(u);
    const cx w1 = lat.omega1();
    const auto &k = lat.constants();
    const cx th = theta_eval(static_cast<ThetaIndex>(h), red.u / (2.0 * w1), lat.tau(), cfg);
    const cx base = th / theta_nullwert(k, h);
    detail::Cell c;
    c.lat = &lat;
    c.red = red;
    const cx extra = (red.n == 0 && red.m == 0) ? cx{0.0} : c.log_sigma_factor();
    return detail::ratio_sign(h, red.n, red.m) * base * std::exp(k.eta[0] * red.u * red.u / (2.0 * w1) + extra);
}

cx sigma_aux_shifted(const Lattice &lat, HalfPeriod h, cx u, SigmaShiftForm form, const SeriesConfig &cfg)
{
    const cx w = lat.omega(h);
    const cx eta = lat.constants().eta_of(h);
    if (form == SigmaShiftForm::plus) {
        return std::exp(-eta * u) * sigma(lat, w + u, cfg) / sigma(lat, w, cfg);
    }
    return std::exp(eta * u) * sigma(lat, w - u, cfg) / sigma(lat, w, cfg);
}

EvalResult sigma_ratio(const Lattice &lat, HalfPeriod h, cx u, const SeriesConfig &cfg)
{
    if (auto p = pole_check(lat, u)) {
        return *p;
    }
    return EvalResult::ok(detail::make_cell(lat, u, cfg).ratio(h));
}

EvalResult zeta_w(const Lattice &lat, cx u, const SeriesConfig &cfg)
{
    if (auto p = pole_check(lat, u)) {
        return *p;
    }
    return EvalResult::ok(detail::make_cell(lat, u, cfg).zeta());
}

EvalResult wp_via(const Lattice &lat, HalfPeriod h, cx u, const SeriesConfig &cfg)
{
    if (auto p = pole_check(lat, u)) {
        return *p;
    }
    const cx r = detail::make_cell(lat, u, cfg).ratio(h);
    return EvalResult::ok(lat.constants().e_of(h) + r * r);
}

EvalResult wp(const Lattice &lat, cx u, const SeriesConfig &cfg)
{
    return wp_via(lat, HalfPeriod::one, u, cfg);
}

EvalResult wp_prime(const Lattice &lat, cx u, const SeriesConfig &cfg)
{
    if (auto p = pole_check(lat, u)) {
        return *p;
    }
    const auto c = detail::make_cell(lat, u, cfg);
    return EvalResult::ok(-2.0 * c.ratio(HalfPeriod::one) * c.ratio(HalfPeriod::two) * c.ratio(HalfPeriod::three));
}

EvalResult wp_second(const Lattice &lat, cx u, const SeriesConfig &cfg)
{
    auto r = wp(lat, u, cfg);
    if (r.finite()) {
        r.value = 6.0 * r.value * r.value - lat.constants().g2 / 2.0;
    }
    return r;
}

cx sigma_product(const Lattice &lat, cx u, int radius)
{
    if (u == 0.0) {
        return 0.0;
    }
    const cx a = 2.0 * lat.omega1();
    const cx b = 2.0 * lat.omega3();
    const cx logs = shell_sum(radius, [&](int n, int m) {
        const cx w = static_cast<double>(n) * a + static_cast<double>(m) * b;
        const cx t = u / w;
        return std::log(1.0 - t) + t + 0.5 * t * t;
    });
    return u * std::exp(logs);
}

cx zeta_lattice_sum(const Lattice &lat, cx u, int radius)
{
    const cx a = 2.0 * lat.omega1();
    const cx b = 2.0 * lat.omega3();
    return 1.0 / u + shell_sum(radius, [&](int n, int m) {
               const cx w = static_cast<double>(n) * a + static_cast<double>(m) * b;
               return 1.0 / (u - w) + 1.0 / w + u / (w * w);
           });
}

cx wp_lattice_sum(const Lattice &lat, cx u, int radius)
{
    const cx a = 2.0 * lat.omega1();
    const cx b = 2.0 * lat.omega3();
    return 1.0 / (u * u) + shell_sum(radius, [&](int n, int m) {
               const cx w = static_cast<double>(n) * a + static_cast<double>(m) * b;
               const cx d = u - w;
               return 1.0 / (d * d) - 1.0 / (w * w);
           });
}

} // namespace azeta
