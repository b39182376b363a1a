#include <azeta/aux_zeta.hpp>
#include <azeta/errors.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace azeta
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr cx I{0.0, 1.0};

// Half-period offsets in units of (2 omega1, 2 omega3).
std::pair<double, double> offset_of(HalfPeriod h)
{
    switch (h) {
        case HalfPeriod::one:
            return {0.5, 0.0};
        case HalfPeriod::two:
            return {-0.5, -0.5};
        default:
            return {0.0, 0.5};
    }
}

// Coordinates c + k for integer k, symmetric about 0 out to `radius`, grouped
// by floor(|x|).
std::vector<std::vector<double>> symmetric_ranks(double c, int radius)
{
    std::vector<std::vector<double>> ranks(static_cast<std::size_t>(radius) + 1);
    if (c == 0.0) {
        ranks[0].push_back(0.0);
        for (int r = 1; r <= radius; ++r) {
            ranks[static_cast<std::size_t>(r)] = {static_cast<double>(r), -static_cast<double>(r)};
        }
    } else {
        for (int r = 0; r <= radius; ++r) {
            ranks[static_cast<std::size_t>(r)] = {r + 0.5, -(r + 0.5)};
        }
    }
    return ranks;
}

cx qseries_sum(const Lattice &lat, HalfPeriod h, cx u0, QSeriesForm form, const SeriesConfig &cfg)
{
    const cx w1 = lat.omega1();
    const cx tau = lat.tau();
    const cx v = u0 / (2.0 * w1);
    const cx eta1 = lat.constants().eta[0];
    const cx angle = 2.0 * pi * v; // pi u / omega1

    cx total = eta1 * u0 / w1;
    double magnitude = std::abs(total);
    if (h == HalfPeriod::one) {
        const cx t = -(pi / (2.0 * w1)) * std::tan(pi * v);
        total += t;
        magnitude += std::abs(t);
    }
    const cx s = std::sin(angle);
    const cx c = std::cos(angle);

    int small_run = 0;
    for (std::size_t n = 1;; ++n) {
        if (n >= cfg.max_terms) {
            throw series_divergence("zeta_lambda q-series did not converge");
        }
        // exponent of q in the n-th factor: 2n for lambda = 1, 2n - 1 otherwise
        const double p = (h == HalfPeriod::one) ? 2.0 * static_cast<double>(n) : 2.0 * static_cast<double>(n) - 1.0;
        const cx Q = std::exp(I * pi * tau * p);
        cx term;
        if (form == QSeriesForm::exponential) {
            const cx x = std::exp(I * pi * tau * p + I * angle);
            const cx y = std::exp(I * pi * tau * p - I * angle);
            if (h == HalfPeriod::three) {
                term = -(pi * I / w1) * (x / (1.0 - x) - y / (1.0 - y));
            } else {
                term = (pi * I / w1) * (x / (1.0 + x) - y / (1.0 + y));
            }
        } else {
            if (h == HalfPeriod::three) {
                term = (2.0 * pi / w1) * Q * s / (1.0 - 2.0 * Q * c + Q * Q);
            } else {
                term = -(2.0 * pi / w1) * Q * s / (1.0 + 2.0 * Q * c + Q * Q);
            }
        }
        total += term;
        const double mag = std::abs(term);
        magnitude += mag;
        if (mag <= cfg.abs_tol + cfg.rel_tol * magnitude) {
            if (++small_run == 2) {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    return total;
}

} // namespace

std::string_view to_string(ZetaRoute r)
{
    switch (r) {
        case ZetaRoute::shift:
            return "shift";
        case ZetaRoute::theta:
            return "theta";
        case ZetaRoute::qseries:
            return "qseries";
        default:
            return "partial_fraction";
    }
}

bool in_qseries_strip(const Lattice &lat, cx u)
{
    const cx v = lat.reduce(u).u / (2.0 * lat.omega1());
    return std::abs(v.imag()) < qseries_strip * lat.tau().imag();
}

EvalResult zeta_aux_qseries(const Lattice &lat, HalfPeriod h, cx u, QSeriesForm form, const SeriesConfig &cfg)
{
    if (auto p = pole_check(lat, u, lat.omega(h))) {
        return *p;
    }
    if (u == 0.0) {
        return EvalResult::ok(0.0);
    }
    detail::Cell c;
    c.lat = &lat;
    c.red = lat.reduce(u);
    return EvalResult::ok(qseries_sum(lat, h, c.red.u, form, cfg) + c.quasi_increment());
}

EvalResult zeta_aux_partial_fraction(const Lattice &lat, HalfPeriod h, cx u, int radius, const SeriesConfig &cfg)
{
    (void)cfg;
    if (radius < 1) {
        throw invalid_argument("partial-fraction radius must be at least 1");
    }
    if (auto p = pole_check(lat, u, lat.omega(h))) {
        return *p;
    }
    detail::Cell c;
    c.lat = &lat;
    c.red = lat.reduce(u);
    const cx z = c.red.u;

    const auto [ox, oy] = offset_of(h);
    const auto xs = symmetric_ranks(ox, radius);
    const auto ys = symmetric_ranks(oy, radius);
    const cx a = 2.0 * lat.omega1();
    const cx b = 2.0 * lat.omega3();
    auto term = [&](double x, double y) {
        const cx w = x * a + y * b;
        const cx iw = 1.0 / w;
        return 1.0 / (z - w) + iw + z * iw * iw;
    };

    cx total = 0.0;
    for (std::size_t r = 0; r < xs.size(); ++r) {
        cx shell = 0.0;
        // x of rank r against y of rank <= r, then y of rank r against x of rank < r
        for (double x : xs[r]) {
            for (std::size_t s = 0; s <= r; ++s) {
                for (double y : ys[s]) {
                    shell += term(x, y);
                }
            }
        }
        for (double y : ys[r]) {
            for (std::size_t s = 0; s < r; ++s) {
                for (double x : xs[s]) {
                    shell += term(x, y);
                }
            }
        }
        total += shell;
    }
    // Omitted points: each contributes -z^2/w^3 - z^3/w^4 - ...; odd powers
    // cancel over the symmetric exterior, and SUM w^-4 over it is replaced by
    // the integral of (x a + y b)^-4 outside the box of cells,
    // (M^-2 - P^-2) / (3 a b) with P, M = Lx a +- Ly b.
    const double lx = xs.back().front() + 0.5;
    const double ly = ys.back().front() + 0.5;
    const cx P = lx * a + ly * b;
    const cx M = lx * a - ly * b;
    const cx tail = -z * z * z * (1.0 / (M * M) - 1.0 / (P * P)) / (3.0 * a * b);
    return EvalResult::ok(-lat.constants().e_of(h) * z + total + tail + c.quasi_increment());
}

EvalResult zeta_aux(const Lattice &lat, HalfPeriod h, cx u, ZetaRoute route, const SeriesConfig &cfg)
{
    if (auto p = pole_check(lat, u, lat.omega(h))) {
        return *p;
    }
    switch (route) {
        case ZetaRoute::shift: {
            const auto z = detail::make_cell(lat, u + lat.omega(h), cfg).zeta();
            return EvalResult::ok(z - lat.constants().eta_of(h));
        }
        case ZetaRoute::theta:
            return EvalResult::ok(detail::make_cell(lat, u, cfg).zeta_aux(h));
        case ZetaRoute::qseries:
            if (!in_qseries_strip(lat, u)) {
                return zeta_aux(lat, h, u, ZetaRoute::shift, cfg);
            }
            return zeta_aux_qseries(lat, h, u, QSeriesForm::exponential, cfg);
        default:
            return zeta_aux_partial_fraction(lat, h, u, default_partial_fraction_radius, cfg);
    }
}

cx zeta_aux_quasiperiod_check(const Lattice &lat, HalfPeriod h, HalfPeriod k, cx u, const SeriesConfig &cfg)
{
    const cx shifted = u + 2.0 * lat.omega(k);
    const auto a = zeta_aux(lat, h, shifted, ZetaRoute::shift, cfg);
    const auto b = zeta_aux(lat, h, u, ZetaRoute::theta, cfg);
    if (!a.finite() || !b.finite()) {
        throw pole_proximity("quasi-period check needs u and u + 2 omega_k away from poles");
    }
    return a.value - b.value - 2.0 * lat.constants().eta_of(k);
}

} // namespace azeta
