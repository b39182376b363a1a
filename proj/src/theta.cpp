#include <azeta/errors.hpp>
#include <azeta/theta.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace azeta
{

void SeriesConfig::validate() const
{
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || (abs_tol == 0.0 && rel_tol == 0.0)) {
        throw invalid_argument("SeriesConfig needs a positive abs_tol or rel_tol");
    }
    if (max_terms < 4) {
        throw invalid_argument("SeriesConfig::max_terms must be at least 4");
    }
}

namespace
{

template <typename R>
struct Jet {
    std::array<std::complex<R>, 4> d{};
    R magnitude = 0;
};

// Sums the idx-th series and its first `order` v-derivatives. Terms are added
// in symmetric pairs: (n, -n-1) for the half-integer series, (n, -n) for the
// integer ones. Truncation starts once the pair index is past the peak of
// |q^(k^2) exp(2 pi i k v)|, and stops after two consecutive pairs fall below
// abs_tol + rel_tol * (sum of term magnitudes).
template <typename R>
Jet<R> series(ThetaIndex idx, std::complex<R> v, std::complex<R> tau, const SeriesConfig &cfg, int order)
{
    using C = std::complex<R>;
    constexpr R pi = std::numbers::pi_v<R>;
    const C I{0, 1};
    if (!(tau.imag() > 0)) {
        throw invalid_argument("theta functions need Im(tau) > 0");
    }
    Jet<R> out;
    const bool half = idx == ThetaIndex::plain || idx == ThetaIndex::one;
    const R peak = std::abs(v.imag()) / tau.imag();
    const R abs_tol = static_cast<R>(cfg.abs_tol);
    const R rel_tol = static_cast<R>(cfg.rel_tol);

    std::size_t n = 0;
    if (!half) {
        out.d[0] = 1;
        out.magnitude = 1;
        n = 1;
    }
    int small_run = 0;
    for (;; ++n) {
        if (n >= cfg.max_terms) {
            throw series_divergence("theta series did not converge within " + std::to_string(cfg.max_terms)
                                    + " terms");
        }
        const R k = half ? static_cast<R>(n) + R(0.5) : static_cast<R>(n);
        const C e = std::exp(I * pi * tau * (k * k));
        const C ep = std::exp(R(2) * pi * I * k * v);
        const C em = std::exp(-R(2) * pi * I * k * v);
        const R sign = (n % 2 == 0) ? R(1) : R(-1);

        C cp;
        C cm;
        switch (idx) {
            case ThetaIndex::plain:
                cp = -I * sign;
                cm = I * sign;
                break;
            case ThetaIndex::one:
            case ThetaIndex::two:
                cp = 1;
                cm = 1;
                break;
            case ThetaIndex::three:
                cp = sign;
                cm = sign;
                break;
        }
        C tp = cp * e * ep;
        C tm = cm * e * em;
        const R pair_mag = std::abs(tp) + std::abs(tm);
        const C w = R(2) * pi * I * k;
        for (int d = 0; d <= order; ++d) {
            out.d[static_cast<std::size_t>(d)] += tp + tm;
            tp *= w;
            tm *= -w;
        }
        out.magnitude += pair_mag;

        const R weight = std::max(R(1), std::pow(R(2) * pi * k, static_cast<R>(order)));
        if (k > peak + 1 && pair_mag * weight <= abs_tol + rel_tol * out.magnitude) {
            if (++small_run == 2) {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    return out;
}

} // namespace

cx theta_eval(ThetaIndex idx, cx v, cx tau, const SeriesConfig &cfg)
{
    return series(idx, v, tau, cfg, 0).d[0];
}

ThetaJet theta_jet(ThetaIndex idx, cx v, cx tau, const SeriesConfig &cfg)
{
    const auto j = series(idx, v, tau, cfg, 3);
    return {j.d[0], j.d[1], j.d[2], j.d[3]};
}

ThetaSet theta_all(cx v, cx tau, const SeriesConfig &cfg)
{
    ThetaSet s;
    for (int i = 0; i < 4; ++i) {
        const auto j = series(static_cast<ThetaIndex>(i), v, tau, cfg, 1);
        s.value[static_cast<std::size_t>(i)] = j.d[0];
        s.d1[static_cast<std::size_t>(i)] = j.d[1];
        s.magnitude[static_cast<std::size_t>(i)] = j.magnitude;
    }
    return s;
}

cx theta_dlog(ThetaIndex idx, cx v, cx tau, const SeriesConfig &cfg)
{
    const auto j = series(idx, v, tau, cfg, 1);
    if (std::abs(j.d[0]) < 1e-12 * j.magnitude) {
        throw near_zero_denominator("theta_" + std::to_string(static_cast<int>(idx)) + " vanishes near v");
    }
    return j.d[1] / j.d[0];
}

std::array<lcx, 4> theta_values_extended(lcx v, lcx tau, const SeriesConfig &cfg)
{
    std::array<lcx, 4> out;
    for (int i = 0; i < 4; ++i) {
        out[static_cast<std::size_t>(i)] = series(static_cast<ThetaIndex>(i), v, tau, cfg, 0).d[0];
    }
    return out;
}

ThetaNullwerte theta_nullwerte(cx tau, const SeriesConfig &cfg)
{
    const auto plain = series(ThetaIndex::plain, cx{0.0}, tau, cfg, 3);
    return {series(ThetaIndex::one, cx{0.0}, tau, cfg, 0).d[0], series(ThetaIndex::two, cx{0.0}, tau, cfg, 0).d[0],
            series(ThetaIndex::three, cx{0.0}, tau, cfg, 0).d[0], plain.d[1], plain.d[3]};
}

} // namespace azeta
