#ifndef AZETA_AUX_ZETA_HPP
#define AZETA_AUX_ZETA_HPP

// Auxiliary zeta functions zeta_lambda = (log sigma_lambda)', evaluated by
// four independent routes:
//
//   shift             zeta(u + omega_lambda) - eta_lambda
//   theta             eta1 u / omega1 + theta'_lambda(v) / (2 omega1 theta_lambda(v))
//   qseries           logarithmic derivative of the q-product of sigma_lambda
//   partial_fraction  -e_lambda u + SUM 1/(u - w) + 1/w + u/w^2,
//                     w over Omega + omega_lambda
//
// zeta_lambda is odd, has simple poles at Omega + omega_lambda and obeys
// zeta_lambda(u + 2 omega_k) = zeta_lambda(u) + 2 eta_k.

#include <azeta/weier_core.hpp>

namespace azeta
{

enum class ZetaRoute { shift, theta, qseries, partial_fraction };

std::string_view to_string(ZetaRoute r);

enum class QSeriesForm { exponential, cosine };

inline constexpr int default_partial_fraction_radius = 200;

// Fraction of Im(tau) bounding |Im(u / 2 omega1)| inside which the qseries
// route sums its series; outside it falls back to the shift route.
inline constexpr double qseries_strip = 0.45;

EvalResult zeta_aux(const Lattice &lat, HalfPeriod h, cx u, ZetaRoute route, const SeriesConfig &cfg = {});

// q-series at the reduced argument in the chosen form, without the strip
// fallback. Valid on the whole cell away from the poles.
EvalResult zeta_aux_qseries(const Lattice &lat, HalfPeriod h, cx u, QSeriesForm form, const SeriesConfig &cfg = {});

EvalResult zeta_aux_partial_fraction(const Lattice &lat, HalfPeriod h, cx u, int radius,
                                     const SeriesConfig &cfg = {});

// Whether the reduced u lies in the strip where the qseries route sums its
// series directly.
bool in_qseries_strip(const Lattice &lat, cx u);

// zeta_lambda(u + 2 omega_k) - zeta_lambda(u) - 2 eta_k, shifted value by the
// shift route and base value by the theta route. Throws pole_proximity when u
// or u + 2 omega_k is near a pole.
cx zeta_aux_quasiperiod_check(const Lattice &lat, HalfPeriod h, HalfPeriod k, cx u, const SeriesConfig &cfg = {});

} // namespace azeta

#endif
