#ifndef AZETA_WEIER_CORE_HPP
#define AZETA_WEIER_CORE_HPP

// Weierstrass sigma, zeta, wp and wp' through theta functions, plus the
// direct lattice sums and products they are checked against.
//
// Every evaluation first reduces u to the centred cell of the lattice and
// reapplies the quasi-periodicity factors analytically, so the theta series
// always run with |Im(u / 2 omega1)| <= Im(tau) / 2.

#include <azeta/lattice.hpp>

#include <optional>
#include <string_view>

namespace azeta
{

enum class Status { finite, at_pole, near_pole };

std::string_view to_string(Status s);

struct EvalResult {
    cx value{};
    Status status = Status::finite;
    // For at_pole / near_pole: the pole the argument is closest to.
    std::optional<cx> pole;

    bool finite() const { return status == Status::finite; }

    static EvalResult ok(cx v) { return {v, Status::finite, std::nullopt}; }
};

// An argument closer than this fraction of min_period() to a pole is NearPole.
inline constexpr double pole_radius_factor = 1e-8;
// Closer than this fraction it is treated as sitting on the pole.
inline constexpr double at_pole_factor = 1e-13;

// Checks u against the translates offset + Omega. Returns nullopt when u is
// clear of them, otherwise a non-finite EvalResult naming the translate.
std::optional<EvalResult> pole_check(const Lattice &lat, cx u, cx offset = 0.0);

cx sigma(const Lattice &lat, cx u, const SeriesConfig &cfg = {});

// sigma_lambda through theta_lambda.
cx sigma_aux(const Lattice &lat, HalfPeriod h, cx u, const SeriesConfig &cfg = {});

enum class SigmaShiftForm {
    plus,  // exp(-eta z) sigma(omega + z) / sigma(omega)
    minus, // exp(+eta z) sigma(omega - z) / sigma(omega)
};

// sigma_lambda from the plain sigma function.
cx sigma_aux_shifted(const Lattice &lat, HalfPeriod h, cx u, SigmaShiftForm form, const SeriesConfig &cfg = {});

// sigma_lambda(u) / sigma(u); poles on the lattice.
EvalResult sigma_ratio(const Lattice &lat, HalfPeriod h, cx u, const SeriesConfig &cfg = {});

EvalResult zeta_w(const Lattice &lat, cx u, const SeriesConfig &cfg = {});

// wp(u) = e_1 + (sigma_1 / sigma)^2.
EvalResult wp(const Lattice &lat, cx u, const SeriesConfig &cfg = {});

// wp(u) = e_lambda + (sigma_lambda / sigma)^2 for a chosen lambda.
EvalResult wp_via(const Lattice &lat, HalfPeriod h, cx u, const SeriesConfig &cfg = {});

// wp'(u) = -2 sigma_1 sigma_2 sigma_3 / sigma^3.
EvalResult wp_prime(const Lattice &lat, cx u, const SeriesConfig &cfg = {});

// wp''(u) = 6 wp^2 - g2 / 2.
EvalResult wp_second(const Lattice &lat, cx u, const SeriesConfig &cfg = {});

// Direct truncated lattice formulas over max(|n|, |m|) <= radius, summed
// shell by shell. Slow; for testing.
cx sigma_product(const Lattice &lat, cx u, int radius);
cx zeta_lattice_sum(const Lattice &lat, cx u, int radius);
cx wp_lattice_sum(const Lattice &lat, cx u, int radius);

namespace detail
{

// Theta values at the reduced argument plus the bookkeeping that carries
// them back to u.
struct Cell {
    const Lattice *lat = nullptr;
    Reduced red;
    cx v; // reduced u / (2 omega1)
    ThetaSet th;

    // sigma_lambda(u) / sigma(u) = aux_part(h) / plain_part(); the two parts
    // share a common factor, so their quotients stay finite at zeros of sigma.
    cx ratio(HalfPeriod h) const;
    cx aux_part(HalfPeriod h) const;
    cx plain_part() const;
    // theta route zeta and zeta_lambda at u
    cx zeta() const;
    cx zeta_aux(HalfPeriod h) const;
    // 2 n eta1 + 2 m eta3
    cx quasi_increment() const;
    // log of sigma(u) / sigma(reduced u), including the sign as i pi
    cx log_sigma_factor() const;
};

Cell make_cell(const Lattice &lat, cx u, const SeriesConfig &cfg);

// Sign picked up by sigma_lambda / sigma under u -> u + 2 n omega1 + 2 m omega3.
double ratio_sign(HalfPeriod h, long n, long m);

} // namespace detail

} // namespace azeta

#endif
