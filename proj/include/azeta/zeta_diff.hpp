#ifndef AZETA_ZETA_DIFF_HPP
#define AZETA_ZETA_DIFF_HPP

// Zeta differences
//
//   Delta_lambda         = zeta_lambda - zeta,     poles 0, omega_lambda; zeros omega_mu, omega_nu
//   Delta_{lambda,mu}    = zeta_lambda - zeta_mu,  poles omega_lambda, omega_mu; zeros 0, omega_nu
//
// both elliptic of order two, with their derivatives and the lattice
// constants they determine.

#include <azeta/aux_zeta.hpp>

#include <array>

namespace azeta
{

enum class DeltaRoute {
    zeta_diff,      // difference of zeta functions
    wp_quotient,    // wp' / (2 (wp - e_lambda)); 2 (e_lambda - e_mu)(wp - e_nu) / wp'
    sigma_quotient, // -sigma_mu sigma_nu / (sigma_lambda sigma); Weierstrass sigma product
    theta_quotient, // theta-function product at u / 2 omega1
};

std::string_view to_string(DeltaRoute r);

EvalResult delta(const Lattice &lat, HalfPeriod h, cx u, DeltaRoute route = DeltaRoute::sigma_quotient,
                 const SeriesConfig &cfg = {});

// ((wp - e_lambda)^2 - (e_lambda - e_mu)(e_lambda - e_nu)) / (wp - e_lambda)
EvalResult delta_prime(const Lattice &lat, HalfPeriod h, cx u, const SeriesConfig &cfg = {});

// Throws identical_indices when h == k.
EvalResult delta2(const Lattice &lat, HalfPeriod h, HalfPeriod k, cx u, DeltaRoute route = DeltaRoute::wp_quotient,
                  const SeriesConfig &cfg = {});

// (e_lambda - e_mu)((e_lambda - e_nu) / (e_lambda - wp) + (e_mu - e_nu) / (e_mu - wp) - 1)
EvalResult delta2_prime(const Lattice &lat, HalfPeriod h, HalfPeriod k, cx u, const SeriesConfig &cfg = {});

// Delta_{lambda,mu} through theta functions,
//
//   eps (pi / 2 omega1) theta_nu^2 theta_nu(v) theta(v) / (theta_lambda(v) theta_mu(v)),
//
// with the signs eps = +-1 fixed once against the zeta difference at a probe
// point when the object is built.
class Delta2ThetaQuotient
{
public:
    explicit Delta2ThetaQuotient(const Lattice &lat, const SeriesConfig &cfg = {});

    int sign(HalfPeriod h, HalfPeriod k) const;
    EvalResult operator()(HalfPeriod h, HalfPeriod k, cx u) const;

private:
    cx raw(HalfPeriod h, HalfPeriod k, cx u) const;

    const Lattice *m_lat;
    SeriesConfig m_cfg;
    std::array<int, 3> m_sign{}; // indexed by the complementary nu
};

struct DeltaConstants {
    std::array<cx, 3> e{};
    cx g2;
    cx g3;
    cx disc;
};

// e_lambda, g2, g3 and the discriminant from Delta values at the single point
// u. Throws pole_proximity when u is within the pole radius of 0 or a
// half-period.
DeltaConstants constants_from_deltas(const Lattice &lat, cx u, const SeriesConfig &cfg = {});

} // namespace azeta

#endif
