#ifndef AZETA_THETA_HPP
#define AZETA_THETA_HPP

// Jacobi theta functions in Jordan's notation, with v-derivatives.
//
// With q = exp(i pi tau) and z = exp(i pi v):
//
//   theta  (v) = -i SUM (-1)^n q^((n+1/2)^2) z^(2n+1)   (odd, simple zero at v = 0)
//   theta_1(v) =    SUM        q^((n+1/2)^2) z^(2n+1)
//   theta_2(v) =    SUM        q^(n^2)       z^(2n)
//   theta_3(v) =    SUM (-1)^n q^(n^2)       z^(2n)
//
// The index lambda of theta_lambda matches the half-period omega_lambda of the
// lattice (omega1 + omega2 + omega3 = 0, tau = omega3 / omega1): the auxiliary
// sigma function sigma_lambda is proportional to theta_lambda(u / 2 omega1).
// Under the classical names theta_1 is Jacobi's theta2, theta_2 is theta3 and
// theta_3 is theta4.
//
// Powers of q are always taken as exp(i pi tau x), never through a principal
// root of q.

#include <array>
#include <complex>
#include <cstddef>

namespace azeta
{

using cx = std::complex<double>;
using lcx = std::complex<long double>;

/// Truncation policy shared by every series and product in the library.
struct SeriesConfig {
    double abs_tol = 0.0;
    double rel_tol = 1e-17;
    std::size_t max_terms = 500;

    // Throws invalid_argument unless one tolerance is positive and max_terms >= 4.
    void validate() const;
};

enum class ThetaIndex : int { plain = 0, one = 1, two = 2, three = 3 };

// Value and first three v-derivatives of a theta function.
struct ThetaJet {
    cx value;
    cx d1;
    cx d2;
    cx d3;
};

// All four theta functions at one point, value plus first derivative.
struct ThetaSet {
    std::array<cx, 4> value;
    std::array<cx, 4> d1;
    // Sum of absolute term magnitudes of each series; used as the conditioning
    // scale when deciding that a value is numerically zero.
    std::array<double, 4> magnitude;
};

struct ThetaNullwerte {
    cx theta1;
    cx theta2;
    cx theta3;
    cx dtheta;  // theta'(0)
    cx d3theta; // theta'''(0)
};

cx theta_eval(ThetaIndex idx, cx v, cx tau, const SeriesConfig &cfg = {});

ThetaJet theta_jet(ThetaIndex idx, cx v, cx tau, const SeriesConfig &cfg = {});

ThetaSet theta_all(cx v, cx tau, const SeriesConfig &cfg = {});

// theta'_idx(v) / theta_idx(v). Throws near_zero_denominator when
// |theta_idx(v)| < 1e-12 times the absolute magnitude of its series.
cx theta_dlog(ThetaIndex idx, cx v, cx tau, const SeriesConfig &cfg = {});

ThetaNullwerte theta_nullwerte(cx tau, const SeriesConfig &cfg = {});

// theta, theta_1, theta_2, theta_3 at v summed in long double, for quotients
// whose identities cancel leading digits.
std::array<lcx, 4> theta_values_extended(lcx v, lcx tau, const SeriesConfig &cfg = {});

} // namespace azeta

#endif
