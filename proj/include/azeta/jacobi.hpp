#ifndef AZETA_JACOBI_HPP
#define AZETA_JACOBI_HPP

// Jacobian elliptic functions attached to a Weierstrass lattice.
//
// With s = sqrt(e1 - e3) (principal root), k^2 = (e2 - e3) / (e1 - e3) and
// x = s u:
//
//   sigma_3 / sigma = s ns(x),  sigma_2 / sigma = s ds(x),  sigma_1 / sigma = s cs(x)
//
// so sn, cn and dn are quotients of the auxiliary sigma functions, and E, Z,
// Pi follow from zeta_3 and sigma_3.

#include <azeta/zeta_diff.hpp>

#include <array>
#include <tuple>

namespace azeta
{

struct JacobiParams {
    cx ksq;
    cx k;      // principal sqrt(ksq)
    cx kprime; // principal sqrt(1 - ksq)
    cx K;
    cx E;
    cx scale; // principal sqrt(e1 - e3)
    Lattice lat;
};

// K(k) and E(k) by the arithmetic-geometric mean, taking the root with
// |a - b| <= |a + b| at every step.
std::pair<cx, cx> complete_elliptic_integrals(cx ksq, double tol = 1e-16, int max_iter = 64);

// Throws degenerate_lattice when the discriminant is negligible against g2^3
// or e1 == e3.
JacobiParams jacobi_params(const Lattice &lat, const SeriesConfig &cfg = {});

struct SnCnDn {
    cx sn;
    cx cn;
    cx dn;
};

// Throws pole_proximity near the poles x = s (omega3 + Omega).
SnCnDn sn_cn_dn(const JacobiParams &p, cx x, const SeriesConfig &cfg = {});

// One transformation formula: lhs is the Delta product or quotient, mid its
// form through Delta_{lambda,mu}, both before taking the square root; ref is
// the sigma quotient fixing the root's branch and rhs the Jacobi side.
struct TransformRow {
    cx lhs;
    cx mid;
    cx ref;
    cx rhs;
};

// Throws pole_proximity when u is near 0 or a half-period.
std::array<TransformRow, 6> transformation_rows(const JacobiParams &p, cx u, const SeriesConfig &cfg = {});

// The root of z on the branch closest to ref.
cx aligned_sqrt(cx z, cx ref);

// |lhs - rhs| of each transformation formula
//
//   sqrt(Delta1 Delta2) = s ns,   sqrt(Delta1 Delta3) = s ds,   sqrt(Delta2 Delta3) = s cs,
//   sqrt(Delta2 / Delta1) = sn(K - x),   sqrt(Delta3 / Delta2) = dn,   sqrt(Delta1 / Delta3) = nc,
//
// each also against its form through Delta_{lambda,mu}; the larger residual is
// reported. Square roots take the branch of the matching sigma quotient.
std::array<double, 6> check_thm211(const JacobiParams &p, cx u, const SeriesConfig &cfg = {});

// The same six relations squared, so free of branch choices.
std::array<double, 6> check_thm211_squared(const JacobiParams &p, cx u, const SeriesConfig &cfg = {});

//   Delta1 = (e2 - e3) / Delta_{2,3} = -s dn / (sn cn)
//   Delta2 = (e1 - e3) / Delta_{1,3} = -s sn(K - x) / sn
//   Delta3 = (e1 - e2) / Delta_{1,2} = -s cn dn / sn
std::array<double, 3> check_cor212(const JacobiParams &p, cx u, const SeriesConfig &cfg = {});

struct EZPi {
    cx E;
    cx Z;
    cx Pi;
};

// E(s u), Z(s u) and Pi(s u, s a). The logarithm in Pi is continued from 1 at
// the origin along t u, t in [0, 1]; throws branch_ambiguity when the path
// passes too close to a zero or pole of sigma_3(t u - a) / sigma_3(t u + a).
EZPi jacobi_E_Z_Pi(const JacobiParams &p, cx u, cx a, const SeriesConfig &cfg = {});

} // namespace azeta

#endif
