#ifndef AZETA_LATTICE_HPP
#define AZETA_LATTICE_HPP

#include <azeta/theta.hpp>

#include <array>
#include <memory>
#include <utility>

#include <json.hpp>

namespace azeta
{

/// Index of a half-period, lambda in {1, 2, 3}.
enum class HalfPeriod : int { one = 1, two = 2, three = 3 };

inline constexpr std::array<HalfPeriod, 3> all_half_periods{HalfPeriod::one, HalfPeriod::two, HalfPeriod::three};

constexpr std::size_t slot(HalfPeriod h)
{
    return static_cast<std::size_t>(static_cast<int>(h) - 1);
}

// The two indices other than h, in increasing order.
constexpr std::pair<HalfPeriod, HalfPeriod> complement(HalfPeriod h)
{
    switch (h) {
        case HalfPeriod::one:
            return {HalfPeriod::two, HalfPeriod::three};
        case HalfPeriod::two:
            return {HalfPeriod::one, HalfPeriod::three};
        default:
            return {HalfPeriod::one, HalfPeriod::two};
    }
}

// The index different from both a and b (a != b).
constexpr HalfPeriod third(HalfPeriod a, HalfPeriod b)
{
    return static_cast<HalfPeriod>(6 - static_cast<int>(a) - static_cast<int>(b));
}

struct LatticeConstants {
    std::array<cx, 3> e{};   // wp(omega_lambda)
    std::array<cx, 3> eta{}; // zeta(omega_lambda)
    cx g2;
    cx g3;
    cx disc; // g2^3 - 27 g3^2
    cx ksq;  // (e2 - e3) / (e1 - e3)
    cx kpsq; // (e1 - e2) / (e1 - e3)
    ThetaNullwerte nullwerte{};

    // e1 - e2, e1 - e3, e2 - e3 straight from the nullwerte, exact in relative
    // terms even when two roots nearly coincide
    std::array<cx, 3> e_diffs{};
    cx e_of(HalfPeriod h) const { return e[slot(h)]; }
    // e_h - e_k (zero when h == k)
    cx e_diff(HalfPeriod h, HalfPeriod k) const;
    cx eta_of(HalfPeriod h) const { return eta[slot(h)]; }
};

// u = reduced + 2 n omega1 + 2 m omega3.
struct Reduced {
    cx u;
    long n = 0;
    long m = 0;
};

/// Period lattice generated by 2 omega1 and 2 omega3, with its constants
/// computed once at construction. Copies share the immutable constant block.
class Lattice
{
public:
    cx omega1() const { return m_omega1; }
    cx omega2() const { return m_omega2; }
    cx omega3() const { return m_omega3; }
    cx omega(HalfPeriod h) const;
    cx tau() const { return m_tau; }
    cx q() const { return m_q; }

    const LatticeConstants &constants() const { return *m_constants; }
    const SeriesConfig &config() const { return m_cfg; }

    // min(|2 omega1|, |2 omega3|)
    double min_period() const;

    // Reduction to the centred cell: u / (2 omega1) = x + y tau with
    // |x|, |y| <= 1/2.
    Reduced reduce(cx u) const;

    // Distance from z to the nearest lattice point 2 n omega1 + 2 m omega3.
    double lattice_distance(cx z) const;

    // Nearest lattice point to z.
    cx nearest_lattice_point(cx z) const;

    bool is_rectangular(double tol = 1e-14) const;

private:
    friend Lattice build_lattice(cx, cx, const SeriesConfig &, double);
    Lattice() = default;

    cx m_omega1;
    cx m_omega2;
    cx m_omega3;
    cx m_tau;
    cx m_q;
    SeriesConfig m_cfg;
    std::shared_ptr<const LatticeConstants> m_constants;
};

inline constexpr double default_q_max = 0.9;

// Throws zero_period, invalid_period_ratio or convergence_policy (|q| > q_max).
Lattice build_lattice(cx omega1, cx omega3, const SeriesConfig &cfg = {}, double q_max = default_q_max);

// Recomputes the constants of lat under cfg. Lattice::constants() holds the
// same quantities for the configuration the lattice was built with.
LatticeConstants constants(const Lattice &lat, const SeriesConfig &cfg);

enum class ShellTail {
    none,
    // Adds the continuum estimate of the omitted shells: a square shell of
    // radius r contributes C_p / r^(p-1) + O(r^-(p+1)), where C_p is the
    // boundary integral of Omega^-p over the unit shell.
    continuum,
};

/// (g2, g3) as 60 SUM' Omega^-4 and 140 SUM' Omega^-6, accumulated shell by
/// shell over max(|n|, |m|) <= shell_radius. An independent oracle only.
std::pair<cx, cx> eisenstein_invariants(const Lattice &lat, int shell_radius, ShellTail tail = ShellTail::none);

nlohmann::json to_json(const Lattice &lat);

} // namespace azeta

#endif
