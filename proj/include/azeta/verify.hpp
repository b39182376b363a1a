#ifndef AZETA_VERIFY_HPP
#define AZETA_VERIFY_HPP
// Identity certification: sample points in the fundamental cell, evaluate
// both sides of each registered identity and collect relative residuals
//
//   |lhs - rhs| / max(|lhs|, |rhs|, 1e-30),
//
// taken componentwise over the vectors the evaluators return.
#include <azeta/jacobi.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace azeta
{

// Sampling keeps cz z + cw w at least pole_guard_factor * min_period() away
// from offset + Omega, where offset = a 2 omega1 + b 2 omega3, times
// guard_scale.
struct Locus {
    int cz = 1;
    int cw = 0;
    double a = 0.0;
    double b = 0.0;
    double guard_scale = 1.0;
};

inline constexpr double pole_guard_factor = 0.02;

enum class Applicability { all, rectangular };

struct IdentitySpec {
    std::string name;
    int arity = 1;
    std::string lhs;
    std::string rhs;
    double tol = 1e-9;
    std::vector<Locus> exclusions;
    Applicability applies = Applicability::all;
};

struct Failure {
    cx z;
    cx w;
    double residual;
};

struct IdentityReport {
    std::string name;
    int arity = 1;
    std::size_t samples = 0;
    double max_rel = 0.0;
    double mean_rel = 0.0;
    double tol = 0.0;
    bool passed = true;
    std::vector<Failure> failures;
    // per-sample residuals in sampling order; not serialised
    std::vector<double> residuals;
};

// Both sides of an identity at the sample (z, w); w is unused by one-point
// identities. Components that are not finite count as failures.
using Evaluator = std::function<std::vector<cx>(const Lattice &, cx z, cx w, const SeriesConfig &)>;

const std::map<std::string, Evaluator> &evaluator_registry();

// Every identity in registration order. Throws nothing.
const std::vector<IdentitySpec> &default_suite();

// Identities whose name matches the glob pattern (* and ?).
std::vector<IdentitySpec> filter_suite(const std::vector<IdentitySpec> &suite, const std::string &pattern);
bool glob_match(const std::string &pattern, const std::string &name);

// Identity i is sampled from an mt19937_64 seeded with seed + i. Identities
// restricted to rectangular lattices are left out on other lattices. Throws
// suite_config for unknown evaluators, n == 0 or arity outside {1, 2}.
std::vector<IdentityReport> run_suite(const Lattice &lat, const std::vector<IdentitySpec> &suite, std::size_t n,
                                      std::uint64_t seed, const SeriesConfig &cfg = {});

double relative_residual(cx a, cx b);

nlohmann::json to_json(const std::vector<IdentityReport> &reports);

} // namespace azeta

#endif
