#include <azeta/errors.hpp>
#include <azeta/verify.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace azeta
{

namespace
{

using H = HalfPeriod;
constexpr H H1 = H::one;
constexpr H H2 = H::two;
constexpr H H3 = H::three;

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double fd_step = 1e-5;

cx val(const EvalResult &r)
{
    return r.finite() ? r.value : cx{nan, nan};
}

// Values of the library functions at one lattice; non-finite results become NaN.
struct V {
    const Lattice &lat;
    const SeriesConfig &cfg;

    cx e(H h) const { return lat.constants().e_of(h); }
    cx eta(H h) const { return lat.constants().eta_of(h); }
    cx om(H h) const { return lat.omega(h); }
    cx g2() const { return lat.constants().g2; }
    cx g3() const { return lat.constants().g3; }
    cx wp(cx u) const { return val(azeta::wp(lat, u, cfg)); }
    cx wp_via(H h, cx u) const { return val(azeta::wp_via(lat, h, u, cfg)); }
    cx wpp(cx u) const { return val(azeta::wp_prime(lat, u, cfg)); }
    cx wp2(cx u) const { return val(azeta::wp_second(lat, u, cfg)); }
    cx zeta(cx u) const { return val(azeta::zeta_w(lat, u, cfg)); }
    cx sigma(cx u) const { return azeta::sigma(lat, u, cfg); }
    cx saux(H h, cx u) const { return azeta::sigma_aux(lat, h, u, cfg); }
    cx r(H h, cx u) const { return val(azeta::sigma_ratio(lat, h, u, cfg)); }
    cx zl(H h, cx u, ZetaRoute route = ZetaRoute::theta) const { return val(zeta_aux(lat, h, u, route, cfg)); }
    cx d(H h, cx u, DeltaRoute route = DeltaRoute::sigma_quotient) const
    {
        return val(delta(lat, h, u, route, cfg));
    }
    cx dp(H h, cx u) const { return val(delta_prime(lat, h, u, cfg)); }
    cx d2(H h, H k, cx u, DeltaRoute route = DeltaRoute::wp_quotient) const
    {
        return val(delta2(lat, h, k, u, route, cfg));
    }
    cx d2p(H h, H k, cx u) const { return val(delta2_prime(lat, h, k, u, cfg)); }
    cx v0(cx u) const { return lat.reduce(u).u / (2.0 * lat.omega1()); }
    cx tdlog(ThetaIndex i, cx u) const { return theta_dlog(i, v0(u), lat.tau(), cfg); }
};

ThetaIndex tidx(H h)
{
    return static_cast<ThetaIndex>(static_cast<int>(h));
}

template <typename F>
cx fd(F f, cx u)
{
    return (f(u + fd_step) - f(u - fd_step)) / (2.0 * fd_step);
}

// derivative of log g, free of branch jumps between the two stencil points
template <typename F>
cx fd_log(F g, cx u)
{
    return std::log(g(u + fd_step) / g(u - fd_step)) / (2.0 * fd_step);
}

using Vec = std::vector<cx>;

template <typename F>
Vec each(F f)
{
    return {f(H1), f(H2), f(H3)};
}

// the six ordered pairs (lambda, mu) with nu the remaining index
template <typename F>
Vec ordered_pairs(F f)
{
    Vec out;
    for (H a : all_half_periods)
        for (H b : all_half_periods)
            if (a != b)
                out.push_back(f(a, b, third(a, b)));
    return out;
}

// (1,2,3), (2,3,1), (3,1,2)
template <typename F>
Vec cyclic(F f)
{
    return {f(H1, H2, H3), f(H2, H3, H1), f(H3, H1, H2)};
}

Vec concat(Vec a, const Vec &b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Vec repeat(const Vec &a, int times)
{
    Vec out;
    for (int i = 0; i < times; ++i)
        out.insert(out.end(), a.begin(), a.end());
    return out;
}

Locus at_origin()
{
    return {1, 0, 0.0, 0.0};
}

Locus at_half(H h)
{
    switch (h) {
        case H::one:
            return {1, 0, 0.5, 0.0};
        case H::two:
            return {1, 0, 0.5, 0.5};
        default:
            return {1, 0, 0.0, 0.5};
    }
}

const std::vector<Locus> origin{at_origin()};
const std::vector<Locus> halves{at_half(H1), at_half(H2), at_half(H3)};
const std::vector<Locus> all_special{at_origin(), at_half(H1), at_half(H2), at_half(H3)};

using Side = std::function<Vec(const V &, cx, cx)>;

struct Registry {
    std::map<std::string, Evaluator> evaluators;
    std::vector<IdentitySpec> suite;

    void add(const std::string &name, int arity, double tol, std::vector<Locus> excl, Applicability applies,
             Side lhs, Side rhs)
    {
        auto wrap = [](Side s) {
            return [s](const Lattice &lat, cx z, cx w, const SeriesConfig &cfg) { return s(V{lat, cfg}, z, w); };
        };
        evaluators[name + ".lhs"] = wrap(std::move(lhs));
        evaluators[name + ".rhs"] = wrap(std::move(rhs));
        suite.push_back({name, arity, name + ".lhs", name + ".rhs", tol, std::move(excl), applies});
    }
    void add(const std::string &name, double tol, std::vector<Locus> excl, Side lhs, Side rhs)
    {
        add(name, 1, tol, std::move(excl), Applicability::all, std::move(lhs), std::move(rhs));
    }
};

constexpr double tol_default = 1e-9;
constexpr double tol_fd = 1e-6;
constexpr double tol_partial_fraction = 1e-5;

void add_core(Registry &R)
{
    R.add("wp_lambda_independence", tol_default, origin,
          [](const V &v, cx z, cx) { return each([&](H h) { return v.wp_via(h, z); }); },
          [](const V &v, cx z, cx) { return Vec(3, v.wp(z)); });
    R.add("wp_even", tol_default, origin, [](const V &v, cx z, cx) { return Vec{v.wp(-z)}; },
          [](const V &v, cx z, cx) { return Vec{v.wp(z)}; });
    R.add("wp_periodicity", tol_default, origin,
          [](const V &v, cx z, cx) {
              const cx a = 2.0 * v.om(H1), b = 2.0 * v.om(H3);
              return Vec{v.wp(z + a), v.wp(z + b), v.wp(z - a + 2.0 * b)};
          },
          [](const V &v, cx z, cx) { return Vec(3, v.wp(z)); });
    // In factored form: the expanded cubic 4 wp^3 - g2 wp - g3 cancels near the
    // half-periods once two roots nearly coincide. g2 and g3 are checked
    // against the roots in deltas_recover_invariants.
    R.add("wp_differential_equation", tol_default, all_special,
          [](const V &v, cx z, cx) {
              const cx pp = v.wpp(z);
              return Vec{pp * pp};
          },
          [](const V &v, cx z, cx) {
              const cx p = v.wp(z);
              return Vec{4.0 * (p - v.e(H1)) * (p - v.e(H2)) * (p - v.e(H3))};
          });
    R.add("zeta_odd", tol_default, origin, [](const V &v, cx z, cx) { return Vec{v.zeta(-z)}; },
          [](const V &v, cx z, cx) { return Vec{-v.zeta(z)}; });
    R.add("zeta_quasi_periodicity", tol_default, origin,
          [](const V &v, cx z, cx) {
              return Vec{v.zeta(z + 2.0 * v.om(H1)) - v.zeta(z), v.zeta(z + 2.0 * v.om(H3)) - v.zeta(z)};
          },
          [](const V &v, cx, cx) { return Vec{2.0 * v.eta(H1), 2.0 * v.eta(H3)}; });
    R.add("zeta_derivative", tol_fd, origin,
          [](const V &v, cx z, cx) { return Vec{fd([&](cx u) { return v.zeta(u); }, z)}; },
          [](const V &v, cx z, cx) { return Vec{-v.wp(z)}; });
    R.add("legendre_relation", tol_default, origin,
          [](const V &v, cx, cx) { return Vec{v.eta(H1) * v.om(H3) - v.eta(H3) * v.om(H1)}; },
          [](const V &, cx, cx) { return Vec{cx{0.0, std::numbers::pi / 2.0}}; });
    R.add("frobenius_stickelberger", 2, tol_default,
          {at_origin(), {0, 1, 0.0, 0.0}, {1, -1, 0.0, 0.0}, {1, 1, 0.0, 0.0}}, Applicability::all,
          [](const V &v, cx z, cx w) { return Vec{v.wp(z) - v.wp(w)}; },
          [](const V &v, cx z, cx w) {
              const cx sz = v.sigma(z), sw = v.sigma(w);
              return Vec{v.sigma(z + w) * v.sigma(w - z) / (sz * sz * sw * sw)};
          });
    R.add("sigma_odd", tol_default, origin, [](const V &v, cx z, cx) { return Vec{v.sigma(-z)}; },
          [](const V &v, cx z, cx) { return Vec{-v.sigma(z)}; });
    R.add("sigma_aux_shift_forms", tol_default, halves,
          [](const V &v, cx z, cx) { return repeat(each([&](H h) { return v.saux(h, z); }), 2); },
          [](const V &v, cx z, cx) {
              return concat(each([&](H h) {
                                return sigma_aux_shifted(v.lat, h, z, SigmaShiftForm::plus, v.cfg);
                            }),
                            each([&](H h) {
                                return sigma_aux_shifted(v.lat, h, z, SigmaShiftForm::minus, v.cfg);
                            }));
          });
    R.add("sigma_aux_even", tol_default, halves,
          [](const V &v, cx z, cx) { return each([&](H h) { return v.saux(h, -z); }); },
          [](const V &v, cx z, cx) { return each([&](H h) { return v.saux(h, z); }); });
    R.add("wp_sigma_quotient", tol_default, all_special,
          [](const V &v, cx z, cx) { return each([&](H h) { return v.wp(z) - v.e(h); }); },
          [](const V &v, cx z, cx) {
              return each([&](H h) {
                  const cx q = v.saux(h, z) / v.sigma(z);
                  return q * q;
              });
          });
    R.add("wp_prime_sigma_product", tol_default, all_special, [](const V &v, cx z, cx) { return Vec{v.wpp(z)}; },
          [](const V &v, cx z, cx) {
              const cx s = v.sigma(z);
              return Vec{-2.0 * v.saux(H1, z) * v.saux(H2, z) * v.saux(H3, z) / (s * s * s)};
          });
    R.add("wp_duplication", tol_default, all_special, [](const V &v, cx z, cx) { return Vec{v.wp(2.0 * z)}; },
          [](const V &v, cx z, cx) {
              const cx q = v.wp2(z) / (2.0 * v.wpp(z));
              return Vec{q * q - 2.0 * v.wp(z)};
          });
}

void add_aux_zeta(Registry &R)
{
    R.add("zeta_aux_shift_theta", tol_default, halves,
          [](const V &v, cx z, cx) { return each([&](H h) { return v.zl(h, z, ZetaRoute::shift); }); },
          [](const V &v, cx z, cx) { return each([&](H h) { return v.zl(h, z); }); });
    R.add("zeta_aux_qseries_theta", tol_default, halves,
          [](const V &v, cx z, cx) { return each([&](H h) { return v.zl(h, z, ZetaRoute::qseries); }); },
          [](const V &v, cx z, cx) { return each([&](H h) { return v.zl(h, z); }); });
    R.add("zeta_aux_partial_fraction", tol_partial_fraction, halves,
          [](const V &v, cx z, cx) { return each([&](H h) { return v.zl(h, z, ZetaRoute::partial_fraction); }); },
          [](const V &v, cx z, cx) { return each([&](H h) { return v.zl(h, z); }); });
    for (QSeriesForm form : {QSeriesForm::exponential, QSeriesForm::cosine}) {
        const std::string stem = form == QSeriesForm::exponential ? "prop23_exponential_l" : "prop23_cosine_l";
        for (H h : all_half_periods) {
            R.add(stem + std::to_string(static_cast<int>(h)), tol_default, {at_half(h)},
                  [h, form](const V &v, cx z, cx) { return Vec{val(zeta_aux_qseries(v.lat, h, z, form, v.cfg))}; },
                  [h](const V &v, cx z, cx) { return Vec{v.zl(h, z)}; });
        }
    }
    R.add("prop23_cosine_equals_exponential", tol_default, halves,
          [](const V &v, cx z, cx) {
              return each([&](H h) { return val(zeta_aux_qseries(v.lat, h, z, QSeriesForm::cosine, v.cfg)); });
          },
          [](const V &v, cx z, cx) {
              return each(
                  [&](H h) { return val(zeta_aux_qseries(v.lat, h, z, QSeriesForm::exponential, v.cfg)); });
          });
    R.add("zeta_aux_odd", tol_default, halves,
          [](const V &v, cx z, cx) { return each([&](H h) { return v.zl(h, -z); }); },
          [](const V &v, cx z, cx) { return each([&](H h) { return -v.zl(h, z); }); });
    R.add("zeta_aux_quasi_periodicity", tol_default, halves,
          [](const V &v, cx z, cx) {
              Vec out;
              for (H h : all_half_periods)
                  for (H k : all_half_periods)
                      out.push_back(v.zl(h, z + 2.0 * v.om(k), ZetaRoute::shift) - v.zl(h, z));
              return out;
          },
          [](const V &v, cx, cx) {
              Vec out;
              for (int i = 0; i < 3; ++i)
                  for (H k : all_half_periods)
                      out.push_back(2.0 * v.eta(k));
              return out;
          });
    R.add("zeta_aux_derivative", tol_fd, halves,
          [](const V &v, cx z, cx) {
              return each([&](H h) { return fd([&](cx u) { return v.zl(h, u); }, z); });
          },
          [](const V &v, cx z, cx) { return each([&](H h) { return -v.wp(z + v.om(h)); }); });
}

void add_delta(Registry &R)
{
    auto prod = [](const V &v, cx z, cx) { return each([&](H h) { return v.d(h, z); }); };

    R.add("def25_delta_zeta_difference", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return concat(each([&](H h) { return v.d(h, z, DeltaRoute::zeta_diff); }),
                            each([&](H h) { return v.zeta(z + v.om(h)) - v.zeta(z) - v.eta(h); }));
          },
          [prod](const V &v, cx z, cx w) { return repeat(prod(v, z, w), 2); });
    R.add("eq3_delta_wp_quotient", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return each([&](H h) { return 0.5 * v.wpp(z) / (v.wp(z) - v.e(h)); });
          },
          prod);
    R.add("thm26_sigma_shift_form", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return each([&](H h) {
                  const auto [a, b] = complement(h);
                  return v.sigma(v.om(h)) / (v.sigma(v.om(a)) * v.sigma(v.om(b))) * v.sigma(z + v.om(a)) *
                         v.sigma(z + v.om(b)) / (v.sigma(z - v.om(h)) * v.sigma(z));
              });
          },
          prod);
    R.add("eq7_delta_theta_log_derivative", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return each([&](H h) {
                  return (v.tdlog(tidx(h), z) - v.tdlog(ThetaIndex::plain, z)) / (2.0 * v.lat.omega1());
              });
          },
          prod);
    R.add("eq8_delta_theta_quotient", tol_default, all_special,
          [](const V &v, cx z, cx) { return each([&](H h) { return v.d(h, z, DeltaRoute::theta_quotient); }); },
          prod);
    R.add("delta_odd", tol_default, all_special,
          [](const V &v, cx z, cx) { return each([&](H h) { return v.d(h, -z); }); },
          [](const V &v, cx z, cx) { return each([&](H h) { return -v.d(h, z); }); });
    R.add("delta_ellipticity", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return concat(each([&](H h) { return v.d(h, z + 2.0 * v.om(H1)); }),
                            each([&](H h) { return v.d(h, z + 2.0 * v.om(H3)); }));
          },
          [prod](const V &v, cx z, cx w) { return repeat(prod(v, z, w), 2); });
    R.add("eq4_delta_product", tol_default, all_special,
          [](const V &v, cx z, cx) { return cyclic([&](H l, H m, H) { return v.d(l, z) * v.d(m, z); }); },
          [](const V &v, cx z, cx) { return cyclic([&](H, H, H n) { return v.wp(z) - v.e(n); }); });
    R.add("eq5_wp_prime_delta_product", tol_default, all_special,
          [](const V &v, cx z, cx) { return Vec(2, v.wpp(z)); },
          [](const V &v, cx z, cx) {
              const cx zz = v.zeta(z);
              return Vec{2.0 * v.d(H1, z) * v.d(H2, z) * v.d(H3, z),
                         2.0 * (v.zl(H1, z) - zz) * (v.zl(H2, z) - zz) * (v.zl(H3, z) - zz)};
          });
    R.add("eq6_delta_ratio", tol_default, all_special,
          [](const V &v, cx z, cx) { return ordered_pairs([&](H l, H m, H) { return v.d(l, z) / v.d(m, z); }); },
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H) {
                  const cx q = v.saux(m, z) / v.saux(l, z);
                  return q * q;
              });
          });
    R.add("eq6_delta_sigma_squared_constant", tol_default, all_special,
          [](const V &v, cx z, cx) {
              const cx s = v.sigma(z);
              Vec out = each([&](H h) {
                  const cx a = v.saux(h, z);
                  return v.d(h, z) * a * a * s * s;
              });
              out.push_back(out[0]);
              out.push_back(out[0]);
              return out;
          },
          [](const V &v, cx z, cx) {
              const cx s = v.sigma(z);
              const cx p = -v.saux(H1, z) * v.saux(H2, z) * v.saux(H3, z) * s;
              return Vec{p, p, p, 0.5 * v.wpp(z) * s * s * s * s, -0.5 * v.sigma(2.0 * z)};
          });
    R.add("thm27_delta_prime_forms", tol_default, all_special,
          [](const V &v, cx z, cx) { return repeat(each([&](H h) { return v.dp(h, z); }), 3); },
          [](const V &v, cx z, cx) {
              const cx p = v.wp(z);
              return concat(concat(each([&](H h) { return p - v.wp(z + v.om(h)); }), each([&](H h) {
                                       const auto [a, b] = complement(h);
                                       const cx el = v.e(h);
                                       return p - el - (el - v.e(a)) * (el - v.e(b)) / (p - el);
                                   })),
                            each([&](H h) {
                                const auto [a, b] = complement(h);
                                return 0.5 * (v.wp2(z) - 4.0 * (p - v.e(a)) * (p - v.e(b))) / (p - v.e(h));
                            }));
          });
    R.add("thm27_delta_prime_finite_difference", tol_fd, all_special,
          [](const V &v, cx z, cx) {
              return each([&](H h) { return fd([&](cx u) { return v.d(h, u); }, z); });
          },
          [](const V &v, cx z, cx) { return each([&](H h) { return v.dp(h, z); }); });
    R.add("eq9_delta_log_derivative", tol_default, all_special,
          [](const V &v, cx z, cx) { return each([&](H h) { return v.dp(h, z) / v.d(h, z); }); },
          [](const V &v, cx z, cx) {
              return each([&](H h) {
                  const auto [a, b] = complement(h);
                  return v.zl(a, z) + v.zl(b, z) - v.zl(h, z) - v.zeta(z);
              });
          });
    R.add("eq10_half_log_derivatives", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return cyclic([&](H l, H m, H) {
                  return 0.5 * v.dp(l, z) / v.d(l, z) + 0.5 * v.dp(m, z) / v.d(m, z);
              });
          },
          [](const V &v, cx z, cx) { return cyclic([&](H, H, H n) { return v.d(n, z); }); });
    R.add("eq11_delta_sums", tol_default, all_special,
          [](const V &v, cx z, cx) { return Vec(4, v.wp2(z) / v.wpp(z)); },
          [](const V &v, cx z, cx) {
              cx s1 = 0, s2 = 0, s3 = 0, s4 = 0;
              for (H h : all_half_periods) {
                  s1 += v.dp(h, z) / v.d(h, z);
                  s2 += v.d(h, z);
                  s3 += v.zl(h, z);
                  s4 += v.zeta(z + v.om(h));
              }
              return Vec{s1, s2, s3 - 3.0 * v.zeta(z), s4 - 3.0 * v.zeta(z)};
          });
    R.add("eq11_duplication", tol_default, all_special,
          [](const V &v, cx z, cx) { return Vec{v.wp2(z) / v.wpp(z)}; },
          [](const V &v, cx z, cx) { return Vec{2.0 * v.zeta(2.0 * z) - 4.0 * v.zeta(z)}; });
    R.add("eq13_delta_squared", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return each([&](H h) {
                  const cx d = v.d(h, z);
                  return d * d;
              });
          },
          [](const V &v, cx z, cx) {
              const cx p = v.wp(z);
              return each([&](H h) {
                  const auto [a, b] = complement(h);
                  return (p - v.e(a)) * (p - v.e(b)) / (p - v.e(h));
              });
          });
}

void add_delta2(Registry &R)
{
    auto prod = [](const V &v, cx z, cx) { return ordered_pairs([&](H l, H m, H) { return v.d2(l, m, z); }); };

    R.add("def28_delta2_difference", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return concat(concat(ordered_pairs([&](H l, H m, H) { return v.d(l, z) - v.d(m, z); }),
                                   ordered_pairs([&](H l, H m, H) { return v.zl(l, z) - v.zl(m, z); })),
                            ordered_pairs([&](H l, H m, H) {
                                return v.zeta(z + v.om(l)) - v.zeta(z + v.om(m)) - v.eta(l) + v.eta(m);
                            }));
          },
          [prod](const V &v, cx z, cx w) { return repeat(prod(v, z, w), 3); });
    R.add("eq12_delta2_wp_form", tol_default, all_special,
          [](const V &v, cx z, cx) {
              const cx p = v.wp(z);
              return ordered_pairs([&](H l, H m, H) {
                  return 0.5 * (v.e(l) - v.e(m)) * v.wpp(z) / ((p - v.e(l)) * (p - v.e(m)));
              });
          },
          prod);
    R.add("eq12_delta2_sigma_forms", tol_default, all_special,
          [](const V &v, cx z, cx) {
              const cx s = v.sigma(z);
              return concat(ordered_pairs([&](H l, H m, H n) {
                                const cx sl = v.saux(l, z), sm = v.saux(m, z), sn = v.saux(n, z);
                                return sl * sn / (sm * s) - sm * sn / (sl * s);
                            }),
                            ordered_pairs([&](H l, H m, H n) {
                                const cx sl = v.saux(l, z), sm = v.saux(m, z);
                                return v.saux(n, z) / s * (sl / sm - sm / sl);
                            }));
          },
          [prod](const V &v, cx z, cx w) { return repeat(prod(v, z, w), 2); });
    R.add("eq12_delta2_theta_log_derivative", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H) {
                  return (v.tdlog(tidx(l), z) - v.tdlog(tidx(m), z)) / (2.0 * v.lat.omega1());
              });
          },
          prod);
    R.add("eq12_delta2_theta_products", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H) {
                  return v.d(l, z, DeltaRoute::theta_quotient) - v.d(m, z, DeltaRoute::theta_quotient);
              });
          },
          prod);
    R.add("thm29_delta2_sigma_quotient", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H) { return v.d2(l, m, z, DeltaRoute::sigma_quotient); });
          },
          prod);
    R.add("delta2_theta_quotient", tol_default, all_special,
          [](const V &v, cx z, cx) {
              const Delta2ThetaQuotient tq(v.lat, v.cfg);
              return ordered_pairs([&](H l, H m, H) { return val(tq(l, m, z)); });
          },
          prod);
    R.add("delta2_antisymmetry", tol_default, all_special,
          [](const V &v, cx z, cx) { return ordered_pairs([&](H l, H m, H) { return v.d2(l, m, z); }); },
          [](const V &v, cx z, cx) { return ordered_pairs([&](H l, H m, H) { return -v.d2(m, l, z); }); });
    R.add("eq13_delta2_root_form", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H n) {
                  return (v.e(m) - v.e(l)) * v.r(n, z) / (v.r(l, z) * v.r(m, z));
              });
          },
          prod);
    R.add("eq13_delta2_squared", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H) {
                  const cx d = v.d2(l, m, z);
                  return d * d;
              });
          },
          [](const V &v, cx z, cx) {
              const cx p = v.wp(z);
              return ordered_pairs([&](H l, H m, H n) {
                  const cx de = v.e(m) - v.e(l);
                  return de * de * (p - v.e(n)) / ((p - v.e(l)) * (p - v.e(m)));
              });
          });
    R.add("eq14_delta2_times_delta_constant", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H n) { return v.d2(l, m, z) * v.d(n, z); });
          },
          [](const V &v, cx, cx) { return ordered_pairs([&](H l, H m, H) { return v.e(l) - v.e(m); }); });
    R.add("eq14_delta_reciprocal", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return concat(repeat(each([&](H h) { return v.d(h, z); }), 2),
                            ordered_pairs([&](H, H, H n) { return 1.0 / v.d(n, z); }));
          },
          [](const V &v, cx z, cx) {
              return concat(concat(each([&](H h) {
                                       const auto [a, b] = complement(h);
                                       return (v.e(a) - v.e(b)) / v.d2(a, b, z);
                                   }),
                                   each([&](H h) {
                                       const auto [a, b] = complement(h);
                                       return (v.e(a) - v.e(b)) / (v.d(a, z) - v.d(b, z));
                                   })),
                            ordered_pairs([&](H l, H m, H) { return v.d2(l, m, z) / (v.e(l) - v.e(m)); }));
          });
    R.add("eq15_zeta_form", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H n) {
                  return (v.zl(l, z) - v.zl(m, z)) * (v.zl(n, z) - v.zeta(z));
              });
          },
          [](const V &v, cx, cx) { return ordered_pairs([&](H l, H m, H) { return v.e(l) - v.e(m); }); });
    R.add("sigma_identity", tol_default, origin,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H) {
                  const cx a = v.saux(l, z), b = v.saux(m, z);
                  return a * a - b * b;
              });
          },
          [](const V &v, cx z, cx) {
              const cx s = v.sigma(z);
              return ordered_pairs([&](H l, H m, H) { return (v.e(m) - v.e(l)) * s * s; });
          });
    R.add("eq16_wp_from_delta2", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return repeat(ordered_pairs([&](H l, H m, H n) {
                                return (v.e(l) - v.e(n)) * (v.e(m) - v.e(n)) / (v.d2(l, n, z) * v.d2(m, n, z));
                            }),
                            2);
          },
          [](const V &v, cx z, cx) {
              return concat(ordered_pairs([&](H, H, H n) { return v.wp(z) - v.e(n); }),
                            ordered_pairs([&](H, H, H n) {
                                const cx q = v.saux(n, z) / v.sigma(z);
                                return q * q;
                            }));
          });
    R.add("eq17_sigma_ratio_from_delta2", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H n) {
                  return v.d2(l, n, z) / (v.e(l) - v.e(n)) * (v.e(m) - v.e(n)) / v.d2(m, n, z);
              });
          },
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H) {
                  const cx q = v.saux(m, z) / v.saux(l, z);
                  return q * q;
              });
          });
    R.add("delta2_triple_product", tol_default, all_special,
          [](const V &v, cx z, cx) {
              const cx d1 = v.d(H1, z), d2 = v.d(H2, z), d3 = v.d(H3, z);
              const cx z1 = v.zl(H1, z), z2 = v.zl(H2, z), z3 = v.zl(H3, z);
              return Vec{v.d2(H1, H2, z) * v.d2(H2, H3, z) * v.d2(H3, H1, z), (d1 - d2) * (d2 - d3) * (d3 - d1),
                         (z1 - z2) * (z2 - z3) * (z3 - z1)};
          },
          [](const V &v, cx z, cx) {
              const cx e1 = v.e(H1), e2 = v.e(H2), e3 = v.e(H3);
              return Vec(3, 2.0 * (e1 - e2) * (e2 - e3) * (e3 - e1) / v.wpp(z));
          });
    R.add("delta2_three_term", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return cyclic([&](H l, H m, H n) { return v.d2(l, m, z) + v.d2(m, n, z); });
          },
          [](const V &v, cx z, cx) { return cyclic([&](H l, H, H n) { return -v.d2(n, l, z); }); });
    R.add("thm210_delta2_prime_forms", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return repeat(ordered_pairs([&](H l, H m, H) { return v.d2p(l, m, z); }), 4);
          },
          [](const V &v, cx z, cx) {
              const cx p = v.wp(z), pp = v.wpp(z), p2 = v.wp2(z);
              Vec out = ordered_pairs([&](H l, H m, H) { return v.wp(z + v.om(m)) - v.wp(z + v.om(l)); });
              out = concat(out, ordered_pairs([&](H l, H m, H n) {
                               const cx el = v.e(l), em = v.e(m), en = v.e(n);
                               return (el - em) * ((el - en) / (el - p) + (em - en) / (em - p) - 1.0);
                           }));
              out = concat(out, ordered_pairs([&](H l, H m, H n) {
                               const cx el = v.e(l), em = v.e(m), en = v.e(n);
                               return (el - em) * (v.g2() / 4.0 + 2.0 * el * em + 2.0 * en * p - p * p) /
                                      ((p - el) * (p - em));
                           }));
              return concat(out, ordered_pairs([&](H l, H m, H n) {
                                return 2.0 * (v.e(l) - v.e(m)) * (pp * pp - p2 * (p - v.e(n))) / (pp * pp);
                            }));
          });
    R.add("thm210_delta2_prime_finite_difference", tol_fd, all_special,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H) { return fd([&](cx u) { return v.d2(l, m, u); }, z); });
          },
          [](const V &v, cx z, cx) { return ordered_pairs([&](H l, H m, H) { return v.d2p(l, m, z); }); });
    R.add("delta2_log_derivative", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H) { return v.d2p(l, m, z) / v.d2(l, m, z); });
          },
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H n) {
                  return v.zeta(z) + v.zl(n, z) - v.zl(l, z) - v.zl(m, z);
              });
          });
    R.add("delta2_half_log_derivatives", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H) { return (v.e(m) - v.e(l)) / v.d2(l, m, z); });
          },
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H n) {
                  return 0.5 * v.d2p(l, n, z) / v.d2(l, n, z) + 0.5 * v.d2p(m, n, z) / v.d2(m, n, z);
              });
          });
    R.add("delta2_wp_second_over_prime", tol_default, all_special,
          [](const V &v, cx z, cx) { return Vec(4, -v.wp2(z) / v.wpp(z)); },
          [](const V &v, cx z, cx) {
              cx s1 = 0, s2 = 0, s3 = 0, s4 = 0;
              for (cx t : cyclic([&](H l, H m, H) { return v.d2p(l, m, z) / v.d2(l, m, z); }))
                  s1 += t;
              for (cx t : cyclic([&](H l, H m, H) { return (v.e(m) - v.e(l)) / v.d2(l, m, z); }))
                  s2 += t;
              for (H h : all_half_periods) {
                  s3 += v.zl(h, z);
                  s4 += v.zeta(z + v.om(h));
              }
              return Vec{s1, s2, 3.0 * v.zeta(z) - s3, 3.0 * v.zeta(z) - s4};
          });
    R.add("eq20_delta2_wp_form", tol_default, all_special,
          [](const V &v, cx z, cx) {
              return ordered_pairs([&](H l, H m, H) { return v.d2(l, m, z, DeltaRoute::zeta_diff); });
          },
          [](const V &v, cx z, cx) {
              const cx p = v.wp(z), pp = v.wpp(z);
              return ordered_pairs([&](H l, H m, H n) { return 2.0 * (v.e(l) - v.e(m)) * (p - v.e(n)) / pp; });
          });
}

// Lattice constants compared after adding a fixed real offset of the size of
// the constants, so that values that vanish by symmetry (e2 on the square
// lattice, g3 on the square, g2 on the rhombic) are compared on the scale of
// the lattice rather than against rounding noise.
void add_constants(Registry &R)
{
    auto scale = [](const V &v) { return std::abs(v.e(H1) - v.e(H3)); };

    R.add("eq18_e_differences", tol_default, all_special,
          [](const V &v, cx, cx) {
              return repeat(Vec{v.e(H1) - v.e(H2), v.e(H1) - v.e(H3), v.e(H2) - v.e(H3)}, 2);
          },
          [](const V &v, cx z, cx) {
              const auto &nw = v.lat.constants().nullwerte;
              const cx c = std::numbers::pi / (2.0 * v.lat.omega1());
              const cx c2 = c * c;
              return Vec{v.d2(H1, H2, z) * v.d(H3, z),
                         v.d2(H1, H3, z) * v.d(H2, z),
                         v.d2(H2, H3, z) * v.d(H1, z),
                         c2 * std::pow(nw.theta3, 4),
                         c2 * std::pow(nw.theta2, 4),
                         c2 * std::pow(nw.theta1, 4)};
          });
    R.add("deltas_recover_e_values", tol_default, all_special,
          [scale](const V &v, cx z, cx) {
              const double s = scale(v);
              const DeltaConstants dc = constants_from_deltas(v.lat, z, v.cfg);
              Vec out = each([&](H h) { return dc.e[slot(h)] + s; });
              out = concat(out, each([&](H h) {
                               const auto [a, b] = complement(h);
                               return (v.d2(h, a, z) * v.d(b, z) + v.d2(h, b, z) * v.d(a, z)) / 3.0 + s;
                           }));
              return concat(out, each([&](H h) {
                                const auto [a, b] = complement(h);
                                const cx dl = v.d(h, z), da = v.d(a, z), db = v.d(b, z);
                                return (dl * da + dl * db - 2.0 * da * db) / 3.0 + s;
                            }));
          },
          [scale](const V &v, cx, cx) {
              const double s = scale(v);
              return repeat(each([&](H h) { return v.e(h) + s; }), 3);
          });
    R.add("deltas_recover_invariants", tol_default, all_special,
          [scale](const V &v, cx z, cx) {
              const double s = scale(v);
              const DeltaConstants dc = constants_from_deltas(v.lat, z, v.cfg);
              const cx d1 = v.d(H1, z), d2 = v.d(H2, z), d3 = v.d(H3, z);
              const cx e1 = (d1 * d2 + d1 * d3 - 2.0 * d2 * d3) / 3.0;
              const cx e2 = (d2 * d1 + d2 * d3 - 2.0 * d1 * d3) / 3.0;
              const cx e3 = -e1 - e2;
              return Vec{dc.g2 + s * s, 2.0 * (e1 * e1 + e2 * e2 + e3 * e3) + s * s, dc.g3 + s * s * s,
                         4.0 * e1 * e2 * e3 + s * s * s};
          },
          [scale](const V &v, cx, cx) {
              const double s = scale(v);
              return Vec{v.g2() + s * s, v.g2() + s * s, v.g3() + s * s * s, v.g3() + s * s * s};
          });
    R.add("discriminant_from_deltas", tol_default, all_special,
          [](const V &v, cx z, cx) {
              const cx d1 = v.d(H1, z), d2 = v.d(H2, z), d3 = v.d(H3, z);
              const cx p = d1 * d2 * d3 * v.d2(H1, H2, z) * v.d2(H2, H3, z) * v.d2(H3, H1, z);
              const cx q = d1 * d2 * d3 * (d1 - d2) * (d2 - d3) * (d3 - d1);
              return Vec{constants_from_deltas(v.lat, z, v.cfg).disc, 16.0 * p * p, 16.0 * q * q};
          },
          [](const V &v, cx, cx) {
              const cx g2 = v.g2(), g3 = v.g3();
              return Vec(3, g2 * g2 * g2 - 27.0 * g3 * g3);
          });
    R.add("modulus_from_deltas", tol_default, all_special,
          [](const V &v, cx z, cx) {
              const cx d1 = v.d(H1, z), d2 = v.d(H2, z), d3 = v.d(H3, z), zz = v.zeta(z);
              const cx z1 = v.zl(H1, z), z2 = v.zl(H2, z), z3 = v.zl(H3, z);
              return Vec{d1 * v.d2(H2, H3, z) / (d2 * v.d2(H1, H3, z)),
                         d1 * (d2 - d3) / (d2 * (d1 - d3)),
                         (z1 - zz) * (z2 - z3) / ((z2 - zz) * (z1 - z3)),
                         d3 * v.d2(H1, H2, z) / (d2 * v.d2(H1, H3, z)),
                         d3 * (d1 - d2) / (d2 * (d1 - d3)),
                         (z3 - zz) * (z1 - z2) / ((z2 - zz) * (z1 - z3))};
          },
          [](const V &v, cx, cx) {
              const auto &c = v.lat.constants();
              return Vec{c.ksq, c.ksq, c.ksq, c.kpsq, c.kpsq, c.kpsq};
          });
}

// Integral formulas checked by differentiating their closed forms.
void add_integrals(Registry &R)
{
    R.add("eq19_delta_integral", tol_fd, all_special,
          [](const V &v, cx z, cx) {
              return concat(each([&](H h) {
                                return 0.5 * fd_log([&](cx u) { return v.wp(u) - v.e(h); }, z);
                            }),
                            ordered_pairs([&](H l, H m, H) {
                                return 0.5 * fd_log([&](cx u) { return (v.wp(u) - v.e(l)) / (v.wp(u) - v.e(m)); },
                                                    z);
                            }));
          },
          [](const V &v, cx z, cx) {
              return concat(each([&](H h) { return v.d(h, z); }),
                            ordered_pairs([&](H l, H m, H) { return v.d2(l, m, z); }));
          });
    R.add("eq19_root_integrands", tol_fd, all_special,
          [](const V &v, cx z, cx) {
              return concat(each([&](H h) {
                                return -0.5 * fd_log([&](cx u) { return v.wp(u) - v.e(h); }, z);
                            }),
                            ordered_pairs([&](H l, H m, H) {
                                return fd_log([&](cx u) { return (v.wp(u) - v.e(l)) / (v.wp(u) - v.e(m)); }, z) /
                                       (2.0 * (v.e(m) - v.e(l)));
                            }));
          },
          [](const V &v, cx z, cx) {
              return concat(each([&](H h) {
                                const auto [a, b] = complement(h);
                                return v.r(a, z) * v.r(b, z) / v.r(h, z);
                            }),
                            ordered_pairs([&](H l, H m, H n) { return v.r(n, z) / (v.r(l, z) * v.r(m, z)); }));
          });
    R.add("eq19_reciprocal_integrands", tol_fd, all_special,
          [](const V &v, cx z, cx) {
              return concat(each([&](H h) {
                                const auto [a, b] = complement(h);
                                return fd_log([&](cx u) { return (v.wp(u) - v.e(a)) / (v.wp(u) - v.e(b)); }, z) /
                                       (2.0 * (v.e(a) - v.e(b)));
                            }),
                            ordered_pairs([&](H l, H m, H n) {
                                return fd_log([&](cx u) { return v.wp(u) - v.e(n); }, z) /
                                       (2.0 * (v.e(l) - v.e(m)));
                            }));
          },
          [](const V &v, cx z, cx) {
              return concat(each([&](H h) { return 1.0 / v.d(h, z); }),
                            ordered_pairs([&](H l, H m, H) { return 1.0 / v.d2(l, m, z); }));
          });
    R.add("eq20_integrals", tol_fd, all_special,
          [](const V &v, cx z, cx) {
              auto lr = [&](H a, H b) {
                  return fd_log([&](cx u) { return (v.wp(u) - v.e(a)) / (v.wp(u) - v.e(b)); }, z);
              };
              Vec out = ordered_pairs([&](H l, H m, H) { return lr(l, m) / (4.0 * (v.e(l) - v.e(m))); });
              cx s = 0;
              for (cx t : cyclic([&](H l, H m, H) { return lr(l, m) / (12.0 * (v.e(l) - v.e(m))); }))
                  s += t;
              out.push_back(s);
              return out;
          },
          [](const V &v, cx z, cx) {
              const cx p = v.wp(z), pp = v.wpp(z);
              Vec out = ordered_pairs([&](H, H, H n) { return (p - v.e(n)) / pp; });
              out.push_back(p / pp);
              return out;
          });
    // 1/wp' vanishes to third order on the lattice while each logarithm's
    // derivative grows like 1/u, so near lattice points the result is a
    // difference of terms up to 1e7 times larger than itself; the origin gets
    // a wider guard here.
    R.add("eq20_reciprocal_wp_prime_integral", tol_fd, {{1, 0, 0.0, 0.0, 5.0}, at_half(H1), at_half(H2), at_half(H3)},
          [](const V &v, cx z, cx) {
              auto lr = [&](H a, H b) {
                  return fd_log([&](cx u) { return (v.wp(u) - v.e(a)) / (v.wp(u) - v.e(b)); }, z);
              };
              auto lg = [&](H a) { return fd_log([&](cx u) { return v.wp(u) - v.e(a); }, z); };
              const cx e1 = v.e(H1), e2 = v.e(H2), e3 = v.e(H3);
              return Vec{lr(H1, H3) / (4.0 * (e1 - e2) * (e1 - e3)) - lr(H2, H3) / (4.0 * (e1 - e2) * (e2 - e3)),
                         lg(H1) / (4.0 * (e1 - e2) * (e1 - e3)) + lg(H2) / (4.0 * (e2 - e3) * (e2 - e1)) +
                             lg(H3) / (4.0 * (e3 - e1) * (e3 - e2))};
          },
          [](const V &v, cx z, cx) { return Vec(2, 1.0 / v.wpp(z)); });
}

void add_three_term(Registry &R)
{
    auto terms = [](const V &v, cx u, cx a, cx b, cx c) {
        auto t = [&](cx x, cx y, cx w) {
            return v.sigma(u + x) * v.sigma(u - x) * v.sigma(y + w) * v.sigma(y - w);
        };
        return std::array<cx, 3>{t(a, b, c), t(b, c, a), t(c, a, b)};
    };
    R.add("weierstrass_three_term", tol_default, halves,
          [terms](const V &v, cx z, cx) {
              const auto t = terms(v, z, v.om(H1), v.om(H2), v.om(H3));
              return Vec{t[0] + t[1]};
          },
          [terms](const V &v, cx z, cx) {
              const auto t = terms(v, z, v.om(H1), v.om(H2), v.om(H3));
              return Vec{-t[2]};
          });
    // b and c fixed generic points, a the second sample
    constexpr double bx = 0.31, by = 0.17, cxr = -0.23, cy = 0.38;
    auto fixed = [](const V &v, double x, double y) {
        return 2.0 * x * v.lat.omega1() + 2.0 * y * v.lat.omega3();
    };
    R.add("weierstrass_three_term_general", 2, tol_default,
          {{1, 1, 0.0, 0.0}, {1, -1, 0.0, 0.0}, {1, 0, bx, by}, {1, 0, -bx, -by}, {1, 0, cxr, cy},
           {1, 0, -cxr, -cy}},
          Applicability::all,
          [terms, fixed](const V &v, cx z, cx w) {
              const auto t = terms(v, z, w, fixed(v, bx, by), fixed(v, cxr, cy));
              return Vec{t[0] + t[1]};
          },
          [terms, fixed](const V &v, cx z, cx w) {
              const auto t = terms(v, z, w, fixed(v, bx, by), fixed(v, cxr, cy));
              return Vec{-t[2]};
          });
}

void add_jacobi(Registry &R)
{
    const Locus pole3 = at_half(H3);

    R.add("thm211_transformations", 1, tol_default, all_special, Applicability::rectangular,
          [](const V &v, cx z, cx) {
              const auto rows = transformation_rows(jacobi_params(v.lat, v.cfg), z, v.cfg);
              Vec out;
              for (const auto &r : rows)
                  out.push_back(aligned_sqrt(r.lhs, r.ref));
              for (const auto &r : rows)
                  out.push_back(aligned_sqrt(r.mid, r.ref));
              return out;
          },
          [](const V &v, cx z, cx) {
              const auto rows = transformation_rows(jacobi_params(v.lat, v.cfg), z, v.cfg);
              Vec out;
              for (const auto &r : rows)
                  out.push_back(r.rhs);
              return repeat(out, 2);
          });
    R.add("thm211_squared", tol_default, all_special,
          [](const V &v, cx z, cx) {
              const auto rows = transformation_rows(jacobi_params(v.lat, v.cfg), z, v.cfg);
              Vec out;
              for (const auto &r : rows)
                  out.push_back(r.lhs);
              for (const auto &r : rows)
                  out.push_back(r.mid);
              return out;
          },
          [](const V &v, cx z, cx) {
              const auto rows = transformation_rows(jacobi_params(v.lat, v.cfg), z, v.cfg);
              Vec out;
              for (const auto &r : rows)
                  out.push_back(r.rhs * r.rhs);
              return repeat(out, 2);
          });
    R.add("cor212_delta_jacobi", 1, tol_default, all_special, Applicability::rectangular,
          [](const V &v, cx z, cx) {
              return concat(each([&](H h) { return v.d(h, z); }), each([&](H h) {
                                const auto [a, b] = complement(h);
                                return (v.e(a) - v.e(b)) / v.d2(a, b, z);
                            }));
          },
          [](const V &v, cx z, cx) {
              const JacobiParams p = jacobi_params(v.lat, v.cfg);
              const cx x = p.scale * z;
              const SnCnDn f = sn_cn_dn(p, x, v.cfg);
              const SnCnDn g = sn_cn_dn(p, p.K - x, v.cfg);
              return repeat(Vec{-p.scale * f.dn / (f.sn * f.cn), -p.scale * g.sn / f.sn, -p.scale * f.cn * f.dn / f.sn},
                            2);
          });
    R.add("jacobi_pythagorean", tol_default, {pole3},
          [](const V &v, cx z, cx) {
              const JacobiParams p = jacobi_params(v.lat, v.cfg);
              const SnCnDn f = sn_cn_dn(p, p.scale * z, v.cfg);
              return Vec{f.sn * f.sn + f.cn * f.cn, f.dn * f.dn + p.ksq * f.sn * f.sn};
          },
          [](const V &, cx, cx) { return Vec{1.0, 1.0}; });
    R.add("jacobi_parity", tol_default, {pole3},
          [](const V &v, cx z, cx) {
              const JacobiParams p = jacobi_params(v.lat, v.cfg);
              const SnCnDn f = sn_cn_dn(p, -p.scale * z, v.cfg);
              return Vec{f.sn, f.cn, f.dn};
          },
          [](const V &v, cx z, cx) {
              const JacobiParams p = jacobi_params(v.lat, v.cfg);
              const SnCnDn f = sn_cn_dn(p, p.scale * z, v.cfg);
              return Vec{-f.sn, f.cn, f.dn};
          });
    R.add("jacobi_sigma_quotients", tol_default, all_special,
          [](const V &v, cx z, cx) { return Vec{v.r(H3, z), v.r(H2, z), v.r(H1, z)}; },
          [](const V &v, cx z, cx) {
              const JacobiParams p = jacobi_params(v.lat, v.cfg);
              const SnCnDn f = sn_cn_dn(p, p.scale * z, v.cfg);
              return Vec{p.scale / f.sn, p.scale * f.dn / f.sn, p.scale * f.cn / f.sn};
          });
    R.add("thm213_E_derivative", tol_fd, {pole3},
          [](const V &v, cx z, cx) {
              const JacobiParams p = jacobi_params(v.lat, v.cfg);
              return Vec{fd([&](cx u) { return jacobi_E_Z_Pi(p, u, 0.0, v.cfg).E; }, z)};
          },
          [](const V &v, cx z, cx) {
              const JacobiParams p = jacobi_params(v.lat, v.cfg);
              const SnCnDn f = sn_cn_dn(p, p.scale * z, v.cfg);
              return Vec{p.scale * f.dn * f.dn};
          });
    R.add("thm213_Z_from_E", tol_default, {pole3},
          [](const V &v, cx z, cx) {
              const JacobiParams p = jacobi_params(v.lat, v.cfg);
              return Vec{jacobi_E_Z_Pi(p, z, 0.0, v.cfg).Z};
          },
          [](const V &v, cx z, cx) {
              const JacobiParams p = jacobi_params(v.lat, v.cfg);
              return Vec{jacobi_E_Z_Pi(p, z, 0.0, v.cfg).E - p.E / p.K * p.scale * z};
          });
    // Pi' is proportional to k^2 and so can be far smaller than Pi itself; a
    // fourth-order stencil with a wider step keeps the rounding of the
    // difference below the tolerance. The continued logarithm in Pi may differ
    // by a multiple of pi i between stencil points; whole multiples are removed.
    R.add("thm213_Pi_derivative", 2, tol_fd,
          {pole3, {0, 1, 0.0, 0.5}, {1, 1, 0.0, 0.5}, {1, -1, 0.0, 0.5}, {1, 1, 0.0, 0.0}, {1, -1, 0.0, 0.0}},
          Applicability::all,
          [](const V &v, cx z, cx w) {
              const JacobiParams p = jacobi_params(v.lat, v.cfg);
              constexpr double h = 1e-4;
              auto diff = [&](double t) {
                  cx d = jacobi_E_Z_Pi(p, z + t, w, v.cfg).Pi - jacobi_E_Z_Pi(p, z - t, w, v.cfg).Pi;
                  return d - cx{0.0, std::numbers::pi * std::round(d.imag() / std::numbers::pi)};
              };
              return Vec{(8.0 * diff(h) - diff(2.0 * h)) / (12.0 * h)};
          },
          [](const V &v, cx z, cx w) {
              const JacobiParams p = jacobi_params(v.lat, v.cfg);
              const SnCnDn a = sn_cn_dn(p, p.scale * w, v.cfg);
              const SnCnDn f = sn_cn_dn(p, p.scale * z, v.cfg);
              const cx s2 = f.sn * f.sn;
              return Vec{p.scale * p.ksq * a.sn * a.cn * a.dn * s2 / (1.0 - p.ksq * a.sn * a.sn * s2)};
          });
}

const Registry &registry()
{
    static const Registry R = [] {
        Registry r;
        add_core(r);
        add_aux_zeta(r);
        add_delta(r);
        add_delta2(r);
        add_constants(r);
        add_integrals(r);
        add_three_term(r);
        add_jacobi(r);
        return r;
    }();
    return R;
}

bool excluded(const Lattice &lat, const std::vector<Locus> &loci, cx z, cx w, double guard)
{
    const cx p1 = 2.0 * lat.omega1(), p3 = 2.0 * lat.omega3();
    for (const Locus &l : loci) {
        const cx pt = double(l.cz) * z + double(l.cw) * w - (l.a * p1 + l.b * p3);
        if (lat.lattice_distance(pt) < l.guard_scale * guard)
            return true;
    }
    return false;
}

} // namespace

const std::map<std::string, Evaluator> &evaluator_registry()
{
    return registry().evaluators;
}

const std::vector<IdentitySpec> &default_suite()
{
    return registry().suite;
}

bool glob_match(const std::string &pattern, const std::string &name)
{
    std::size_t p = 0, s = 0, star = std::string::npos, mark = 0;
    while (s < name.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[s])) {
            ++p;
            ++s;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = s;
        } else if (star != std::string::npos) {
            p = star + 1;
            s = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*')
        ++p;
    return p == pattern.size();
}

std::vector<IdentitySpec> filter_suite(const std::vector<IdentitySpec> &suite, const std::string &pattern)
{
    std::vector<IdentitySpec> out;
    std::copy_if(suite.begin(), suite.end(), std::back_inserter(out),
                 [&](const IdentitySpec &s) { return glob_match(pattern, s.name); });
    return out;
}

double relative_residual(cx a, cx b)
{
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
        !std::isfinite(b.imag()))
        return std::numeric_limits<double>::infinity();
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
}

std::vector<IdentityReport> run_suite(const Lattice &lat, const std::vector<IdentitySpec> &suite, std::size_t n,
                                      std::uint64_t seed, const SeriesConfig &cfg)
{
    if (n == 0)
        throw suite_config("sample count must be at least 1");
    cfg.validate();
    const auto &evals = evaluator_registry();
    for (const auto &spec : suite) {
        if (!evals.count(spec.lhs) || !evals.count(spec.rhs))
            throw suite_config("identity " + spec.name + " references an unknown evaluator");
        if (spec.arity != 1 && spec.arity != 2)
            throw suite_config("identity " + spec.name + " has arity outside {1, 2}");
        if (!(spec.tol > 0.0))
            throw suite_config("identity " + spec.name + " has a non-positive tolerance");
    }

    const double guard = pole_guard_factor * lat.min_period();
    const bool rectangular = lat.is_rectangular();
    const cx p1 = 2.0 * lat.omega1(), p3 = 2.0 * lat.omega3();
    std::vector<IdentityReport> out;

    for (std::size_t idx = 0; idx < suite.size(); ++idx) {
        const IdentitySpec &spec = suite[idx];
        if (spec.applies == Applicability::rectangular && !rectangular)
            continue;
        const Evaluator &lhs = evals.at(spec.lhs);
        const Evaluator &rhs = evals.at(spec.rhs);
        std::mt19937_64 rng(seed + idx);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        auto draw = [&] { return unit(rng) * p1 + unit(rng) * p3; };

        IdentityReport rep;
        rep.name = spec.name;
        rep.arity = spec.arity;
        rep.tol = spec.tol;
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cx z, w;
            int attempts = 0;
            do {
                if (++attempts > 10000)
                    throw suite_config("identity " + spec.name + " excludes the whole cell");
                z = draw();
                w = spec.arity == 2 ? draw() : cx{0.0};
            } while (excluded(lat, spec.exclusions, z, w, guard));

            double res = 0.0;
            try {
                const std::vector<cx> a = lhs(lat, z, w, cfg);
                const std::vector<cx> b = rhs(lat, z, w, cfg);
                if (a.size() != b.size() || a.empty())
                    throw suite_config("identity " + spec.name + " has sides of different length");
                for (std::size_t j = 0; j < a.size(); ++j)
                    res = std::max(res, relative_residual(a[j], b[j]));
                if (std::isnan(res))
                    res = std::numeric_limits<double>::infinity();
            } catch (const suite_config &) {
                throw;
            } catch (const error &) {
                res = std::numeric_limits<double>::infinity();
            }
            rep.residuals.push_back(res);
            sum += res;
            rep.max_rel = std::max(rep.max_rel, res);
            if (!(res <= spec.tol))
                rep.failures.push_back({z, w, res});
        }
        rep.samples = n;
        rep.mean_rel = sum / double(n);
        rep.passed = rep.max_rel <= spec.tol && rep.failures.empty();
        out.push_back(std::move(rep));
    }
    return out;
}

namespace
{

nlohmann::json number(double x)
{
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

} // namespace

nlohmann::json to_json(const std::vector<IdentityReport> &reports)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &r : reports) {
        nlohmann::json fails = nlohmann::json::array();
        for (const auto &f : r.failures) {
            nlohmann::json j{{"point", {f.z.real(), f.z.imag()}}, {"residual", number(f.residual)}};
            if (r.arity == 2)
                j["point2"] = {f.w.real(), f.w.imag()};
            fails.push_back(std::move(j));
        }
        arr.push_back({{"name", r.name},
                       {"samples", r.samples},
                       {"maxRel", number(r.max_rel)},
                       {"meanRel", number(r.mean_rel)},
                       {"passed", r.passed},
                       {"failures", std::move(fails)}});
    }
    return arr;
}

} // namespace azeta
