#include "cli.hpp"

#include <azeta/errors.hpp>
#include <azeta/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace azeta::cli
{

namespace
{

using json = nlohmann::json;

struct Options {
    std::string omega1 = "0.5,0";
    std::string omega3;
    std::string tau;
    double abs_tol = 0.0;
    double rel_tol = 1e-17;
    std::size_t max_terms = 500;
    std::string format = "json";
    std::string fn;
    std::string u;
    std::string a = "0.1,0.05";
    std::string route;
    std::string from = "0.05,0.05";
    std::string to = "0.95,0.95";
    int rows = 1;
    int cols = 1;
    std::size_t n = 100;
    std::uint64_t seed = 0;
    std::string only = "*";
};

class usage_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_real(const std::string &text, const std::string &what)
{
    const std::string t = trim(text);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
        throw usage_error(what + ": cannot read '" + text + "' as a number");
    return x;
}

// "re,im" or a bare real
cx parse_complex(const std::string &text, const std::string &what)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        return {parse_real(text, what), 0.0};
    return {parse_real(text.substr(0, comma), what), parse_real(text.substr(comma + 1), what)};
}

// "re,im" or a half-period keyword
cx parse_argument(const Lattice &lat, const std::string &text, const std::string &what)
{
    static const std::map<std::string, HalfPeriod> keywords{
        {"ω1", HalfPeriod::one}, {"ω2", HalfPeriod::two}, {"ω3", HalfPeriod::three},
        {"w1", HalfPeriod::one}, {"w2", HalfPeriod::two}, {"w3", HalfPeriod::three},
    };
    const std::string t = trim(text);
    if (auto it = keywords.find(t); it != keywords.end())
        return lat.omega(it->second);
    return parse_complex(t, what);
}

double default_rel_tol()
{
    if (const char *env = std::getenv("AZETA_REL_TOL"))
        return parse_real(env, "AZETA_REL_TOL");
    return 1e-17;
}

Lattice make_lattice(const Options &o, const SeriesConfig &cfg)
{
    const cx w1 = parse_complex(o.omega1, "--omega1");
    cx w3;
    if (!o.tau.empty())
        w3 = w1 * parse_complex(o.tau, "--tau");
    else if (!o.omega3.empty())
        w3 = parse_complex(o.omega3, "--omega3");
    else
        w3 = w1 * cx{0.3, 1.1};
    return build_lattice(w1, w3, cfg);
}

// shortest round-trip decimal form
std::string num(double x)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

json pair_json(cx z)
{
    return json::array({z.real(), z.imag()});
}

// ---- function registry -------------------------------------------------

struct Context {
    const Lattice &lat;
    SeriesConfig cfg;
    std::string route;
    cx a;
};

using Fn = std::function<EvalResult(const Context &, cx)>;

struct FnEntry {
    std::string name;
    std::vector<std::string> routes;
    Fn fn;
};

std::optional<ZetaRoute> zeta_route(const std::string &r)
{
    static const std::map<std::string, ZetaRoute> m{{"shift", ZetaRoute::shift},
                                                    {"theta", ZetaRoute::theta},
                                                    {"qseries", ZetaRoute::qseries},
                                                    {"partial_fraction", ZetaRoute::partial_fraction}};
    if (auto it = m.find(r); it != m.end())
        return it->second;
    return std::nullopt;
}

std::optional<DeltaRoute> delta_route(const std::string &r)
{
    static const std::map<std::string, DeltaRoute> m{{"zeta_diff", DeltaRoute::zeta_diff},
                                                     {"wp_quotient", DeltaRoute::wp_quotient},
                                                     {"sigma_quotient", DeltaRoute::sigma_quotient},
                                                     {"theta_quotient", DeltaRoute::theta_quotient}};
    if (auto it = m.find(r); it != m.end())
        return it->second;
    return std::nullopt;
}

const std::vector<std::string> zeta_routes{"theta", "shift", "qseries", "partial_fraction"};
const std::vector<std::string> delta_routes{"sigma_quotient", "zeta_diff", "wp_quotient", "theta_quotient"};
const std::vector<std::string> delta2_routes{"wp_quotient", "zeta_diff", "sigma_quotient", "theta_quotient"};

// Jacobi functions are reported at x = scale * u; their poles sit at omega3 + Omega.
template <typename F>
EvalResult jacobi_value(const Context &c, cx u, F f)
{
    if (auto p = pole_check(c.lat, u, c.lat.omega3()))
        return *p;
    const JacobiParams p = jacobi_params(c.lat, c.cfg);
    return EvalResult::ok(f(p, u));
}

const std::vector<FnEntry> &registry()
{
    static const std::vector<FnEntry> fns = [] {
        std::vector<FnEntry> v;
        v.push_back({"wp", {}, [](const Context &c, cx u) { return wp(c.lat, u, c.cfg); }});
        v.push_back({"wp_prime", {}, [](const Context &c, cx u) { return wp_prime(c.lat, u, c.cfg); }});
        v.push_back({"wp_second", {}, [](const Context &c, cx u) { return wp_second(c.lat, u, c.cfg); }});
        v.push_back({"zeta", {}, [](const Context &c, cx u) { return zeta_w(c.lat, u, c.cfg); }});
        v.push_back({"sigma", {}, [](const Context &c, cx u) { return EvalResult::ok(sigma(c.lat, u, c.cfg)); }});
        for (HalfPeriod h : all_half_periods) {
            const std::string k = std::to_string(static_cast<int>(h));
            v.push_back({"sigma" + k, {}, [h](const Context &c, cx u) {
                             return EvalResult::ok(sigma_aux(c.lat, h, u, c.cfg));
                         }});
        }
        for (HalfPeriod h : all_half_periods) {
            const std::string k = std::to_string(static_cast<int>(h));
            v.push_back({"zeta" + k, zeta_routes, [h](const Context &c, cx u) {
                             return zeta_aux(c.lat, h, u, *zeta_route(c.route), c.cfg);
                         }});
        }
        for (HalfPeriod h : all_half_periods) {
            const std::string k = std::to_string(static_cast<int>(h));
            v.push_back({"delta" + k, delta_routes, [h](const Context &c, cx u) {
                             return delta(c.lat, h, u, *delta_route(c.route), c.cfg);
                         }});
        }
        for (HalfPeriod h : all_half_periods) {
            const std::string k = std::to_string(static_cast<int>(h));
            v.push_back({"delta" + k + "_prime", {}, [h](const Context &c, cx u) {
                             return delta_prime(c.lat, h, u, c.cfg);
                         }});
        }
        for (HalfPeriod h : all_half_periods) {
            for (HalfPeriod k : all_half_periods) {
                if (h == k)
                    continue;
                const std::string s = std::to_string(static_cast<int>(h)) + std::to_string(static_cast<int>(k));
                v.push_back({"delta" + s, delta2_routes, [h, k](const Context &c, cx u) {
                                 if (c.route == "theta_quotient")
                                     return Delta2ThetaQuotient(c.lat, c.cfg)(h, k, u);
                                 return delta2(c.lat, h, k, u, *delta_route(c.route), c.cfg);
                             }});
            }
        }
        for (HalfPeriod h : all_half_periods) {
            for (HalfPeriod k : all_half_periods) {
                if (h == k)
                    continue;
                const std::string s = std::to_string(static_cast<int>(h)) + std::to_string(static_cast<int>(k));
                v.push_back({"delta" + s + "_prime", {}, [h, k](const Context &c, cx u) {
                                 return delta2_prime(c.lat, h, k, u, c.cfg);
                             }});
            }
        }
        v.push_back({"sn", {}, [](const Context &c, cx u) {
                         return jacobi_value(c, u, [&](const JacobiParams &p, cx w) {
                             return sn_cn_dn(p, p.scale * w, c.cfg).sn;
                         });
                     }});
        v.push_back({"cn", {}, [](const Context &c, cx u) {
                         return jacobi_value(c, u, [&](const JacobiParams &p, cx w) {
                             return sn_cn_dn(p, p.scale * w, c.cfg).cn;
                         });
                     }});
        v.push_back({"dn", {}, [](const Context &c, cx u) {
                         return jacobi_value(c, u, [&](const JacobiParams &p, cx w) {
                             return sn_cn_dn(p, p.scale * w, c.cfg).dn;
                         });
                     }});
        v.push_back({"E", {}, [](const Context &c, cx u) {
                         return jacobi_value(c, u, [&](const JacobiParams &p, cx w) {
                             return jacobi_E_Z_Pi(p, w, 0.0, c.cfg).E;
                         });
                     }});
        v.push_back({"Z", {}, [](const Context &c, cx u) {
                         return jacobi_value(c, u, [&](const JacobiParams &p, cx w) {
                             return jacobi_E_Z_Pi(p, w, 0.0, c.cfg).Z;
                         });
                     }});
        v.push_back({"Pi", {}, [](const Context &c, cx u) {
                         return jacobi_value(c, u, [&](const JacobiParams &p, cx w) {
                             return jacobi_E_Z_Pi(p, w, c.a, c.cfg).Pi;
                         });
                     }});
        return v;
    }();
    return fns;
}

const FnEntry &find_fn(const std::string &name)
{
    const auto &fns = registry();
    auto it = std::find_if(fns.begin(), fns.end(), [&](const FnEntry &f) { return f.name == name; });
    if (it == fns.end())
        throw usage_error("unknown function '" + name + "' (see --list-fns)");
    return *it;
}

std::string resolve_route(const FnEntry &f, const std::string &route)
{
    if (f.routes.empty()) {
        if (!route.empty())
            throw usage_error("function '" + f.name + "' takes no --route");
        return {};
    }
    if (route.empty())
        return f.routes.front();
    if (std::find(f.routes.begin(), f.routes.end(), route) == f.routes.end())
        throw usage_error("route '" + route + "' is not available for '" + f.name + "'");
    return route;
}

// pole_proximity from the Jacobi layer becomes a NearPole result
EvalResult evaluate(const FnEntry &f, const Context &c, cx u)
{
    try {
        return f.fn(c, u);
    } catch (const pole_proximity &) {
        return {cx{}, Status::near_pole, std::nullopt};
    }
}

// ---- output ------------------------------------------------------------

json result_json(const EvalResult &r)
{
    json j;
    j["value"] = r.finite() ? pair_json(r.value) : json(nullptr);
    j["status"] = std::string(to_string(r.status));
    if (r.pole)
        j["pole"] = pair_json(*r.pole);
    return j;
}

const char *csv_header = "re_u,im_u,re_f,im_f,status\n";

std::string csv_row(cx u, const EvalResult &r)
{
    std::string s = num(u.real()) + "," + num(u.imag()) + ",";
    if (r.finite())
        s += num(r.value.real()) + "," + num(r.value.imag());
    else
        s += ",";
    return s + "," + std::string(to_string(r.status)) + "\n";
}

void check_format(const std::string &format)
{
    if (format != "json" && format != "csv")
        throw usage_error("--format must be json or csv");
}

int cmd_eval(const Options &o, const SeriesConfig &cfg, std::ostream &out)
{
    check_format(o.format);
    if (o.fn.empty())
        throw usage_error("eval needs --fn");
    if (o.u.empty())
        throw usage_error("eval needs --u");
    const FnEntry &f = find_fn(o.fn);
    const Lattice lat = make_lattice(o, cfg);
    const Context c{lat, cfg, resolve_route(f, o.route), parse_argument(lat, o.a, "--a")};
    const cx u = parse_argument(lat, o.u, "--u");
    const EvalResult r = evaluate(f, c, u);
    if (o.format == "csv")
        out << csv_header << csv_row(u, r);
    else
        out << result_json(r).dump() << "\n";
    return r.finite() ? ok : pole;
}

int cmd_table(const Options &o, const SeriesConfig &cfg, std::ostream &out)
{
    check_format(o.format);
    if (o.fn.empty())
        throw usage_error("table needs --fn");
    if (o.rows < 1 || o.cols < 1)
        throw usage_error("--rows and --cols must be at least 1");
    const FnEntry &f = find_fn(o.fn);
    const Lattice lat = make_lattice(o, cfg);
    const Context c{lat, cfg, resolve_route(f, o.route), parse_argument(lat, o.a, "--a")};
    const cx from = parse_complex(o.from, "--from");
    const cx to = parse_complex(o.to, "--to");
    auto coord = [](double lo, double hi, int i, int count) {
        return count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    };

    json rows = json::array();
    if (o.format == "csv")
        out << csv_header;
    for (int i = 0; i < o.rows; ++i) {
        for (int j = 0; j < o.cols; ++j) {
            const cx u{coord(from.real(), to.real(), j, o.cols), coord(from.imag(), to.imag(), i, o.rows)};
            const EvalResult r = evaluate(f, c, u);
            if (o.format == "csv") {
                out << csv_row(u, r);
            } else {
                json row = result_json(r);
                row["u"] = pair_json(u);
                rows.push_back(std::move(row));
            }
        }
    }
    if (o.format == "json")
        out << rows.dump() << "\n";
    return ok;
}

int cmd_constants(const Options &o, const SeriesConfig &cfg, std::ostream &out)
{
    out << to_json(make_lattice(o, cfg)).dump(2) << "\n";
    return ok;
}

int cmd_verify(const Options &o, const SeriesConfig &cfg, std::ostream &out)
{
    if (o.n < 1)
        throw usage_error("--n must be at least 1");
    const Lattice lat = make_lattice(o, cfg);
    const auto suite = filter_suite(default_suite(), o.only);
    const auto reports = run_suite(lat, suite, o.n, o.seed, cfg);
    out << to_json(reports).dump(2) << "\n";
    const bool all = std::all_of(reports.begin(), reports.end(), [](const IdentityReport &r) { return r.passed; });
    return all ? ok : identity_failure;
}

void add_lattice_options(CLI::App &app, Options &o)
{
    app.add_option("--omega1", o.omega1, "half-period omega1 as \"re,im\"")->capture_default_str();
    auto *w3 = app.add_option("--omega3", o.omega3, "half-period omega3 as \"re,im\"");
    auto *tau = app.add_option("--tau", o.tau, "period ratio omega3/omega1 as \"re,im\" (default 0.3,1.1)");
    w3->excludes(tau);
    app.add_option("--abs-tol", o.abs_tol, "absolute series truncation tolerance")->capture_default_str();
    app.add_option("--rel-tol", o.rel_tol, "relative series truncation tolerance (env AZETA_REL_TOL)")
        ->capture_default_str();
    app.add_option("--max-terms", o.max_terms, "series term cap")->capture_default_str();
}

void add_function_options(CLI::App &app, Options &o)
{
    app.add_option("--fn", o.fn, "function name (see --list-fns)");
    app.add_option("--route", o.route, "evaluation route for zeta1..3 and the delta functions");
    app.add_option("--a", o.a, "second argument of Pi as \"re,im\" or w1|w2|w3")->capture_default_str();
    app.add_option("--format", o.format, "json or csv")->capture_default_str();
}

} // namespace

std::vector<std::string> function_names()
{
    std::vector<std::string> out;
    for (const auto &f : registry())
        out.push_back(f.name);
    return out;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    Options o;
    try {
        o.rel_tol = default_rel_tol();
    } catch (const usage_error &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    CLI::App app{"Weierstrass, auxiliary zeta and Jacobi elliptic functions"};
    app.name("azeta_cli");
    app.set_version_flag("--version", "azeta 1.0");
    bool list = false;
    app.add_flag("--list-fns", list, "print the functions accepted by --fn");
    add_lattice_options(app, o);

    auto *eval = app.add_subcommand("eval", "evaluate one function at one point");
    add_lattice_options(*eval, o);
    add_function_options(*eval, o);
    eval->add_option("--u", o.u, "argument as \"re,im\" or w1|w2|w3 (also ω1|ω2|ω3)");

    auto *table = app.add_subcommand("table", "tabulate a function on a rows x cols grid, row-major");
    add_lattice_options(*table, o);
    add_function_options(*table, o);
    table->add_option("--from", o.from, "grid corner with the smallest coordinates")->capture_default_str();
    table->add_option("--to", o.to, "opposite grid corner")->capture_default_str();
    table->add_option("--rows", o.rows, "points along the imaginary axis")->capture_default_str();
    table->add_option("--cols", o.cols, "points along the real axis")->capture_default_str();

    auto *constants = app.add_subcommand("constants", "print the lattice constants as JSON");
    add_lattice_options(*constants, o);

    auto *verify = app.add_subcommand("verify", "run the identity suite and print the JSON report");
    add_lattice_options(*verify, o);
    verify->add_option("--n", o.n, "samples per identity")->capture_default_str();
    verify->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
    verify->add_option("--only", o.only, "glob restricting identity names")->capture_default_str();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (list) {
            for (const auto &name : function_names())
                out << name << "\n";
            return ok;
        }
        const SeriesConfig cfg{o.abs_tol, o.rel_tol, o.max_terms};
        cfg.validate();
        if (*eval)
            return cmd_eval(o, cfg, out);
        if (*table)
            return cmd_table(o, cfg, out);
        if (*constants)
            return cmd_constants(o, cfg, out);
        if (*verify)
            return cmd_verify(o, cfg, out);
        err << app.help();
        return usage;
    } catch (const usage_error &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const suite_config &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const error &e) {
        // invalid lattices, tolerances and arguments
        err << "error: " << e.what() << "\n";
        return usage;
    }
}

} // namespace azeta::cli
