#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "thetasieve/buchstab.hpp"
#include "thetasieve/density.hpp"
#include "thetasieve/lambda.hpp"
#include "thetasieve/membership.hpp"
#include "thetasieve/theta.hpp"
#include "thetasieve/volterra.hpp"

#ifndef THETA_SIEVE_VERSION
#define THETA_SIEVE_VERSION "unknown"
#endif

namespace thetasieve::cli {

using json = nlohmann::json;

namespace {

// Thrown for malformed user input; mapped to the usage exit code.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

double round_sig(double v, int digits)
{
    if (!std::isfinite(v) || v == 0.0) {
        return v;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::strtod(buf, nullptr);
}

json number(double v, const Format& fmt)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return round_sig(v, fmt.precision);
}

json interval(const Interval& v, const Format& fmt)
{
    return {{"lo", number(v.lo, fmt)}, {"hi", number(v.hi, fmt)}};
}

CommandResult json_result(const json& j, int code = kExitOk)
{
    return {code, j.dump() + "\n", true};
}

// CSV stream that ignores the global locale.
struct Csv {
    explicit Csv(const Format& fmt)
    {
        os.imbue(std::locale::classic());
        os << std::setprecision(fmt.precision);
    }
    std::ostringstream os;
};

ThetaSpec parse_theta_or_usage(std::string_view text)
{
    try {
        return parse_theta(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void check_mode(std::string_view mode)
{
    if (mode != "B" && mode != "D") {
        throw UsageError("mode must be B or D");
    }
}

std::string pass_line(bool ok, std::string_view name, std::string_view detail)
{
    std::string s = ok ? "PASS " : "FAIL ";
    s += name;
    if (!detail.empty()) {
        s += "  ";
        s += detail;
    }
    return s + "\n";
}

std::string fmt_double(double v, int digits = 10)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(digits) << v;
    return os.str();
}

} // namespace

std::vector<double> table1_grid()
{
    return {1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0,
            2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0};
}

std::vector<double> parse_list(std::string_view text)
{
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        double v = 0.0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
            throw UsageError("bad number '" + std::string(item) + "' in list");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

std::vector<double> parse_grid(std::string_view text)
{
    std::string s(text);
    std::replace(s.begin(), s.end(), ':', ',');
    const auto parts = parse_list(s);
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
        throw UsageError("grid must be lo:hi:step with lo <= hi and step > 0");
    }
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long i = 0; i <= n; ++i) {
        out.push_back(round_sig(parts[0] + static_cast<double>(i) * parts[2], 12));
    }
    return out;
}

unsigned thread_budget(std::optional<unsigned> requested)
{
    unsigned n = requested.value_or(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("THETA_SIEVE_THREADS")) {
        unsigned cap = 0;
        const std::string_view sv(env);
        const auto [end, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), cap);
        if (ec == std::errc{} && end == sv.data() + sv.size() && cap > 0) {
            n = std::min(n, cap);
        }
    }
    return std::max(1u, n);
}

CommandResult cmd_member(u64 n, std::string_view theta, std::string_view mode, const Format&)
{
    check_mode(mode);
    if (n == 0) {
        throw UsageError("n must be positive");
    }
    const ThetaSpec spec = parse_theta_or_usage(theta);
    const auto r = mode == "B" ? chi_B(n, spec) : chi_D(n, spec);
    json j{{"n", n}, {"member", r.member}, {"mode", mode}, {"theta", to_string(spec)}};
    if (r.witness) {
        j["witness"] = {{"index", r.witness->index},
                        {"value", r.witness->value},
                        {"bound", r.witness->bound.to_string()}};
    }
    return json_result(j, r.member ? kExitOk : kExitFalse);
}

CommandResult cmd_count(double x, std::string_view theta, std::string_view mode, unsigned threads, const Format& fmt)
{
    check_mode(mode);
    const ThetaSpec spec = parse_theta_or_usage(theta);
    const u64 c = mode == "B" ? count_B(x, spec, threads) : count_D(x, spec);
    return json_result({{"count", c}, {"mode", mode}, {"theta", to_string(spec)}, {"x", number(x, fmt)}});
}

CommandResult cmd_enumerate(double x, std::string_view theta, bool sorted)
{
    const ThetaSpec spec = parse_theta_or_usage(theta);
    std::vector<u64> members = enumerate_B(x, spec);
    if (sorted) {
        std::sort(members.begin(), members.end());
    }
    std::string text;
    for (u64 n : members) {
        text += std::to_string(n);
        text += '\n';
    }
    return {kExitOk, std::move(text), false};
}

CommandResult cmd_phi(double x, std::string_view y, const Format& fmt)
{
    ExtendedReal yy;
    if (y == "inf") {
        yy = ExtendedReal::infinity();
    } else {
        yy = ExtendedReal(parse_list(y).at(0));
    }
    if (!(x >= 0.0) || x > 9007199254740992.0) {
        throw UsageError("x must lie in [0, 2^53]");
    }
    const u64 v = phi_count(x, yy);
    return json_result({{"phi", v}, {"x", number(x, fmt)}, {"y", yy.is_infinite() ? json("inf") : number(yy.value(), fmt)}});
}

CommandResult cmd_density(std::string_view theta, double width, u64 max_N, const Format& fmt)
{
    const ThetaSpec spec = parse_theta_or_usage(theta);
    auto record = [&](const DensityEstimate& e) {
        return json{{"theta", to_string(spec)},
                    {"N", e.cutoff_N},
                    {"partial", interval(e.partial, fmt)},
                    {"tail", interval(e.tail, fmt)},
                    {"L", interval(e.L, fmt)},
                    {"density", interval(e.density, fmt)},
                    {"target_width", number(width, fmt)}};
    };
    try {
        return json_result(record(density_estimate(spec, width, max_N)));
    } catch (const UnsupportedTail& e) {
        throw UsageError(e.what());
    } catch (const DensityBudgetExceeded& e) {
        json j = record(e.best());
        j["error"] = e.what();
        return json_result(j, kExitFailure);
    }
}

CommandResult cmd_lambda(double a, const Format& fmt)
{
    if (!(a >= 1.0)) {
        throw UsageError("a must be >= 1");
    }
    const auto r = solve_lambda(a);
    return json_result({{"a", number(a, fmt)},
                        {"lambda", number(r.lambda, fmt)},
                        {"l_a", number(r.l_a, fmt)},
                        {"u_a", number(r.u_a, fmt)},
                        {"mu_a", number(r.mu_a, fmt)},
                        {"residual", number(r.residual, Format{3})}});
}

CommandResult cmd_table1(const Format& fmt)
{
    Csv csv(fmt);
    csv.os << "a,lambda\n";
    for (double a : table1_grid()) {
        try {
            csv.os << a << ',' << solve_lambda(a).lambda << '\n';
        } catch (const std::exception& e) {
            throw std::runtime_error("table row a = " + fmt_double(a) + ": " + e.what());
        }
    }
    return {kExitOk, csv.os.str(), false};
}

CommandResult cmd_figure1(double step, const Format& fmt)
{
    if (!(step > 0.0)) {
        throw UsageError("step must be positive");
    }
    Csv csv(fmt);
    csv.os << "a,lambda,l_a,u_a\n";
    for (double a : parse_grid("1:10:" + fmt_double(step, 17))) {
        const auto r = solve_lambda(a);
        csv.os << a << ',' << r.lambda << ',' << r.l_a << ',' << r.u_a << '\n';
    }
    return {kExitOk, csv.os.str(), false};
}

CommandResult cmd_buchstab(double step, const Format& fmt)
{
    if (!(step > 0.0)) {
        throw UsageError("step must be positive");
    }
    std::ostringstream os;
    os.imbue(std::locale::classic());
    default_buchstab().write_csv(os, step, fmt.precision);
    return {kExitOk, os.str(), false};
}

CommandResult cmd_fa(double a, double z_max, double h, std::size_t stride, const Format& fmt)
{
    if (!(a >= 1.0) || stride == 0) {
        throw UsageError("a must be >= 1 and stride positive");
    }
    FaGrid grid;
    try {
        grid = solve_F(a, h, z_max);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Csv csv(fmt);
    csv.os << "z,F\n";
    for (std::size_t k = 0; k < grid.values.size(); k += stride) {
        csv.os << grid.z(k) << ',' << grid.values[k] << '\n';
    }
    return {kExitOk, csv.os.str(), false};
}

CommandResult cmd_exponent(std::string_view theta, const std::vector<double>& xs, unsigned threads, const Format& fmt)
{
    const ThetaSpec spec = parse_theta_or_usage(theta);
    ExponentFit fit;
    try {
        fit = empirical_exponent(spec, xs, threads);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Csv csv(fmt);
    csv.os << "x,ratio,fitted_slope\n";
    for (const auto& [x, ratio] : fit.points) {
        csv.os << x << ',' << ratio << ',' << fit.slope << '\n';
    }
    return {kExitOk, csv.os.str(), false};
}

CommandResult verify_identity_suite(const std::vector<double>& xs, const std::vector<std::string>& thetas)
{
    CommandResult r;
    for (const auto& t : thetas) {
        const ThetaSpec spec = parse_theta_or_usage(t);
        for (double x : xs) {
            const auto rep = verify_identity(x, spec);
            std::string detail = "theta=" + to_string(spec) + " x=" + fmt_double(x) +
                                 " floor=" + std::to_string(rep.floor_x) + " sum=" + std::to_string(rep.sum) +
                                 " terms=" + std::to_string(rep.terms);
            if (!rep.holds) {
                detail += " largest:";
                for (const auto& [n, phi] : rep.largest_terms) {
                    detail += " " + std::to_string(n) + "->" + std::to_string(phi);
                }
                r.exit_code = kExitFalse;
            }
            r.text += pass_line(rep.holds, "identity", detail);
        }
    }
    return r;
}

CommandResult verify_db_suite(const std::vector<std::string>& thetas, u64 n_max)
{
    CommandResult r;
    for (const auto& t : thetas) {
        const ThetaSpec spec = parse_theta_or_usage(t);
        const std::string name = to_string(spec);
        std::optional<u64> subset_break;
        std::optional<u64> equality_break;
        u64 b = 0;
        u64 d = 0;
        for (u64 n = 1; n <= n_max; ++n) {
            const bool in_b = chi_B(n, spec).member;
            const bool in_d = chi_D(n, spec).member;
            b += in_b;
            d += in_d;
            if (in_d && !in_b && !subset_break) {
                subset_break = n;
            }
            if (in_d != in_b && !equality_break) {
                equality_break = n;
            }
        }
        const std::string counts = "theta=" + name + " n<=" + std::to_string(n_max) + " B=" + std::to_string(b) +
                                   " D=" + std::to_string(d);
        r.text += pass_line(!subset_break, "D-subset-of-B",
                            counts + (subset_break ? " counterexample=" + std::to_string(*subset_break) : ""));
        if (subset_break) {
            r.exit_code = kExitFalse;
        }
        const auto violation = n_max >= 2 ? find_chain_compat_violation(spec, n_max) : std::nullopt;
        if (violation) {
            const auto [m, n] = *violation;
            r.text += "SKIP D-equals-B  theta=" + name + " monotonicity/multiplicativity fails at " +
                      (m == 0 ? "n=" + std::to_string(n) : "m=" + std::to_string(m) + " n=" + std::to_string(n)) +
                      (equality_break ? " (first difference n=" + std::to_string(*equality_break) + ")" : "") + "\n";
            continue;
        }
        r.text += pass_line(!equality_break, "D-equals-B",
                            counts + (equality_break ? " counterexample=" + std::to_string(*equality_break) : ""));
        if (equality_break) {
            r.exit_code = kExitFalse;
        }
    }
    return r;
}

CommandResult verify_bounds_suite(const std::vector<double>& as)
{
    CommandResult r;
    for (double a : as) {
        const auto s = solve_lambda(a);
        const bool inside = s.l_a < s.lambda && s.lambda < s.u_a;
        const double gm = g_minus(a, -s.l_a);
        const double gp = g_plus(a, -s.u_a);
        const bool ok = inside && gm > 0.0 && gp < 0.0;
        r.text += pass_line(ok, "bounds",
                            "a=" + fmt_double(a) + " l_a=" + fmt_double(s.l_a) + " lambda=" + fmt_double(s.lambda) +
                                " u_a=" + fmt_double(s.u_a) + " g-(-l_a)=" + fmt_double(gm, 4) +
                                " g+(-u_a)=" + fmt_double(gp, 4));
        if (!ok) {
            r.exit_code = kExitFalse;
        }
    }
    return r;
}

CommandResult verify_omega_suite(double step, double u_max)
{
    if (!(step > 0.0) || !(u_max >= 1.0) || u_max > 25.0) {
        throw UsageError("need step > 0 and 1 <= u-max <= 25");
    }
    CommandResult r;
    const auto& table = default_buchstab();
    const BuchstabTable half(table.grid_step() / 2.0, table.u_max());
    double worst_value = -1.0;
    double worst_slope = -1.0;
    double worst_refine = 0.0;
    double at_value = 1.0;
    double at_slope = 1.0;
    const auto n = static_cast<long>(std::floor((u_max - 1.0) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
        const double u = 1.0 + static_cast<double>(i) * step;
        const double g = gamma_reciprocal(u);
        const double ev = std::abs(table.omega(u) - kExpMinusGamma) - g;
        const double es = std::abs(table.omega_prime(u)) - g;
        if (ev > worst_value) {
            worst_value = ev;
            at_value = u;
        }
        if (es > worst_slope) {
            worst_slope = es;
            at_slope = u;
        }
        worst_refine = std::max(worst_refine, std::abs(table.omega(u) - half.omega(u)));
    }
    const bool v_ok = worst_value <= 1e-9;
    const bool s_ok = worst_slope <= 1e-9;
    const bool f_ok = worst_refine <= 1e-9;
    r.text += pass_line(v_ok, "omega-deviation", "max(|omega-e^-gamma| - 1/Gamma(u+1))=" + fmt_double(worst_value, 4) +
                                                     " at u=" + fmt_double(at_value));
    r.text += pass_line(s_ok, "omega-slope",
                        "max(|omega'| - 1/Gamma(u+1))=" + fmt_double(worst_slope, 4) + " at u=" + fmt_double(at_slope));
    r.text += pass_line(f_ok, "omega-grid-refinement", "max change on halving the step=" + fmt_double(worst_refine, 4));
    if (!(v_ok && s_ok && f_ok)) {
        r.exit_code = kExitFalse;
    }
    return r;
}

CommandResult verify_zero_free_suite(const std::vector<double>& as)
{
    CommandResult r;
    auto record = [&](bool ok, std::string_view name, const std::string& detail) {
        r.text += pass_line(ok, name, detail);
        if (!ok) {
            r.exit_code = kExitFalse;
        }
    };
    const auto whole = deviation_integral(1.0, 0.0);
    record(whole.hi < 0.16, "deviation-integral", "int_1^inf |omega-e^-gamma| <= " + fmt_double(whole.hi) + " < 0.16");
    const auto late = deviation_integral(kExpGamma, 0.0);
    record(late.hi <= 0.021, "deviation-integral-late",
           "int_{e^gamma}^inf |omega-e^-gamma| <= " + fmt_double(late.hi) + " <= 0.021");
    const auto c = half_plane_constants();
    record(c.holds(), "half-plane-constants",
           "2^{mu_1-1}=" + fmt_double(c.growth_small, 6) + " e^-gamma 2^{mu_1}=" + fmt_double(c.prefactor_small, 6) +
               " 11^{mu_10-1}=" + fmt_double(c.growth_large, 6) + " prefactor_10=" + fmt_double(c.prefactor_large, 6) +
               " moment_1.1<=" + fmt_double(c.moment_small.hi, 6) + " moment_0.1<=" + fmt_double(c.moment_large.hi, 6));
    for (double a : as) {
        const auto z = zero_free_spot_check(a);
        record(z.passes, "segment-ratio",
               "a=" + fmt_double(a) + " mu_a=" + fmt_double(z.mu) + " max=" + fmt_double(z.max_ratio, 6) +
                   " at tau=" + fmt_double(z.argmax_tau, 4));
    }
    return r;
}

namespace {

std::string iso_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Chained-integer sieves, Buchstab function and decay exponents"};
    app.require_subcommand(1);
    Format fmt;
    std::string report_path;
    std::optional<unsigned> threads_opt;
    app.add_option("--precision", fmt.precision, "Significant digits in numeric output")
        ->check(CLI::Range(1, 17));
    app.add_option("--report", report_path, "Write a JSON run report to this file");
    app.add_option("--threads", threads_opt, "Worker threads (capped by THETA_SIEVE_THREADS)");

    // Each subcommand stores a closure producing its result.
    std::function<CommandResult()> action;
    json inputs;

    u64 n = 0;
    std::string theta = "sigma+1";
    std::string mode = "B";
    auto* member = app.add_subcommand("member", "Membership test for one n");
    member->add_option("--n", n)->required();
    member->add_option("--theta", theta)->required();
    member->add_option("--mode", mode, "B (prime chain) or D (divisor chain)");
    member->callback([&] {
        inputs = {{"n", n}, {"theta", theta}, {"mode", mode}};
        action = [&] { return cmd_member(n, theta, mode, fmt); };
    });

    double x = 0.0;
    auto* count = app.add_subcommand("count", "B(x) or D(x)");
    count->add_option("--x", x)->required();
    count->add_option("--theta", theta)->required();
    count->add_option("--mode", mode);
    count->callback([&] {
        inputs = {{"x", x}, {"theta", theta}, {"mode", mode}};
        action = [&] { return cmd_count(x, theta, mode, thread_budget(threads_opt), fmt); };
    });

    auto* enumerate = app.add_subcommand("enumerate", "List chained n <= x, one per line");
    enumerate->add_option("--x", x)->required();
    enumerate->add_option("--theta", theta)->required();
    bool sorted = false;
    enumerate->add_flag("--sorted", sorted, "Ascending order instead of depth-first order");
    enumerate->callback([&] {
        inputs = {{"x", x}, {"theta", theta}, {"sorted", sorted}};
        action = [&] { return cmd_enumerate(x, theta, sorted); };
    });

    std::string y;
    auto* phi = app.add_subcommand("phi", "Count n <= x free of primes <= y");
    phi->add_option("--x", x)->required();
    phi->add_option("--y", y, "Number or inf")->required();
    phi->callback([&] {
        inputs = {{"x", x}, {"y", y}};
        action = [&] { return cmd_phi(x, y, fmt); };
    });

    double width = 1e-3;
    u64 max_N = 10'000'000;
    auto* density = app.add_subcommand("density", "Certified enclosure of the density");
    density->add_option("--theta", theta)->required();
    density->add_option("--width", width);
    density->add_option("--max-n", max_N);
    density->callback([&] {
        inputs = {{"theta", theta}, {"width", width}, {"max_n", max_N}};
        action = [&] { return cmd_density(theta, width, max_N, fmt); };
    });

    double a = 2.0;
    auto* lambda = app.add_subcommand("lambda", "Decay exponent for theta(n) ~ n^a");
    lambda->add_option("--a", a)->required();
    lambda->callback([&] {
        inputs = {{"a", a}};
        action = [&] { return cmd_lambda(a, fmt); };
    });

    auto* table = app.add_subcommand("lambda-table", "Exponents on the standard grid of a");
    table->alias("table1");
    table->callback([&] {
        inputs = json::object();
        action = [&] { return cmd_table1(fmt); };
    });

    double step = 0.05;
    auto* figure = app.add_subcommand("figure1", "Exponent and its bounds for a in [1, 10]");
    figure->add_option("--step", step);
    figure->callback([&] {
        inputs = {{"step", step}};
        action = [&] { return cmd_figure1(step, fmt); };
    });

    double u_step = 0.01;
    auto* buchstab = app.add_subcommand("buchstab", "omega and omega' on [1, 25] as CSV");
    buchstab->add_option("--step", u_step);
    buchstab->callback([&] {
        inputs = {{"step", u_step}};
        action = [&] { return cmd_buchstab(u_step, fmt); };
    });

    double z_max = 15.0;
    double h = 1e-3;
    std::size_t stride = 10;
    auto* fa = app.add_subcommand("fa", "Solution of the delay integral equation as CSV");
    fa->add_option("--a", a)->required();
    fa->add_option("--zmax", z_max);
    fa->add_option("--grid-step", h);
    fa->add_option("--stride", stride, "Emit every stride-th grid point");
    fa->callback([&] {
        inputs = {{"a", a}, {"zmax", z_max}, {"grid_step", h}, {"stride", stride}};
        action = [&] { return cmd_fa(a, z_max, h, stride, fmt); };
    });

    std::string xs_text = "1e4,1e5,1e6";
    auto* exponent = app.add_subcommand("exponent", "Slope of log(B(x)/x) against log log x");
    exponent->add_option("--theta", theta)->required();
    exponent->add_option("--xs", xs_text);
    exponent->callback([&] {
        inputs = {{"theta", theta}, {"xs", xs_text}};
        action = [&] { return cmd_exponent(theta, parse_list(xs_text), thread_budget(threads_opt), fmt); };
    });

    auto* verify = app.add_subcommand("verify", "Property suites");
    verify->require_subcommand(1);

    std::vector<std::string> thetas;
    std::string x_list = "1e5";
    auto* v_identity = verify->add_subcommand("identity", "floor(x) = sum of Phi(x/n, theta(n))");
    v_identity->add_option("--x", x_list, "Comma-separated x values");
    v_identity->add_option("--theta", thetas)->required();
    v_identity->callback([&] {
        inputs = {{"suite", "identity"}, {"x", x_list}, {"theta", thetas}};
        action = [&] { return verify_identity_suite(parse_list(x_list), thetas); };
    });

    double n_max = 1e4;
    auto* v_db = verify->add_subcommand("db", "Divisor chain against prime chain");
    v_db->add_option("--theta", thetas)->required();
    v_db->add_option("--n-max", n_max);
    v_db->callback([&] {
        inputs = {{"suite", "db"}, {"theta", thetas}, {"n_max", n_max}};
        action = [&] {
            if (!(n_max >= 1.0) || n_max > 1e9) {
                throw UsageError("n-max must lie in [1, 1e9]");
            }
            return verify_db_suite(thetas, static_cast<u64>(n_max));
        };
    });

    std::string a_grid = "1:10:0.1";
    auto* v_bounds = verify->add_subcommand("bounds", "l_a < lambda_a < u_a and the comparison functions");
    v_bounds->add_option("--a-grid", a_grid, "lo:hi:step");
    v_bounds->callback([&] {
        inputs = {{"suite", "bounds"}, {"a_grid", a_grid}};
        action = [&] { return verify_bounds_suite(parse_grid(a_grid)); };
    });

    double u_max = 20.0;
    auto* v_omega = verify->add_subcommand("omega", "Decay bounds for omega and omega'");
    v_omega->add_option("--step", u_step);
    v_omega->add_option("--u-max", u_max);
    v_omega->callback([&] {
        inputs = {{"suite", "omega"}, {"step", u_step}, {"u_max", u_max}};
        action = [&] { return verify_omega_suite(u_step, u_max); };
    });

    std::string a_list = "1,2,3,4,5,6,7,8,9,10";
    auto* v_zero = verify->add_subcommand("zero-free", "Segment ratio and half-plane constants");
    v_zero->add_option("--a-list", a_list);
    v_zero->callback([&] {
        inputs = {{"suite", "zero-free"}, {"a_list", a_list}};
        action = [&] { return verify_zero_free_suite(parse_list(a_list)); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!action) {
        err << app.help();
        return kExitUsage;
    }

    const auto started = std::chrono::steady_clock::now();
    CommandResult result;
    try {
        result = action();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    out << result.text;

    if (!report_path.empty()) {
        std::string command;
        for (const auto* sub : app.get_subcommands()) {
            command = sub->get_name();
            for (const auto* inner : sub->get_subcommands()) {
                command += " " + inner->get_name();
            }
        }
        json report{{"command", command},
                     {"inputs", inputs},
                     {"outputs", result.is_json ? json::parse(result.text) : json(result.text)},
                     {"exit_code", result.exit_code},
                     {"wall_time_s", elapsed.count()},
                     {"timestamp", iso_timestamp()},
                     {"version", THETA_SIEVE_VERSION}};
        std::ofstream file(report_path);
        if (!file) {
            err << "error: cannot write report to " << report_path << "\n";
            return kExitFailure;
        }
        file << report.dump(2) << "\n";
    }
    return result.exit_code;
}

} // namespace thetasieve::cli
