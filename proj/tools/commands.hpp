#ifndef THETASIEVE_TOOLS_COMMANDS_HPP
#define THETASIEVE_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thetasieve/arith.hpp"

namespace thetasieve::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;  // non-member, or a failed verification
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;  // numerical failure or budget exhausted

struct Format {
    int precision = 10;  // significant digits
};

struct CommandResult {
    int exit_code = kExitOk;
    std::string text;  // primary output, written to stdout
    bool is_json = false;
};

CommandResult cmd_member(u64 n, std::string_view theta, std::string_view mode, const Format& fmt);
CommandResult cmd_count(double x, std::string_view theta, std::string_view mode, unsigned threads,
                        const Format& fmt);
/// One member per line, depth-first order unless sorted.
CommandResult cmd_enumerate(double x, std::string_view theta, bool sorted);
CommandResult cmd_phi(double x, std::string_view y, const Format& fmt);
CommandResult cmd_density(std::string_view theta, double width, u64 max_N, const Format& fmt);
CommandResult cmd_lambda(double a, const Format& fmt);
CommandResult cmd_table1(const Format& fmt);
CommandResult cmd_figure1(double step, const Format& fmt);
CommandResult cmd_buchstab(double step, const Format& fmt);
CommandResult cmd_fa(double a, double z_max, double h, std::size_t stride, const Format& fmt);
CommandResult cmd_exponent(std::string_view theta, const std::vector<double>& xs, unsigned threads,
                           const Format& fmt);

CommandResult verify_identity_suite(const std::vector<double>& xs, const std::vector<std::string>& thetas);
CommandResult verify_db_suite(const std::vector<std::string>& thetas, u64 n_max);
CommandResult verify_bounds_suite(const std::vector<double>& as);
CommandResult verify_omega_suite(double step, double u_max);
CommandResult verify_zero_free_suite(const std::vector<double>& as);

/// The a values of the published lambda table.
std::vector<double> table1_grid();

/// "lo:hi:step", inclusive of hi up to rounding.
std::vector<double> parse_grid(std::string_view text);
/// "v1,v2,...".
std::vector<double> parse_list(std::string_view text);

/// Worker count: the request (default hardware concurrency) capped by
/// THETA_SIEVE_THREADS when that is set.
unsigned thread_budget(std::optional<unsigned> requested);

/// Full command line. Primary output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace thetasieve::cli

#endif
