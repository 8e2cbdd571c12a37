#pragma once

#include <filesystem>
#include <iosfwd>

#include "config.hpp"

namespace mixsch::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2, kRuntimeError = 3 };

struct Context {
    RunConfig config;
    std::filesystem::path out;
    std::size_t jobs = 1;
    std::ostream& log;
};

int cmd_solve(const Context& ctx);
int cmd_scan_kappa(const Context& ctx);
int cmd_estimate_lambda(const Context& ctx);
int cmd_check_pohozaev(const Context& ctx);
int cmd_verify_operators(const Context& ctx);

}  // namespace mixsch::cli
