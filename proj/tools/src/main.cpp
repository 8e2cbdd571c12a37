#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "mixsch/errors.hpp"

using namespace mixsch::cli;

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral solver for a mixed local/nonlocal Schroedinger system"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir = "out";
    std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 0;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "flat key = value run configuration");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed, overrides the config");
    app.add_option("--set", overrides, "extra key=value assignments applied after the config file");

    struct Sub {
        const char* name;
        const char* help;
        int (*fn)(const Context&);
    };
    const Sub subs[] = {
        {"solve", "multistart ground-state solve", cmd_solve},
        {"scan-kappa", "energy levels over a coupling list and the kappa* bracket", cmd_scan_kappa},
        {"estimate-lambda", "Sobolev-type constants, radial and non-radial", cmd_estimate_lambda},
        {"check-pohozaev", "Pohozaev residuals and non-existence diagnostics", cmd_check_pohozaev},
        {"verify-operators", "operator invariant battery", cmd_verify_operators},
    };
    for (const auto& s : subs) app.add_subcommand(s.name, s.help);

    CLI11_PARSE(app, argc, argv);

    try {
        KeyValueConfig kv = config_path.empty() ? KeyValueConfig{} : KeyValueConfig::load(config_path);
        for (const auto& o : overrides) {
            const auto eq = o.find('=');
            if (eq == std::string::npos) throw ConfigError("--set", "expected key=value, got '" + o + "'");
            kv.set(o.substr(0, eq), o.substr(eq + 1));
        }
        if (*seed_opt) kv.set("seed", std::to_string(seed));
        RunConfig cfg = RunConfig::from(kv);
        for (const auto& k : kv.unused()) std::cerr << "warning: unknown config key '" << k << "'\n";

        std::filesystem::create_directories(out_dir);
        const Context ctx{std::move(cfg), out_dir, jobs, std::cerr};
        for (const auto& s : subs) {
            if (app.got_subcommand(s.name)) return s.fn(ctx);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const mixsch::RegimeMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
    return kRuntimeError;
}
