#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixsch/analysis.hpp"
#include "mixsch/model.hpp"
#include "mixsch/pohozaev.hpp"
#include "mixsch/solver.hpp"

namespace mixsch::cli {

/// Bad or missing configuration; key() names the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& why) : std::runtime_error(key + ": " + why), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Flat "section.key = value" text. '#' starts a comment; blank lines are
/// ignored; later assignments override earlier ones.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in, const std::string& source = "<stream>");
    static KeyValueConfig load(const std::filesystem::path& path);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

    /// Keys never read through a getter, for typo warnings.
    std::vector<std::string> unused() const;
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    const std::string* find(const std::string& key) const;

    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

enum class LambdaMode { radial, nonradial, both };

struct RunConfig {
    std::size_t nx = 128;
    std::size_t ny = 128;
    double lx = 40.0;
    double ly = 40.0;
    ModelParams model;
    std::string weight_kind = "annular-gaussian";
    std::vector<double> weight_params;
    std::string weight_table;  ///< MGF1 path for tabulated weights
    SolveOptions solve;
    ScanOptions scan;
    std::vector<double> kappas;
    std::size_t refine_iters = 8;
    LambdaOptions lambda;
    LambdaMode lambda_mode = LambdaMode::both;
    bool probe_box_sensitivity = false;
    std::string input_u;
    std::string input_v;
    std::uint64_t seed = 0;

    /// Reads and validates every block; throws ConfigError naming the key.
    static RunConfig from(const KeyValueConfig& kv);

    Grid2D grid() const;
    WeightFunction weight(const Grid2D& grid) const;
    Problem problem() const;
};

}  // namespace mixsch::cli
