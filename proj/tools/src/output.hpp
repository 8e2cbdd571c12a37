#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixsch/analysis.hpp"
#include "mixsch/pohozaev.hpp"
#include "mixsch/solver.hpp"
#include "mixsch/verify.hpp"

namespace mixsch::cli {

/// Header plus rows of already formatted cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_table_csv(const std::filesystem::path& path, const Table& t);
Table read_table_csv(const std::filesystem::path& path);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

/// Pretty JSON with a top-level "generated_at" UTC timestamp, the only field
/// allowed to differ between identical runs.
void write_json(const std::filesystem::path& path, nlohmann::json j);
nlohmann::json read_json(const std::filesystem::path& path);

nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const SobolevEstimate& e);
nlohmann::json to_json(const PohozaevReport& r);
nlohmann::json to_json(const NonexistenceReport& r);
nlohmann::json to_json(const CheckResult& c);

Table history_table(const SolveReport& r);

}  // namespace mixsch::cli
