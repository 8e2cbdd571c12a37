#include "output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mixsch::cli {

namespace {

// JSON has no NaN or infinity; those become null.
nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_table_csv(const std::filesystem::path& path, const Table& t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
    out << '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.header.size()) throw std::logic_error("csv row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

Table read_table_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty csv");
    t.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != t.header.size()) throw std::runtime_error(path.string() + ": ragged row");
        t.rows.push_back(std::move(cells));
    }
    return t;
}

void write_json(const std::filesystem::path& path, nlohmann::json j) {
    j["generated_at"] = utc_now();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return nlohmann::json::parse(in);
}

nlohmann::json to_json(const SolveReport& r) {
    return {
        {"converged", r.converged},
        {"status", r.status},
        {"iterations", r.iterations},
        {"energy", number(r.energy)},
        {"nehari_residual", number(r.nehari_residual)},
        {"norm_sq", number(r.norm_sq)},
        {"grad_norm", number(r.grad_norm)},
        {"el_residual", number(r.el_residual)},
        {"constrained_el_residual", number(r.constrained_el_residual)},
        {"semi_trivial", r.semi_trivial},
        {"concentration_suspected", r.concentration_suspected},
        {"boundary_decay", number(r.boundary_decay)},
        {"radial_defect", number(r.radial_defect)},
        {"min_value", number(r.min_value)},
        {"raw_min_value", number(r.raw_min_value)},
        {"symmetrized", r.symmetrized},
        {"symmetrization_energy_change", number(r.symmetrization_energy_change)},
        {"seed", r.seed},
        {"start_index", r.start_index},
    };
}

nlohmann::json to_json(const SobolevEstimate& e) {
    return {
        {"s", e.s},
        {"radial", e.radial},
        {"lambda", number(e.lambda)},
        {"threshold", number(e.threshold)},
        {"converged", e.converged},
        {"iterations", e.iterations},
        {"grad_norm", number(e.grad_norm)},
        {"start_values", e.start_values},
    };
}

nlohmann::json to_json(const PohozaevReport& r) {
    return {
        {"r61", number(r.r61)},
        {"r62", number(r.r62)},
        {"r622", number(r.r622)},
        {"lhs61", number(r.lhs61)},
        {"rhs61", number(r.rhs61)},
        {"lhs62", number(r.lhs62)},
        {"rhs62", number(r.rhs62)},
        {"lhs622", number(r.lhs622)},
        {"rhs622", number(r.rhs622)},
        {"moment_check", {{"xu", number(r.moment_xu)}, {"yv", number(r.moment_yv)}, {"outer_mass", number(r.outer_mass)},
                          {"ok", r.moment_ok}}},
    };
}

nlohmann::json to_json(const NonexistenceReport& r) {
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& c : r.candidates) {
        cands.push_back({
            {"start_index", c.start_index},
            {"converged", c.converged},
            {"energy", number(c.energy)},
            {"mass", number(c.mass)},
            {"gap", number(c.gap)},
            {"inconsistent", c.inconsistent},
            {"boundary_mass", number(c.boundary_mass)},
            {"pohozaev", to_json(c.pohozaev)},
        });
    }
    nlohmann::json viol = nlohmann::json::array();
    for (const auto& v : r.sign.violations) viol.push_back({{"x", v.x}, {"y", v.y}, {"value", v.value}});
    return {
        {"hypothesis_holds", r.hypothesis_holds},
        {"gate", r.gate},
        {"sign", {{"holds", r.sign.holds}, {"min_x_term", r.sign.min_x_term}, {"min_y_term", r.sign.min_y_term},
                  {"violations", viol}}},
        {"max_rhs622", number(r.max_rhs622)},
        {"all_inconsistent", r.all_inconsistent},
        {"box_energy_shift", number(r.box_energy_shift)},
        {"box_mass_shift", number(r.box_mass_shift)},
        {"candidates", cands},
    };
}

nlohmann::json to_json(const CheckResult& c) {
    return {{"name", c.name}, {"value", number(c.value)}, {"tolerance", c.tolerance}, {"pass", c.pass}, {"detail", c.detail}};
}

Table history_table(const SolveReport& r) {
    Table t{{"iter", "energy", "grad_norm", "phi"}, {}};
    for (const auto& h : r.history) {
        t.rows.push_back({std::to_string(h.iter), format_double(h.energy), format_double(h.grad_norm), format_double(h.phi)});
    }
    return t;
}

}  // namespace mixsch::cli
