#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mixsch/field_io.hpp"

namespace mixsch::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + text + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ConfigError(key, "expected a nonnegative integer, got '" + text + "'");
    return v;
}

// Module validators report "field: why"; keep the field and prefix the block.
[[noreturn]] void rethrow_in(const std::string& block, const std::exception& e) {
    const std::string what = e.what();
    if (what.rfind(block + ".", 0) == 0) {
        const auto c = what.find(':');
        throw ConfigError(what.substr(0, c), trim(what.substr(c + 1)));
    }
    const auto colon = what.find(':');
    if (colon != std::string::npos && what.find(' ') > colon) {
        throw ConfigError(block + "." + what.substr(0, colon), trim(what.substr(colon + 1)));
    }
    throw ConfigError(block, what);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
    KeyValueConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source + ":" + std::to_string(lineno), "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(source + ":" + std::to_string(lineno), "empty key");
        cfg.values_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot open " + path.string());
    return parse(in, path.string());
}

const std::string* KeyValueConfig::find(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return nullptr;
    used_.insert(key);
    return &it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    const std::string* v = find(key);
    return v ? *v : fallback;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    const std::string* v = find(key);
    return v ? to_double(key, *v) : fallback;
}

std::size_t KeyValueConfig::get_size(const std::string& key, std::size_t fallback) const {
    const std::string* v = find(key);
    return v ? static_cast<std::size_t>(to_u64(key, *v)) : fallback;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
    const std::string* v = find(key);
    return v ? to_u64(key, *v) : fallback;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    std::string t = *v;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(key, "expected true or false, got '" + *v + "'");
}

std::vector<double> KeyValueConfig::get_list(const std::string& key, const std::vector<double>& fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    std::vector<double> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    return out;
}

std::vector<std::string> KeyValueConfig::unused() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_) {
        if (!used_.count(k)) out.push_back(k);
    }
    return out;
}

RunConfig RunConfig::from(const KeyValueConfig& kv) {
    RunConfig c;
    c.nx = kv.get_size("grid.nx", c.nx);
    c.ny = kv.get_size("grid.ny", c.nx);
    c.lx = kv.get_double("grid.lx", c.lx);
    c.ly = kv.get_double("grid.ly", c.lx);

    c.model.s1 = kv.get_double("model.s1", c.model.s1);
    c.model.s2 = kv.get_double("model.s2", c.model.s2);
    c.model.alpha = kv.get_double("model.alpha", c.model.alpha);
    c.model.beta = kv.get_double("model.beta", c.model.beta);
    c.model.kappa = kv.get_double("model.kappa", c.model.kappa);

    c.weight_kind = kv.get_string("h.kind", c.weight_kind);
    c.weight_params = kv.get_list("h.params", {});
    c.weight_table = kv.get_string("h.table", "");

    c.seed = kv.get_u64("seed", 0);
    SolveOptions& so = c.solve;
    so.max_iters = kv.get_size("solver.max_iters", so.max_iters);
    so.grad_tol = kv.get_double("solver.grad_tol", so.grad_tol);
    const std::string rule = kv.get_string("solver.step_rule", "bb");
    if (rule == "bb" || rule == "barzilai-borwein") {
        so.step_rule = StepRule::barzilai_borwein;
    } else if (rule == "fixed") {
        so.step_rule = StepRule::fixed;
    } else {
        throw ConfigError("solver.step_rule", "expected bb or fixed, got '" + rule + "'");
    }
    so.fixed_step = kv.get_double("solver.fixed_step", so.fixed_step);
    so.n_starts = kv.get_size("solver.n_starts", so.n_starts);
    so.radial = kv.get_bool("solver.radial", so.radial);
    so.symmetrize = kv.get_bool("solver.symmetrize", so.symmetrize);
    so.record_history = kv.get_bool("solver.record_history", true);
    so.seed = c.seed;

    c.kappas = kv.get_list("scan.kappas", {});
    c.scan.continuation = kv.get_bool("scan.continuation", c.scan.continuation);
    c.scan.seed_sets = kv.get_size("scan.seed_sets", c.scan.seed_sets);
    c.scan.monotonicity_tol = kv.get_double("scan.monotonicity_tol", c.scan.monotonicity_tol);
    c.refine_iters = kv.get_size("scan.refine_iters", c.refine_iters);

    c.lambda.max_iters = kv.get_size("lambda.max_iters", c.lambda.max_iters);
    c.lambda.grad_tol = kv.get_double("lambda.grad_tol", c.lambda.grad_tol);
    c.lambda.n_starts = kv.get_size("lambda.n_starts", c.lambda.n_starts);
    c.lambda.seed = c.seed;
    const std::string mode = kv.get_string("lambda.mode", "both");
    if (mode == "radial") {
        c.lambda_mode = LambdaMode::radial;
    } else if (mode == "nonradial") {
        c.lambda_mode = LambdaMode::nonradial;
    } else if (mode == "both") {
        c.lambda_mode = LambdaMode::both;
    } else {
        throw ConfigError("lambda.mode", "expected radial, nonradial or both, got '" + mode + "'");
    }

    c.probe_box_sensitivity = kv.get_bool("probe.box_sensitivity", false);
    c.input_u = kv.get_string("input.u", "");
    c.input_v = kv.get_string("input.v", "");
    if (c.input_u.empty() != c.input_v.empty()) throw ConfigError("input.u", "input.u and input.v go together");

    // Validate every block before any computation.
    try {
        make_grid(c.nx, c.ny, c.lx, c.ly);
    } catch (const std::exception& e) {
        throw ConfigError("grid", e.what());
    }
    try {
        c.model.validate();
    } catch (const std::exception& e) {
        rethrow_in("model", e);
    }
    try {
        c.solve.validate();
    } catch (const std::exception& e) {
        rethrow_in("solver", e);
    }
    if (c.lambda.n_starts < 1) throw ConfigError("lambda.n_starts", "must be >= 1");
    if (!(c.lambda.grad_tol > 0.0)) throw ConfigError("lambda.grad_tol", "must be > 0");
    if (c.scan.seed_sets < 1) throw ConfigError("scan.seed_sets", "must be >= 1");
    c.weight(c.grid());
    return c;
}

Grid2D RunConfig::grid() const { return make_grid(nx, ny, lx, ly); }

WeightFunction RunConfig::weight(const Grid2D& grid) const {
    WeightKind kind;
    try {
        kind = parse_weight_kind(weight_kind);
    } catch (const std::exception& e) {
        throw ConfigError("h.kind", e.what());
    }
    auto param = [&](double fallback) {
        if (weight_params.size() > 1) throw ConfigError("h.params", "expected at most one parameter for " + weight_kind);
        return weight_params.empty() ? fallback : weight_params.front();
    };
    try {
        switch (kind) {
            case WeightKind::constant: return WeightFunction::constant(param(1.0));
            case WeightKind::bump: return WeightFunction::bump();
            case WeightKind::inverse_exponential: return WeightFunction::inverse_exponential();
            case WeightKind::annular_gaussian: return WeightFunction::annular_gaussian(param(1.0));
            case WeightKind::tabulated: {
                if (weight_table.empty()) throw ConfigError("h.table", "tabulated weight needs an MGF1 path");
                const Field t = read_mgf1(weight_table);
                if (!t.grid().compatible(grid)) throw ConfigError("h.table", "table grid does not match grid.*");
                return WeightFunction::tabulated(t);
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("h.params", e.what());
    }
    throw ConfigError("h.kind", "unhandled weight kind");
}

Problem RunConfig::problem() const {
    const Grid2D g = grid();
    try {
        return Problem(model, weight(g), g);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("h", e.what());
    }
}

}  // namespace mixsch::cli
