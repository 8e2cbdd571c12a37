#include "mixsch/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mixsch {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::subcritical: return "subcritical";
        case Regime::sum_critical: return "sum-critical";
        case Regime::critical: return "critical";
    }
    return "unknown";
}

double critical_exponent(double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("fractional order must lie in (0, 1)");
    return 2.0 * (1.0 + s) / (1.0 - s);
}

void ModelParams::validate() const {
    auto fail = [](const std::string& key, const std::string& why) {
        throw std::invalid_argument(key + ": " + why);
    };
    if (!(s1 > 0.0 && s1 < 1.0)) fail("s1", "must lie in (0, 1)");
    if (!(s2 > 0.0 && s2 < 1.0)) fail("s2", "must lie in (0, 1)");
    if (!(alpha > 1.0)) fail("alpha", "exponent rule requires alpha, beta > 1");
    if (!(beta > 1.0)) fail("beta", "exponent rule requires alpha, beta > 1");
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) fail("kappa", "coupling must be finite and >= 0");
    const double cap = std::min(crit1(), crit2());
    if (degree() > cap * (1.0 + kCriticalTolerance)) {
        std::ostringstream os;
        os << "exponent rule requires alpha + beta <= min(2_s1, 2_s2) = " << cap << ", got " << degree();
        fail("alpha", os.str());
    }
}

Regime ModelParams::regime() const {
    const double c1 = crit1();
    const double c2 = crit2();
    const double cap = std::min(c1, c2);
    if (std::abs(degree() - cap) > kCriticalTolerance * cap) return Regime::subcritical;
    if (std::abs(s1 - s2) <= kCriticalTolerance) return Regime::critical;
    return Regime::sum_critical;
}

Problem::Problem(ModelParams m, WeightFunction w, Grid2D g)
    : model(m), weight(std::move(w)), grid(std::move(g)), sampled(sample_weight(weight, grid)) {
    model.validate();
    if (sampled.h.min() < 0.0) throw std::invalid_argument("h: weight must be nonnegative on the grid");
}

Problem Problem::with_kappa(double kappa) const {
    Problem p = *this;
    p.model.kappa = kappa;
    p.model.validate();
    return p;
}

}  // namespace mixsch
