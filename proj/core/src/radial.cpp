#include "mixsch/radial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "mixsch/spectral.hpp"

namespace mixsch {

struct RadialProjector::Impl {
    Grid2D grid;
    std::vector<std::size_t> group_of;  // node -> radius group
    std::vector<double> count;          // nodes per group
    Eigen::MatrixXd q;                  // thin Q of diag(sqrt(count)) * basis
    explicit Impl(const Grid2D& g) : grid(g) {}
};

RadialProjector::RadialProjector(const Grid2D& grid) {
    auto impl = std::make_unique<Impl>(grid);
    const std::size_t nx = grid.nx();
    const std::size_t ny = grid.ny();
    const std::size_t n = grid.size();
    std::vector<double> r2(n);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const double x = grid.x(i);
            const double y = grid.y(j);
            r2[grid.index(i, j)] = x * x + y * y;
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r2[a] < r2[b]; });

    const double h2 = std::pow(std::min(grid.dx(), grid.dy()), 2);
    impl->group_of.assign(n, 0);
    std::vector<double> radius;
    double current = -1.0;
    for (std::size_t k : order) {
        if (radius.empty() || r2[k] - current > 1e-9 * h2) {
            current = r2[k];
            radius.push_back(std::sqrt(current));
            impl->count.push_back(0.0);
        }
        impl->group_of[k] = radius.size() - 1;
        impl->count.back() += 1.0;
    }

    const std::size_t groups = radius.size();
    const double rmax = radius.back();
    const auto wanted = static_cast<std::size_t>(std::ceil(rmax / std::sqrt(h2)));
    const std::size_t terms = std::max<std::size_t>(1, std::min(wanted, groups / 2));
    Eigen::MatrixXd basis(groups, terms);
    for (std::size_t g = 0; g < groups; ++g) {
        const double w = std::sqrt(impl->count[g]);
        // Chebyshev three-term recurrence in z, keeping the even members.
        const double z = rmax > 0.0 ? radius[g] / rmax : 0.0;
        double t_prev = 1.0;
        double t_cur = z;
        basis(g, 0) = w;
        for (std::size_t k = 1; k < terms; ++k) {
            double t_next = 2.0 * z * t_cur - t_prev;
            t_prev = t_cur;
            t_cur = t_next;
            t_next = 2.0 * z * t_cur - t_prev;
            t_prev = t_cur;
            t_cur = t_next;
            basis(g, k) = w * t_prev;
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    impl->q = qr.householderQ() * Eigen::MatrixXd::Identity(groups, terms);
    impl_ = std::move(impl);
}

RadialProjector::~RadialProjector() = default;
RadialProjector::RadialProjector(RadialProjector&&) noexcept = default;
RadialProjector& RadialProjector::operator=(RadialProjector&&) noexcept = default;

const Grid2D& RadialProjector::grid() const noexcept { return impl_->grid; }
std::size_t RadialProjector::basis_size() const noexcept { return static_cast<std::size_t>(impl_->q.cols()); }
std::size_t RadialProjector::radius_count() const noexcept { return impl_->count.size(); }

Field RadialProjector::apply(const Field& f) const {
    if (!f.grid().compatible(impl_->grid)) throw std::invalid_argument("radial projector built for another grid");
    const std::size_t groups = impl_->count.size();
    Eigen::VectorXd sums = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(groups));
    for (std::size_t k = 0; k < f.size(); ++k) sums[static_cast<Eigen::Index>(impl_->group_of[k])] += f[k];
    // sqrt(count) * mean = sum / sqrt(count)
    Eigen::VectorXd b(static_cast<Eigen::Index>(groups));
    for (std::size_t g = 0; g < groups; ++g) {
        b[static_cast<Eigen::Index>(g)] = sums[static_cast<Eigen::Index>(g)] / std::sqrt(impl_->count[g]);
    }
    const Eigen::VectorXd fitted = impl_->q * (impl_->q.transpose() * b);
    Field out(f.grid());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const std::size_t g = impl_->group_of[k];
        out[k] = fitted[static_cast<Eigen::Index>(g)] / std::sqrt(impl_->count[g]);
    }
    return out;
}

Pair RadialProjector::apply(const Pair& p) const { return Pair(apply(p.u), apply(p.v)); }

Field apply_isotropic_inverse(const Field& f, double s) {
    require_fractional_order(s);
    const Grid2D& g = f.grid();
    const double a = std::tgamma(s + 0.5) / (std::sqrt(std::numbers::pi) * std::tgamma(s + 1.0));
    SpectralField F = forward_transform(f);
    const std::size_t nyh = F.stored_ny();
    for (std::size_t i = 0; i < g.nx(); ++i) {
        const double k1 = g.k1()[i];
        for (std::size_t j = 0; j < nyh; ++j) {
            const double k2 = g.k2()[j];
            const double kk = k1 * k1 + k2 * k2;
            F.stored(i, j) /= 1.0 + 0.5 * kk + a * std::pow(kk, s);
        }
    }
    return inverse_transform(F);
}

Field radial_project(const Field& f) { return RadialProjector(f.grid()).apply(f); }

double radial_defect(const Field& f, const RadialProjector& proj) {
    const double n = l2_norm_sq(f);
    if (n == 0.0) return 0.0;
    return std::sqrt(l2_norm_sq(f - proj.apply(f)) / n);
}

}  // namespace mixsch
