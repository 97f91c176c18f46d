#include "bgchaos/homog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bgchaos/errors.hpp"
#include "bgchaos/rng.hpp"

namespace bgchaos {

InnovationLaw InnovationLaw::standard_normal() { return {Kind::StandardNormal, 2.0 * std::sqrt(2.0 / std::numbers::pi)}; }

InnovationLaw InnovationLaw::rademacher() { return {Kind::Rademacher, 1.0}; }

InnovationLaw InnovationLaw::centered_uniform() { return {Kind::CenteredUniform, 0.75 * std::sqrt(3.0)}; }

InnovationLaw InnovationLaw::user_moments(double rho) {
    if (!std::isfinite(rho) || rho <= 0.0) fail(Errc::NonPositiveParameter, "rho must be finite and > 0");
    // Unit variance forces E|Y|^3 >= 1 by Lyapunov.
    if (rho < 1.0) fail(Errc::DomainError, "rho below 1 is impossible for a unit-variance law");
    return {Kind::UserMoments, rho};
}

InnovationLaw InnovationLaw::from_name(const std::string& name) {
    if (name == "normal" || name == "gaussian") return standard_normal();
    if (name == "rademacher") return rademacher();
    if (name == "uniform") return centered_uniform();
    fail(Errc::ConfigInvalid, "unknown innovation law '" + name + "'");
}

std::string InnovationLaw::name() const {
    switch (kind) {
        case Kind::StandardNormal: return "normal";
        case Kind::Rademacher: return "rademacher";
        case Kind::CenteredUniform: return "uniform";
        case Kind::UserMoments: return "user";
    }
    return "user";
}

HomogSumSpec::HomogSumSpec(Eigen::MatrixXd f_table, InnovationLaw innovation)
    : f_(std::move(f_table)), law_(innovation) {
    if (f_.rows() != f_.cols()) fail(Errc::DimMismatch, "coefficient table must be square");
    if (f_.rows() < 2) fail(Errc::ConfigInvalid, "homogeneous sums need at least 2 variables");
    if (!f_.allFinite()) fail(Errc::DomainError, "coefficient table has non-finite entries");
    for (Eigen::Index i = 0; i < f_.rows(); ++i) {
        if (f_(i, i) != 0.0) fail(Errc::ConfigInvalid, "coefficient table must vanish on the diagonal");
        for (Eigen::Index j = i + 1; j < f_.cols(); ++j)
            if (std::fabs(f_(i, j) - f_(j, i)) > 1e-12) fail(Errc::NotSymmetric, "coefficient table must be symmetric");
    }
    if (!std::isfinite(law_.rho) || law_.rho <= 0.0) fail(Errc::NonPositiveParameter, "innovation rho must be > 0");
}

double homog_sum_eval(const HomogSumSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& y) {
    if (y.size() != spec.n_vars()) fail(Errc::DimMismatch, "innovation vector length differs from N");
    // Diagonal is zero, so the full quadratic form is the off-diagonal sum.
    return y.dot(spec.f_table() * y);
}

double influence(const HomogSumSpec& spec, int i) {
    if (i < 0 || i >= spec.n_vars()) fail(Errc::IndexOutOfRange, "variable index out of range");
    return spec.f_table().row(i).squaredNorm();
}

double max_influence(const HomogSumSpec& spec) { return spec.f_table().rowwise().squaredNorm().maxCoeff(); }

double homog_variance(const HomogSumSpec& spec) { return 2.0 * spec.f_table().squaredNorm(); }

Eigen::MatrixXd ustat_kernel(int n) {
    if (n < 2) fail(Errc::ConfigInvalid, "U-statistic needs n >= 2");
    const double v = 1.0 / (static_cast<double>(n) * (n - 1));
    Eigen::MatrixXd f = Eigen::MatrixXd::Constant(n, n, v);
    f.diagonal().setZero();
    return f;
}

Eigen::MatrixXd ustat_kernel(int n, double variance) {
    if (!std::isfinite(variance) || variance <= 0.0) fail(Errc::NonPositiveParameter, "variance must be > 0");
    if (n < 2) fail(Errc::ConfigInvalid, "U-statistic needs n >= 2");
    // 2 n (n-1) c^2 = variance
    const double c = std::sqrt(variance / (2.0 * n * (n - 1.0)));
    Eigen::MatrixXd f = Eigen::MatrixXd::Constant(n, n, c);
    f.diagonal().setZero();
    return f;
}

ChaosKernel bridge_kernel(const HomogSumSpec& spec) { return ChaosKernel(spec.f_table()); }

void draw_innovations(const InnovationLaw& law, Rng& rng, Eigen::Ref<Eigen::VectorXd> y) {
    const double r3 = std::sqrt(3.0);
    switch (law.kind) {
        case InnovationLaw::Kind::StandardNormal:
            for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = rng.normal();
            return;
        case InnovationLaw::Kind::Rademacher:
            for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = rng.rademacher();
            return;
        case InnovationLaw::Kind::CenteredUniform:
            for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = r3 * (2.0 * rng.uniform() - 1.0);
            return;
        case InnovationLaw::Kind::UserMoments:
            fail(Errc::ConfigInvalid, "a user-moments law carries rho only and cannot be sampled");
    }
}

std::vector<double> sample_homog(const HomogSumSpec& spec, std::size_t n_samples, std::uint64_t seed) {
    Rng rng(seed);
    const Eigen::Index n = spec.n_vars();
    const std::size_t block = 4096;
    std::vector<double> out(n_samples);
    Eigen::MatrixXd Y(n, static_cast<Eigen::Index>(block));
    for (std::size_t start = 0; start < n_samples; start += block) {
        const auto m = static_cast<Eigen::Index>(std::min(block, n_samples - start));
        for (Eigen::Index c = 0; c < m; ++c) draw_innovations(spec.innovation(), rng, Y.col(c));
        const Eigen::MatrixXd FY = spec.f_table() * Y.leftCols(m);
        const Eigen::VectorXd q = (Y.leftCols(m).array() * FY.array()).colwise().sum().transpose();
        for (Eigen::Index c = 0; c < m; ++c) out[start + static_cast<std::size_t>(c)] = q(c);
    }
    return out;
}

}  // namespace bgchaos
