#include "bgchaos/gamma_ops.hpp"

#include <algorithm>
#include <cmath>

#include "bgchaos/errors.hpp"

namespace bgchaos {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// 2^{m-1} lambda_j^m for every j.
std::vector<double> gamma_coeffs(const Spectrum& spec, int m) {
    std::vector<double> c(spec.lambdas.size());
    const double scale = std::ldexp(1.0, m - 1);
    for (std::size_t j = 0; j < c.size(); ++j) {
        double t = spec.lambdas[j];
        for (int k = 1; k < m; ++k) t *= spec.lambdas[j];
        c[j] = scale * t;
    }
    return c;
}

}  // namespace

double gamma_pathwise(const Spectrum& spec, const Eigen::Ref<const Eigen::VectorXd>& z, int m) {
    if (m < 1 || m > 3) fail(Errc::OrderOutOfRange, "pathwise Gamma is available for m in 1..3");
    if (static_cast<std::size_t>(z.size()) != spec.lambdas.size())
        fail(Errc::DimMismatch, "normal vector length differs from spectrum size");
    const std::vector<double> c = gamma_coeffs(spec, m);
    double fluct = 0.0;
    double mean = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double zj = z(static_cast<Eigen::Index>(j));
        fluct += c[j] * (zj * zj - 1.0);
        mean += c[j];
    }
    // E Gamma_1 = E G = 0.
    if (m == 1) return fluct;
    return fluct + mean;
}

GammaPath gamma_path(const Spectrum& spec, const Eigen::Ref<const Eigen::VectorXd>& z) {
    GammaPath g;
    for (int m = 1; m <= 3; ++m) g.gamma[m] = gamma_pathwise(spec, z, m);
    return g;
}

double expected_gamma(const CumulantVector& cum, int m) {
    if (m < 1 || m > 6) fail(Errc::OrderOutOfRange, "expected Gamma order must be in 1..6");
    if (m == 1) return 0.0;
    return cum[m] / factorial(m - 1);
}

double expected_gamma(const ChaosKernel& kernel, int m) {
    return expected_gamma(chaos_cumulants(kernel), m);
}

double cross_moment_g_gamma(const CumulantVector& cum, int m) {
    if (m < 1 || m > 5) fail(Errc::OrderOutOfRange, "E[G Gamma_m] needs m in 1..5");
    return cum[m + 1] / factorial(m);
}

double cross_moment_g_gamma(const ChaosKernel& kernel, int m) {
    return cross_moment_g_gamma(chaos_cumulants(kernel), m);
}

double cross_moment_gamma_gamma(const CumulantVector& cum, int m, int p) {
    if (m < 1 || p < 1 || m + p > 6) fail(Errc::OrderOutOfRange, "E[Gamma_m Gamma_p] needs m, p >= 1, m + p <= 6");
    const double km = (m == 1) ? 0.0 : cum[m];
    const double kp = (p == 1) ? 0.0 : cum[p];
    return cum[m + p] / factorial(m + p - 1) + km * kp / (factorial(m - 1) * factorial(p - 1));
}

double cross_moment_gamma_gamma(const ChaosKernel& kernel, int m, int p) {
    return cross_moment_gamma_gamma(chaos_cumulants(kernel), m, p);
}

double gstar_l2(const CumulantVector& cum, const BGParams& params) {
    const BoundConstants bc = bound_constants(params);
    const double a = 1.0 / (params.alpha1 * params.alpha2);
    const double b = bc.alpha13;
    const double t[6] = {a * a * cross_moment_gamma_gamma(cum, 1, 1), b * b * cross_moment_gamma_gamma(cum, 2, 2),
                         cross_moment_gamma_gamma(cum, 3, 3), 2.0 * a * b * cross_moment_g_gamma(cum, 2),
                         -2.0 * a * cross_moment_g_gamma(cum, 3), -2.0 * b * cross_moment_gamma_gamma(cum, 2, 3)};
    double v = 0.0, scale = 0.0;
    for (double x : t) {
        v += x;
        scale += std::fabs(x);
    }
    // A second moment for kernel-derived input; estimated cumulants may not be.
    if (v < -1e-10 * std::max(1.0, scale)) fail(Errc::NegativeRadicand, "E[(G* - Gamma_3)^2] evaluates negative");
    return v < 0.0 ? 0.0 : v;
}

double gstar_l2(const ChaosKernel& kernel, const BGParams& params) {
    return gstar_l2(chaos_cumulants(kernel), params);
}

double gstar_pathwise(const Spectrum& spec, const Eigen::Ref<const Eigen::VectorXd>& z, const BGParams& params) {
    const BoundConstants bc = bound_constants(params);
    const GammaPath g = gamma_path(spec, z);
    return g.gamma[1] / (params.alpha1 * params.alpha2) + bc.alpha13 * g.gamma[2] - g.gamma[3];
}

}  // namespace bgchaos
