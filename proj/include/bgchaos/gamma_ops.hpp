#pragma once

#include <Eigen/Dense>

#include "bgchaos/bg.hpp"
#include "bgchaos/chaos.hpp"

namespace bgchaos {

struct GammaPath {
    double gamma[4] = {0.0, 0.0, 0.0, 0.0};  // gamma[1..3]
};

// Gamma_m(G) = 2^{m-1} sum lambda^m (z^2 - 1) + kappa_m / (m-1)!, for m in 1..3.
double gamma_pathwise(const Spectrum& spec, const Eigen::Ref<const Eigen::VectorXd>& z, int m);
GammaPath gamma_path(const Spectrum& spec, const Eigen::Ref<const Eigen::VectorXd>& z);

// E Gamma_m = kappa_m / (m-1)!, m in 1..6.
double expected_gamma(const ChaosKernel& kernel, int m);
double expected_gamma(const CumulantVector& cum, int m);

// E[G Gamma_m] = kappa_{m+1} / m!, m in 1..5.
double cross_moment_g_gamma(const ChaosKernel& kernel, int m);
double cross_moment_g_gamma(const CumulantVector& cum, int m);

// E[Gamma_m Gamma_p] for m, p >= 1 and m + p <= 6.
double cross_moment_gamma_gamma(const ChaosKernel& kernel, int m, int p);
double cross_moment_gamma_gamma(const CumulantVector& cum, int m, int p);

// E[(G/(a1 a2) + a13 Gamma_2 - Gamma_3)^2] assembled from the cross moments.
double gstar_l2(const ChaosKernel& kernel, const BGParams& params);
double gstar_l2(const CumulantVector& cum, const BGParams& params);

// The pathwise integrand G/(a1 a2) + a13 Gamma_2 - Gamma_3.
double gstar_pathwise(const Spectrum& spec, const Eigen::Ref<const Eigen::VectorXd>& z, const BGParams& params);

}  // namespace bgchaos
