#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bgchaos {

enum class BGClass { General, VG, SVG, Laplace };

const char* bgclass_name(BGClass c) noexcept;

// X = X1 - X2 with X1 ~ Gamma(shape p1, rate alpha1), X2 ~ Gamma(shape p2, rate alpha2).
struct BGParams {
    double alpha1 = 1.0;
    double p1 = 1.0;
    double alpha2 = 1.0;
    double p2 = 1.0;

    static BGParams symmetric(double alpha, double p) { return {alpha, p, alpha, p}; }
    static BGParams variance_gamma(double alpha1, double alpha2, double p) { return {alpha1, p, alpha2, p}; }
    static BGParams laplace(double alpha) { return {alpha, 1.0, alpha, 1.0}; }

    double mean() const { return p1 / alpha1 - p2 / alpha2; }
};

struct BoundConstants {
    double alpha12 = 0.0;
    double alpha13 = 0.0;
};

// kappa[0] is unused; kappa[1..6] hold the cumulants.
struct CumulantVector {
    std::array<double, 7> kappa{};
    std::optional<std::array<double, 7>> se;

    double operator[](int j) const { return kappa[static_cast<std::size_t>(j)]; }
    double& operator[](int j) { return kappa[static_cast<std::size_t>(j)]; }
};

// Throws NonPositiveParameter unless all four fields are finite and > 0.
BGClass validate(const BGParams& params);

std::complex<double> char_fn(const BGParams& params, double z);
std::complex<double> log_char_fn(const BGParams& params, double z);

// Levy density nu(u), and the weight u*nu(u) that enters the Stein operator.
double levy_density(const BGParams& params, double u);
double levy_signed_weight(const BGParams& params, double u);

double cumulant(const BGParams& params, int j);
CumulantVector cumulants(const BGParams& params);

// Raw moment E[X^k].
double moment(const BGParams& params, int k);

std::vector<double> sample(const BGParams& params, std::size_t n, std::uint64_t seed);

// Throws BoundInapplicable unless alpha1*alpha2 > 1 + |alpha1 - alpha2|.
BoundConstants bound_constants(const BGParams& params);

}  // namespace bgchaos
