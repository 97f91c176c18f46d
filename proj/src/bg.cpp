#include "bgchaos/bg.hpp"

#include <cmath>

#include "bgchaos/errors.hpp"
#include "bgchaos/rng.hpp"

namespace bgchaos {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

const char* bgclass_name(BGClass c) noexcept {
    switch (c) {
        case BGClass::General: return "GENERAL";
        case BGClass::VG: return "VG";
        case BGClass::SVG: return "SVG";
        case BGClass::Laplace: return "LAPLACE";
    }
    return "GENERAL";
}

BGClass validate(const BGParams& b) {
    if (!positive(b.alpha1) || !positive(b.p1) || !positive(b.alpha2) || !positive(b.p2))
        fail(Errc::NonPositiveParameter, "BG parameters must be finite and > 0");
    if (b.p1 != b.p2) return BGClass::General;
    if (b.alpha1 != b.alpha2) return BGClass::VG;
    if (b.p1 != 1.0) return BGClass::SVG;
    return BGClass::Laplace;
}

std::complex<double> log_char_fn(const BGParams& b, double z) {
    validate(b);
    // log(a/(a - iz)) = -0.5*log(1 + z^2/a^2) + i*atan(z/a), principal branch.
    const double r1 = z / b.alpha1;
    const double r2 = z / b.alpha2;
    const double re = -0.5 * (b.p1 * std::log1p(r1 * r1) + b.p2 * std::log1p(r2 * r2));
    const double im = b.p1 * std::atan(r1) - b.p2 * std::atan(r2);
    return {re, im};
}

std::complex<double> char_fn(const BGParams& b, double z) { return std::exp(log_char_fn(b, z)); }

double levy_density(const BGParams& b, double u) {
    validate(b);
    if (u == 0.0 || !std::isfinite(u)) fail(Errc::DomainError, "Levy density undefined at u = 0");
    if (u > 0.0) return b.p1 / u * std::exp(-b.alpha1 * u);
    return -b.p2 / u * std::exp(b.alpha2 * u);
}

double levy_signed_weight(const BGParams& b, double u) {
    validate(b);
    if (u == 0.0 || !std::isfinite(u)) fail(Errc::DomainError, "Levy weight undefined at u = 0");
    if (u > 0.0) return b.p1 * std::exp(-b.alpha1 * u);
    return -b.p2 * std::exp(b.alpha2 * u);
}

double cumulant(const BGParams& b, int j) {
    validate(b);
    if (j < 1 || j > 6) fail(Errc::OrderOutOfRange, "cumulant order must be in 1..6");
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    return factorial(j - 1) * (b.p1 / std::pow(b.alpha1, j) + sign * b.p2 / std::pow(b.alpha2, j));
}

CumulantVector cumulants(const BGParams& b) {
    CumulantVector c;
    for (int j = 1; j <= 6; ++j) c[j] = cumulant(b, j);
    return c;
}

double moment(const BGParams& b, int k) {
    validate(b);
    if (k < 1) fail(Errc::OrderOutOfRange, "moment order must be >= 1");
    const double lg1 = std::lgamma(b.p1);
    const double lg2 = std::lgamma(b.p2);
    double sum = 0.0;
    for (int j = 0; j <= k; ++j) {
        const double lbinom = std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0);
        const double lterm = lbinom - (k - j) * std::log(b.alpha1) - j * std::log(b.alpha2) +
                             std::lgamma(b.p1 + k - j) - lg1 + std::lgamma(b.p2 + j) - lg2;
        sum += ((j % 2 == 0) ? 1.0 : -1.0) * std::exp(lterm);
    }
    return sum;
}

std::vector<double> sample(const BGParams& b, std::size_t n, std::uint64_t seed) {
    validate(b);
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& x : out) {
        const double g1 = rng.gamma(b.p1);
        const double g2 = rng.gamma(b.p2);
        x = g1 / b.alpha1 - g2 / b.alpha2;
    }
    return out;
}

BoundConstants bound_constants(const BGParams& b) {
    validate(b);
    const double prod = b.alpha1 * b.alpha2;
    const double excess = prod - (1.0 + std::fabs(b.alpha1 - b.alpha2));
    if (!(excess > 0.0))
        fail(Errc::BoundInapplicable, "bounds need alpha1*alpha2 > 1 + |alpha1 - alpha2|");
    return {prod / excess, 1.0 / b.alpha1 - 1.0 / b.alpha2};
}

}  // namespace bgchaos
