#include "bgchaos/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "bgchaos/errors.hpp"
#include "bgchaos/gamma_ops.hpp"

namespace bgchaos {

namespace {

double checked_sqrt(double x, double scale, const char* what) {
    if (x < -1e-10 * std::max(1.0, scale)) fail(Errc::NegativeRadicand, std::string(what) + " radicand is negative");
    return std::sqrt(std::max(0.0, x));
}

void finish(BoundReport& r) {
    double s = 0.0;
    for (const auto& [name, v] : r.terms) s += v;
    r.total = s;
}

struct Radicand {
    double value;
    double scale;
};

Radicand radicand_parts(const CumulantVector& k, double a, double b) {
    const double parts[8] = {k[6] / 120.0,
                             -b * k[5] / 12.0,
                             (b * b / 6.0 - a / 3.0) * k[4],
                             a * b * k[3],
                             0.25 * k[3] * k[3],
                             -b * k[2] * k[3],
                             a * a * k[2],
                             b * b * k[2] * k[2]};
    Radicand r{0.0, 0.0};
    for (double p : parts) {
        r.value += p;
        r.scale += std::fabs(p);
    }
    return r;
}

double symmetric_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0) fail(Errc::NonPositiveParameter, "alpha must be finite and > 0");
    if (!(alpha > 1.0)) fail(Errc::BoundInapplicable, "symmetric targets need alpha > 1");
    return alpha;
}

}  // namespace

const char* variant_name(BoundVariant v) noexcept {
    switch (v) {
        case BoundVariant::BG_CUMULANT: return "BG_CUMULANT";
        case BoundVariant::BG_GAMMAOP_MC: return "BG_GAMMAOP_MC";
        case BoundVariant::VG: return "VG";
        case BoundVariant::SVG: return "SVG";
        case BoundVariant::LAPLACE: return "LAPLACE";
        case BoundVariant::NORMAL: return "NORMAL";
        case BoundVariant::GAMMA_DIST: return "GAMMA_DIST";
        case BoundVariant::DECOMPOSED: return "DECOMPOSED";
        case BoundVariant::HOMOG_SUM: return "HOMOG_SUM";
    }
    return "UNKNOWN";
}

double BoundReport::term(const std::string& name) const {
    for (const auto& [n, v] : terms)
        if (n == name) return v;
    fail(Errc::ConfigInvalid, "report has no term '" + name + "'");
}

nlohmann::ordered_json BoundReport::to_json() const {
    nlohmann::ordered_json j;
    j["variant"] = variant_name(variant);
    nlohmann::ordered_json t = nlohmann::ordered_json::object();
    for (const auto& [n, v] : terms) t[n] = v;
    j["terms"] = t;
    j["total"] = total;
    if (constants)
        j["constants"] = {{"alpha12", constants->alpha12}, {"alpha13", constants->alpha13}};
    else
        j["constants"] = nullptr;
    j["cumulant_source"] = cumulant_source;
    if (!aux.empty()) {
        nlohmann::ordered_json a = nlohmann::ordered_json::object();
        for (const auto& [n, v] : aux) a[n] = v;
        j["aux"] = a;
    }
    return j;
}

double cumulant_radicand(const CumulantVector& cum, const BGParams& params) {
    const BoundConstants bc = bound_constants(params);
    return radicand_parts(cum, 1.0 / (params.alpha1 * params.alpha2), bc.alpha13).value;
}

BoundReport d3_bound_cumulants(const CumulantVector& cum, const BGParams& params, const std::string& source) {
    const BoundConstants bc = bound_constants(params);
    const double prod = params.alpha1 * params.alpha2;
    const Radicand rad = radicand_parts(cum, 1.0 / prod, bc.alpha13);
    BoundReport r;
    r.variant = BoundVariant::BG_CUMULANT;
    r.constants = bc;
    r.cumulant_source = source;
    r.terms = {{"gamma_l2", bc.alpha12 / 3.0 * checked_sqrt(rad.value, rad.scale, "cumulant bound")},
               {"variance", bc.alpha12 / 2.0 * std::fabs((params.p1 + params.p2) / prod - cum[2])},
               {"mean", bc.alpha12 * std::fabs(params.p1 / params.alpha1 - params.p2 / params.alpha2)}};
    finish(r);
    return r;
}

BoundReport d3_bound_family(const CumulantVector& cum, const FamilySpec& fam, const std::string& source) {
    BoundReport r;
    r.cumulant_source = source;
    if (fam.kind == FamilySpec::Kind::VG) {
        const BGParams params = BGParams::variance_gamma(fam.alpha1, fam.alpha2, fam.p);
        const BoundConstants bc = bound_constants(params);
        const double prod = fam.alpha1 * fam.alpha2;
        const Radicand rad = radicand_parts(cum, 1.0 / prod, bc.alpha13);
        r.variant = BoundVariant::VG;
        r.constants = bc;
        r.terms = {{"gamma_l2", bc.alpha12 / 3.0 * checked_sqrt(rad.value, rad.scale, "VG bound")},
                   {"variance", bc.alpha12 / 2.0 * std::fabs(2.0 * fam.p / prod - cum[2])},
                   {"mean", fam.p * bc.alpha12 * std::fabs(bc.alpha13)}};
        finish(r);
        return r;
    }
    const double a = symmetric_alpha(fam.alpha1);
    const double p = (fam.kind == FamilySpec::Kind::LAPLACE) ? 1.0 : fam.p;
    if (!std::isfinite(p) || p <= 0.0) fail(Errc::NonPositiveParameter, "p must be finite and > 0");
    const double a2 = a * a;
    const double c = a2 / (a2 - 1.0);
    const double parts[4] = {cum[6] / 120.0, -cum[4] / (3.0 * a2), 0.25 * cum[3] * cum[3], cum[2] / (a2 * a2)};
    double rad = 0.0, scale = 0.0;
    for (double x : parts) {
        rad += x;
        scale += std::fabs(x);
    }
    r.variant = (fam.kind == FamilySpec::Kind::LAPLACE) ? BoundVariant::LAPLACE : BoundVariant::SVG;
    r.constants = BoundConstants{c, 0.0};
    r.terms = {{"gamma_l2", c / 3.0 * checked_sqrt(rad, scale, "symmetric bound")},
               {"variance", c / 2.0 * std::fabs(2.0 * p / a2 - cum[2])},
               {"mean", 0.0}};
    finish(r);
    return r;
}

BoundReport d3_bound_normal(const CumulantVector& cum, double sigma2, const std::string& source) {
    if (!std::isfinite(sigma2) || sigma2 <= 0.0) fail(Errc::NonPositiveParameter, "sigma2 must be finite and > 0");
    if (!(sigma2 > 1.0)) fail(Errc::BoundInapplicable, "normal target needs standard deviation > 1");
    const double rad = cum[6] / 120.0 + 0.25 * cum[3] * cum[3];
    BoundReport r;
    r.variant = BoundVariant::NORMAL;
    r.cumulant_source = source;
    r.terms = {{"gamma3_l2", checked_sqrt(rad, std::fabs(cum[6] / 120.0) + 0.25 * cum[3] * cum[3], "normal bound") / 3.0},
               {"variance", 0.5 * std::fabs(sigma2 - cum[2])},
               {"mean", std::fabs(cum[1])}};
    finish(r);
    return r;
}

BoundReport d3_bound_gamma_dist(const ChaosKernel& kernel, double alpha, double p) {
    if (!std::isfinite(alpha) || alpha <= 0.0 || !std::isfinite(p) || p <= 0.0)
        fail(Errc::NonPositiveParameter, "gamma target needs alpha, p > 0");
    if (!(alpha > 1.0)) fail(Errc::BoundInapplicable, "gamma target needs alpha > 1");
    const CumulantVector cum = chaos_cumulants(kernel);
    const double g22 = cross_moment_gamma_gamma(cum, 2, 2);
    const double g23 = cross_moment_gamma_gamma(cum, 2, 3);
    const double g33 = cross_moment_gamma_gamma(cum, 3, 3);
    const double second = g22 / (alpha * alpha) - 2.0 * g23 / alpha + g33;
    const double scale = std::fabs(g22) / (alpha * alpha) + 2.0 * std::fabs(g23) / alpha + std::fabs(g33);
    const double c = alpha / (alpha - 1.0);
    BoundReport r;
    r.variant = BoundVariant::GAMMA_DIST;
    r.terms = {{"l1_cauchy_schwarz", c / 3.0 * checked_sqrt(second, scale, "gamma bound")},
               {"variance", c / 2.0 * std::fabs(0.0 / alpha - expected_gamma(cum, 2))},
               {"mean", c * std::fabs(p / alpha - 0.0)}};
    finish(r);
    return r;
}

BoundReport d3_bound_decomposed(const CumulantVector& cumG, const BGParams& params, const std::string& source) {
    const BoundConstants bc = bound_constants(params);
    const double lhs = params.p1 * params.alpha2, rhs = params.p2 * params.alpha1;
    if (std::fabs(lhs - rhs) > 1e-12 * std::max({1.0, std::fabs(lhs), std::fabs(rhs)}))
        fail(Errc::MeanNotZero, "decomposed bound needs p1*alpha2 = p2*alpha1");
    const CumulantVector kx = cumulants(params);
    double kt[7];
    for (int j = 1; j <= 6; ++j) kt[j] = cumG[j] - kx[j];
    const double prod = params.alpha1 * params.alpha2;
    const double b = std::fabs(bc.alpha13);
    const double w = bc.alpha12 / 3.0;
    BoundReport r;
    r.variant = BoundVariant::DECOMPOSED;
    r.constants = bc;
    r.cumulant_source = source;
    r.terms = {
        {"k6", w * std::sqrt(std::fabs(kt[6])) / std::sqrt(120.0)},
        {"k5", w * std::sqrt(b) / (2.0 * std::sqrt(3.0)) * std::sqrt(std::fabs(kt[5]))},
        {"k4", w * std::sqrt(std::fabs(bc.alpha13 * bc.alpha13 / 6.0 - 1.0 / (3.0 * prod))) * std::sqrt(std::fabs(kt[4]))},
        {"k3_cross", w * std::sqrt(b) / std::sqrt(prod) * std::sqrt(std::fabs(kt[3]))},
        {"k3_square", w * 0.5 * std::fabs(kt[3])},
        {"k3_target", w * std::sqrt(std::fabs(kt[3] * kx[3])) / std::sqrt(2.0)},
        {"k23", w * std::sqrt(b) * std::sqrt(std::fabs(cumG[2] * cumG[3] - kx[2] * kx[3]))},
        {"k2", w / prod * std::sqrt(std::fabs(kt[2]))},
        {"k2_square", w * b * std::fabs(kt[2])},
        {"k2_target", w * std::sqrt(2.0) * b * std::sqrt(std::fabs(kt[2] * kx[2]))},
        {"variance", bc.alpha12 / 2.0 * std::fabs(kt[2])},
    };
    finish(r);
    return r;
}

BoundReport d3_bound_homog(const CumulantVector& cumG, const BGParams& params, double rho, double max_influence,
                           const std::string& source) {
    if (!std::isfinite(rho) || rho <= 0.0) fail(Errc::NonPositiveParameter, "rho must be finite and > 0");
    if (!std::isfinite(max_influence) || max_influence < 0.0)
        fail(Errc::DomainError, "max influence must be finite and >= 0");
    BoundReport r = d3_bound_decomposed(cumG, params, source);
    r.variant = BoundVariant::HOMOG_SUM;
    const double c = 30.0 * rho;
    r.terms.insert(r.terms.begin(), {"invariance", 2.0 * c * c * std::sqrt(max_influence)});
    finish(r);
    return r;
}

BoundReport d3_bound_gammaop(const GammaOpTerms& t, const BGParams& params) {
    const BoundConstants bc = bound_constants(params);
    if (!std::isfinite(t.l1) || t.l1 < 0.0) fail(Errc::DomainError, "L1 term must be finite and >= 0");
    const double prod = params.alpha1 * params.alpha2;
    BoundReport r;
    r.variant = BoundVariant::BG_GAMMAOP_MC;
    r.constants = bc;
    r.cumulant_source = "supplied";
    r.terms = {{"gamma_l1", bc.alpha12 / 3.0 * t.l1},
               {"variance", bc.alpha12 / 2.0 * std::fabs((params.p1 + params.p2) / prod + bc.alpha13 * t.mean_g - t.mean_gamma2)},
               {"mean", bc.alpha12 * std::fabs(params.mean() - t.mean_g)}};
    finish(r);
    return r;
}

BoundReport d3_bound_gammaop_mc(const ChaosKernel& kernel, const BGParams& params, std::size_t n_paths,
                                std::uint64_t seed) {
    if (n_paths < 2) fail(Errc::TooFewSamples, "pathwise L1 estimate needs at least 2 paths");
    bound_constants(params);
    const Spectrum spec = spectrum(kernel);
    const CumulantVector cum = chaos_cumulants(spec);
    const ChaosSample cs = sample_chaos(spec, n_paths, seed);
    double sum = 0.0, sum2 = 0.0;
    for (Eigen::Index i = 0; i < cs.z_paths.rows(); ++i) {
        const double v = std::fabs(gstar_pathwise(spec, cs.z_paths.row(i).transpose(), params));
        sum += v;
        sum2 += v * v;
    }
    const double n = static_cast<double>(n_paths);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0));
    BoundReport r = d3_bound_gammaop({mean, 0.0, expected_gamma(cum, 2)}, params);
    r.cumulant_source = "exact+mc_l1";
    r.aux = {{"l1_estimate", mean},
             {"l1_se", std::sqrt(var / n)},
             {"l1_cauchy_schwarz", std::sqrt(gstar_l2(cum, params))},
             {"n_paths", n}};
    return r;
}

}  // namespace bgchaos
