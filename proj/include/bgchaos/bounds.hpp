#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bgchaos/bg.hpp"
#include "bgchaos/chaos.hpp"

namespace bgchaos {

enum class BoundVariant { BG_CUMULANT, BG_GAMMAOP_MC, VG, SVG, LAPLACE, NORMAL, GAMMA_DIST, DECOMPOSED, HOMOG_SUM };

const char* variant_name(BoundVariant v) noexcept;

struct BoundReport {
    BoundVariant variant = BoundVariant::BG_CUMULANT;
    std::vector<std::pair<std::string, double>> terms;  // in formula order
    double total = 0.0;
    std::optional<BoundConstants> constants;
    std::string cumulant_source = "exact";
    // Side information not counted in total (standard errors, comparison values).
    std::vector<std::pair<std::string, double>> aux;

    double term(const std::string& name) const;
    nlohmann::ordered_json to_json() const;
};

// Curly bracket of the cumulant bound; equals E[(G/(a1 a2) + a13 Gamma_2 - Gamma_3)^2]
// for chaos cumulants, expanded directly in kappa.
double cumulant_radicand(const CumulantVector& cum, const BGParams& params);

BoundReport d3_bound_cumulants(const CumulantVector& cum, const BGParams& params,
                               const std::string& cumulant_source = "exact");

struct FamilySpec {
    enum class Kind { VG, SVG, LAPLACE } kind = Kind::SVG;
    double alpha1 = 2.0;
    double alpha2 = 2.0;
    double p = 1.0;

    static FamilySpec vg(double alpha1, double alpha2, double p) { return {Kind::VG, alpha1, alpha2, p}; }
    static FamilySpec svg(double alpha, double p) { return {Kind::SVG, alpha, alpha, p}; }
    static FamilySpec laplace(double alpha) { return {Kind::LAPLACE, alpha, alpha, 1.0}; }
};

BoundReport d3_bound_family(const CumulantVector& cum, const FamilySpec& family,
                            const std::string& cumulant_source = "exact");

// Target N(0, sigma2) with alpha = sqrt(sigma2) > 1.
BoundReport d3_bound_normal(const CumulantVector& cum, double sigma2, const std::string& cumulant_source = "exact");

// Target Ga(alpha, p) (rate alpha, shape p), alpha > 1.
BoundReport d3_bound_gamma_dist(const ChaosKernel& kernel, double alpha, double p);

BoundReport d3_bound_decomposed(const CumulantVector& cumG, const BGParams& params,
                                const std::string& cumulant_source = "exact");

BoundReport d3_bound_homog(const CumulantVector& cumG, const BGParams& params, double rho, double max_influence,
                           const std::string& cumulant_source = "exact");

// Gamma-operator bound for a general G, over caller-supplied values of
// E|G/(a1 a2) + a13 Gamma_2 - Gamma_3|, E G and E Gamma_2.
struct GammaOpTerms {
    double l1 = 0.0;
    double mean_g = 0.0;
    double mean_gamma2 = 0.0;
};

BoundReport d3_bound_gammaop(const GammaOpTerms& t, const BGParams& params);

// Same bound for a chaos kernel with the L1 term estimated over n_paths Gaussian paths.
BoundReport d3_bound_gammaop_mc(const ChaosKernel& kernel, const BGParams& params, std::size_t n_paths,
                                std::uint64_t seed);

}  // namespace bgchaos
