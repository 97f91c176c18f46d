#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bgchaos/bg.hpp"
#include "bgchaos/bounds.hpp"
#include "bgchaos/homog.hpp"
#include "bgchaos/mc.hpp"

namespace bgchaos {

// Eigenvalues whose chaos cumulants equal the BG cumulants: 2 p1 copies of
// 1/(2 alpha1) and 2 p2 copies of -1/(2 alpha2). Needs 2 p1, 2 p2 integral.
std::vector<double> bg_matching_spectrum(const BGParams& params);

// lambda_k = target + ratio^k (start - target), k = 0..checkpoints-1, zero-padded to a common length.
std::vector<std::vector<double>> interpolation_path(std::vector<double> start, std::vector<double> target,
                                                    int checkpoints, double ratio);

// n pairs of +-alpha/(2 sqrt n), alpha = sqrt(sigma2); variance sigma2 for every n.
std::vector<double> clt_spectrum(double sigma2, int n);

struct ConvergeRow {
    double index = 0.0;
    std::vector<double> lambdas;
    CumulantVector cumulants;
    BoundReport bound;
    EstimatorReport lower;
    double w1 = 0.0;
    std::optional<double> max_influence;
};

struct ConvergeResult {
    std::string sequence;
    std::vector<ConvergeRow> rows;

    nlohmann::ordered_json to_json() const;
    void write_csv(const std::string& path) const;
};

struct MCSettings {
    std::size_t n = 100000;
    std::uint64_t seed = 0;
};

ConvergeResult converge_bg_interp(const BGParams& target, const std::vector<double>& start, int checkpoints,
                                  double ratio, const MCSettings& mc);

// Default start: one eigenvalue carrying the target variance.
std::vector<double> default_start(const BGParams& target);

ConvergeResult converge_clt(double sigma2, const std::vector<int>& n_list, const MCSettings& mc);

ConvergeResult converge_ustat(const BGParams& target, const InnovationLaw& law, const std::vector<int>& n_list,
                              const MCSettings& mc);

}  // namespace bgchaos
