#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "bgchaos/chaos.hpp"

namespace bgchaos {

struct InnovationLaw {
    enum class Kind { StandardNormal, Rademacher, CenteredUniform, UserMoments } kind = Kind::StandardNormal;
    // sup_i E|Y_i|^3
    double rho = 0.0;

    static InnovationLaw standard_normal();
    static InnovationLaw rademacher();
    // Uniform on [-sqrt 3, sqrt 3].
    static InnovationLaw centered_uniform();
    // Bound-only law: carries rho but cannot be sampled.
    static InnovationLaw user_moments(double rho);
    // "normal", "rademacher", "uniform"
    static InnovationLaw from_name(const std::string& name);

    std::string name() const;
};

// H = sum_{i != j} f_ij Y_i Y_j with a symmetric, zero-diagonal table.
class HomogSumSpec {
public:
    HomogSumSpec(Eigen::MatrixXd f_table, InnovationLaw innovation);

    int n_vars() const { return static_cast<int>(f_.rows()); }
    const Eigen::MatrixXd& f_table() const { return f_; }
    const InnovationLaw& innovation() const { return law_; }

private:
    Eigen::MatrixXd f_;
    InnovationLaw law_;
};

double homog_sum_eval(const HomogSumSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& y);

// Inf_i = sum_j f_ij^2, i zero-based.
double influence(const HomogSumSpec& spec, int i);
double max_influence(const HomogSumSpec& spec);

// Var H = 2 ||f||_F^2 for unit-variance innovations.
double homog_variance(const HomogSumSpec& spec);

// Raw U-statistic table f_ij = 1/(n(n-1)) off the diagonal.
Eigen::MatrixXd ustat_kernel(int n);
// The same table rescaled so that Var H = variance.
Eigen::MatrixXd ustat_kernel(int n, double variance);

ChaosKernel bridge_kernel(const HomogSumSpec& spec);

std::vector<double> sample_homog(const HomogSumSpec& spec, std::size_t n_samples, std::uint64_t seed);

// Draws one innovation vector of the spec's law.
class Rng;
void draw_innovations(const InnovationLaw& law, Rng& rng, Eigen::Ref<Eigen::VectorXd> y);

}  // namespace bgchaos
