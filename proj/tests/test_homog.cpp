#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "bgchaos/errors.hpp"
#include "bgchaos/homog.hpp"
#include "bgchaos/mc.hpp"
#include "bgchaos/rng.hpp"

using namespace bgchaos;

namespace {

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return static_cast<Errc>(0);
}

Eigen::MatrixXd random_table(int n, std::mt19937_64& eng) {
    std::normal_distribution<double> nd(0.0, 1.0 / n);
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) f(i, j) = f(j, i) = nd(eng);
    return f;
}

}  // namespace

TEST_CASE("evaluation of small sums") {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(3, 3);
    f(0, 1) = f(1, 0) = 0.5;
    const HomogSumSpec s(f, InnovationLaw::standard_normal());
    CHECK(homog_sum_eval(s, Eigen::Vector3d(1, 2, 3)) == 2.0);
    CHECK(homog_sum_eval(s, Eigen::Vector3d::Zero()) == 0.0);
    CHECK(code_of([&] { homog_sum_eval(s, Eigen::Vector2d(1, 1)); }) == Errc::DimMismatch);

    for (int n : {2, 5, 17}) {
        const HomogSumSpec u(ustat_kernel(n), InnovationLaw::rademacher());
        CHECK(homog_sum_eval(u, Eigen::VectorXd::Ones(n)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(ustat_kernel(2)(0, 1) == 0.5);
    CHECK(ustat_kernel(2)(0, 0) == 0.0);
}

TEST_CASE("table validation") {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(3, 3);
    f(0, 0) = 1.0;
    CHECK(code_of([&] { HomogSumSpec s(f, InnovationLaw::rademacher()); }) == Errc::ConfigInvalid);
    f(0, 0) = 0.0;
    f(0, 1) = 1.0;
    CHECK(code_of([&] { HomogSumSpec s(f, InnovationLaw::rademacher()); }) == Errc::NotSymmetric);
    CHECK(code_of([] { HomogSumSpec s(Eigen::MatrixXd::Zero(2, 3), InnovationLaw::rademacher()); }) == Errc::DimMismatch);
    CHECK(code_of([] { HomogSumSpec s(Eigen::MatrixXd::Zero(1, 1), InnovationLaw::rademacher()); }) == Errc::ConfigInvalid);
    CHECK(code_of([] { ustat_kernel(1); }) == Errc::ConfigInvalid);
    CHECK(code_of([] { InnovationLaw::user_moments(0.5); }) == Errc::DomainError);
    CHECK(code_of([] { InnovationLaw::from_name("cauchy"); }) == Errc::ConfigInvalid);
    const HomogSumSpec s(ustat_kernel(4), InnovationLaw::user_moments(3.0));
    CHECK(code_of([&] { sample_homog(s, 10, 1); }) == Errc::ConfigInvalid);
}

TEST_CASE("innovation laws") {
    CHECK(InnovationLaw::rademacher().rho == 1.0);
    CHECK(InnovationLaw::from_name("uniform").name() == "uniform");
    // Third absolute moments by Monte Carlo.
    for (const InnovationLaw law : {InnovationLaw::standard_normal(), InnovationLaw::rademacher(), InnovationLaw::centered_uniform()}) {
        Rng rng(17);
        Eigen::VectorXd y(1000000);
        draw_innovations(law, rng, y);
        const double m = y.mean();
        const double v = y.squaredNorm() / 1e6;
        const double r3 = y.array().abs().cube().mean();
        CHECK(std::fabs(m) < 5e-3);
        CHECK(v == doctest::Approx(1.0).epsilon(5e-3));
        CHECK(r3 == doctest::Approx(law.rho).epsilon(5e-3));
        if (law.kind == InnovationLaw::Kind::Rademacher) CHECK((y.array().abs() == 1.0).all());
    }
}

TEST_CASE("influence of the U-statistic table") {
    for (int n : {2, 10, 100}) {
        const HomogSumSpec s(ustat_kernel(n, 0.5), InnovationLaw::rademacher());
        for (int i = 0; i < n; ++i) CHECK(influence(s, i) == doctest::Approx(1.0 / (4.0 * n)).epsilon(1e-13));
        CHECK(homog_variance(s) == doctest::Approx(0.5).epsilon(1e-13));
        const HomogSumSpec raw(ustat_kernel(n), InnovationLaw::rademacher());
        CHECK(influence(raw, 0) == doctest::Approx(1.0 / (double(n) * n * (n - 1.0))).epsilon(1e-13));
    }
    CHECK(influence(HomogSumSpec(ustat_kernel(10, 0.5), InnovationLaw::rademacher()), 3) == doctest::Approx(0.025));
    CHECK(influence(HomogSumSpec(Eigen::MatrixXd::Zero(4, 4), InnovationLaw::rademacher()), 2) == 0.0);
    const HomogSumSpec s(ustat_kernel(5), InnovationLaw::rademacher());
    CHECK(code_of([&] { influence(s, 5); }) == Errc::IndexOutOfRange);
    CHECK(code_of([&] { influence(s, -1); }) == Errc::IndexOutOfRange);
    for (int n : {10, 50, 200}) {
        for (double v : {0.5, 2.0}) {
            const double a = max_influence(HomogSumSpec(ustat_kernel(n, v), InnovationLaw::rademacher()));
            const double b = max_influence(HomogSumSpec(ustat_kernel(2 * n, v), InnovationLaw::rademacher()));
            CHECK(a / b >= 1.9);
            CHECK(a / b <= 2.1);
        }
    }
}

TEST_CASE("conditional variance equals four times the influence") {
    std::mt19937_64 eng(4);
    const HomogSumSpec s(random_table(20, eng), InnovationLaw::rademacher());
    const int i = 7;
    // Two independent copies of Y_i given the rest: E[(H - H')^2] / 2 = E Var(H | rest).
    Rng rng(99);
    Eigen::VectorXd y(20);
    double sum = 0.0, sum2 = 0.0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        draw_innovations(s.innovation(), rng, y);
        const double h1 = homog_sum_eval(s, y);
        y(i) = rng.rademacher();
        const double h2 = homog_sum_eval(s, y);
        const double v = 0.5 * (h1 - h2) * (h1 - h2);
        sum += v;
        sum2 += v * v;
    }
    const double m = sum / n, se = std::sqrt((sum2 / n - m * m) / n);
    CHECK(oracle::within_se(m, 4.0 * influence(s, i), se, 5.0));
}

TEST_CASE("sampler moments and the Gaussian bridge") {
    std::mt19937_64 eng(8);
    const Eigen::MatrixXd f = random_table(12, eng);
    const HomogSumSpec rad(f, InnovationLaw::rademacher());
    const HomogSumSpec gau(f, InnovationLaw::standard_normal());
    const auto xr = sample_homog(rad, 1000000, 1);
    const EstimatorReport mr = mean_estimate(xr);
    CHECK(oracle::within_se(mr.estimate, 0.0, mr.se, 5.0));
    const CumulantVector cr = sample_cumulants(xr, 2);
    CHECK(oracle::within_se(cr[2], homog_variance(rad), cr.se->at(2), 5.0));

    const auto xg = sample_homog(gau, 1000000, 2);
    const auto xc = sample_chaos_values(spectrum(bridge_kernel(gau)), 1000000, 3);
    const CumulantVector cg = sample_cumulants(xg, 4), cc = sample_cumulants(xc, 4);
    const CumulantVector exact = chaos_cumulants(bridge_kernel(gau));
    CHECK(exact[2] == doctest::Approx(homog_variance(gau)).epsilon(1e-12));
    for (int j = 1; j <= 2; ++j) {
        const double joint = std::hypot(cg.se->at(j), cc.se->at(j));
        CHECK(oracle::within_se(cg[j], cc[j], joint, 5.0));
    }
    for (int j = 2; j <= 4; ++j) CHECK(oracle::within_se(cg[j], exact[j], cg.se->at(j), 5.0));
    for (int i = 0; i < 12; ++i) CHECK(bridge_kernel(HomogSumSpec(Eigen::MatrixXd::Zero(12, 12), InnovationLaw::rademacher())).coeffs().row(i).norm() == 0.0);

    CHECK(sample_homog(rad, 5000, 11) == sample_homog(rad, 5000, 11));
    CHECK(sample_homog(rad, 5000, 11) != sample_homog(rad, 5000, 12));
    // Block boundaries do not change the stream.
    const auto a = sample_homog(rad, 9000, 5);
    const auto b = sample_homog(rad, 4100, 5);
    for (std::size_t k = 0; k < b.size(); ++k) CHECK(a[k] == b[k]);
}

TEST_CASE("direct evaluation matches the blocked sampler") {
    std::mt19937_64 eng(15);
    const HomogSumSpec s(random_table(9, eng), InnovationLaw::centered_uniform());
    const auto x = sample_homog(s, 10, 77);
    Rng rng(77);
    Eigen::VectorXd y(9);
    for (std::size_t k = 0; k < x.size(); ++k) {
        draw_innovations(s.innovation(), rng, y);
        double direct = 0.0;
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 9; ++j)
                if (i != j) direct += s.f_table()(i, j) * y(i) * y(j);
        CHECK(x[k] == doctest::Approx(direct).epsilon(1e-12));
    }
}
