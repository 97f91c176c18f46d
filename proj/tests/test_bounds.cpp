#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "bgchaos/bounds.hpp"
#include "bgchaos/errors.hpp"
#include "bgchaos/gamma_ops.hpp"

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

CumulantVector cum_of(std::initializer_list<double> k2to6) {
    CumulantVector c;
    int j = 2;
    for (double v : k2to6) c[j++] = v;
    return c;
}

void check_report_sane(const BoundReport& r) {
    double s = 0.0;
    for (const auto& [n, v] : r.terms) {
        CHECK(v >= 0.0);
        s += v;
    }
    CHECK(std::fabs(r.total - s) <= 1e-12 * std::max(1.0, std::fabs(s)));
    CHECK(r.total >= 0.0);
}

// Random spectrum whose cumulants are realizable by construction.
Spectrum random_spectrum(std::mt19937_64& eng, int n) {
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    Spectrum s;
    for (int j = 0; j < n; ++j) s.lambdas.push_back(u(eng));
    return s;
}

}  // namespace

TEST_CASE("cumulant bound reference values") {
    const BGParams sym = BGParams::symmetric(2.0, 1.0);
    const BoundReport r = d3_bound_cumulants(CumulantVector{}, sym);
    CHECK(r.total == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(r.term("gamma_l2") == 0.0);
    CHECK(r.term("mean") == 0.0);
    CHECK(r.constants->alpha12 == doctest::Approx(4.0 / 3.0));
    check_report_sane(r);
    CHECK(code_of([] { d3_bound_cumulants(CumulantVector{}, BGParams{1.0, 1.0, 1.0, 1.0}); }) == Errc::BoundInapplicable);
    CHECK(code_of([] { d3_bound_cumulants(CumulantVector{}, BGParams{0.9, 1.0, 5.0, 1.0}); }) == Errc::BoundInapplicable);
}

TEST_CASE("bounds vanish at exact target cumulants") {
    std::mt19937_64 eng(4);
    std::uniform_real_distribution<double> a(1.2, 5.0), p(0.3, 5.0);
    int tried = 0;
    while (tried < 50) {
        const double a1 = a(eng), a2 = a(eng), p1 = p(eng);
        const BGParams bg{a1, p1, a2, p1 * a2 / a1};
        if (a1 * a2 <= 1.0 + std::fabs(a1 - a2)) continue;
        ++tried;
        const CumulantVector k = cumulants(bg);
        const BoundReport r = d3_bound_cumulants(k, bg);
        CHECK(r.total <= 1e-6 * std::sqrt(std::fabs(k[6])));
        CHECK(r.term("mean") <= 1e-14);
        const BoundReport d = d3_bound_decomposed(k, bg);
        CHECK(d.total == 0.0);
        CHECK(d.terms.size() == 11);
    }
}

TEST_CASE("family specialization chain") {
    std::mt19937_64 eng(6);
    std::uniform_real_distribution<double> a(1.1, 6.0), p(0.3, 4.0);
    for (int t = 0; t < 50; ++t) {
        const Spectrum s = random_spectrum(eng, 1 + t % 6);
        const CumulantVector c = chaos_cumulants(s);
        const double al = a(eng), pp = p(eng);
        const BoundReport bg = d3_bound_cumulants(c, BGParams::symmetric(al, pp));
        const BoundReport vg = d3_bound_family(c, FamilySpec::vg(al, al, pp));
        const BoundReport svg = d3_bound_family(c, FamilySpec::svg(al, pp));
        for (const BoundReport* r : {&vg, &svg}) {
            CHECK(std::fabs(r->total - bg.total) <= 1e-12 * std::max(1.0, bg.total));
            check_report_sane(*r);
        }
        const BoundReport l = d3_bound_family(c, FamilySpec::laplace(al));
        const BoundReport s1 = d3_bound_family(c, FamilySpec::svg(al, 1.0));
        CHECK(std::fabs(l.total - s1.total) <= 1e-12 * std::max(1.0, l.total));
        CHECK(l.variant == BoundVariant::LAPLACE);

        // General VG against the BG formula with p1 = p2.
        const double a1 = a(eng), a2 = a(eng);
        if (a1 * a2 > 1.0 + std::fabs(a1 - a2)) {
            const BoundReport v = d3_bound_family(c, FamilySpec::vg(a1, a2, pp));
            const BoundReport b = d3_bound_cumulants(c, BGParams::variance_gamma(a1, a2, pp));
            CHECK(std::fabs(v.total - b.total) <= 1e-12 * std::max(1.0, b.total));
        }
    }
}

TEST_CASE("family bound reference values") {
    const BoundReport l = d3_bound_family(cum_of({0.5, 0, 0, 0, 0}), FamilySpec::laplace(2.0));
    CHECK(l.total == doctest::Approx(4.0 / 9.0 * std::sqrt(1.0 / 32.0)).epsilon(1e-14));
    CHECK(code_of([] { d3_bound_family(CumulantVector{}, FamilySpec::svg(1.0, 1.0)); }) == Errc::BoundInapplicable);
    CHECK(code_of([] { d3_bound_family(CumulantVector{}, FamilySpec::laplace(0.0)); }) == Errc::NonPositiveParameter);
    // Laplace constant a^2/(3(a^2-1)) beats 3a^2 above 1.054.
    for (double al : {1.055, 1.06, 2.0, 10.0}) CHECK(al * al / (3.0 * (al * al - 1.0)) < 3.0 * al * al);
    CHECK(!(1.05 * 1.05 / (3.0 * (1.05 * 1.05 - 1.0)) < 3.0 * 1.05 * 1.05));
}

TEST_CASE("radicand equals the gstar second moment") {
    std::mt19937_64 eng(12);
    std::uniform_real_distribution<double> a(1.2, 5.0), p(0.3, 5.0);
    int done = 0;
    while (done < 100) {
        const BGParams bg{a(eng), p(eng), a(eng), p(eng)};
        if (bg.alpha1 * bg.alpha2 <= 1.0 + std::fabs(bg.alpha1 - bg.alpha2)) continue;
        ++done;
        const CumulantVector c = chaos_cumulants(random_spectrum(eng, 1 + done % 8));
        const double g = gstar_l2(c, bg);
        CHECK(std::fabs(cumulant_radicand(c, bg) - g) <= 1e-10 * std::max(1.0, g));
    }
}

TEST_CASE("negative radicand is rejected") {
    // kappa_4 large and positive with everything else zero drives the symmetric radicand below zero.
    const CumulantVector c = cum_of({0, 0, 10, 0, 0});
    CHECK(code_of([&] { d3_bound_cumulants(c, BGParams::symmetric(2.0, 1.0)); }) == Errc::NegativeRadicand);
    CHECK(code_of([&] { d3_bound_family(c, FamilySpec::svg(2.0, 1.0)); }) == Errc::NegativeRadicand);
    // Rounding-level negatives pass.
    const CumulantVector tiny = cum_of({0, 0, 1e-13, 0, 0});
    CHECK(code_of([&] { d3_bound_cumulants(tiny, BGParams::symmetric(2.0, 1.0)); }) == static_cast<Errc>(0));
}

TEST_CASE("normal target") {
    const CumulantVector exact = cum_of({4.0, 0, 0, 0, 0});
    CHECK(d3_bound_normal(exact, 4.0).total == 0.0);
    const BoundReport r = d3_bound_normal(cum_of({4.0, 0, 0, 0, 120.0}), 4.0);
    CHECK(r.total == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(code_of([] { d3_bound_normal(CumulantVector{}, 1.0); }) == Errc::BoundInapplicable);
    CHECK(code_of([] { d3_bound_normal(CumulantVector{}, -1.0); }) == Errc::NonPositiveParameter);

    // Sum of n independent symmetric pairs at fixed variance sigma2.
    const double sigma2 = 4.0, alpha = 2.0;
    double prev = INFINITY;
    for (int n : {1, 4, 16, 64}) {
        Spectrum s;
        for (int k = 0; k < n; ++k) {
            s.lambdas.push_back(alpha / (2.0 * std::sqrt(n)));
            s.lambdas.push_back(-alpha / (2.0 * std::sqrt(n)));
        }
        const CumulantVector c = chaos_cumulants(s);
        CHECK(c[2] == doctest::Approx(sigma2).epsilon(1e-14));
        const BoundReport b = d3_bound_normal(c, sigma2);
        CHECK(b.total == doctest::Approx(alpha * alpha * alpha / (3.0 * n)).epsilon(1e-12));
        CHECK(b.total < prev);
        prev = b.total;
    }
}

TEST_CASE("gamma target") {
    const BoundReport r = d3_bound_gamma_dist(ChaosKernel::zero(2), 2.0, 1.0);
    CHECK(r.total == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.term("l1_cauchy_schwarz") == 0.0);
    CHECK(r.term("variance") == 0.0);
    CHECK(code_of([] { d3_bound_gamma_dist(ChaosKernel::zero(2), 1.0, 1.0); }) == Errc::BoundInapplicable);

    // Jensen: E|Gamma_2/alpha - Gamma_3| <= sqrt(E(...)^2).
    const Spectrum s{{0.7, 0.3, -0.2}};
    const double alpha = 2.5;
    const ChaosSample cs = sample_chaos(s, 1000000, 5);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < cs.z_paths.rows(); ++i) {
        const GammaPath g = gamma_path(s, cs.z_paths.row(i).transpose());
        sum += std::fabs(g.gamma[2] / alpha - g.gamma[3]);
    }
    const double l1 = sum / 1e6;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    for (int j = 0; j < 3; ++j) m(j, j) = s.lambdas[static_cast<std::size_t>(j)];
    const BoundReport g = d3_bound_gamma_dist(ChaosKernel(m), alpha, 1.0);
    const double c = alpha / (alpha - 1.0);
    CHECK(l1 * c / 3.0 <= g.term("l1_cauchy_schwarz"));
    check_report_sane(g);
}

TEST_CASE("decomposed bound") {
    const BGParams bg = BGParams::symmetric(2.0, 1.0);
    CumulantVector c = cumulants(bg);
    c[6] += 120.0;
    const BoundReport r = d3_bound_decomposed(c, bg);
    CHECK(r.total == doctest::Approx(bound_constants(bg).alpha12 / 3.0).epsilon(1e-14));
    CHECK(r.term("k6") == r.total);
    CHECK(code_of([] { d3_bound_decomposed(CumulantVector{}, BGParams{2.0, 1.0, 3.0, 1.0}); }) == Errc::MeanNotZero);

    // It dominates the cumulant bound by the triangle inequality.
    std::mt19937_64 eng(31);
    std::uniform_real_distribution<double> a(1.2, 5.0), p(0.3, 5.0);
    int done = 0;
    while (done < 200) {
        const double a1 = a(eng), a2 = a(eng), p1 = p(eng);
        const BGParams t{a1, p1, a2, p1 * a2 / a1};
        if (a1 * a2 <= 1.0 + std::fabs(a1 - a2)) continue;
        ++done;
        const CumulantVector cg = chaos_cumulants(random_spectrum(eng, 1 + done % 9));
        const BoundReport d = d3_bound_decomposed(cg, t);
        const BoundReport b = d3_bound_cumulants(cg, t);
        check_report_sane(d);
        CHECK(d.total >= b.total * (1.0 - 1e-12));
    }
}

TEST_CASE("homogeneous sum bound") {
    const BGParams bg = BGParams::symmetric(2.0, 1.0);
    const CumulantVector k = cumulants(bg);
    CHECK(d3_bound_homog(k, bg, 1.0, 0.0).total == 0.0);
    const BoundReport r = d3_bound_homog(k, bg, 1.0, 1.0 / 400.0);
    CHECK(r.term("invariance") == doctest::Approx(90.0).epsilon(1e-14));
    CHECK(r.terms.front().first == "invariance");
    CHECK(r.variant == BoundVariant::HOMOG_SUM);
    const BoundReport q = d3_bound_homog(k, bg, 1.0, 1.0 / 1600.0);
    CHECK(q.term("invariance") == doctest::Approx(45.0).epsilon(1e-14));
    CHECK(code_of([&] { d3_bound_homog(k, bg, 0.0, 0.1); }) == Errc::NonPositiveParameter);
    CHECK(code_of([&] { d3_bound_homog(k, bg, 1.0, -0.1); }) == Errc::DomainError);
}

TEST_CASE("gamma operator bound with Monte Carlo L1 term") {
    const BGParams bg{2.0, 1.0, 2.0, 1.0};
    const ChaosKernel k = ChaosKernel::diagonal({0.5, 0.5, -0.5, -0.5});
    const BoundReport mc = d3_bound_gammaop_mc(k, bg, 200000, 3);
    const BoundReport cs = d3_bound_cumulants(chaos_cumulants(k), bg);
    CHECK(mc.variant == BoundVariant::BG_GAMMAOP_MC);
    CHECK(mc.term("gamma_l1") <= cs.term("gamma_l2") + 1e-12);
    CHECK(mc.term("variance") == doctest::Approx(cs.term("variance")).epsilon(1e-12).scale(1.0));
    const auto j = mc.to_json();
    CHECK(j["aux"]["l1_estimate"].get<double>() <= j["aux"]["l1_cauchy_schwarz"].get<double>());
    CHECK(code_of([&] { d3_bound_gammaop_mc(k, bg, 1, 3); }) == Errc::TooFewSamples);
    CHECK(code_of([] { d3_bound_gammaop(GammaOpTerms{-1.0, 0, 0}, BGParams::symmetric(2.0, 1.0)); }) == Errc::DomainError);
}

TEST_CASE("report JSON layout") {
    const BoundReport r = d3_bound_cumulants(CumulantVector{}, BGParams::symmetric(2.0, 1.0));
    const auto j = r.to_json();
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"variant", "terms", "total", "constants", "cumulant_source"});
    CHECK(j["variant"] == "BG_CUMULANT");
    CHECK(j["terms"].size() == 3);
    CHECK(j["constants"]["alpha12"].get<double>() == doctest::Approx(4.0 / 3.0));
    CHECK(d3_bound_normal(CumulantVector{}, 2.0).to_json()["constants"].is_null());
    CHECK(code_of([&] { r.term("nope"); }) == Errc::ConfigInvalid);
}
