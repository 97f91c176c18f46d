#include "bgchaos/experiments.hpp"

#include <cmath>

#include "bgchaos/chaos.hpp"
#include "bgchaos/errors.hpp"
#include "bgchaos/io.hpp"
#include "bgchaos/rng.hpp"

namespace bgchaos {

namespace {

constexpr std::uint64_t kTargetStream = 1;
constexpr std::uint64_t kRowStream = 100;

int integral_twice(double p) {
    const double t = 2.0 * p;
    const double r = std::round(t);
    if (std::fabs(t - r) > 1e-12 || r < 1.0)
        fail(Errc::ConfigInvalid, "a finite matching spectrum needs 2*p1 and 2*p2 to be integers");
    return static_cast<int>(r);
}

void fill_mc(ConvergeRow& row, const std::vector<double>& g, const std::vector<double>& x) {
    row.lower = smooth_w3_lower_bound(g, x, default_dictionary());
    row.w1 = wasserstein1_empirical(g, x);
}

}  // namespace

std::vector<double> bg_matching_spectrum(const BGParams& params) {
    validate(params);
    const int n1 = integral_twice(params.p1), n2 = integral_twice(params.p2);
    std::vector<double> l;
    l.insert(l.end(), static_cast<std::size_t>(n1), 0.5 / params.alpha1);
    l.insert(l.end(), static_cast<std::size_t>(n2), -0.5 / params.alpha2);
    sort_spectrum(l);
    return l;
}

std::vector<std::vector<double>> interpolation_path(std::vector<double> start, std::vector<double> target,
                                                    int checkpoints, double ratio) {
    if (checkpoints < 2) fail(Errc::ConfigInvalid, "need at least 2 checkpoints");
    if (!(ratio > 0.0 && ratio < 1.0)) fail(Errc::ConfigInvalid, "interpolation ratio must be in (0, 1)");
    const std::size_t n = std::max(start.size(), target.size());
    start.resize(n, 0.0);
    target.resize(n, 0.0);
    std::vector<std::vector<double>> path;
    double r = 1.0;
    for (int k = 0; k < checkpoints; ++k, r *= ratio) {
        std::vector<double> l(n);
        for (std::size_t j = 0; j < n; ++j) l[j] = target[j] + r * (start[j] - target[j]);
        path.push_back(std::move(l));
    }
    return path;
}

std::vector<double> clt_spectrum(double sigma2, int n) {
    if (!(sigma2 > 0.0) || n < 1) fail(Errc::ConfigInvalid, "CLT spectrum needs sigma2 > 0 and n >= 1");
    const double l = std::sqrt(sigma2) / (2.0 * std::sqrt(static_cast<double>(n)));
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(l);
        out.push_back(-l);
    }
    return out;
}

std::vector<double> default_start(const BGParams& target) {
    const std::size_t n = bg_matching_spectrum(target).size();
    std::vector<double> s(n, 0.0);
    s[0] = std::sqrt(cumulant(target, 2) / 2.0);
    return s;
}

ConvergeResult converge_bg_interp(const BGParams& target, const std::vector<double>& start, int checkpoints,
                                  double ratio, const MCSettings& mc) {
    const auto path = interpolation_path(start, bg_matching_spectrum(target), checkpoints, ratio);
    ConvergeResult res;
    res.sequence = "bg-interp";
    std::vector<double> x;
    if (mc.n > 0) x = sample(target, mc.n, derive_seed(mc.seed, kTargetStream));
    for (std::size_t k = 0; k < path.size(); ++k) {
        ConvergeRow row;
        row.index = static_cast<double>(k);
        row.lambdas = path[k];
        Spectrum s{path[k]};
        sort_spectrum(s.lambdas);
        row.cumulants = chaos_cumulants(s);
        row.bound = d3_bound_cumulants(row.cumulants, target);
        if (mc.n > 0) fill_mc(row, sample_chaos_values(s, mc.n, derive_seed(mc.seed, kRowStream + k)), x);
        res.rows.push_back(std::move(row));
    }
    return res;
}

ConvergeResult converge_clt(double sigma2, const std::vector<int>& n_list, const MCSettings& mc) {
    ConvergeResult res;
    res.sequence = "clt";
    std::vector<double> x;
    if (mc.n > 0) {
        Rng rng(derive_seed(mc.seed, kTargetStream));
        const double sd = std::sqrt(sigma2);
        x.resize(mc.n);
        for (auto& v : x) v = sd * rng.normal();
    }
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        ConvergeRow row;
        row.index = n_list[k];
        Spectrum s{clt_spectrum(sigma2, n_list[k])};
        row.lambdas = s.lambdas;
        row.cumulants = chaos_cumulants(s);
        row.bound = d3_bound_normal(row.cumulants, sigma2);
        if (mc.n > 0) fill_mc(row, sample_chaos_values(s, mc.n, derive_seed(mc.seed, kRowStream + k)), x);
        res.rows.push_back(std::move(row));
    }
    return res;
}

ConvergeResult converge_ustat(const BGParams& target, const InnovationLaw& law, const std::vector<int>& n_list,
                              const MCSettings& mc) {
    ConvergeResult res;
    res.sequence = "ustat";
    std::vector<double> x;
    if (mc.n > 0) x = sample(target, mc.n, derive_seed(mc.seed, kTargetStream));
    const double var = cumulant(target, 2);
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        ConvergeRow row;
        row.index = n_list[k];
        const HomogSumSpec spec(ustat_kernel(n_list[k], var), law);
        const Spectrum s = spectrum(bridge_kernel(spec));
        row.cumulants = chaos_cumulants(s);
        row.max_influence = max_influence(spec);
        row.bound = d3_bound_homog(row.cumulants, target, law.rho, *row.max_influence);
        if (mc.n > 0) fill_mc(row, sample_homog(spec, mc.n, derive_seed(mc.seed, kRowStream + k)), x);
        res.rows.push_back(std::move(row));
    }
    return res;
}

nlohmann::ordered_json ConvergeResult::to_json() const {
    nlohmann::ordered_json j;
    j["sequence"] = sequence;
    nlohmann::ordered_json rows_j = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json rj;
        rj["index"] = r.index;
        if (!r.lambdas.empty()) rj["lambdas"] = r.lambdas;
        std::vector<double> k(r.cumulants.kappa.begin() + 1, r.cumulants.kappa.end());
        rj["cumulants"] = k;
        rj["bound"] = r.bound.to_json();
        if (r.max_influence) rj["max_influence"] = *r.max_influence;
        if (r.lower.n > 0) {
            rj["dictionary_lower"] = r.lower.to_json();
            rj["w1"] = r.w1;
            rj["bracket_consistent"] = r.lower.estimate <= r.bound.total + 5.0 * r.lower.se;
        }
        rows_j.push_back(rj);
    }
    j["rows"] = rows_j;
    return j;
}

void ConvergeResult::write_csv(const std::string& path) const {
    std::vector<std::string> head = {"index", "bound", "lower", "lower_se", "w1", "k2", "k3", "k4", "k5", "k6", "max_influence"};
    std::vector<std::vector<double>> cols(head.size());
    for (const auto& r : rows) {
        const double v[] = {r.index, r.bound.total, r.lower.estimate, r.lower.se, r.w1, r.cumulants[2], r.cumulants[3],
                            r.cumulants[4], r.cumulants[5], r.cumulants[6], r.max_influence.value_or(std::nan(""))};
        for (std::size_t c = 0; c < head.size(); ++c) cols[c].push_back(v[c]);
    }
    bgchaos::write_csv(path, head, cols);
}

}  // namespace bgchaos
