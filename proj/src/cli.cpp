#include "bgchaos/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "bgchaos/bg.hpp"
#include "bgchaos/bounds.hpp"
#include "bgchaos/chaos.hpp"
#include "bgchaos/errors.hpp"
#include "bgchaos/experiments.hpp"
#include "bgchaos/homog.hpp"
#include "bgchaos/io.hpp"
#include "bgchaos/mc.hpp"
#include "bgchaos/rng.hpp"
#include "bgchaos/stein.hpp"

namespace bgchaos::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;
const char* kDefaultTarget = "2,1,2,1";

// Stream ids for derive_seed, one per role.
enum Stream : std::uint64_t { TargetDraws = 1, KernelDraws = 2, PathDraws = 3, IdentityDraws = 4, LimitDraws = 5 };

std::vector<double> number_list(const Config& v, const char* key) {
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& e : v) {
            if (!e.is_number()) fail(Errc::ConfigInvalid, std::string("'") + key + "' must hold numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }
    if (!v.is_string()) fail(Errc::ConfigInvalid, std::string("'") + key + "' must be a list");
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (item.empty() || used != item.size())
            fail(Errc::ConfigInvalid, std::string("cannot parse '") + item + "' in '" + key + "'");
        out.push_back(d);
    }
    return out;
}

std::optional<std::vector<double>> opt_list(const Config& c, const char* key) {
    if (!c.contains(key) || c[key].is_null()) return std::nullopt;
    return number_list(c[key], key);
}

double num(const Config& c, const char* key, double def) {
    if (!c.contains(key) || c[key].is_null()) return def;
    if (c[key].is_number()) return c[key].get<double>();
    if (c[key].is_string()) {
        const auto v = number_list(c[key], key);
        if (v.size() == 1) return v[0];
    }
    fail(Errc::ConfigInvalid, std::string("'") + key + "' must be a number");
}

std::optional<double> opt_num(const Config& c, const char* key) {
    if (!c.contains(key) || c[key].is_null()) return std::nullopt;
    return num(c, key, 0.0);
}

std::size_t count(const Config& c, const char* key, std::size_t def) {
    const double v = num(c, key, static_cast<double>(def));
    if (v < 0.0 || v != std::floor(v) || v > 1e12) fail(Errc::ConfigInvalid, std::string("'") + key + "' must be a count");
    return static_cast<std::size_t>(v);
}

std::string str(const Config& c, const char* key, const std::string& def) {
    if (!c.contains(key) || c[key].is_null()) return def;
    if (!c[key].is_string()) fail(Errc::ConfigInvalid, std::string("'") + key + "' must be a string");
    return c[key].get<std::string>();
}

bool flag(const Config& c, const char* key) {
    if (!c.contains(key) || c[key].is_null()) return false;
    if (!c[key].is_boolean()) fail(Errc::ConfigInvalid, std::string("'") + key + "' must be true or false");
    return c[key].get<bool>();
}

std::uint64_t seed_of(const Config& c) {
    if (!c.contains("seed")) return default_seed();
    if (!c["seed"].is_number_integer() || c["seed"].get<long long>() < 0)
        if (!c["seed"].is_number_unsigned()) fail(Errc::ConfigInvalid, "'seed' must be a non-negative integer");
    return c["seed"].get<std::uint64_t>();
}

BGParams bg_from(const Config& c, bool use_default) {
    std::vector<double> v;
    if (c.contains("bg") && !c["bg"].is_null())
        v = number_list(c["bg"], "bg");
    else if (use_default)
        v = number_list(Config(kDefaultTarget), "bg");
    else
        fail(Errc::ConfigInvalid, "a BG target is required (--bg a1,p1,a2,p2)");
    if (v.size() != 4) fail(Errc::ConfigInvalid, "'bg' needs exactly four values a1,p1,a2,p2");
    const BGParams p{v[0], v[1], v[2], v[3]};
    validate(p);
    return p;
}

Report bg_json(const BGParams& p) {
    return {{"alpha1", p.alpha1}, {"p1", p.p1}, {"alpha2", p.alpha2}, {"p2", p.p2}};
}

Report kappa_json(const CumulantVector& c) { return std::vector<double>(c.kappa.begin() + 1, c.kappa.end()); }

// Kernel from --kernel, --spectrum or --ustat, in that order.
std::optional<ChaosKernel> kernel_from(const Config& c, double ustat_default_variance) {
    if (c.contains("kernel") && !c["kernel"].is_null()) {
        const std::string path = str(c, "kernel", "");
        if (!std::filesystem::exists(path)) fail(Errc::ConfigInvalid, "kernel file '" + path + "' does not exist");
        return read_kernel(path);
    }
    if (auto s = opt_list(c, "spectrum")) {
        if (s->empty()) fail(Errc::ConfigInvalid, "'spectrum' is empty");
        return ChaosKernel::diagonal(*s);
    }
    if (c.contains("ustat") && !c["ustat"].is_null()) {
        const int n = static_cast<int>(count(c, "ustat", 0));
        return ChaosKernel(ustat_kernel(n, num(c, "ustat_variance", ustat_default_variance)));
    }
    return std::nullopt;
}

Report mc_cumulants(const std::vector<double>& x, int batches) {
    const int order = static_cast<int>(std::min<std::size_t>(6, x.size() / 1000));
    if (order < 2) fail(Errc::TooFewSamples, "need at least 2000 Monte-Carlo samples for cumulants");
    const CumulantVector c = sample_cumulants(x, order, batches);
    Report j;
    j["n"] = x.size();
    j["max_order"] = order;
    j["estimate"] = kappa_json(c);
    j["se"] = std::vector<double>(c.se->begin() + 1, c.se->end());
    return j;
}

Report bracket_json(const std::vector<double>& g, const std::vector<double>& x, const BoundReport& b) {
    const EstimatorReport lower = smooth_w3_lower_bound(g, x, default_dictionary());
    Report j;
    j["dictionary_lower"] = lower.to_json();
    j["w1"] = wasserstein1_empirical(g, x);
    j["bound_total"] = b.total;
    j["consistent"] = lower.estimate <= b.total + 5.0 * lower.se;
    return j;
}

std::vector<double> normal_draws(double sigma2, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(n);
    const double sd = std::sqrt(sigma2);
    for (auto& v : x) v = sd * rng.normal();
    return x;
}

std::vector<double> gamma_draws(double alpha, double p, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.gamma(p) / alpha;
    return x;
}

InnovationLaw law_from(const Config& c) {
    InnovationLaw law = InnovationLaw::from_name(str(c, "innovation", "normal"));
    if (auto r = opt_num(c, "rho")) {
        if (!(*r >= law.rho)) fail(Errc::ConfigInvalid, "'rho' may only raise the innovation law's third moment");
        law.rho = *r;
    }
    return law;
}

void emit(const Config& c, const std::string& key, const Report& r) {
    const std::string path = str(c, key.c_str(), "");
    const std::string text = r.dump(2) + "\n";
    if (path.empty())
        std::cout << text;
    else
        write_file_atomic(path, text);
}

}  // namespace

std::uint64_t default_seed() {
    const char* s = std::getenv("BGCHAOS_SEED");
    if (s && *s) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && end != s) return v;
        fail(Errc::ConfigInvalid, "BGCHAOS_SEED must be a non-negative integer");
    }
    return kDefaultSeed;
}

Report cmd_cumulants(const Config& c) {
    const std::uint64_t seed = seed_of(c);
    const std::size_t n_mc = count(c, "mc", 0);
    const int batches = static_cast<int>(count(c, "batches", 32));
    Report out;
    std::optional<BGParams> target;
    if (c.contains("bg") && !c["bg"].is_null()) target = bg_from(c, false);
    const auto kernel = kernel_from(c, target ? cumulant(*target, 2) : 1.0);
    if (!target && !kernel) fail(Errc::ConfigInvalid, "cumulants needs --bg, --kernel, --spectrum or --ustat");
    if (target) {
        Report t;
        t["params"] = bg_json(*target);
        t["class"] = bgclass_name(validate(*target));
        t["exact"] = kappa_json(cumulants(*target));
        if (n_mc > 0) t["mc"] = mc_cumulants(sample(*target, n_mc, derive_seed(seed, TargetDraws)), batches);
        out["target"] = t;
    }
    if (kernel) {
        const Spectrum s = spectrum(*kernel);
        Report k;
        k["dim"] = kernel->dim();
        k["spectrum"] = s.lambdas;
        k["exact"] = kappa_json(chaos_cumulants(*kernel));
        if (n_mc > 0) k["mc"] = mc_cumulants(sample_chaos_values(s, n_mc, derive_seed(seed, KernelDraws)), batches);
        out["kernel"] = k;
    }
    return out;
}

Report cmd_bound(const Config& c) {
    const std::string variant = str(c, "variant", "bg");
    const std::uint64_t seed = seed_of(c);
    const std::size_t n_mc = count(c, "mc", 0);
    Report out;
    out["variant"] = variant;

    auto cumulants_input = [&](const std::optional<ChaosKernel>& k, std::string& source) {
        if (auto v = opt_list(c, "cumulants")) {
            if (v->size() != 6) fail(Errc::ConfigInvalid, "'cumulants' needs kappa_1..kappa_6");
            CumulantVector cv;
            for (int j = 1; j <= 6; ++j) cv[j] = (*v)[static_cast<std::size_t>(j - 1)];
            source = "supplied";
            return cv;
        }
        if (!k) fail(Errc::ConfigInvalid, "bound needs --kernel, --spectrum, --ustat or --cumulants");
        source = "exact";
        return chaos_cumulants(*k);
    };
    auto chaos_draws = [&](const std::optional<ChaosKernel>& k) {
        return sample_chaos_values(spectrum(*k), n_mc, derive_seed(seed, KernelDraws));
    };

    BoundReport rep;
    std::optional<std::vector<double>> g_draws, x_draws;
    std::string source;
    if (variant == "bg" || variant == "decomposed" || variant == "vg") {
        const BGParams p = bg_from(c, true);
        const auto k = kernel_from(c, cumulant(p, 2));
        const CumulantVector cum = cumulants_input(k, source);
        if (variant == "bg") {
            rep = d3_bound_cumulants(cum, p, source);
        } else if (variant == "decomposed") {
            rep = d3_bound_decomposed(cum, p, source);
        } else {
            if (p.p1 != p.p2) fail(Errc::ConfigInvalid, "VG target needs p1 = p2");
            rep = d3_bound_family(cum, FamilySpec::vg(p.alpha1, p.alpha2, p.p1), source);
        }
        out["target"] = bg_json(p);
        if (n_mc > 0 && k) {
            g_draws = chaos_draws(k);
            x_draws = sample(p, n_mc, derive_seed(seed, TargetDraws));
        }
    } else if (variant == "svg" || variant == "laplace") {
        const double a = num(c, "alpha", 2.0);
        const double pp = (variant == "laplace") ? 1.0 : num(c, "p", 1.0);
        const BGParams p = BGParams::symmetric(a, pp);
        validate(p);
        const auto k = kernel_from(c, cumulant(p, 2));
        const CumulantVector cum = cumulants_input(k, source);
        rep = d3_bound_family(cum, variant == "laplace" ? FamilySpec::laplace(a) : FamilySpec::svg(a, pp), source);
        out["target"] = bg_json(p);
        if (n_mc > 0 && k) {
            g_draws = chaos_draws(k);
            x_draws = sample(p, n_mc, derive_seed(seed, TargetDraws));
        }
    } else if (variant == "normal") {
        const double s2 = num(c, "sigma2", 4.0);
        const auto k = kernel_from(c, s2);
        const CumulantVector cum = cumulants_input(k, source);
        rep = d3_bound_normal(cum, s2, source);
        out["target"] = {{"sigma2", s2}};
        if (n_mc > 0 && k) {
            g_draws = chaos_draws(k);
            x_draws = normal_draws(s2, n_mc, derive_seed(seed, TargetDraws));
        }
    } else if (variant == "gamma") {
        const double a = num(c, "alpha", 2.0), pp = num(c, "p", 1.0);
        const auto k = kernel_from(c, pp / (a * a));
        if (!k) fail(Errc::ConfigInvalid, "gamma variant needs a kernel (--kernel, --spectrum or --ustat)");
        rep = d3_bound_gamma_dist(*k, a, pp);
        out["target"] = {{"alpha", a}, {"p", pp}};
        if (n_mc > 0) {
            g_draws = chaos_draws(k);
            x_draws = gamma_draws(a, pp, n_mc, derive_seed(seed, TargetDraws));
        }
    } else if (variant == "bg-gammaop-mc") {
        const BGParams p = bg_from(c, true);
        const auto k = kernel_from(c, cumulant(p, 2));
        if (!k) fail(Errc::ConfigInvalid, "bg-gammaop-mc needs a kernel (--kernel, --spectrum or --ustat)");
        const std::size_t paths = n_mc > 0 ? n_mc : 100000;
        rep = d3_bound_gammaop_mc(*k, p, paths, derive_seed(seed, PathDraws));
        out["target"] = bg_json(p);
    } else if (variant == "homog") {
        const BGParams p = bg_from(c, true);
        const InnovationLaw law = law_from(c);
        Eigen::MatrixXd table;
        if (c.contains("ustat") && !c["ustat"].is_null())
            table = ustat_kernel(static_cast<int>(count(c, "ustat", 0)), num(c, "ustat_variance", cumulant(p, 2)));
        else if (c.contains("kernel") && !c["kernel"].is_null())
            table = read_kernel(str(c, "kernel", "")).coeffs();
        else
            fail(Errc::ConfigInvalid, "homog variant needs --ustat n or --kernel with a zero-diagonal table");
        const HomogSumSpec spec(table, law);
        const double mi = max_influence(spec);
        rep = d3_bound_homog(chaos_cumulants(bridge_kernel(spec)), p, law.rho, mi);
        out["target"] = bg_json(p);
        out["innovation"] = {{"law", law.name()}, {"rho", law.rho}};
        out["max_influence"] = mi;
        if (n_mc > 0) {
            g_draws = sample_homog(spec, n_mc, derive_seed(seed, KernelDraws));
            x_draws = sample(p, n_mc, derive_seed(seed, TargetDraws));
        }
    } else {
        fail(Errc::ConfigInvalid, "unknown bound variant '" + variant + "'");
    }
    out["report"] = rep.to_json();
    if (g_draws && x_draws) out["bracket"] = bracket_json(*g_draws, *x_draws, rep);
    return out;
}

Report cmd_stein(const Config& c) {
    const BGParams p = bg_from(c, true);
    const std::uint64_t seed = seed_of(c);
    const std::size_t n_mc = count(c, "mc", 100000);
    Report out;
    out["target"] = bg_json(p);

    const auto fns = identity_test_functions();
    std::vector<std::function<double(double)>> fs;
    for (const auto& f : fns) fs.push_back(f.f);
    const auto res = stein_residuals(p, n_mc, derive_seed(seed, IdentityDraws), fs, 64);
    Report table = Report::array();
    for (std::size_t i = 0; i < fns.size(); ++i)
        table.push_back({{"function", fns[i].name},
                         {"residual", res[i].estimate},
                         {"se", res[i].se},
                         {"n", res[i].n},
                         {"pass", std::fabs(res[i].estimate) <= 5.0 * res[i].se}});
    out["identity"] = table;
    if (flag(c, "identity_only")) return out;

    const std::size_t nx = count(c, "nx", 4096);
    const int nt = static_cast<int>(count(c, "nt", 64));
    const SteinGrid grid = SteinGrid::make(p, nx, nt);
    const std::string dir = str(c, "out_dir", "");
    if (!dir.empty()) std::filesystem::create_directories(dir);
    out["grid"] = {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"n_x", grid.n_x}, {"n_freq", grid.n_freq},
                   {"n_t", grid.t_nodes.size()}};
    const double slack = 5e-3;
    Report solves = Report::array();
    const auto dict = default_dictionary();
    for (std::size_t i = 0; i < dict.size(); ++i) {
        const GridFunction f = solve_stein(p, dict[i], grid);
        const DerivativeNorms dn = derivative_norms(f, grid);
        const double resid = verify_solution(p, f, dict[i], grid);
        Report r;
        r["h"] = dict[i].name();
        r["sup_f"] = dn.f;
        r["sup_f1"] = dn.f1;
        r["sup_f2"] = dn.f2;
        r["residual"] = resid;
        r["pass_f"] = dn.f <= 1.0 + slack;
        r["pass_f1"] = dn.f1 <= 0.5 + slack;
        r["pass_f2"] = dn.f2 <= 1.0 / 3.0 + slack;
        r["pass_residual"] = resid <= 1e-3;
        if (!dir.empty()) {
            const std::string path = (std::filesystem::path(dir) / ("fh_" + std::to_string(i) + ".csv")).string();
            write_grid_csv(path, grid, f);
            r["csv"] = path;
        }
        solves.push_back(r);
    }
    out["solutions"] = solves;

    // Semigroup laws on the first dictionary member.
    const GridFunction h0 = sample_on_grid(grid, dict[0]);
    auto sup_central = [&](const GridFunction& a, const GridFunction& b) {
        double m = 0.0;
        for (std::size_t i = grid.central_lo(); i < grid.central_hi(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
        return m;
    };
    // P_0 acts on the tapered grid function; compare over the whole grid.
    const GridFunction p0 = semigroup_apply(p, 0.0, h0, grid), h0t = apply_taper(grid, h0);
    double id_err = 0.0;
    for (std::size_t i = 0; i < grid.n_x; ++i) id_err = std::max(id_err, std::fabs(p0[i] - h0t[i]));
    const double comp_err = sup_central(semigroup_apply(p, 0.3, semigroup_apply(p, 0.7, h0, grid), grid),
                                        semigroup_apply(p, 1.0, h0, grid));
    const GridFunction lim = semigroup_apply(p, 20.0, h0, grid);
    const EstimatorReport eh = expected_value_mc(p, dict[0], n_mc, derive_seed(seed, LimitDraws));
    double lim_err = 0.0;
    for (std::size_t i = grid.central_lo(); i < grid.central_hi(); ++i)
        lim_err = std::max(lim_err, std::fabs(lim[i] - eh.estimate));
    out["semigroup"] = {{"identity_sup", id_err},
                        {"identity_pass", id_err <= 1e-8},
                        {"composition_sup", comp_err},
                        {"composition_pass", comp_err <= 1e-6},
                        {"limit_sup_vs_mc", lim_err},
                        {"limit_mc_se", eh.se},
                        {"limit_pass", lim_err <= 5.0 * eh.se}};
    return out;
}

Report cmd_converge(const Config& c) {
    const std::string seq = str(c, "sequence", "bg-interp");
    MCSettings mc{count(c, "mc", 100000), seed_of(c)};
    ConvergeResult res;
    if (seq == "bg-interp") {
        const BGParams p = bg_from(c, true);
        const auto start = opt_list(c, "start").value_or(default_start(p));
        res = converge_bg_interp(p, start, static_cast<int>(count(c, "checkpoints", 5)), num(c, "ratio", 0.5), mc);
    } else if (seq == "clt") {
        std::vector<int> ns;
        for (double v : opt_list(c, "n_list").value_or(std::vector<double>{1, 4, 16, 64})) ns.push_back(static_cast<int>(v));
        res = converge_clt(num(c, "sigma2", 4.0), ns, mc);
    } else if (seq == "ustat") {
        std::vector<int> ns;
        for (double v : opt_list(c, "n_list").value_or(std::vector<double>{10, 20, 40, 80, 160, 320}))
            ns.push_back(static_cast<int>(v));
        res = converge_ustat(bg_from(c, true), law_from(c), ns, mc);
    } else {
        fail(Errc::ConfigInvalid, "unknown sequence '" + seq + "' (bg-interp, clt, ustat)");
    }
    const std::string csv = str(c, "csv", "");
    if (!csv.empty()) res.write_csv(csv);
    return res.to_json();
}

int run(int argc, char** argv) {
    CLI::App app{"Bilateral-gamma approximation on the second Wiener chaos"};
    app.require_subcommand(1);
    Config flags = Config::object();
    std::string config_path;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config; its keys override flags");
        sub->add_option("--seed", "RNG seed (default $BGCHAOS_SEED or built-in)");
        sub->add_option("--mc", "Monte-Carlo sample count");
        sub->add_option("--batches", "batch count for standard errors");
        sub->add_option("--out", "report path (stdout if absent)");
        sub->add_option("--bg", "BG target a1,p1,a2,p2");
        sub->add_option("--kernel", "kernel text file");
        sub->add_option("--spectrum", "comma-separated eigenvalues");
        sub->add_option("--ustat", "U-statistic kernel size n");
        sub->add_option("--ustat-variance", "variance of the scaled U-statistic");
    };
    auto* cum = app.add_subcommand("cumulants", "exact and Monte-Carlo cumulants");
    common(cum);
    auto* bnd = app.add_subcommand("bound", "d3 bound report");
    common(bnd);
    bnd->add_option("--variant", "bg, bg-gammaop-mc, vg, svg, laplace, normal, gamma, decomposed, homog");
    bnd->add_option("--cumulants", "kappa_1..kappa_6 instead of a kernel");
    bnd->add_option("--sigma2", "normal target variance");
    bnd->add_option("--alpha", "rate for svg, laplace, gamma");
    bnd->add_option("--p", "shape for svg, gamma");
    bnd->add_option("--innovation", "normal, rademacher, uniform");
    bnd->add_option("--rho", "third absolute moment override");
    auto* st = app.add_subcommand("stein", "Stein identity and solver checks");
    common(st);
    st->add_flag("--identity-only", "only the Stein identity residual table");
    st->add_option("--nx", "grid points (power of two)");
    st->add_option("--nt", "time quadrature nodes");
    st->add_option("--out-dir", "directory for f_h CSV grids");
    auto* cv = app.add_subcommand("converge", "convergence trajectories");
    common(cv);
    cv->add_option("--sequence", "bg-interp, clt, ustat");
    cv->add_option("--start", "start spectrum for bg-interp");
    cv->add_option("--checkpoints", "checkpoint count for bg-interp");
    cv->add_option("--ratio", "geometric ratio for bg-interp");
    cv->add_option("--n-list", "sequence indices for clt and ustat");
    cv->add_option("--sigma2", "normal target variance for clt");
    cv->add_option("--innovation", "normal, rademacher, uniform");
    cv->add_option("--rho", "third absolute moment override");
    cv->add_option("--csv", "trajectory CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(Errc::ConfigInvalid);
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        for (const CLI::Option* opt : sub->get_options()) {
            if (opt->count() == 0) continue;
            std::string key = opt->get_name(false, true);
            if (key.rfind("--", 0) == 0) key = key.substr(2);
            if (key == "config" || key == "help") continue;
            for (auto& ch : key)
                if (ch == '-') ch = '_';
            if (opt->get_expected_min() == 0) {
                flags[key] = true;
                continue;
            }
            const std::string v = opt->as<std::string>();
            if (key == "seed" || key == "mc" || key == "batches" || key == "ustat" || key == "nx" || key == "nt" ||
                key == "checkpoints") {
                char* end = nullptr;
                const unsigned long long u = std::strtoull(v.c_str(), &end, 10);
                if (v.empty() || *end != '\0' || v[0] == '-') fail(Errc::ConfigInvalid, "--" + key + " must be a non-negative integer");
                flags[key] = u;
            } else if (key == "alpha" || key == "p" || key == "sigma2" || key == "rho" || key == "ratio" ||
                       key == "ustat_variance") {
                flags[key] = num(Config{{"v", v}}, "v", 0.0);
            } else {
                flags[key] = v;
            }
        }
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) fail(Errc::ConfigInvalid, "cannot open config '" + config_path + "'");
            Config file;
            try {
                file = Config::parse(in);
            } catch (const nlohmann::json::exception& e) {
                fail(Errc::ConfigInvalid, std::string("config is not valid JSON: ") + e.what());
            }
            if (!file.is_object()) fail(Errc::ConfigInvalid, "config must be a JSON object");
            for (auto it = file.begin(); it != file.end(); ++it) flags[it.key()] = it.value();
        }
        if (!flags.contains("seed")) flags["seed"] = default_seed();
        seed_of(flags);

        Report body;
        const std::string name = sub->get_name();
        if (name == "cumulants")
            body = cmd_cumulants(flags);
        else if (name == "bound")
            body = cmd_bound(flags);
        else if (name == "stein")
            body = cmd_stein(flags);
        else
            body = cmd_converge(flags);
        Report rep;
        rep["command"] = name;
        rep["config"] = Report::parse(flags.dump());
        rep["seed"] = flags["seed"];
        rep["result"] = body;
        emit(flags, "out", rep);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(Errc::ConfigInvalid);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace bgchaos::cli
