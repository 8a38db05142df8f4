#include "robustdens/diagnostics.hpp"
#include "robustdens/distance.hpp"
#include "robustdens/error.hpp"
#include "robustdens/search1d.hpp"
#include "robustdens/searchmd.hpp"
#include "robustdens/simlab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace robustdens;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitFailure = 3;

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_point(const Point& p)
{
    std::string s = "(";
    for (std::size_t j = 0; j < p.size(); ++j)
        s += (j ? ", " : "") + fmt(p[j]);
    return s + ")";
}

std::uint64_t default_seed()
{
    if (const char* e = std::getenv("ROBUSTDENS_SEED")) {
        try {
            return std::stoull(e);
        } catch (const std::exception&) {
            throw Error(ErrorKind::invalid_config, std::string("ROBUSTDENS_SEED is not an integer: ") + e);
        }
    }
    return 1;
}

json load_config(const std::string& path)
{
    if (path.empty())
        return json::object();
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::invalid_config, "cannot open config file " + path);
    try {
        json j = json::parse(in);
        if (!j.is_object())
            throw Error(ErrorKind::invalid_config, "config file " + path + " must hold a JSON object");
        return j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::invalid_config, "config file " + path + ": " + e.what());
    }
}

// scalar or array of numbers
std::vector<double> json_numbers(const json& v, const char* key)
{
    try {
        if (v.is_array())
            return v.get<std::vector<double>>();
        return {v.get<double>()};
    } catch (const json::exception&) {
        throw Error(ErrorKind::invalid_config, std::string("config key '") + key + "' must be a number or an array");
    }
}

template <class T>
void take(const json& cfg, const char* key, T& dst)
{
    if (!cfg.contains(key))
        return;
    try {
        dst = cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorKind::invalid_config, std::string("config key '") + key + "' has the wrong type");
    }
}

struct EstimateArgs {
    std::string config, model, data, out, radius_rule, rect_constants;
    std::vector<double> kappa, eta, t, theta;
    std::size_t draw = 0;
    std::optional<std::uint64_t> seed;
};

int cmd_estimate(EstimateArgs a)
{
    json cfg = load_config(a.config);
    if (a.model.empty())
        take(cfg, "model", a.model);
    if (a.data.empty())
        take(cfg, "data", a.data);
    if (a.radius_rule.empty())
        take(cfg, "radius_rule", a.radius_rule);
    if (a.rect_constants.empty())
        take(cfg, "rect_constants", a.rect_constants);
    if (a.kappa.empty() && cfg.contains("kappa"))
        a.kappa = json_numbers(cfg["kappa"], "kappa");
    if (a.eta.empty() && cfg.contains("eta"))
        a.eta = json_numbers(cfg["eta"], "eta");
    if (a.t.empty() && cfg.contains("t"))
        a.t = json_numbers(cfg["t"], "t");
    if (a.theta.empty() && cfg.contains("theta"))
        a.theta = json_numbers(cfg["theta"], "theta");
    if (a.draw == 0)
        take(cfg, "draw", a.draw);
    if (!a.seed && cfg.contains("seed")) {
        std::uint64_t s = 0;
        take(cfg, "seed", s);
        a.seed = s;
    }
    if (a.out.empty())
        take(cfg, "out", a.out);

    if (a.model.empty())
        throw Error(ErrorKind::invalid_config, "--model is required");
    ModelPtr model = catalog_lookup(a.model);
    const std::size_t d = model->dim();
    const std::uint64_t seed = a.seed ? *a.seed : default_seed();

    Sample sample;
    if (!a.data.empty()) {
        sample = load_sample(a.data);
    } else if (a.draw > 0) {
        if (a.theta.size() != d)
            throw Error(ErrorKind::invalid_config, "--draw needs --theta with " + std::to_string(d) + " value(s)");
        sample = draw_sample(*model, a.theta, a.draw, seed);
    } else {
        throw Error(ErrorKind::invalid_config, "either --data or --draw is required");
    }
    if (a.kappa.size() > 1)
        throw Error(ErrorKind::invalid_config, "--kappa takes a single value");

    Estimate est;
    double kappa = 0.0, bound = 0.0;
    std::string rule;
    Point eta_used;
    if (d == 1) {
        EstimatorConfig1D c;
        if (!a.kappa.empty())
            c.kappa = a.kappa[0];
        if (a.eta.size() > 1 || a.t.size() > 1)
            throw Error(ErrorKind::invalid_config, "one-dimensional model takes a single --eta and --t");
        if (!a.eta.empty())
            c.eta = a.eta[0];
        if (!a.t.empty())
            c.t = a.t[0];
        if (!a.radius_rule.empty())
            c.radius_rule = parse_radius_rule_1d(a.radius_rule);
        c = resolve_config_1d(*model, c);
        est = estimate_1d(*model, sample.values, c);
        kappa = c.kappa;
        eta_used = {c.eta};
        rule = to_string(*c.radius_rule);
        bound = test_count_bound_1d(*model, c.kappa, c.eta);
    } else {
        EstimatorConfigMD c;
        c.rect_constants_mode = RectConstantsMode::per_rectangle;
        if (!a.kappa.empty())
            c.kappa = a.kappa[0];
        if (!a.eta.empty())
            c.eta = a.eta.size() == 1 ? Point(d, a.eta[0]) : a.eta;
        if (!a.t.empty())
            c.t = a.t.size() == 1 ? Point(d, a.t[0]) : a.t;
        if (!a.radius_rule.empty())
            c.radius_rule = parse_radius_rule_md(a.radius_rule);
        if (!a.rect_constants.empty())
            c.rect_constants_mode = parse_rect_constants_mode(a.rect_constants);
        c = resolve_config_md(*model, c);
        est = estimate_md(*model, sample.values, c);
        kappa = c.kappa;
        eta_used = c.eta;
        rule = to_string(*c.radius_rule);
        bound = test_count_bound_md(*model, c.kappa, c.eta);
    }

    std::cout << "model: " << model->name() << "\n"
              << "n: " << sample.n() << " (" << sample.provenance << ")\n"
              << "kappa: " << fmt(kappa) << "  eta: " << fmt_point(eta_used) << "  radius_rule: " << rule << "\n"
              << "theta_hat: " << fmt_point(est.theta_hat) << "\n"
              << "final: [" << fmt_point(est.final_rect.lower) << ", " << fmt_point(est.final_rect.upper) << "]\n"
              << "tests: " << est.trace.test_count << " (bound " << fmt(bound) << ")\n";
    for (const auto& w : est.warnings)
        std::cout << "warning: " << w << "\n";

    if (!a.out.empty()) {
        json j = {{"model", model->name()},
                  {"n", sample.n()},
                  {"provenance", sample.provenance},
                  {"kappa", kappa},
                  {"eta", eta_used},
                  {"radius_rule", rule},
                  {"theta_hat", est.theta_hat},
                  {"final_lower", est.final_rect.lower},
                  {"final_upper", est.final_rect.upper},
                  {"tests", est.trace.test_count},
                  {"test_bound", bound},
                  {"warnings", est.warnings}};
        std::ofstream os(a.out);
        if (!os)
            throw Error(ErrorKind::invalid_config, "cannot write " + a.out);
        os << j.dump(2) << "\n";
    }
    return 0;
}

struct SimulateArgs {
    std::string config, scenario, out, estimators_csv;
    std::vector<std::size_t> n;
    std::vector<double> p_grid;
    std::size_t reps = 0;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
};

int cmd_simulate(SimulateArgs a)
{
    json cfg = load_config(a.config);
    if (a.scenario.empty())
        take(cfg, "scenario", a.scenario);
    if (a.n.empty())
        take(cfg, "n", a.n);
    if (a.reps == 0)
        take(cfg, "reps", a.reps);
    if (a.out.empty())
        take(cfg, "out", a.out);
    if (a.threads == 0)
        take(cfg, "threads", a.threads);
    if (a.p_grid.empty())
        take(cfg, "p_grid", a.p_grid);
    if (a.estimators_csv.empty())
        take(cfg, "estimators", a.estimators_csv);
    if (!a.seed && cfg.contains("seed")) {
        std::uint64_t s = 0;
        take(cfg, "seed", s);
        a.seed = s;
    }
    if (a.scenario.empty())
        throw Error(ErrorKind::invalid_config, "--scenario is required");
    const std::uint64_t seed = a.seed ? *a.seed : default_seed();
    const std::size_t reps = a.reps ? a.reps : 1000;

    std::ostringstream echo;
    echo << "scenario=" << a.scenario << " reps=" << reps << " seed=" << seed;

    if (a.scenario == "mixture-uniform" || a.scenario == "mixture-gauss2d") {
        MixtureKind kind = a.scenario == "mixture-uniform" ? MixtureKind::uniform_1d : MixtureKind::gaussian_2d;
        std::vector<double> grid = a.p_grid;
        if (grid.empty())
            for (int i = 0; i <= 20; ++i)
                grid.push_back(i / 20.0);
        std::size_t n = a.n.empty() ? 100 : a.n.front();
        echo << " n=" << n << " points=" << grid.size();
        std::cout << "# " << echo.str() << "\n";
        auto rows = run_mixture_sweep(kind, grid, n, reps, seed, a.threads);
        write_sweep_csv(std::cout, rows);
        if (!a.out.empty()) {
            std::filesystem::create_directories(a.out);
            std::ofstream os(std::filesystem::path(a.out) / (a.scenario + ".csv"));
            write_sweep_csv(os, rows);
        }
        return 0;
    }

    Scenario sc = make_scenario(a.scenario);
    if (!a.n.empty())
        sc.n_list = a.n;
    sc.replications = reps;
    sc.base_seed = seed;
    sc.threads = a.threads;
    if (!a.estimators_csv.empty()) {
        sc.estimators.clear();
        std::stringstream ss(a.estimators_csv);
        for (std::string e; std::getline(ss, e, ',');)
            if (!e.empty())
                sc.estimators.push_back(e);
    }
    echo << " n=";
    for (std::size_t i = 0; i < sc.n_list.size(); ++i)
        echo << (i ? "," : "") << sc.n_list[i];
    echo << " estimators=";
    for (std::size_t i = 0; i < sc.estimators.size(); ++i)
        echo << (i ? "," : "") << sc.estimators[i];
    std::cout << "# " << echo.str() << "\n";
    SimulationReport rep = run_risk_study(sc);
    std::cout << format_summary(rep);
    if (!a.out.empty()) {
        std::filesystem::create_directories(a.out);
        std::ofstream os(std::filesystem::path(a.out) / (a.scenario + ".csv"));
        if (!os)
            throw Error(ErrorKind::invalid_config, "cannot write into " + a.out);
        write_report_csv(os, rep);
    } else {
        write_report_csv(std::cout, rep);
    }
    std::size_t failures = 0;
    for (const auto& r : rep.rows)
        failures += r.failures;
    return failures ? kExitFailure : 0;
}

struct TheoryArgs {
    std::string model;
    std::vector<double> t, eta;
    double kappa = 0.0, c = 1.0;
};

int cmd_theory(const TheoryArgs& a)
{
    ModelPtr model = catalog_lookup(a.model);
    const std::size_t d = model->dim();
    Point t = a.t.size() == 1 ? Point(d, a.t[0]) : a.t;
    if (t.empty())
        t.assign(d, 0.0);
    Point eta = a.eta.size() == 1 ? Point(d, a.eta[0]) : a.eta;
    double kappa = a.kappa;
    if (d == 1) {
        EstimatorConfig1D c;
        c.kappa = kappa;
        if (!eta.empty())
            c.eta = eta[0];
        c = resolve_config_1d(*model, c);
        kappa = c.kappa;
        eta = {c.eta};
    } else {
        EstimatorConfigMD c;
        c.kappa = kappa;
        c.eta = eta;
        c = resolve_config_md(*model, c);
        kappa = c.kappa;
        eta = c.eta;
    }
    TheoryBundle b = compute_theory_bundle(*model, t, kappa, eta, a.c);
    std::cout << "model: " << model->name() << "\n"
              << "kappa_bar: " << fmt(kappa_bar()) << "\n"
              << "alpha_bar: " << fmt(b.alpha_bar) << "\n"
              << "D_F: " << fmt(b.d_f) << "  (c = " << fmt(a.c) << ", free constant)\n";
    if (d == 1)
        std::cout << "D_F (one-dimensional form): " << fmt(b.d_f_1d) << "\n"
                  << "test bound (1-D): " << fmt(b.bound_1d) << "\n";
    std::cout << "test bound (rectangle form): " << fmt(b.bound_md) << "\n";
    return 0;
}

int cmd_list()
{
    std::cout << "models:\n";
    for (const auto& n : catalog_names()) {
        ModelPtr m = catalog_lookup(n);
        const auto& c = m->constants();
        std::cout << "  " << n << "  Theta=[" << fmt_point(m->theta_rect().lower) << ", "
                  << fmt_point(m->theta_rect().upper) << "]  alpha=" << fmt_point(c.alpha)
                  << "  R=" << fmt_point(c.r_lower) << "  Rbar=" << fmt_point(c.r_upper) << "\n";
    }
    std::cout << "scenarios:\n";
    for (const auto& s : scenario_names())
        std::cout << "  " << s << "\n";
    std::cout << "  mixture-uniform\n  mixture-gauss2d\n";
    return 0;
}

int cmd_verify(const std::string& name, std::size_t grid)
{
    ModelPtr m = catalog_lookup(name);
    Assumption1Report r = verify_assumption1(*m, grid);
    std::cout << "model: " << name << "  pairs: " << r.pairs << "  violations: " << r.violations << "\n"
              << "max lower violation: " << fmt(r.max_lower_violation) << "\n"
              << "max upper violation: " << fmt(r.max_upper_violation) << "\n";
    if (r.violations)
        std::cout << "worst pair: " << fmt_point(r.worst_a) << " " << fmt_point(r.worst_b) << "\n";
    return r.violations ? kExitFailure : 0;
}

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::unknown_name:
    case ErrorKind::invalid_config:
    case ErrorKind::unsupported_rule:
    case ErrorKind::unsupported_model:
    case ErrorKind::cdf_missing:
    case ErrorKind::theory_mode_required:
        return kExitConfig;
    default:
        return kExitFailure;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Robust parametric density estimation by pairwise tests"};
    app.require_subcommand(1);

    EstimateArgs ea;
    auto* est = app.add_subcommand("estimate", "estimate theta from a data file or a drawn sample");
    est->add_option("--config", ea.config, "JSON config file; flags override its values");
    est->add_option("--model", ea.model, "catalog model name");
    est->add_option("--data", ea.data, "one observation per line");
    est->add_option("--draw", ea.draw, "draw this many observations from the model instead of --data");
    est->add_option("--theta", ea.theta, "parameter used by --draw");
    est->add_option("--kappa", ea.kappa, "shrink parameter in (0, kappa_bar)");
    est->add_option("--eta", ea.eta, "stopping width(s)");
    est->add_option("--t", ea.t, "grid thinness (0 disables discretization)");
    est->add_option("--radius-rule", ea.radius_rule, "optimal | hellinger_based | parametric | annexe_geometry");
    est->add_option("--rect-constants", ea.rect_constants, "global | per_rectangle (d >= 2)");
    est->add_option("--seed", ea.seed, "seed for --draw (default: ROBUSTDENS_SEED or 1)");
    est->add_option("--out", ea.out, "write the result as JSON");

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "run a Monte Carlo scenario");
    sim->add_option("--config", sa.config, "JSON config file; flags override its values");
    sim->add_option("--scenario", sa.scenario, "scenario name (see `list`)");
    sim->add_option("--n", sa.n, "sample size(s)");
    sim->add_option("--reps", sa.reps, "replications N (default 1000)");
    sim->add_option("--seed", sa.seed, "base seed (default: ROBUSTDENS_SEED or 1)");
    sim->add_option("--out", sa.out, "output directory for the CSV");
    sim->add_option("--threads", sa.threads, "worker threads (default: all cores)");
    sim->add_option("--p-grid", sa.p_grid, "mixture weights for the sweeps");
    sim->add_option("--estimators", sa.estimators_csv, "comma-separated estimator list override");

    TheoryArgs ta;
    auto* th = app.add_subcommand("theory", "theory-side quantities for a model");
    th->add_option("--model", ta.model, "catalog model name")->required();
    th->add_option("--t", ta.t, "grid thinness t_j > 0");
    th->add_option("--kappa", ta.kappa, "shrink parameter");
    th->add_option("--eta", ta.eta, "stopping width(s)");
    th->add_option("--c", ta.c, "free constant in D_F (default 1)");

    auto* lst = app.add_subcommand("list", "list catalog models and scenarios");

    std::string vmodel;
    std::size_t vgrid = 20;
    auto* ver = app.add_subcommand("verify", "check the regularity sandwich on a grid");
    ver->add_option("--model", vmodel, "catalog model name")->required();
    ver->add_option("--grid", vgrid, "grid points per coordinate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*est)
            return cmd_estimate(ea);
        if (*sim)
            return cmd_simulate(sa);
        if (*th)
            return cmd_theory(ta);
        if (*lst)
            return cmd_list();
        if (*ver)
            return cmd_verify(vmodel, vgrid);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return 0;
}
