#include "robustdens/simlab.hpp"

#include "robustdens/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace robustdens {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& fn)
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned w = threads == 0 ? hw : threads;
    w = static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++)
            fn(i);
    };
    if (w <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned i = 0; i < w; ++i)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
}

bool is_mle(const std::string& e)
{
    return e == "mle" || e == "mle_grid";
}

struct RepResult {
    std::vector<std::optional<Point>> theta;
    std::vector<double> h2;
    std::size_t tests = 0;
};

struct Runner {
    const Scenario& sc;
    EstimatorConfig1D cfg1;
    EstimatorConfigMD cfgm;

    explicit Runner(const Scenario& s) : sc(s)
    {
        if (!sc.model)
            throw Error(ErrorKind::invalid_config, "scenario " + sc.name + " has no model");
        if (sc.model->dim() == 1)
            cfg1 = resolve_config_1d(*sc.model, sc.config_1d);
        else
            cfgm = resolve_config_md(*sc.model, sc.config_md);
        if (sc.estimators.empty())
            throw Error(ErrorKind::invalid_config, "scenario " + sc.name + " lists no estimator");
        for (const auto& e : sc.estimators)
            if (e != "ours")
                parse_baseline_kind(e);
        if (sc.replications == 0)
            throw Error(ErrorKind::invalid_config, "replications must be positive");
        for (auto n : sc.n_list)
            if (n == 0)
                throw Error(ErrorKind::invalid_config, "sample sizes must be positive");
    }

    Point ours(std::span<const double> xs, std::size_t& tests) const
    {
        Estimate e = sc.model->dim() == 1 ? estimate_1d(*sc.model, xs, cfg1) : estimate_md(*sc.model, xs, cfgm);
        tests = e.trace.test_count;
        return e.theta_hat;
    }

    Point baseline(const std::string& name, std::span<const double> xs, const std::optional<Point>& own) const
    {
        const ParametricModel& m = *sc.model;
        BaselineKind k = parse_baseline_kind(name);
        switch (k) {
        case BaselineKind::mle_closed:
            return mle_closed(m, xs);
        case BaselineKind::mle_grid:
            if (m.dim() == 1) {
                std::vector<double> anchors;
                if (own)
                    anchors.push_back((*own)[0]);
                anchors.push_back(simple_stats(m, xs, BaselineKind::median)[0]);
                return mle_grid(m, xs, sc.grid_points, anchors);
            } else {
                std::vector<Point> anchors;
                if (own)
                    anchors.push_back(*own);
                return mle_grid_md(m, xs, anchors);
            }
        case BaselineKind::mspe:
            return mspe(m, xs, sc.grid_points);
        default:
            return simple_stats(m, xs, k);
        }
    }

    RepResult replicate(std::size_t n, std::size_t r) const
    {
        const std::size_t ne = sc.estimators.size();
        RepResult out;
        out.theta.assign(ne, std::nullopt);
        out.h2.assign(ne, kNaN);
        Sample s = draw_truth(*sc.model, sc.truth, n, sc.base_seed + r);
        std::optional<Point> own;
        // "ours" first so the grid likelihood can anchor on it
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < ne; ++i)
            if (sc.estimators[i] == "ours")
                order.push_back(i);
        for (std::size_t i = 0; i < ne; ++i)
            if (sc.estimators[i] != "ours")
                order.push_back(i);
        for (std::size_t i : order) {
            try {
                Point th;
                if (sc.estimators[i] == "ours") {
                    th = ours(s.values, out.tests);
                    own = th;
                } else {
                    th = baseline(sc.estimators[i], s.values, own);
                }
                out.h2[i] = truth_h2(*sc.model, sc.truth, n, th, cfg1.quad);
                out.theta[i] = std::move(th);
            } catch (const std::exception&) {
                out.theta[i].reset();
            }
        }
        return out;
    }
};

}  // namespace

double empirical_quantile(std::vector<double> v, double c)
{
    if (v.empty())
        return kNaN;
    std::sort(v.begin(), v.end());
    double pos = std::ceil(c * static_cast<double>(v.size()) - 1e-9);
    std::size_t idx = static_cast<std::size_t>(std::clamp(pos, 1.0, static_cast<double>(v.size())));
    return v[idx - 1];
}

std::pair<double, double> mean_std(const std::vector<double>& v)
{
    if (v.empty())
        return {kNaN, kNaN};
    double s = 0.0;
    for (double x : v)
        s += x;
    double m = s / static_cast<double>(v.size());
    if (v.size() < 2)
        return {m, 0.0};
    double q = 0.0;
    for (double x : v)
        q += (x - m) * (x - m);
    return {m, std::sqrt(q / static_cast<double>(v.size() - 1))};
}

SimulationReport run_risk_study(const Scenario& sc)
{
    Runner run(sc);
    const std::size_t ne = sc.estimators.size();
    const ParametricModel& model = *sc.model;
    SimulationReport rep;

    std::size_t own_idx = ne, mle_idx = ne;
    for (std::size_t i = 0; i < ne; ++i) {
        if (sc.estimators[i] == "ours" && own_idx == ne)
            own_idx = i;
        if (is_mle(sc.estimators[i]) && mle_idx == ne)
            mle_idx = i;
    }

    for (std::size_t n : sc.n_list) {
        std::vector<RepResult> res(sc.replications);
        parallel_for(sc.replications, sc.threads, [&](std::size_t r) { res[r] = run.replicate(n, r); });

        std::vector<ReportRow> rows(ne);
        for (std::size_t i = 0; i < ne; ++i) {
            ReportRow& row = rows[i];
            row.scenario = sc.name;
            row.estimator = sc.estimators[i];
            row.n = n;
            std::vector<double> tests;
            for (const auto& rr : res) {
                if (!rr.theta[i]) {
                    ++row.failures;
                    continue;
                }
                row.h2_values.push_back(rr.h2[i]);
                if (i == own_idx)
                    tests.push_back(static_cast<double>(rr.tests));
            }
            row.reps = row.h2_values.size();
            std::tie(row.risk, row.std) = mean_std(row.h2_values);
            row.q099 = row.q0999 = row.q1 = kNaN;
            row.tests_mean = row.tests_std = row.tests_max = row.test_bound = kNaN;
            if (i == own_idx) {
                std::tie(row.tests_mean, row.tests_std) = mean_std(tests);
                row.tests_max = tests.empty() ? kNaN : *std::max_element(tests.begin(), tests.end());
                row.test_bound = model.dim() == 1 ? test_count_bound_1d(model, run.cfg1.kappa, run.cfg1.eta)
                                                  : test_count_bound_md(model, run.cfgm.kappa, run.cfgm.eta);
                if (mle_idx < ne) {
                    std::vector<double> gaps;
                    for (const auto& rr : res) {
                        if (!rr.theta[i] || !rr.theta[mle_idx])
                            continue;
                        double g = 0.0;
                        for (std::size_t j = 0; j < model.dim(); ++j)
                            g = std::max(g, std::abs((*rr.theta[i])[j] - (*rr.theta[mle_idx])[j]));
                        gaps.push_back(g);
                    }
                    row.q099 = empirical_quantile(gaps, 0.99);
                    row.q0999 = empirical_quantile(gaps, 0.999);
                    row.q1 = empirical_quantile(gaps, 1.0);
                }
            }
        }
        for (std::size_t i = 0; i < ne; ++i) {
            double own = own_idx < ne ? rows[own_idx].risk : kNaN;
            rows[i].rel_risk = i == own_idx || !(rows[i].risk > 0.0) ? kNaN : own / rows[i].risk - 1.0;
        }
        for (auto& r : rows)
            rep.rows.push_back(std::move(r));
    }
    return rep;
}

QuantileTable run_agreement_study(const Scenario& sc_in)
{
    Scenario sc = sc_in;
    if (sc.n_list.empty())
        throw Error(ErrorKind::invalid_config, "agreement study needs a sample size");
    sc.n_list.resize(1);
    bool has_mle = std::any_of(sc.estimators.begin(), sc.estimators.end(), is_mle);
    if (!has_mle) {
        if (sc.model && sc.model->closed_mle(std::vector<double>{sc.model->theta_rect().center()[0]}))
            sc.estimators = {"ours", "mle"};
        else
            sc.estimators = {"ours", "mle_grid"};
    } else {
        std::vector<std::string> keep{"ours"};
        for (const auto& e : sc.estimators)
            if (is_mle(e)) {
                keep.push_back(e);
                break;
            }
        sc.estimators = keep;
    }
    SimulationReport rep = run_risk_study(sc);
    const ReportRow& own = rep.rows.front();
    return {own.q099, own.q0999, own.q1};
}

SimulationReport run_uniform_contamination(const std::vector<std::size_t>& n_list, std::size_t reps,
                                           std::uint64_t base_seed, unsigned threads)
{
    Scenario sc = make_scenario("contam-uniform");
    sc.n_list = n_list;
    sc.replications = reps;
    sc.base_seed = base_seed;
    sc.threads = threads;
    return run_risk_study(sc);
}

double mixture_hellinger_to_model(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw Error(ErrorKind::domain_error, "mixture weight must lie in [0, 1]");
    const double p0 = 1.0 - 1.0 / std::sqrt(2.0);
    if (p <= p0)
        return 1.0 - std::sqrt(2.0 - p) / std::sqrt(2.0);
    return 1.0 - (std::sqrt(2.0 - p) + std::sqrt(p)) / 2.0;
}

ModelPtr mixture_gauss2d_model()
{
    static const ModelPtr m = make_gauss2d(ParameterRect{{-10.0, 0.5}, {10.0, 10.0}});
    return m;
}

double gaussian_mixture_h2_to_model(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw Error(ErrorKind::domain_error, "mixture weight must lie in [0, 1]");
    ModelPtr model = mixture_gauss2d_model();
    Truth tr{TruthKind::gaussian_mixture, {}, p};
    ExternalDensity s = truth_density(tr, 1);
    auto neg = [&](ParamView th) { return -hellinger_sq_external(s, *model, th); };
    double mean = 10.0 * p - 5.0;
    double sd = std::sqrt(1.0 + 100.0 * p * (1.0 - p));
    Point best = zoom_argmax(neg, model->theta_rect(), {{-5.0, 1.0}, {5.0, 1.0}, {mean, sd}}, 41, 11, 1e-7);
    return -neg(best);
}

std::vector<SweepRow> run_mixture_sweep(MixtureKind kind, const std::vector<double>& p_grid, std::size_t n,
                                        std::size_t reps, std::uint64_t base_seed, unsigned threads)
{
    std::vector<SweepRow> out;
    for (double p : p_grid) {
        if (!(p >= 0.0 && p <= 1.0))
            throw Error(ErrorKind::domain_error, "mixture weight must lie in [0, 1]");
        Scenario sc;
        sc.n_list = {n};
        sc.replications = reps;
        sc.base_seed = base_seed;
        sc.threads = threads;
        sc.estimators = {"ours", "mle"};
        SweepRow row;
        row.p = p;
        if (kind == MixtureKind::uniform_1d) {
            sc.name = "mixture-uniform";
            sc.model = catalog_lookup("unif-scale");
            sc.truth = {TruthKind::uniform_mixture, {}, p};
            row.h2_model = mixture_hellinger_to_model(p);
        } else {
            sc.name = "mixture-gauss2d";
            sc.model = mixture_gauss2d_model();
            sc.truth = {TruthKind::gaussian_mixture, {}, p};
            sc.config_md.rect_constants_mode = RectConstantsMode::per_rectangle;
            row.h2_model = gaussian_mixture_h2_to_model(p);
        }
        SimulationReport rep = run_risk_study(sc);
        row.risk_ours = rep.rows[0].risk;
        row.risk_mle = rep.rows[1].risk;
        row.failures = rep.rows[0].failures + rep.rows[1].failures;
        out.push_back(row);
    }
    return out;
}

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names{
        "table4-ex1", "table4-ex2", "table4-ex3", "table4-ex4", "table4-ex5", "table4-ex6", "table4-ex7",
        "table4-ex8", "table6-ex1", "table6-ex2", "table6-ex3", "table6-ex4", "table6-ex5", "table6-ex6",
        "contam-uniform"};
    return names;
}

Scenario make_scenario(const std::string& name)
{
    struct Def {
        const char* scenario;
        const char* model;
        Point theta0;
        std::vector<std::string> estimators;
    };
    static const std::vector<Def> defs{
        {"table4-ex1", "exp-rate", {1.0}, {"ours", "mle"}},
        {"table4-ex2", "gauss-loc", {0.0}, {"ours", "mle"}},
        {"table4-ex3", "rayleigh", {1.0}, {"ours", "mle"}},
        {"table4-ex4", "cauchy-loc", {0.0}, {"ours", "mle_grid"}},
        {"table4-ex5", "unif-scale", {1.0}, {"ours", "mle", "mvub"}},
        {"table4-ex6", "pareto-shift", {0.0}, {"ours", "mle"}},
        {"table4-ex7", "unif-loc", {0.0}, {"ours", "midrange"}},
        {"table4-ex8", "sqrt-singular", {0.0}, {"ours", "median", "mean", "mspe"}},
        {"table6-ex1", "gauss-2d", {0.0, 1.0}, {"ours", "mle"}},
        {"table6-ex2", "cauchy-2d", {0.0, 1.0}, {"ours", "mle_grid"}},
        {"table6-ex3", "gamma-2d", {2.0, 3.0}, {"ours", "mle_grid"}},
        {"table6-ex4", "beta-2d", {3.0, 4.0}, {"ours", "mle_grid"}},
        {"table6-ex5", "shiftexp-2d", {0.0, 1.0}, {"ours", "mle"}},
        {"table6-ex6", "unif-locscale-2d", {0.0, 1.0}, {"ours", "mle"}},
    };
    Scenario sc;
    sc.name = name;
    sc.n_list = {25, 50, 75, 100};
    sc.config_md.rect_constants_mode = RectConstantsMode::per_rectangle;
    if (name == "contam-uniform") {
        sc.model = catalog_lookup("unif-scale");
        sc.truth = {TruthKind::uniform_contaminated, {}, 0.0};
        sc.estimators = {"ours", "mle"};
        sc.n_list = {10, 25, 50, 75, 100};
        return sc;
    }
    for (const auto& d : defs) {
        if (name == d.scenario) {
            sc.model = catalog_lookup(d.model);
            sc.truth = {TruthKind::in_model, d.theta0, 0.0};
            sc.estimators = d.estimators;
            if (name == "table4-ex8")
                sc.grid_points = 200000;
            return sc;
        }
    }
    throw Error(ErrorKind::unknown_name, "no scenario named '" + name + "'");
}

namespace {

std::string num(double v)
{
    if (std::isnan(v))
        return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void write_report_csv(std::ostream& os, const SimulationReport& report)
{
    os << "scenario,estimator,n,reps,risk,std,rel_risk,q099,q0999,q1,tests_mean,tests_std,test_bound,failures\n";
    for (const auto& r : report.rows) {
        os << r.scenario << ',' << r.estimator << ',' << r.n << ',' << r.reps << ',' << num(r.risk) << ','
           << num(r.std) << ',' << num(r.rel_risk) << ',' << num(r.q099) << ',' << num(r.q0999) << ','
           << num(r.q1) << ',' << num(r.tests_mean) << ',' << num(r.tests_std) << ',' << num(r.test_bound) << ','
           << r.failures << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows)
{
    os << "p,risk_ours,risk_mle,h2_model\n";
    for (const auto& r : rows)
        os << num(r.p) << ',' << num(r.risk_ours) << ',' << num(r.risk_mle) << ',' << num(r.h2_model) << '\n';
}

std::string format_summary(const SimulationReport& report)
{
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %-10s %6s %6s %10s %10s %10s %10s %10s %4s\n", "scenario", "estimator",
                  "n", "reps", "risk", "std", "rel_risk", "q0.99", "tests", "fail");
    os << buf;
    for (const auto& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%-16s %-10s %6zu %6zu %10.4g %10.4g %10s %10s %10s %4zu\n",
                      r.scenario.c_str(), r.estimator.c_str(), r.n, r.reps, r.risk, r.std, num(r.rel_risk).c_str(),
                      num(r.q099).c_str(), num(r.tests_mean).c_str(), r.failures);
        os << buf;
    }
    return os.str();
}

}  // namespace robustdens
