#include "bellscope/cli.hpp"

#include "bellscope/model_json.hpp"
#include "bellscope/sampling.hpp"
#include "bellscope/search.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#ifndef BELLSCOPE_VERSION
#define BELLSCOPE_VERSION "0.0.0"
#endif

namespace bellscope::cli {

using ojson = nlohmann::ordered_json;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSingletM = 2.0 * (kSqrt2 - 1.0) / 3.0;
const double kSingletF = (4.0 - kSqrt2) / 3.0;

// Random setting pairs checked by verify-singlet; the first few also get Monte Carlo.
constexpr std::size_t kRandomPairs = 100;
constexpr std::size_t kMonteCarloPairs = 10;

CheckResult upper_check(std::string name, double value, double limit)
{
    // Reported as |value - 0| <= limit.
    return make_check(std::move(name), std::max(value, 0.0), 0.0, limit);
}

ContinuousModel continuous_model(const std::string& name)
{
    return name == "bell-uniform" ? bell_uniform_model() : singlet_model();
}

ojson config_json(const RunConfig& cfg, std::size_t grid, double tol)
{
    ojson c;
    c["command"] = cfg.command;
    c["samples"] = cfg.samples;
    c["grid"] = grid;
    c["trials"] = cfg.trials;
    c["seed"] = cfg.seed;
    c["tol"] = tol;
    c["format"] = cfg.format;
    c["model"] = cfg.model;
    if (!cfg.model_file.empty()) {
        c["model_file"] = cfg.model_file;
    }
    return c;
}

Report start(const RunConfig& cfg, std::vector<std::string> columns)
{
    Report r;
    r.command = cfg.command;
    r.config = config_json(cfg, cfg.grid.value_or(default_grid(cfg.command)), cfg.tol.value_or(default_tol(cfg.command)));
    r.columns = std::move(columns);
    return r;
}

std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

} // namespace

bool Report::pass() const noexcept
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = {"verify-singlet", "measure", "tables", "tradeoff", "check-model"};
    return names;
}

std::size_t default_grid(const std::string& command)
{
    if (command == "tables") return 21;
    if (command == "tradeoff") return 201;
    return 181;
}

double default_tol(const std::string& command)
{
    if (command == "measure") return 1e-6;
    if (command == "tradeoff") return 1e-9;
    return 1e-12;
}

void validate(const RunConfig& cfg)
{
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), cfg.command) == names.end()) {
        throw ConfigError("unknown command '" + cfg.command + "'");
    }
    if (cfg.samples < 1000) {
        throw ConfigError("--samples must be at least 1000");
    }
    if (cfg.command == "measure" && cfg.samples < 100000) {
        throw ConfigError("measure: --samples must be at least 100000 for the random search");
    }
    if (cfg.tol && !(*cfg.tol > 0.0 && std::isfinite(*cfg.tol))) {
        throw ConfigError("--tol must be positive and finite");
    }
    const std::size_t grid = cfg.grid.value_or(default_grid(cfg.command));
    if (cfg.command == "measure" ? grid < 32 : grid < 2) {
        throw ConfigError(cfg.command == "measure" ? "measure: --grid must be at least 32" : "--grid must be at least 2");
    }
    if (cfg.trials == 0) {
        throw ConfigError("--trials must be at least 1");
    }
    if (cfg.format != "json" && cfg.format != "csv") {
        throw ConfigError("--format must be json or csv");
    }
    if (cfg.model != "singlet" && cfg.model != "bell-uniform") {
        throw ConfigError("--model must be singlet or bell-uniform");
    }
    if (cfg.command == "check-model" && cfg.model_file.empty()) {
        throw ConfigError("check-model requires --model-file");
    }
}

Report cmd_verify_singlet(const RunConfig& cfg)
{
    const ContinuousModel model = continuous_model(cfg.model);
    const std::size_t grid = cfg.grid.value_or(default_grid(cfg.command));
    const double tol = cfg.tol.value_or(default_tol(cfg.command));
    Report r = start(cfg, {"pair", "kind", "phi", "p_pp", "p_pm", "p_mp", "p_mm", "max_abs_error", "first_marginal",
                           "second_marginal", "total", "mc_max_z"});

    std::vector<std::pair<Direction, Direction>> pairs;
    std::vector<std::string> kinds;
    for (double phi : linspace(0.0, kPi, grid)) {
        pairs.emplace_back(equatorial(0.0), equatorial(phi));
        kinds.emplace_back("grid");
    }
    RandomStream stream(cfg.seed, 0, domain::kSettingPairs);
    for (std::size_t i = 0; i < kRandomPairs; ++i) {
        const Direction x = stream.direction();
        const Direction y = stream.direction();
        pairs.emplace_back(x, y);
        kinds.emplace_back("random");
    }

    double max_err = 0.0;
    double max_marginal_dev = 0.0;
    double max_norm_dev = 0.0;
    double max_z = 0.0;
    double quarter_dev = 0.0;
    std::size_t mc_done = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [x, y] = pairs[i];
        const JointDistribution d = joint_exact(model, x, y);
        const double c = x.dot(y);
        double err = 0.0;
        for (const auto& [a, b] : kOutcomePairs) {
            err = std::max(err, std::abs(d(a, b) - (1.0 - a * b * c) / 4.0));
        }
        const Marginals m = marginals(d);
        const double norm = normalization_check(model, x, y, tol).value;
        max_err = std::max(max_err, err);
        max_marginal_dev = std::max({max_marginal_dev, std::abs(m.first_plus - 0.5), std::abs(m.second_plus - 0.5)});
        max_norm_dev = std::max(max_norm_dev, std::abs(norm - 1.0));

        ojson row;
        row["pair"] = i;
        row["kind"] = kinds[i];
        row["phi"] = angle_between(x, y);
        row["p_pp"] = d(1, 1);
        row["p_pm"] = d(1, -1);
        row["p_mp"] = d(-1, 1);
        row["p_mm"] = d(-1, -1);
        row["max_abs_error"] = err;
        row["first_marginal"] = m.first_plus;
        row["second_marginal"] = m.second_plus;
        row["total"] = norm;
        row["mc_max_z"] = nullptr;

        // Monte Carlo on the leading random pairs and the right-angle grid point.
        const bool right_angle = kinds[i] == "grid" && std::abs(angle_between(x, y) - kPi / 2.0) < 1e-9;
        if (right_angle) {
            for (double p : d.p) {
                quarter_dev = std::max(quarter_dev, std::abs(p - 0.25));
            }
        }
        if ((kinds[i] == "random" && mc_done < kMonteCarloPairs) || right_angle) {
            if (kinds[i] == "random") {
                ++mc_done;
            }
            const JointEstimate est = joint_monte_carlo(model, x, y, cfg.samples, cfg.seed + i);
            double z = 0.0;
            for (const auto& [a, b] : kOutcomePairs) {
                const MonteCarloEstimate& e = est(a, b);
                const double diff = std::abs(e.value - (1.0 - a * b * c) / 4.0);
                z = std::max(z, e.std_error > 0.0 ? diff / e.std_error : (diff > 1e-12 ? 1e9 : 0.0));
            }
            row["mc_max_z"] = z;
            max_z = std::max(max_z, z);
        }
        r.rows.push_back(std::move(row));
    }
    r.checks.push_back(make_check("exact joint matches singlet correlations", max_err, 0.0, tol));
    r.checks.push_back(make_check("marginals equal 1/2", max_marginal_dev, 0.0, tol));
    r.checks.push_back(make_check("density normalization", max_norm_dev, 0.0, tol));
    r.checks.push_back(make_check("all probabilities 1/4 at right angle", quarter_dev, 0.0, tol));
    r.checks.push_back(upper_check("Monte Carlo agrees within 4 sigma (max z)", max_z, 4.0));
    return r;
}

Report cmd_measure(const RunConfig& cfg)
{
    const ContinuousModel model = continuous_model(cfg.model);
    const std::size_t grid = cfg.grid.value_or(default_grid(cfg.command));
    const double tol = cfg.tol.value_or(default_tol(cfg.command));
    Report r = start(cfg, {"stage", "M", "M1", "M2", "F", "E_max_abs", "phi_xy", "phi_prime", "std_error",
                           "evaluations"});

    const CoplanarSearchResult best = maximize_M_coplanar(model, grid, 1e-9);
    const GeneralSearchResult random = random_search_M_general(model, cfg.trials, cfg.samples, cfg.seed);

    auto coplanar_row = [&](const std::string& stage, const CoplanarConfig& c, std::size_t evaluations) {
        const DirectionQuad quad = common_bisector_quad(c);
        const MeasureReport m = measure_M(model, quad, ExactCoplanar{});
        ojson row;
        row["stage"] = stage;
        row["M"] = coplanar_objective(model, c);
        row["M1"] = m.M1;
        row["M2"] = m.M2;
        row["F"] = 1.0 - row["M"].get<double>() / 2.0;
        row["E_max_abs"] = chsh_max_abs(model, quad).value;
        row["phi_xy"] = c.phi_xy;
        row["phi_prime"] = c.phi_prime;
        row["std_error"] = 0.0;
        row["evaluations"] = evaluations;
        r.rows.push_back(row);
        return m;
    };
    coplanar_row("grid", best.grid_config, grid * grid);
    const MeasureReport at_best = coplanar_row("refined", best.config, best.evaluations);
    coplanar_row("reference-pi/4", {kPi / 4.0, kPi / 4.0}, 1);

    ojson row;
    row["stage"] = "random-search";
    row["M"] = random.M_star.value;
    row["M1"] = nullptr;
    row["M2"] = nullptr;
    row["F"] = 1.0 - random.M_star.value / 2.0;
    row["E_max_abs"] = chsh_max_abs(model, random.quad).value;
    row["phi_xy"] = nullptr;
    row["phi_prime"] = nullptr;
    row["std_error"] = random.M_star.std_error;
    row["evaluations"] = random.evaluations;
    r.rows.push_back(row);

    const double expected_M = cfg.model == "singlet" ? kSingletM : 0.0;
    r.checks.push_back(make_check("M equals expected value", best.M_star, expected_M, tol));
    r.checks.push_back(make_check("F equals expected value", 1.0 - best.M_star / 2.0, 1.0 - expected_M / 2.0, tol));
    r.checks.push_back(make_check("M1 equals M at optimum", at_best.M1, best.M_star, 1e-9));
    r.checks.push_back(make_check("M2 equals M at optimum", at_best.M2, best.M_star, 1e-9));
    const double se = random.M_star.std_error;
    const double excess = random.M_star.value - best.M_star;
    const double z = se > 0.0 ? excess / se : (excess > 1e-12 ? std::numeric_limits<double>::infinity() : 0.0);
    r.checks.push_back(upper_check("random search does not beat coplanar maximum (z)", z, 4.0));
    return r;
}

Report cmd_tables(const RunConfig& cfg)
{
    const std::size_t grid = cfg.grid.value_or(default_grid(cfg.command));
    const double tol = cfg.tol.value_or(default_tol(cfg.command));
    Report r = start(cfg, {"family", "p", "E", "M", "M1", "M2", "F", "bound_E", "saturates_bound"});

    double err_e1 = 0.0, err_m1 = 0.0, err_f1 = 0.0, err_e2 = 0.0, err_m2 = 0.0, err_f2 = 0.0;
    double err_norm = 0.0, err_signs = 0.0;
    for (double p : linspace(0.0, 1.0 / 3.0, grid)) {
        for (int family = 1; family <= 2; ++family) {
            const DiscreteModel model = family == 1 ? table1_model({p}) : table2_model({p});
            const MeasureReport m = measure_M(model);
            const double bound = bound_E(m.M);
            ojson row;
            row["family"] = family == 1 ? "table1" : "table2";
            row["p"] = p;
            row["E"] = m.E;
            row["M"] = m.M;
            row["M1"] = m.M1;
            row["M2"] = m.M2;
            row["F"] = m.F;
            row["bound_E"] = bound;
            row["saturates_bound"] = std::abs(m.E - bound) <= tol;
            r.rows.push_back(row);

            const double m_expected = family == 1 ? 2.0 * p : 2.0 - 4.0 * p;
            const double e_expected = family == 1 ? 2.0 + 6.0 * p : 4.0;
            const double m_err = std::max({std::abs(m.M - m_expected), std::abs(m.M1 - m_expected),
                                           std::abs(m.M2 - m_expected)});
            double& e_slot = family == 1 ? err_e1 : err_e2;
            double& m_slot = family == 1 ? err_m1 : err_m2;
            double& f_slot = family == 1 ? err_f1 : err_f2;
            e_slot = std::max(e_slot, std::abs(m.E - e_expected));
            m_slot = std::max(m_slot, m_err);
            f_slot = std::max(f_slot, std::abs(m.F - (1.0 - m_expected / 2.0)));
            for (SettingPair pair : kAllPairs) {
                err_norm = std::max(err_norm, std::abs(normalization_check(model, pair, tol).value - 1.0));
            }
            for (unsigned mask = 0; mask < 32; ++mask) {
                TableParams params{p, {}};
                for (unsigned k = 0; k < 5; ++k) {
                    params.signs[k] = ((mask >> k) & 1u) ? -1 : 1;
                }
                const MeasureReport s = measure_M(family == 1 ? table1_model(params) : table2_model(params));
                err_signs = std::max({err_signs, std::abs(s.E - m.E), std::abs(s.M - m.M), std::abs(s.M1 - m.M1),
                                      std::abs(s.M2 - m.M2)});
            }
        }
    }
    const DiscreteModel t1 = table1_model({1.0 / 3.0});
    const DiscreteModel t2 = table2_model({1.0 / 3.0});
    double err_equiv = 0.0;
    for (SettingPair pair : kAllPairs) {
        for (std::size_t j = 0; j < t1.size(); ++j) {
            err_equiv = std::max(err_equiv, std::abs(t1.density(pair, j) - t2.density(pair, j)));
        }
    }
    for (Setting s : kAllSettings) {
        for (std::size_t j = 0; j < t1.size(); ++j) {
            err_equiv = std::max(err_equiv, std::abs(static_cast<double>(t1.outcome(s, j) - t2.outcome(s, j))));
        }
    }
    r.checks.push_back(make_check("table1: E = 2 + 6p", err_e1, 0.0, tol));
    r.checks.push_back(make_check("table1: M = M1 = M2 = 2p", err_m1, 0.0, tol));
    r.checks.push_back(make_check("table1: F = 1 - p", err_f1, 0.0, tol));
    r.checks.push_back(make_check("table2: E = 4", err_e2, 0.0, tol));
    r.checks.push_back(make_check("table2: M = M1 = M2 = 2 - 4p", err_m2, 0.0, tol));
    r.checks.push_back(make_check("table2: F = 2p", err_f2, 0.0, tol));
    r.checks.push_back(make_check("density columns sum to 1", err_norm, 0.0, tol));
    r.checks.push_back(make_check("results independent of signs (a..e)", err_signs, 0.0, tol));
    r.checks.push_back(make_check("families coincide at p = 1/3", err_equiv, 0.0, tol));
    return r;
}

Report cmd_tradeoff(const RunConfig& cfg)
{
    const std::size_t grid = cfg.grid.value_or(default_grid(cfg.command));
    const double tol = cfg.tol.value_or(default_tol(cfg.command));
    Report r = start(cfg, {"series", "p", "M", "E", "bound_E"});
    auto add = [&](const std::string& series, std::optional<double> p, double M, double E) {
        ojson row;
        row["series"] = series;
        row["p"] = p ? ojson(*p) : ojson(nullptr);
        row["M"] = M;
        row["E"] = E;
        row["bound_E"] = bound_E(M);
        r.rows.push_back(row);
    };
    for (double M : linspace(0.0, 2.0, grid)) {
        add("curve", std::nullopt, M, bound_E(M));
    }
    double table1_gap = 0.0;
    double table2_gap = 0.0;
    for (double p : linspace(0.0, 1.0 / 3.0, default_grid("tables"))) {
        const MeasureReport t1 = measure_M(table1_model({p}));
        const MeasureReport t2 = measure_M(table2_model({p}));
        add("table1", p, t1.M, t1.E);
        add("table2", p, t2.M, t2.E);
        table1_gap = std::max(table1_gap, std::abs(t1.E - bound_E(t1.M)));
        table2_gap = std::max(table2_gap, std::abs(t2.E - bound_E(t2.M)));
    }
    const ContinuousModel singlet = singlet_model();
    const DirectionQuad reference = common_bisector_quad({kPi / 4.0, kPi / 4.0});
    const MeasureReport singlet_ref = measure_M(singlet, reference, ExactCoplanar{});
    const double singlet_E = chsh_max_abs(singlet, reference).value;
    add("singlet-reference", std::nullopt, singlet_ref.M, singlet_E);
    const CoplanarSearchResult sup = maximize_M_coplanar(singlet, default_grid("measure"), 1e-9);
    add("singlet-coplanar-max", std::nullopt, sup.M_star, singlet_E);

    r.checks.push_back(make_check("bound at M = 0", bound_E(0.0), 2.0, tol));
    r.checks.push_back(make_check("bound at M = 2/3", bound_E(2.0 / 3.0), 4.0, tol));
    r.checks.push_back(make_check("table1 points on the curve", table1_gap, 0.0, tol));
    r.checks.push_back(make_check("table2 points on the curve", table2_gap, 0.0, tol));
    r.checks.push_back(make_check("singlet reference M gives bound 2 sqrt 2", bound_E(kSingletM), 2.0 * kSqrt2, tol));
    r.checks.push_back(make_check("singlet reference quad on the curve", singlet_E, bound_E(singlet_ref.M), tol));
    return r;
}

Report cmd_check_model(const RunConfig& cfg)
{
    const double tol = cfg.tol.value_or(default_tol(cfg.command));
    std::ifstream in(cfg.model_file);
    if (!in) {
        throw ConfigError("cannot open model file '" + cfg.model_file + "'");
    }
    DiscreteModel model = [&] {
        try {
            return discrete_model_from_json(nlohmann::json::parse(in));
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("model file is not valid JSON: ") + e.what());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();
    Report r = start(cfg, {"pair", "p_pp", "p_pm", "p_mp", "p_mm", "expectation", "first_marginal",
                           "second_marginal", "total"});
    for (SettingPair pair : kAllPairs) {
        const JointDistribution d = joint_discrete(model, pair);
        const Marginals m = marginals(d);
        ojson row;
        row["pair"] = std::string(to_string(pair));
        row["p_pp"] = d(1, 1);
        row["p_pm"] = d(1, -1);
        row["p_mp"] = d(-1, 1);
        row["p_mm"] = d(-1, -1);
        row["expectation"] = expectation(d);
        row["first_marginal"] = m.first_plus;
        row["second_marginal"] = m.second_plus;
        row["total"] = d.total();
        r.rows.push_back(row);
        r.checks.push_back(normalization_check(model, pair, tol));
    }
    for (CheckResult& c : no_signalling_check(model, tol).checks) {
        c.name = "no-signalling: " + c.name;
        r.checks.push_back(std::move(c));
    }
    return r;
}

namespace {

ojson check_json(const CheckResult& c)
{
    return ojson{{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"expected", c.expected},
                 {"tolerance", c.tolerance}};
}

std::string csv_field(const ojson& v)
{
    if (v.is_null()) {
        return "";
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(12) << v.get<double>();
        return os.str();
    }
    if (v.is_number()) {
        return v.dump();
    }
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : s) {
            quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        }
        return quoted + "\"";
    }
    return s;
}

} // namespace

std::string render_json(const Report& report)
{
    ojson j;
    j["command"] = report.command;
    j["config"] = report.config;
    j["results"] = ojson::array();
    for (const auto& row : report.rows) {
        j["results"].push_back(row);
    }
    j["checks"] = ojson::array();
    for (const auto& c : report.checks) {
        j["checks"].push_back(check_json(c));
    }
    j["version"] = BELLSCOPE_VERSION;
    return j.dump(2) + "\n";
}

std::string render_csv(const Report& report)
{
    std::ostringstream os;
    for (std::size_t k = 0; k < report.columns.size(); ++k) {
        os << (k ? "," : "") << report.columns[k];
    }
    os << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t k = 0; k < report.columns.size(); ++k) {
            const auto it = row.find(report.columns[k]);
            os << (k ? "," : "") << (it == row.end() ? std::string() : csv_field(*it));
        }
        os << '\n';
    }
    return os.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    Report report;
    try {
        validate(cfg);
        if (cfg.command == "verify-singlet") {
            report = cmd_verify_singlet(cfg);
        } else if (cfg.command == "measure") {
            report = cmd_measure(cfg);
        } else if (cfg.command == "tables") {
            report = cmd_tables(cfg);
        } else if (cfg.command == "tradeoff") {
            report = cmd_tradeoff(cfg);
        } else {
            report = cmd_check_model(cfg);
        }
    } catch (const ConfigError& e) {
        err << "bellscope: " << e.what() << '\n';
        return kConfigError;
    }

    const std::string text = cfg.format == "csv" ? render_csv(report) : render_json(report);
    if (cfg.output_path.empty()) {
        out << text;
    } else {
        std::ofstream file(cfg.output_path, std::ios::binary);
        if (!file) {
            err << "bellscope: cannot write '" << cfg.output_path << "'\n";
            return kConfigError;
        }
        file << text;
    }
    for (const CheckResult& c : report.checks) {
        if (!c.pass) {
            err << "FAILED " << c.name << ": value " << std::setprecision(12) << c.value << ", expected "
                << c.expected << " +- " << c.tolerance << '\n';
        }
    }
    return report.pass() ? kPass : kVerificationFailure;
}

} // namespace bellscope::cli
