#include "isohyp/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isohyp/density.hpp"
#include "isohyp/functionals.hpp"
#include "isohyp/generating_curve.hpp"
#include "isohyp/hopf_reduction.hpp"
#include "isohyp/lemma_lab.hpp"
#include "isohyp/optimizer.hpp"
#include "isohyp/parallel.hpp"

namespace isohyp {

namespace {

// Numerical failure that should map to exit code 3.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string config;
    std::string out;
    int jobs = 0;
};

std::string scalar_to_arg(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    throw std::invalid_argument("config values must be scalars, lists or density objects");
}

// Turns a JSON config object into extra "--key value" arguments appended
// after the command line, so config entries win over flags.
std::vector<std::string> config_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    std::vector<std::string> args;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const nlohmann::json& v = it.value();
        args.push_back("--" + it.key());
        if (v.is_object() && v.contains("family")) {
            std::string spec = v.at("family").get<std::string>() + ":";
            const auto params = v.at("params").is_array() ? v.at("params") : nlohmann::json::array({v.at("params")});
            for (std::size_t i = 0; i < params.size(); ++i) spec += (i ? "," : "") + scalar_to_arg(params[i]);
            args.push_back(spec);
        } else if (v.is_array()) {
            std::string joined;
            for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? "," : "") + scalar_to_arg(v[i]);
            args.push_back(joined);
        } else {
            args.push_back(scalar_to_arg(v));
        }
    }
    return args;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad number: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

// "a:b:N" is N equally spaced values from a to b inclusive.
std::vector<double> parse_grid(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw std::invalid_argument("grid must be lo:hi:count");
    const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
    const int count = std::stoi(parts[2]);
    if (count < 1 || !(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("grid needs 0 < lo <= hi and count >= 1");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    return g;
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write " + path);
    f << text;
}

std::string pretty(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"isohyp: numerical laboratory for weighted isoperimetry in hyperbolic space"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        sub->add_option("--config", common.config, "JSON file whose entries override flags");
        sub->add_option("--out", common.out, "output file (default: stdout)");
        sub->add_option("--jobs", common.jobs, "worker threads (default: ISOHYP_JOBS or all cores)");
    };

    // profile
    int p_n = 3;
    std::string p_density = "cosh:1", p_grid = "0.1:10:25";
    auto* profile = app.add_subcommand("profile", "weighted isoperimetric profile of the ball family (CSV)");
    add_common(profile);
    profile->add_option("--n", p_n, "dimension");
    profile->add_option("--density", p_density, "density spec cosh:p, quad:c or poly:c2,c4,...");
    profile->add_option("--v-grid", p_grid, "volume grid lo:hi:count");

    // shoot
    int s_n = 3, s_orientation = 1;
    std::string s_density = "cosh:1", s_csv, s_events;
    double s_tau = 1.0, s_lambda_rel = 1.0, s_lambda = std::nan(""), s_start_t = std::nan("");
    double s_step_tol = 1e-10, s_sample_du = 1e-2, s_max_len = 50.0;
    auto* shoot_cmd = app.add_subcommand("shoot", "integrate a constant weighted mean curvature profile curve");
    add_common(shoot_cmd);
    shoot_cmd->add_option("--n", s_n, "dimension");
    shoot_cmd->add_option("--density", s_density, "density spec");
    shoot_cmd->add_option("--tau-star", s_tau, "reference ball radius");
    shoot_cmd->add_option("--lambda-rel", s_lambda_rel, "lambda as a multiple of the ball value at tau-star");
    shoot_cmd->add_option("--lambda", s_lambda, "absolute lambda (overrides --lambda-rel)");
    shoot_cmd->add_option("--start-t", s_start_t, "start point on e1 (default tau-star)");
    shoot_cmd->add_option("--orientation", s_orientation, "+1 counterclockwise, -1 mirrored");
    shoot_cmd->add_option("--step-tol", s_step_tol, "integrator tolerance");
    shoot_cmd->add_option("--sample-du", s_sample_du, "spacing of recorded states");
    shoot_cmd->add_option("--max-arclength", s_max_len, "arclength budget");
    shoot_cmd->add_option("--csv", s_csv, "trajectory CSV path");
    shoot_cmd->add_option("--events", s_events, "event JSON path");

    // verify
    SuiteOptions v_opt;
    auto* verify = app.add_subcommand("verify", "randomized checks of the comparison lemmas (JSON)");
    add_common(verify);
    verify->add_option("--suite", v_opt.suite, "all, h1, formula_k, center, kappa, circle, normal, leaf");
    verify->add_option("--seed", v_opt.seed, "random seed");
    verify->add_option("--count", v_opt.count, "configurations per lemma");

    // minimize
    int m_n = 3, m_modes = 16, m_iters = 2000;
    std::string m_density = "cosh:1", m_init = "random", m_history;
    double m_tau = 1.0, m_volume = std::nan(""), m_amplitude = 0.2, m_shift = 0.3, m_grad_tol = 1e-8;
    std::uint64_t m_seed = 0;
    auto* minimize_cmd = app.add_subcommand("minimize", "volume-constrained perimeter descent (JSON)");
    add_common(minimize_cmd);
    minimize_cmd->add_option("--n", m_n, "dimension");
    minimize_cmd->add_option("--density", m_density, "density spec");
    minimize_cmd->add_option("--tau", m_tau, "target volume is that of the ball of this radius");
    minimize_cmd->add_option("--target-volume", m_volume, "explicit target volume (overrides --tau)");
    minimize_cmd->add_option("--modes", m_modes, "number of cosine modes");
    minimize_cmd->add_option("--init", m_init, "random, ball or translated");
    minimize_cmd->add_option("--amplitude", m_amplitude, "random perturbation amplitude");
    minimize_cmd->add_option("--shift", m_shift, "translation of the translated-ball start");
    minimize_cmd->add_option("--max-iters", m_iters, "iteration limit");
    minimize_cmd->add_option("--grad-tol", m_grad_tol, "projected gradient tolerance");
    minimize_cmd->add_option("--seed", m_seed, "random seed");
    minimize_cmd->add_option("--history", m_history, "CSV path for the Pf history");

    // hopf
    std::string h_spaces = "C:2,C:3,H:2,O:2", h_taus = "0.5,1,2";
    auto* hopf = app.add_subcommand("hopf", "symmetric-space balls against the weighted model (CSV)");
    add_common(hopf);
    hopf->add_option("--spaces", h_spaces, "comma separated field:m pairs");
    hopf->add_option("--tau", h_taus, "comma separated radii");

    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

    try {
        // the config path has to be known before parsing
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--config") common.config = args[i + 1];
            if (args[i].rfind("--config=", 0) == 0) common.config = args[i].substr(9);
        }
        if (args.size() == 1 && args[0].rfind("--config=", 0) == 0) common.config = args[0].substr(9);
        if (!common.config.empty()) {
            const auto extra = config_args(common.config);
            args.insert(args.end(), extra.begin(), extra.end());
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const CLI::ConversionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    const int jobs = resolve_jobs(common.jobs);
    try {
        if (*profile) {
            const RadialDensity d = parse_density(p_density);
            std::ostringstream os;
            os.precision(17);
            os << "v,tau,Pf\n";
            for (double v : parse_grid(p_grid)) {
                const double tau = ball_radius_for_volume(p_n, d, v);
                os << v << ',' << tau << ',' << ball_quantities(p_n, d, tau).Pf << '\n';
            }
            write_text(common.out, os.str(), out);
        } else if (*shoot_cmd) {
            ShootingConfig cfg;
            cfg.n = s_n;
            cfg.density = parse_density(s_density);
            cfg.lambda = std::isnan(s_lambda) ? s_lambda_rel * lambda_for_ball(s_n, cfg.density, s_tau) : s_lambda;
            cfg.start_t = std::isnan(s_start_t) ? s_tau : s_start_t;
            cfg.orientation = s_orientation;
            cfg.step_tol = s_step_tol;
            cfg.sample_du = s_sample_du;
            cfg.max_arclength = s_max_len;
            cfg.validate();
            const Trajectory traj = shoot(cfg);
            const Classification c = classify(traj);
            nlohmann::json summary = {
                {"classification", to_string(c.kind)},
                {"termination", to_string(traj.termination)},
                {"lambda", cfg.lambda},
                {"closed", traj.closure.closed},
                {"closing_angle_defect", traj.closure.closing_angle_defect},
                {"landing_t", traj.closure.landing_t},
                {"max_radius_deviation", c.max_radius_deviation},
                {"ordered_triple", c.ordered_triple},
                {"witness_found", c.witness_found},
                {"witness_u", c.witness_u},
                {"max_constraint_drift", traj.max_constraint_drift},
                {"events", events_json(traj)}};
            if (traj.closure.closed) summary["functionals"] = to_json(trajectory_functionals(traj));
            if (!s_csv.empty()) write_text(s_csv, trajectory_csv(traj), out);
            if (!s_events.empty()) write_text(s_events, pretty(events_json(traj)), out);
            write_text(common.out, pretty(summary), out);
            if (traj.termination == Termination::Stiff) throw NumericalFailure("integrator step size collapsed");
        } else if (*verify) {
            v_opt.jobs = jobs;
            write_text(common.out, pretty(run_suites(v_opt)), out);
        } else if (*minimize_cmd) {
            MinimizeConfig cfg;
            cfg.n = m_n;
            cfg.density = parse_density(m_density);
            if (!validate_strict(cfg.density).pass) throw std::invalid_argument("density is not strictly log-convex");
            if (!(m_tau > 0.0)) throw std::invalid_argument("--tau must be positive");
            cfg.target_volume = std::isnan(m_volume) ? ball_quantities(m_n, cfg.density, m_tau).Vf : m_volume;
            cfg.modes = m_modes;
            cfg.max_iters = m_iters;
            cfg.grad_tol = m_grad_tol;
            cfg.seed = m_seed;
            if (m_init == "random") {
                cfg.init = random_profile(m_n, m_tau, m_amplitude, m_modes, m_seed);
            } else if (m_init == "ball") {
                cfg.init = PolarProfile::constant(m_tau, m_n, m_modes);
            } else if (m_init == "translated") {
                cfg.init = translated_ball_profile(m_n, m_tau, m_shift, m_modes);
            } else {
                throw std::invalid_argument("--init must be random, ball or translated");
            }
            const MinimizeReport rep = minimize(cfg);
            if (!m_history.empty()) write_text(m_history, pf_history_csv(rep), out);
            write_text(common.out, pretty(to_json(rep)), out);
        } else if (*hopf) {
            std::vector<SpaceParams> spaces;
            std::stringstream ss(h_spaces);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const auto colon = item.find(':');
                if (colon == std::string::npos) throw std::invalid_argument("space must be field:m, got " + item);
                spaces.push_back(SpaceParams::make(parse_field(item.substr(0, colon)), std::stoi(item.substr(colon + 1))));
            }
            const std::vector<double> taus = parse_list(h_taus);
            std::vector<Crosscheck> rows(spaces.size() * taus.size());
            parallel_for(rows.size(), jobs, [&](std::size_t i) {
                rows[i] = crosscheck(spaces[i / taus.size()], taus[i % taus.size()]);
            });
            write_text(common.out, crosscheck_csv(rows), out);
        }
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace isohyp
