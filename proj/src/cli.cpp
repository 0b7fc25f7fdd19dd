#include "bellsteer/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellsteer/bloch.hpp"
#include "bellsteer/classify.hpp"
#include "bellsteer/critical_radius.hpp"
#include "bellsteer/errors.hpp"
#include "bellsteer/json_io.hpp"
#include "bellsteer/lhs_model.hpp"
#include "bellsteer/povm_sampling.hpp"
#include "bellsteer/sphere_quad.hpp"

namespace bellsteer {

namespace {

double parse_plain(const std::string& text, const std::string& whole) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw validation_error("not a number: \"" + whole + "\"");
    }
    if (pos != text.size()) throw validation_error("not a number: \"" + whole + "\"");
    if (!std::isfinite(v)) throw validation_error("number out of range: \"" + whole + "\"");
    return v;
}

std::string trimmed(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::string csv_num(double v) {
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::setprecision(17) << v;
    return ss.str();
}

const char* csv_bool(bool b) { return b ? "true" : "false"; }

void emit_json(const nlohmann::json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

CorrelationMatrix load_correlation(const RunConfig& cfg) {
    if (cfg.t_diag && !cfg.t_file.empty())
        throw validation_error("give either --t or --t-file, not both");
    if (cfg.t_diag) {
        const auto& d = *cfg.t_diag;
        return CorrelationMatrix::diagonal(d[0], d[1], d[2]);
    }
    if (!cfg.t_file.empty()) {
        nlohmann::json j = read_json_file(cfg.t_file);
        try {
            if (j.is_array()) return correlation_from_json(nlohmann::json{{"t", j}});
            return correlation_from_json(j);
        } catch (const nlohmann::json::exception& e) {
            throw validation_error("bad correlation matrix in " + cfg.t_file + ": " + e.what());
        }
    }
    throw validation_error("no correlation matrix given (use --t or --t-file)");
}

Povm load_povm(const RunConfig& cfg) {
    if (cfg.povm_spec == "sic") return sic_povm();
    if (cfg.povm_spec == "random") {
        PovmSampler sampler(cfg.seed, cfg.max_retries);
        return sampler.sample();
    }
    nlohmann::json j = read_json_file(cfg.povm_spec);
    Povm povm;
    try {
        povm = j.get<Povm>();
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("bad POVM in " + cfg.povm_spec + ": " + e.what());
    }
    require_valid_povm(povm);
    return povm;
}

void run_critical_radius(const RunConfig& cfg, std::ostream& out) {
    const CorrelationMatrix t = load_correlation(cfg);
    const SphereGrid grid = build_grid(cfg.order_theta, cfg.order_phi);
    RadiusResult res;
    if (cfg.radius_method == "auto") {
        res = compute_RT_auto(t, grid);
    } else if (cfg.radius_method == "quadrature") {
        res = compute_RT(t, grid);
    } else {
        throw validation_error("unknown method \"" + cfg.radius_method + "\"");
    }

    std::optional<McResult> mc;
    double sigma_distance = 0.0;
    const double quad_integral = 1.0 / res.n_t;
    if (cfg.mc_check) {
        mc = integrate_mc(cfg.seed, static_cast<std::size_t>(cfg.mc_samples),
                          [&](const Eigen::Vector3d& n) { return ensemble_density(t, 1.0, n); });
        const double diff = std::abs(mc->estimate - quad_integral);
        // Absolute slack covers isotropic matrices, whose constant integrand
        // has zero sample variance.
        const double slack = 1e-9 * std::abs(quad_integral);
        sigma_distance = mc->std_error > 0.0 ? diff / mc->std_error : 0.0;
        if (diff > 3.0 * mc->std_error + slack)
            throw numerical_error(
                "quadrature and Monte Carlo normalization integrals disagree beyond 3 standard errors");
    }

    if (cfg.output_format == "csv") {
        out << "N_T,R_T,est_error,method";
        if (mc) out << ",mc_integral,mc_std_error,mc_sigma_distance";
        out << "\n";
        out << csv_num(res.n_t) << "," << csv_num(res.r_t) << "," << csv_num(res.est_error)
            << "," << to_string(res.method);
        if (mc) out << "," << csv_num(mc->estimate) << "," << csv_num(mc->std_error) << ","
                    << csv_num(sigma_distance);
        out << "\n";
    } else {
        nlohmann::json j = res;
        if (mc) {
            j["mc_check"] = {{"integral_quadrature", quad_integral},
                             {"integral_mc", mc->estimate},
                             {"std_error", mc->std_error},
                             {"sigma_distance", sigma_distance},
                             {"samples", cfg.mc_samples}};
        }
        emit_json(j, out);
    }
}

void run_verify_lhs(const RunConfig& cfg, std::ostream& out) {
    const CorrelationMatrix t = load_correlation(cfg);
    const SphereGrid grid = build_grid(cfg.order_theta, cfg.order_phi);
    Povm povm;
    if (cfg.pvm_direction) {
        const double norm = cfg.pvm_direction->norm();
        if (norm < 1e-12) throw validation_error("--pvm direction must be nonzero");
        povm = embed_pvm(*cfg.pvm_direction / norm);
    } else {
        povm = load_povm(cfg);
    }
    const SimulationReport report = verify_simulation(t, povm, grid);

    if (cfg.output_format == "csv") {
        out << "outcome,sim_x0,sim_x1,sim_x2,sim_x3,target_x0,target_x1,target_x2,target_x3,"
               "residual\n";
        for (std::size_t i = 0; i < report.outcomes.size(); ++i) {
            const auto& oc = report.outcomes[i];
            out << i << "," << csv_num(oc.simulated.x0) << "," << csv_num(oc.simulated.x[0])
                << "," << csv_num(oc.simulated.x[1]) << "," << csv_num(oc.simulated.x[2]) << ","
                << csv_num(oc.target.x0) << "," << csv_num(oc.target.x[0]) << ","
                << csv_num(oc.target.x[1]) << "," << csv_num(oc.target.x[2]) << ","
                << csv_num(oc.residual) << "\n";
        }
    } else {
        emit_json(report, out);
    }
}

void run_classify(const RunConfig& cfg, std::ostream& out) {
    const CorrelationMatrix t = load_correlation(cfg);
    const SphereGrid grid = build_grid(cfg.order_theta, cfg.order_phi);
    const Classification c = classify_state(t, grid);

    if (cfg.output_format == "csv") {
        out << "separable,pvm_unsteerable,povm_unsteerable_new,povm_unsteerable_prior,R_T,"
               "margin,method\n";
        out << csv_bool(c.separable) << "," << csv_bool(c.pvm_unsteerable) << ","
            << csv_bool(c.povm_unsteerable_new) << "," << csv_bool(c.povm_unsteerable_prior)
            << "," << csv_num(c.r_t) << "," << csv_num(c.margin) << "," << to_string(c.method)
            << "\n";
    } else {
        emit_json(c, out);
    }
}

void run_surface(const RunConfig& cfg, std::ostream& out) {
    SurfaceMethod method;
    if (cfg.surface_method == "scaling") {
        method = SurfaceMethod::scaling;
    } else if (cfg.surface_method == "bisection") {
        method = SurfaceMethod::bisection;
    } else {
        throw validation_error("unknown method \"" + cfg.surface_method + "\"");
    }
    const SphereGrid grid = build_grid(cfg.order_theta, cfg.order_phi);
    std::vector<double> levels;
    if (cfg.level) {
        levels.push_back(*cfg.level);
    } else {
        levels.push_back(1.0);
        levels.push_back(6.0 / 5.0);
    }
    std::vector<SurfaceResult> results;
    results.reserve(levels.size());
    for (double level : levels) results.push_back(surface_grid(cfg.resolution, level, grid, method));

    if (cfg.output_format == "csv") {
        out << "dir_theta,dir_phi,s1,s2,s3,level\n";
        for (const auto& result : results) {
            for (const auto& p : result.points) {
                if (p.absent) continue;
                out << csv_num(p.dir_theta) << "," << csv_num(p.dir_phi) << "," << csv_num(p.s[0])
                    << "," << csv_num(p.s[1]) << "," << csv_num(p.s[2]) << "," << csv_num(p.level)
                    << "\n";
            }
        }
    } else {
        emit_json(nlohmann::json(results), out);
    }
}

void run_sample_povm(const RunConfig& cfg, std::ostream& out) {
    if (cfg.count < 1) throw validation_error("--count must be >= 1");
    PovmSampler sampler(cfg.seed, cfg.max_retries);
    std::vector<Povm> povms;
    povms.reserve(static_cast<std::size_t>(cfg.count));
    for (int i = 0; i < cfg.count; ++i) povms.push_back(sampler.sample());

    if (cfg.output_format == "csv") {
        out << "povm,outcome,alpha,e1,e2,e3\n";
        for (std::size_t p = 0; p < povms.size(); ++p) {
            for (std::size_t i = 0; i < povms[p].effects.size(); ++i) {
                const Effect& eff = povms[p].effects[i];
                out << p << "," << i << "," << csv_num(eff.alpha) << "," << csv_num(eff.e[0])
                    << "," << csv_num(eff.e[1]) << "," << csv_num(eff.e[2]) << "\n";
            }
        }
    } else {
        emit_json(nlohmann::json(povms), out);
    }
}

}  // namespace

double parse_number(const std::string& text) {
    const std::string s = trimmed(text);
    if (s.empty()) throw validation_error("empty number");
    const auto slash = s.find('/');
    if (slash == std::string::npos) return parse_plain(s, text);
    if (s.find('/', slash + 1) != std::string::npos)
        throw validation_error("not a number: \"" + text + "\"");
    const double num = parse_plain(trimmed(s.substr(0, slash)), text);
    const double den = parse_plain(trimmed(s.substr(slash + 1)), text);
    if (den == 0.0) throw validation_error("zero denominator in \"" + text + "\"");
    return num / den;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.output_format != "json" && cfg.output_format != "csv")
            throw validation_error("unknown format \"" + cfg.output_format + "\"");
        switch (cfg.subcommand) {
            case Subcommand::critical_radius: run_critical_radius(cfg, out); break;
            case Subcommand::verify_lhs: run_verify_lhs(cfg, out); break;
            case Subcommand::classify: run_classify(cfg, out); break;
            case Subcommand::surface: run_surface(cfg, out); break;
            case Subcommand::sample_povm: run_sample_povm(cfg, out); break;
        }
        return 0;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Local-hidden-state models and critical radii for Bell-diagonal states"};
    app.name("bellsteer");
    app.require_subcommand(1);

    std::vector<std::string> t_raw;
    std::vector<std::string> pvm_raw;
    std::string level_raw;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--order-theta", cfg.order_theta,
                        "quadrature order along cos(theta)")->capture_default_str();
        sub->add_option("--order-phi", cfg.order_phi, "quadrature order along phi")
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
        sub->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo sample count")
            ->capture_default_str();
        sub->add_option("--format", cfg.output_format, "output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
    };
    auto add_t = [&](CLI::App* sub) {
        sub->add_option("--t", t_raw,
                        "diagonal correlation entries t1 t2 t3 (fractions such as -5/12 allowed)")
            ->expected(3);
        sub->add_option("--t-file", cfg.t_file,
                        "JSON file holding the full symmetric 3x3 correlation matrix");
    };

    auto* cr = app.add_subcommand("critical-radius", "Compute N_T and the critical radius R_T");
    add_common(cr);
    add_t(cr);
    cr->add_option("--method", cfg.radius_method, "auto | quadrature")
        ->check(CLI::IsMember({"auto", "quadrature"}))
        ->capture_default_str();
    cr->add_flag("--mc-check", cfg.mc_check,
                 "cross-check the quadrature normalization against Monte Carlo");

    auto* vl = app.add_subcommand("verify-lhs",
                                  "Simulate conditional states and compare to the model targets");
    add_common(vl);
    add_t(vl);
    auto* povm_opt = vl->add_option("--povm", cfg.povm_spec, "sic | random | path to POVM JSON")
                         ->capture_default_str();
    vl->add_option("--pvm", pvm_raw, "projective direction ex ey ez instead of a POVM")
        ->expected(3)
        ->excludes(povm_opt);
    vl->add_option("--max-retries", cfg.max_retries, "rejection budget for random POVMs")
        ->capture_default_str();

    auto* cl = app.add_subcommand("classify", "Classify a Bell-diagonal state");
    add_common(cl);
    add_t(cl);

    auto* sf = app.add_subcommand("surface", "Extract R_T level surfaces over the positive octant");
    add_common(sf);
    sf->add_option("--resolution", cfg.resolution, "angular grid resolution")
        ->capture_default_str();
    sf->add_option("--level", level_raw, "level value, 1 or 6/5 (default: both)");
    sf->add_option("--method", cfg.surface_method, "scaling | bisection")
        ->check(CLI::IsMember({"scaling", "bisection"}))
        ->capture_default_str();

    auto* sp = app.add_subcommand("sample-povm", "Draw random extremal 4-outcome POVMs");
    add_common(sp);
    sp->add_option("--count", cfg.count, "number of POVMs to draw")->capture_default_str();
    sp->add_option("--max-retries", cfg.max_retries, "rejection budget per draw")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (cr->parsed()) cfg.subcommand = Subcommand::critical_radius;
    else if (vl->parsed()) cfg.subcommand = Subcommand::verify_lhs;
    else if (cl->parsed()) cfg.subcommand = Subcommand::classify;
    else if (sf->parsed()) cfg.subcommand = Subcommand::surface;
    else if (sp->parsed()) cfg.subcommand = Subcommand::sample_povm;

    try {
        if (!t_raw.empty()) {
            cfg.t_diag = std::array<double, 3>{parse_number(t_raw[0]), parse_number(t_raw[1]),
                                               parse_number(t_raw[2])};
        }
        if (!pvm_raw.empty()) {
            cfg.pvm_direction = Eigen::Vector3d(parse_number(pvm_raw[0]), parse_number(pvm_raw[1]),
                                                parse_number(pvm_raw[2]));
        }
        if (!level_raw.empty()) cfg.level = parse_number(level_raw);
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    return run(cfg, out, err);
}

}  // namespace bellsteer
