#include "run_config.hpp"

#include "twave/analysis.hpp"
#include "twave/errors.hpp"
#include "twave/kernels.hpp"
#include "twave/problems.hpp"
#include "twave/solver.hpp"
#include "twave/verification.hpp"
#include "twave/version.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace twave::cli {

namespace {

using nlohmann::json;

const std::map<std::string, Subcommand> kSubcommands{{"solve", Subcommand::Solve},
                                                     {"converge", Subcommand::Converge},
                                                     {"dump-coeffs", Subcommand::DumpCoeffs},
                                                     {"verify", Subcommand::Verify}};
const std::map<std::string, CoeffKind> kKinds{
    {"tempered", CoeffKind::Tempered}, {"riesz", CoeffKind::Riesz}, {"grunwald", CoeffKind::Grunwald}};
const std::map<std::string, OutputFormat> kFormats{{"csv", OutputFormat::Csv},
                                                   {"json", OutputFormat::Json}};

template <class E>
std::string name_of(const std::map<std::string, E>& table, E value) {
    for (const auto& [k, v] : table) {
        if (v == value) {
            return k;
        }
    }
    return "?";
}

template <class E>
E parse_enum(const std::map<std::string, E>& table, const std::string& s, const char* flag) {
    const auto it = table.find(s);
    if (it == table.end()) {
        throw UsageError(fmt::format("{}: unknown value '{}'", flag, s));
    }
    return it->second;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

double tau_of(const RunConfig& c) {
    return c.tau ? *c.tau : c.t_final / static_cast<double>(c.n);
}

double beta_of(const RunConfig& c) { return c.beta ? *c.beta : c.gamma - 1.0; }

ProblemSpec make_problem(const RunConfig& c) {
    if (c.problem == "manufactured") {
        if (c.domain.first != 0.0 || c.domain.second != 1.0) {
            throw UsageError("--domain: the manufactured problem is posed on (0, 1)");
        }
        ProblemSpec p = manufactured_problem(c.alpha, c.gamma, c.lambda);
        p.horizon = c.t_final;
        return p;
    }
    ProblemSpec p;
    p.name = "zero";
    p.alpha = c.alpha;
    p.gamma = c.gamma;
    p.lambda = c.lambda;
    p.a = c.domain.first;
    p.b = c.domain.second;
    p.horizon = c.t_final;
    p.forcing = [](double, double) { return 0.0; };
    p.exact = [](double, double) { return 0.0; };
    return p;
}

json record(const RunConfig& c, json rows, double wall_ms) {
    return json{{"params", params_to_json(c)},
                {"rows", std::move(rows)},
                {"wall_ms", wall_ms},
                {"version", kVersion}};
}

void emit(const RunConfig& c, const std::string& csv, const json& rec, std::ostream& out,
          std::ostream& log) {
    if (c.output.empty()) {
        out << (c.format == OutputFormat::Csv ? csv : rec.dump(2) + "\n");
        return;
    }
    const std::string csv_path = c.output + ".csv";
    const std::string json_path = c.output + ".json";
    std::ofstream csv_file(csv_path, std::ios::binary);
    csv_file << csv;
    std::ofstream json_file(json_path, std::ios::binary);
    json_file << rec.dump(2) << '\n';
    csv_file.flush();
    json_file.flush();
    if (!csv_file || !json_file) {
        throw std::runtime_error("cannot write output under '" + c.output + "'");
    }
    log << "wrote " << csv_path << " and " << json_path << '\n';
}

int run_solve(const RunConfig& c, std::ostream& out, std::ostream& log) {
    const ProblemSpec problem = make_problem(c);
    const Discretization disc = Discretization::for_problem(problem, c.m, c.n);
    const std::vector<double> x_int = disc.interior_nodes();

    double all_times = 0.0;
    SolveOptions opts;
    opts.march.compensated = c.compensated;
    opts.observer = [&](std::size_t, double t, std::span<const double> u) {
        const auto ex = sample_exact(problem, x_int, t);
        for (std::size_t i = 0; i < u.size(); ++i) {
            all_times = std::max(all_times, std::abs(u[i] - ex[i]));
        }
    };
    const SolveResult res = solve(problem, disc, opts);
    const ErrorReport err =
        error_report(res.u, sample_exact(problem, res.x, disc.horizon), disc.h(), disc.M, disc.N);

    std::string csv = "x,u\n";
    json rows = json::array();
    for (std::size_t i = 0; i <= disc.M; ++i) {
        const double xi = disc.x(i);
        const double ui = (i == 0 || i == disc.M) ? 0.0 : res.u[i - 1];
        csv += num(xi) + "," + num(ui) + "\n";
        rows.push_back({{"x", xi}, {"u", ui}});
    }
    json rec = record(c, std::move(rows), res.wall_ms);
    rec["errors"] = {{"max_error", err.max_error},
                     {"l2_error", err.l2_error},
                     {"max_error_all_times", all_times}};
    rec["diagnostics"] = {{"steps", res.diagnostics.steps},
                          {"max_plug_back_residual", res.diagnostics.max_plug_back_residual}};
    log << fmt::format("solve: M={} N={} max_error={:.6e} l2_error={:.6e} ({:.1f} ms)\n", disc.M,
                       disc.N, err.max_error, err.l2_error, res.wall_ms);
    emit(c, csv, rec, out, log);
    return 0;
}

int run_converge(const RunConfig& c, std::ostream& out, std::ostream& log) {
    const ProblemSpec problem = make_problem(c);
    std::vector<Discretization> grids;
    try {
        grids = equal_step_resolutions(problem, c.resolutions);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--resolutions: ") + e.what());
    }
    const auto start = std::chrono::steady_clock::now();
    ConvergenceOptions opts;
    opts.march.compensated = c.compensated;
    const ConvergenceReport rep = convergence_study(problem, grids, opts);
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream csv;
    write_convergence_csv(csv, rep);
    json rows = json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"tau", r.tau},
                        {"h", r.h},
                        {"M", r.M},
                        {"N", r.N},
                        {"max_error", r.max_error},
                        {"l2_error", r.l2_error},
                        {"max_error_all_times", r.max_error_all_times},
                        {"rate", r.rate ? json(*r.rate) : json(nullptr)}});
        log << fmt::format("tau=1/{:<5} max_error={:.4e}  rate={}\n",
                           static_cast<long>(std::lround(1.0 / r.tau)), r.max_error,
                           r.rate ? fmt::format("{:.2f}", *r.rate) : std::string("-"));
    }
    json rec = record(c, std::move(rows), wall);
    rec["fitted_order"] = rep.fitted_order();
    emit(c, csv.str(), rec, out, log);
    return 0;
}

int run_dump(const RunConfig& c, std::ostream& out, std::ostream& log) {
    std::vector<double> values;
    std::string header;
    switch (c.kind) {
    case CoeffKind::Tempered:
        values = tempered_coeffs(beta_of(c), c.lambda, tau_of(c), c.count).l;
        header = "k,l";
        break;
    case CoeffKind::Riesz:
        values = riesz_weights(c.alpha, c.count).weights;
        header = "m,w";
        break;
    case CoeffKind::Grunwald:
        values = grunwald_coeffs(beta_of(c), c.count).g;
        header = "m,g";
        break;
    }
    std::string csv = header + "\n";
    json rows = json::array();
    const std::string index_name = header.substr(0, 1);
    const std::string value_name = header.substr(2);
    for (std::size_t k = 0; k < values.size(); ++k) {
        csv += std::to_string(k) + "," + num(values[k]) + "\n";
        rows.push_back({{index_name, k}, {value_name, values[k]}});
    }
    emit(c, csv, record(c, std::move(rows), 0.0), out, log);
    return 0;
}

int run_verify(const RunConfig& c, std::ostream& out, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    VerifyOptions opts;
    opts.seed = c.seed;
    const auto results = run_verification(opts);
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    bool all = true;
    std::string csv = "check,passed,detail\n";
    json rows = json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        log << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        csv += "\"" + r.name + "\"," + (r.passed ? "1" : "0") + ",\"" + r.detail + "\"\n";
        rows.push_back({{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    emit(c, csv, record(c, std::move(rows), wall), out, log);
    return all ? 0 : 1;
}

} // namespace

std::string to_string(Subcommand s) { return name_of(kSubcommands, s); }

void validate(const RunConfig& c) {
    auto in_order_range = [](double v) { return v > 1.0 && v <= 2.0; };
    if (!in_order_range(c.alpha)) {
        throw UsageError("--alpha must lie in (1, 2]");
    }
    if (!in_order_range(c.gamma)) {
        throw UsageError("--gamma must lie in (1, 2]");
    }
    if (!(c.lambda >= 0.0) || !std::isfinite(c.lambda)) {
        throw UsageError("--lambda must be >= 0");
    }
    if (c.m < 3) {
        throw UsageError("--m must be >= 3");
    }
    if (c.n < 1) {
        throw UsageError("--n must be >= 1");
    }
    if (!(c.t_final > 0.0) || !std::isfinite(c.t_final)) {
        throw UsageError("--t-final must be > 0");
    }
    if (!(c.domain.first < c.domain.second)) {
        throw UsageError("--domain must satisfy a < b");
    }
    if (c.problem != "manufactured" && c.problem != "zero") {
        throw UsageError("--problem must be 'manufactured' or 'zero'");
    }
    if (c.problem == "manufactured" && (c.domain.first != 0.0 || c.domain.second != 1.0)) {
        throw UsageError("--domain: the manufactured problem is posed on (0, 1)");
    }
    if (c.subcommand == Subcommand::Converge) {
        if (c.resolutions.size() < 2) {
            throw UsageError("--resolutions needs at least two entries");
        }
        for (std::size_t r : c.resolutions) {
            if (r == 0) {
                throw UsageError("--resolutions entries must be positive");
            }
        }
    }
    if (c.subcommand == Subcommand::DumpCoeffs) {
        if (c.count < 1 || (c.kind == CoeffKind::Riesz && c.count < 4)) {
            throw UsageError("--count must be >= 1 (>= 4 for riesz)");
        }
        if (c.beta && !(*c.beta > 0.0 && *c.beta <= 1.0)) {
            throw UsageError("--beta must lie in (0, 1]");
        }
        if (c.tau && !(*c.tau > 0.0)) {
            throw UsageError("--tau must be > 0");
        }
    }
}

json params_to_json(const RunConfig& c) {
    json j{{"subcommand", to_string(c.subcommand)},
           {"alpha", c.alpha},
           {"gamma", c.gamma},
           {"lambda", c.lambda},
           {"m", c.m},
           {"n", c.n},
           {"t_final", c.t_final},
           {"domain", {c.domain.first, c.domain.second}},
           {"problem", c.problem},
           {"resolutions", c.resolutions},
           {"seed", c.seed},
           {"compensated", c.compensated},
           {"kind", name_of(kKinds, c.kind)},
           {"count", c.count}};
    j["beta"] = c.beta ? json(*c.beta) : json(nullptr);
    j["tau"] = c.tau ? json(*c.tau) : json(nullptr);
    return j;
}

RunConfig config_from_json(const json& input) {
    const json& j = input.contains("params") ? input.at("params") : input;
    RunConfig c;
    try {
        if (j.contains("subcommand")) {
            c.subcommand = parse_enum(kSubcommands, j.at("subcommand").get<std::string>(), "subcommand");
        }
        c.alpha = j.value("alpha", c.alpha);
        c.gamma = j.value("gamma", c.gamma);
        c.lambda = j.value("lambda", c.lambda);
        c.m = j.value("m", c.m);
        c.n = j.value("n", c.n);
        c.t_final = j.value("t_final", c.t_final);
        if (j.contains("domain")) {
            const auto d = j.at("domain").get<std::vector<double>>();
            if (d.size() != 2) {
                throw UsageError("--domain needs two values");
            }
            c.domain = {d[0], d[1]};
        }
        c.problem = j.value("problem", c.problem);
        c.resolutions = j.value("resolutions", c.resolutions);
        c.seed = j.value("seed", c.seed);
        c.compensated = j.value("compensated", c.compensated);
        if (j.contains("kind")) {
            c.kind = parse_enum(kKinds, j.at("kind").get<std::string>(), "--kind");
        }
        c.count = j.value("count", c.count);
        if (j.contains("beta") && !j.at("beta").is_null()) {
            c.beta = j.at("beta").get<double>();
        }
        if (j.contains("tau") && !j.at("tau").is_null()) {
            c.tau = j.at("tau").get<double>();
        }
    } catch (const json::exception& e) {
        throw UsageError(std::string("--config: ") + e.what());
    }
    return c;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& log) {
    try {
        validate(config);
        switch (config.subcommand) {
        case Subcommand::Solve:
            return run_solve(config, out, log);
        case Subcommand::Converge:
            return run_converge(config, out, log);
        case Subcommand::DumpCoeffs:
            return run_dump(config, out, log);
        case Subcommand::Verify:
            return run_verify(config, out, log);
        }
    } catch (const UsageError& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
    CLI::App app{"Solver and verification harness for the space-time tempered fractional "
                 "diffusion-wave equation"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(0, 1);

    RunConfig c;
    std::string config_path;
    std::string format = "csv";
    std::string kind = "tempered";
    std::vector<double> domain{0.0, 1.0};
    double beta = 0.0;
    double tau = 0.0;

    app.add_option("--config", config_path, "Replay the params of a JSON run record");
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output-format,--format", format, "csv or json");
        sub->add_option("--output,-o", c.output, "Write <path>.csv and <path>.json");
    };
    add_output(&app);

    auto add_physics = [&](CLI::App* sub) {
        sub->add_option("--alpha", c.alpha, "Riesz order in (1, 2]");
        sub->add_option("--gamma", c.gamma, "Time order in (1, 2]");
        sub->add_option("--lambda", c.lambda, "Tempering rate >= 0");
        sub->add_option("--t-final", c.t_final, "Final time T");
        sub->add_option("--domain", domain, "Interval a,b")->expected(2)->delimiter(',');
        sub->add_option("--problem", c.problem, "manufactured or zero");
        sub->add_flag("--compensated", c.compensated, "Kahan-summed history convolution");
    };

    auto* solve_cmd = app.add_subcommand("solve", "Solve one problem instance");
    add_physics(solve_cmd);
    solve_cmd->add_option("--m", c.m, "Space intervals M");
    solve_cmd->add_option("--n", c.n, "Time steps N");
    add_output(solve_cmd);

    auto* conv_cmd = app.add_subcommand("converge", "Convergence study with h = tau");
    add_physics(conv_cmd);
    conv_cmd->add_option("--resolutions", c.resolutions, "Values of 1/tau, e.g. 20,40,80,160")
        ->delimiter(',');
    add_output(conv_cmd);

    auto* dump_cmd = app.add_subcommand("dump-coeffs", "Print coefficient sequences");
    dump_cmd->add_option("--kind", kind, "tempered, riesz or grunwald");
    dump_cmd->add_option("--alpha", c.alpha, "Riesz order (riesz)");
    dump_cmd->add_option("--gamma", c.gamma, "Time order; beta defaults to gamma - 1");
    auto* beta_opt = dump_cmd->add_option("--beta", beta, "Order beta in (0, 1]");
    dump_cmd->add_option("--lambda", c.lambda, "Tempering rate");
    auto* tau_opt = dump_cmd->add_option("--tau", tau, "Time step");
    dump_cmd->add_option("--t-final", c.t_final, "Final time (tau defaults to t-final/n)");
    dump_cmd->add_option("--n", c.n, "Time steps (tau defaults to t-final/n)");
    dump_cmd->add_option("--count", c.count, "Number of coefficients");
    add_output(dump_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Run the property verification suite");
    verify_cmd->add_option("--seed", c.seed, "Random seed");
    add_output(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        c.format = parse_enum(kFormats, format, "--output-format");
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                throw UsageError("--config: cannot open '" + config_path + "'");
            }
            json j;
            try {
                in >> j;
            } catch (const json::exception& e) {
                throw UsageError(std::string("--config: ") + e.what());
            }
            RunConfig replay = config_from_json(j);
            replay.format = c.format;
            replay.output = c.output;
            return dispatch(replay, out, log);
        }
        if (app.get_subcommands().empty()) {
            throw UsageError("a subcommand (solve, converge, dump-coeffs, verify) or --config is required");
        }
        const auto* sub = app.get_subcommands().front();
        c.subcommand = kSubcommands.at(sub->get_name());
        c.kind = parse_enum(kKinds, kind, "--kind");
        c.domain = {domain.at(0), domain.at(1)};
        if (beta_opt->count() > 0) {
            c.beta = beta;
        }
        if (tau_opt->count() > 0) {
            c.tau = tau;
        }
    } catch (const UsageError& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    }
    return dispatch(c, out, log);
}

} // namespace twave::cli
