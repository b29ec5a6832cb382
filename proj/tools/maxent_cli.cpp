// Command-line front end: solve, equilibrium, order, phi-chain,
// oracle-compare. Emissions are deterministic for identical inputs; JSON
// carries the {schema_version, command, inputs, result, diagnostics}
// envelope, CSV a single stable-header table per command.
//
// Exit codes: 0 success (related / within bounds), 1 usage or validation
// error, 2 no solution (mean outside [a_1, a_n]), 3 non-convergence or
// truncated chain, 4 states unrelated, 5 oracle gaps exceeded.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxent/bayesian_order.hpp"
#include "maxent/equilibrium.hpp"
#include "maxent/lagrange.hpp"
#include "maxent/oracle.hpp"
#include "maxent/state.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchemaVersion = "1.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join17(const std::vector<double>& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += fmt17(v[i]);
    }
    return out;
}

// Infinities are legal lambdas but not legal JSON numbers.
json json_number(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : "-inf";
}

json state_json(const maxent::ClassicalState& s) { return json(s.probs()); }

maxent::Observable make_observable(const std::vector<double>& values, const char* flag) {
    try {
        return maxent::Observable(values);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

maxent::ClassicalState make_state(const std::vector<double>& values, const char* flag) {
    try {
        return maxent::ClassicalState(values);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

double env_default_tol() {
    const char* env = std::getenv("MAXENT_DEFAULT_TOL");
    if (!env) return 1e-12;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
        throw UsageError("MAXENT_DEFAULT_TOL: not a positive number");
    return v;
}

void emit_envelope(const std::string& command, json inputs, json result, json diagnostics) {
    json env;
    env["schema_version"] = kSchemaVersion;
    env["command"] = command;
    env["inputs"] = std::move(inputs);
    env["result"] = std::move(result);
    env["diagnostics"] = std::move(diagnostics);
    std::cout << env.dump(2) << "\n";
}

// ---------------------------------------------------------------- solve ----

struct SolveArgs {
    std::vector<double> obs;
    double mean = 0.0;
    double tol = 1e-12;
    double step_tol = 1e-14;
    long max_iter = 1'000'000;
    std::string method = "fixed-point";
    double guess = 0.0;
    bool trace = false;
    std::string format = "plain";
};

maxent::SolveMethod parse_method(const std::string& m) {
    if (m == "fixed-point") return maxent::SolveMethod::fixed_point;
    if (m == "bisection") return maxent::SolveMethod::bisection;
    if (m == "newton") return maxent::SolveMethod::newton;
    throw UsageError("--method: unknown method '" + m + "'");
}

json solve_inputs_json(const SolveArgs& a) {
    json in;
    in["obs"] = a.obs;
    in["mean"] = a.mean;
    in["tol"] = a.tol;
    in["step_tol"] = a.step_tol;
    in["max_iter"] = a.max_iter;
    in["method"] = a.method;
    in["guess"] = a.guess;
    in["trace"] = a.trace;
    return in;
}

int run_solve(const SolveArgs& args) {
    maxent::Observable obs = make_observable(args.obs, "--obs");
    maxent::MaxEntProblem problem(std::move(obs), args.mean);
    maxent::SolverConfig cfg;
    cfg.residual_tol = args.tol;
    cfg.step_tol = args.step_tol;
    cfg.max_iter = args.max_iter;
    cfg.method = parse_method(args.method);
    cfg.initial_guess = args.guess;
    cfg.record_trace = args.trace;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    maxent::MaxEntResult r = maxent::solve(problem, cfg);

    if (args.format == "json") {
        json result;
        result["lambda"] = json_number(r.lambda);
        result["state"] = state_json(r.state);
        result["iterations"] = r.iterations;
        result["residual"] = r.residual;
        json diagnostics = json::object();
        if (r.trace) {
            diagnostics["termination"] = maxent::to_string(r.trace->termination);
            json rows = json::array();
            for (const auto& e : r.trace->entries)
                rows.push_back({{"step", e.k}, {"lambda", e.lambda}, {"residual", e.residual}});
            diagnostics["trace"] = std::move(rows);
        }
        emit_envelope("solve", solve_inputs_json(args), std::move(result), std::move(diagnostics));
    } else if (args.format == "csv") {
        if (args.trace && r.trace) {
            std::cout << "step,lambda,residual\n";
            for (const auto& e : r.trace->entries)
                std::cout << e.k << "," << fmt17(e.lambda) << "," << fmt17(e.residual) << "\n";
        } else {
            std::cout << "lambda,iterations,residual";
            for (std::size_t i = 1; i <= r.state.size(); ++i) std::cout << ",p" << i;
            std::cout << "\n"
                      << fmt17(r.lambda) << "," << r.iterations << "," << fmt17(r.residual) << ","
                      << join17(r.state.probs()) << "\n";
        }
    } else {
        std::cout << "lambda = " << fmt17(r.lambda) << "\n"
                  << "state = " << join17(r.state.probs()) << "\n"
                  << "iterations = " << r.iterations << "\n"
                  << "residual = " << fmt17(r.residual) << "\n";
        if (r.trace) {
            std::cout << "termination = " << maxent::to_string(r.trace->termination) << "\n";
            for (const auto& e : r.trace->entries)
                std::cout << "  k=" << e.k << " lambda=" << fmt17(e.lambda)
                          << " residual=" << fmt17(e.residual) << "\n";
        }
    }
    return 0;
}

// ---------------------------------------------------------- equilibrium ----

int run_equilibrium(const std::vector<double>& obs_values, const std::string& format) {
    maxent::Observable obs = make_observable(obs_values, "--obs");
    maxent::EquilibriumResult r = maxent::equilibrium_state(obs);
    if (std::abs(r.functional_value + r.log_partition) > 1e-10)
        throw std::runtime_error("equilibrium: functional/log-partition mismatch");

    if (format == "json") {
        json in;
        in["obs"] = obs_values;
        json result;
        result["state"] = state_json(r.state);
        result["log_partition"] = r.log_partition;
        result["functional"] = r.functional_value;
        emit_envelope("equilibrium", std::move(in), std::move(result), json::object());
    } else if (format == "csv") {
        std::cout << "log_partition,functional";
        for (std::size_t i = 1; i <= r.state.size(); ++i) std::cout << ",p" << i;
        std::cout << "\n"
                  << fmt17(r.log_partition) << "," << fmt17(r.functional_value) << ","
                  << join17(r.state.probs()) << "\n";
    } else {
        std::cout << "state = " << join17(r.state.probs()) << "\n"
                  << "log_partition = " << fmt17(r.log_partition) << "\n"
                  << "functional = " << fmt17(r.functional_value) << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- order ----

int run_order(const std::vector<double>& xs, const std::vector<double>& ys,
              const std::string& method, const std::string& format) {
    maxent::ClassicalState x = make_state(xs, "--x");
    maxent::ClassicalState y = make_state(ys, "--y");
    if (x.size() != y.size()) throw UsageError("--x/--y: state lengths differ");

    bool related = false;
    std::optional<std::vector<std::size_t>> witness;
    if (method == "symmetric") {
        maxent::OrderVerdict v = maxent::leq_symmetric(x, y);
        related = v.related;
        witness = std::move(v.witness_permutation);
    } else {
        try {
            related = maxent::leq_projective(x, y);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }

    std::vector<long> witness_1based;
    if (witness)
        for (std::size_t i : *witness) witness_1based.push_back(static_cast<long>(i) + 1);

    if (format == "json") {
        json in;
        in["x"] = xs;
        in["y"] = ys;
        in["method"] = method;
        json result;
        result["related"] = related;
        result["witness_permutation"] = witness ? json(witness_1based) : json(nullptr);
        emit_envelope("order", std::move(in), std::move(result), json::object());
    } else if (format == "csv") {
        std::cout << "related,witness\n" << (related ? "true" : "false") << ",";
        for (std::size_t i = 0; i < witness_1based.size(); ++i) {
            if (i) std::cout << " ";
            std::cout << witness_1based[i];
        }
        std::cout << "\n";
    } else {
        std::cout << "related = " << (related ? "true" : "false") << "\n";
        if (witness) {
            std::cout << "witness =";
            for (long i : witness_1based) std::cout << " " << i;
            std::cout << "\n";
        }
    }
    return related ? 0 : 4;
}

// ------------------------------------------------------------- phi-chain ----

int run_phi_chain(const std::vector<double>& obs_values, double mean, long steps, double tol,
                  const std::string& format) {
    maxent::Observable obs = make_observable(obs_values, "--obs");
    maxent::MaxEntProblem problem(std::move(obs), mean);
    if (!problem.interior())
        throw UsageError("--mean: phi-chain needs an interior target (a_1 < mean < a_n)");
    if (steps < 1) throw UsageError("--steps: must be at least 1");
    if (!(tol > 0.0)) throw UsageError("--tol: must be positive");

    maxent::PhiChain chain = maxent::phi_chain(problem, steps, tol);

    if (format == "json") {
        json in;
        in["obs"] = obs_values;
        in["mean"] = mean;
        in["steps"] = steps;
        in["tol"] = tol;
        json rows = json::array();
        for (std::size_t k = 0; k < chain.states.size(); ++k) {
            rows.push_back({{"step", k},
                            {"lambda", chain.lambdas[k]},
                            {"residual", maxent::residual(problem, chain.lambdas[k])},
                            {"state", state_json(chain.states[k])}});
        }
        json result;
        result["converged"] = chain.converged;
        result["rows"] = std::move(rows);
        emit_envelope("phi-chain", std::move(in), std::move(result), json::object());
    } else if (format == "csv") {
        std::cout << "step,lambda,residual";
        for (std::size_t i = 1; i <= problem.size(); ++i) std::cout << ",p" << i;
        std::cout << "\n";
        for (std::size_t k = 0; k < chain.states.size(); ++k) {
            std::cout << k << "," << fmt17(chain.lambdas[k]) << ","
                      << fmt17(maxent::residual(problem, chain.lambdas[k])) << ","
                      << join17(chain.states[k].probs()) << "\n";
        }
        std::cout << (chain.converged ? "# converged\n" : "# truncated\n");
    } else {
        for (std::size_t k = 0; k < chain.states.size(); ++k) {
            std::cout << "k=" << k << " lambda=" << fmt17(chain.lambdas[k])
                      << " state=" << join17(chain.states[k].probs()) << "\n";
        }
        std::cout << (chain.converged ? "converged\n" : "truncated\n");
    }
    return chain.converged ? 0 : 3;
}

// -------------------------------------------------------- oracle-compare ----

int run_oracle_compare(const std::vector<double>& obs_values, double mean, int resolution,
                       unsigned long long seed, const std::string& format) {
    maxent::Observable obs = make_observable(obs_values, "--obs");
    if (obs.size() > 4) throw UsageError("--obs: oracle comparison supports n <= 4 only");
    maxent::MaxEntProblem problem(std::move(obs), mean);
    if (!problem.interior())
        throw UsageError("--mean: oracle comparison needs an interior target");

    maxent::MaxEntResult solver = maxent::solve(problem);
    maxent::GridSpec grid{resolution, static_cast<int>(problem.size())};
    maxent::ClassicalState oracle = [&] {
        try {
            return maxent::oracle_maxent_grid(problem, grid);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();

    const double state_gap = maxent::max_norm_distance(solver.state, oracle);
    const double solver_entropy = maxent::entropy(solver.state);
    const double entropy_gap = solver_entropy - maxent::entropy(oracle);

    double best_sample_entropy = -1.0;
    for (const maxent::ClassicalState& s : maxent::constrained_sampler(problem, 1000, seed))
        best_sample_entropy = std::max(best_sample_entropy, maxent::entropy(s));
    const double sampler_entropy_gap = solver_entropy - best_sample_entropy;

    // Documented bounds: the repaired grid optimum sits within a few grid
    // spacings of the solver state, and no feasible reference may beat the
    // solver's entropy beyond rounding.
    const double state_gap_bound = 5.0 / resolution;
    const bool within =
        state_gap <= state_gap_bound && entropy_gap >= -1e-9 && sampler_entropy_gap >= -1e-9;

    if (format == "json") {
        json in;
        in["obs"] = obs_values;
        in["mean"] = mean;
        in["resolution"] = resolution;
        in["seed"] = seed;
        json result;
        result["lambda"] = json_number(solver.lambda);
        result["solver_state"] = state_json(solver.state);
        result["oracle_state"] = state_json(oracle);
        result["max_norm_gap"] = state_gap;
        result["entropy_gap"] = entropy_gap;
        result["sampler_entropy_gap"] = sampler_entropy_gap;
        result["state_gap_bound"] = state_gap_bound;
        result["within_bounds"] = within;
        emit_envelope("oracle-compare", std::move(in), std::move(result), json::object());
    } else if (format == "csv") {
        std::cout << "lambda,max_norm_gap,entropy_gap,sampler_entropy_gap,within_bounds";
        for (std::size_t i = 1; i <= problem.size(); ++i) std::cout << ",solver_p" << i;
        for (std::size_t i = 1; i <= problem.size(); ++i) std::cout << ",oracle_p" << i;
        std::cout << "\n"
                  << fmt17(solver.lambda) << "," << fmt17(state_gap) << "," << fmt17(entropy_gap)
                  << "," << fmt17(sampler_entropy_gap) << "," << (within ? "true" : "false") << ","
                  << join17(solver.state.probs()) << "," << join17(oracle.probs()) << "\n";
    } else {
        std::cout << "lambda = " << fmt17(solver.lambda) << "\n"
                  << "solver_state = " << join17(solver.state.probs()) << "\n"
                  << "oracle_state = " << join17(oracle.probs()) << "\n"
                  << "max_norm_gap = " << fmt17(state_gap) << " (bound " << fmt17(state_gap_bound)
                  << ")\n"
                  << "entropy_gap = " << fmt17(entropy_gap) << "\n"
                  << "sampler_entropy_gap = " << fmt17(sampler_entropy_gap) << "\n"
                  << "within_bounds = " << (within ? "true" : "false") << "\n";
    }
    return within ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum entropy states under a mean constraint"};
    app.require_subcommand(1);

    const std::vector<std::string> formats{"plain", "json", "csv"};
    auto format_check = CLI::IsMember(formats);

    SolveArgs sa;
    try {
        sa.tol = env_default_tol();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    CLI::App* solve = app.add_subcommand("solve", "maximum entropy state for a target mean");
    solve->add_option("--obs", sa.obs, "outcome values, comma separated, strictly increasing")
        ->delimiter(',')
        ->required();
    solve->add_option("--mean", sa.mean, "target mean E")->required();
    solve->add_option("--tol", sa.tol, "residual tolerance on |f(lambda)|");
    solve->add_option("--step-tol", sa.step_tol, "stagnation tolerance on lambda steps");
    solve->add_option("--max-iter", sa.max_iter, "iteration budget");
    solve->add_option("--method", sa.method, "fixed-point | bisection | newton")
        ->check(CLI::IsMember({"fixed-point", "bisection", "newton"}));
    solve->add_option("--guess", sa.guess, "initial multiplier guess");
    solve->add_flag("--trace", sa.trace, "record and emit the iterate trace");
    solve->add_option("--format", sa.format, "plain | json | csv")->check(format_check);

    std::vector<double> eq_obs;
    std::string eq_format = "plain";
    CLI::App* equilibrium = app.add_subcommand("equilibrium", "Boltzmann state of an observable");
    equilibrium->add_option("--obs", eq_obs, "outcome values, comma separated")
        ->delimiter(',')
        ->required();
    equilibrium->add_option("--format", eq_format, "plain | json | csv")->check(format_check);

    std::vector<double> ox, oy;
    std::string order_method = "symmetric", order_format = "plain";
    CLI::App* order = app.add_subcommand("order", "compare two states in the Bayesian order");
    order->add_option("--x", ox, "candidate lower state, comma separated")
        ->delimiter(',')
        ->required();
    order->add_option("--y", oy, "candidate upper state, comma separated")
        ->delimiter(',')
        ->required();
    order->add_option("--method", order_method, "symmetric | projective")
        ->check(CLI::IsMember({"symmetric", "projective"}));
    order->add_option("--format", order_format, "plain | json | csv")->check(format_check);

    std::vector<double> pc_obs;
    double pc_mean = 0.0, pc_tol = 1e-12;
    long pc_steps = 100000;
    std::string pc_format = "plain";
    CLI::App* phi_chain = app.add_subcommand("phi-chain", "iterate phi from the uniform state");
    phi_chain->add_option("--obs", pc_obs, "outcome values, comma separated")
        ->delimiter(',')
        ->required();
    phi_chain->add_option("--mean", pc_mean, "target mean E")->required();
    phi_chain->add_option("--steps", pc_steps, "iteration budget");
    phi_chain->add_option("--tol", pc_tol, "max-norm state tolerance for convergence");
    phi_chain->add_option("--format", pc_format, "plain | json | csv")->check(format_check);

    std::vector<double> oc_obs;
    double oc_mean = 0.0;
    int oc_resolution = 200;
    unsigned long long oc_seed = 0;
    std::string oc_format = "plain";
    CLI::App* oracle_compare =
        app.add_subcommand("oracle-compare", "check the solver against brute-force references");
    oracle_compare->add_option("--obs", oc_obs, "outcome values, comma separated (n <= 4)")
        ->delimiter(',')
        ->required();
    oracle_compare->add_option("--mean", oc_mean, "target mean E")->required();
    oracle_compare->add_option("--resolution", oc_resolution, "grid points per simplex edge");
    oracle_compare->add_option("--seed", oc_seed, "sampler seed");
    oracle_compare->add_option("--format", oc_format, "plain | json | csv")->check(format_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return run_solve(sa);
        if (equilibrium->parsed()) return run_equilibrium(eq_obs, eq_format);
        if (order->parsed()) return run_order(ox, oy, order_method, order_format);
        if (phi_chain->parsed()) return run_phi_chain(pc_obs, pc_mean, pc_steps, pc_tol, pc_format);
        if (oracle_compare->parsed())
            return run_oracle_compare(oc_obs, oc_mean, oc_resolution, oc_seed, oc_format);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const maxent::NoSolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const maxent::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (iterations=" << e.iterations
                  << ", last lambda=" << fmt17(e.last_lambda)
                  << ", last residual=" << fmt17(e.last_residual) << ")\n";
        return 3;
    } catch (const maxent::OracleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
