#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxent/state.hpp"

namespace maxent {

/// An observable together with a target mean E. Construction enforces the
/// existence condition a_1 <= E <= a_n (up to boundary_eps); outside it the
/// constrained set is empty and NoSolutionError is thrown.
class MaxEntProblem {
public:
    MaxEntProblem(Observable observable, double target_mean);

    const Observable& observable() const { return observable_; }
    double target_mean() const { return target_mean_; }
    std::size_t size() const { return observable_.size(); }

    /// Relative tolerance used to detect E = a_1 / E = a_n.
    double boundary_eps() const;

    bool at_min_boundary() const;  // E = a_1 within boundary_eps
    bool at_max_boundary() const;  // E = a_n within boundary_eps
    bool interior() const { return !at_min_boundary() && !at_max_boundary(); }

private:
    Observable observable_;
    double target_mean_;
};

enum class SolveMethod { fixed_point, bisection, newton };

struct SolverConfig {
    double residual_tol = 1e-12;
    double step_tol = 1e-14;
    long max_iter = 1'000'000;
    SolveMethod method = SolveMethod::fixed_point;
    double initial_guess = 0.0;
    bool record_trace = false;

    void validate() const;
};

enum class Termination { residual_met, step_met, max_iter };

std::string to_string(Termination t);

struct TraceEntry {
    long k;
    double lambda;
    double residual;  // signed f(lambda_k)
};

struct SolveTrace {
    std::vector<TraceEntry> entries;
    Termination termination = Termination::residual_met;
};

struct MaxEntResult {
    double lambda;  // +/-infinity when E sits on the corresponding boundary
    ClassicalState state;
    long iterations;
    double residual;  // |f(lambda)| at termination (0 for boundary solutions)
    std::optional<SolveTrace> trace;
};

/// Thrown when E lies outside [a_1, a_n], where no state has mean E.
class NoSolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an iteration exhausts its budget (or Newton diverges) before
/// meeting tolerance. Carries whatever trace was recorded.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, SolveTrace trace, long iterations,
                        double last_lambda, double last_residual)
        : std::runtime_error(what),
          trace(std::move(trace)),
          iterations(iterations),
          last_lambda(last_lambda),
          last_residual(last_residual) {}

    SolveTrace trace;
    long iterations;
    double last_lambda;
    double last_residual;
};

/// f(x) = (sum_i a_i e^{x a_i}) / (sum_i e^{x a_i}) - E, evaluated with
/// max-shifted weights so it is finite for every finite x.
double residual(const MaxEntProblem& p, double x);

/// f'(x) = sum_{i<j} w_i w_j (a_j - a_i)^2 / (sum_i w_i)^2 with the same
/// shifted weights; always in (0, (a_n - a_1)^2).
double residual_derivative(const MaxEntProblem& p, double x);

/// The damped update I_f(x) = x - f(x)/(a_n - a_1)^2. Its iterates converge
/// to the multiplier lambda from any starting point, and
/// x <= if_step(x) iff x <= lambda (and symmetrically from above).
double if_step(const MaxEntProblem& p, double x);

/// Find the multiplier lambda with f(lambda) = 0 and return the state
/// softmax(lambda * a). Boundary targets short-circuit to a pure state with
/// lambda = -/+infinity. Interior targets iterate cfg.method from
/// cfg.initial_guess until |f| <= residual_tol or |step| <= step_tol.
MaxEntResult solve(const MaxEntProblem& p, const SolverConfig& cfg = {});

/// Newton iteration x <- x - f(x)/f'(x) under the same termination contract.
/// Experimental: no convergence guarantee; runaway iterates are reported as
/// NonConvergenceError.
MaxEntResult solve_newton(const MaxEntProblem& p, const SolverConfig& cfg = {});

}  // namespace maxent
