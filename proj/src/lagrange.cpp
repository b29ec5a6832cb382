#include "maxent/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/numeric.hpp"

namespace maxent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_bounds(const Observable& a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "[%.17g,%.17g]", a.min(), a.max());
    return buf;
}

struct IterationState {
    SolveTrace trace;
    bool record;

    void add(long k, double lambda, double fx) {
        if (record) trace.entries.push_back({k, lambda, fx});
    }
};

MaxEntResult finish(const MaxEntProblem& p, double lambda, long iterations, double fx,
                    IterationState& it, Termination reason) {
    it.trace.termination = reason;
    ClassicalState state(gibbs_weights(p.observable().values(), lambda).probs);
    std::optional<SolveTrace> trace;
    if (it.record) trace = std::move(it.trace);
    return {lambda, std::move(state), iterations, std::abs(fx), std::move(trace)};
}

[[noreturn]] void fail_budget(const std::string& what, IterationState& it, long iterations,
                              double lambda, double fx) {
    it.trace.termination = Termination::max_iter;
    throw NonConvergenceError(what, std::move(it.trace), iterations, lambda, fx);
}

MaxEntResult solve_fixed_point(const MaxEntProblem& p, const SolverConfig& cfg) {
    const double d2 = p.observable().spread() * p.observable().spread();
    IterationState it{{}, cfg.record_trace};

    double x = cfg.initial_guess;
    double fx = residual(p, x);
    it.add(0, x, fx);
    if (std::abs(fx) <= cfg.residual_tol) return finish(p, x, 0, fx, it, Termination::residual_met);

    for (long k = 1; k <= cfg.max_iter; ++k) {
        const double step = -fx / d2;
        const double x_next = x + step;
        const double fx_next = residual(p, x_next);
        it.add(k, x_next, fx_next);
        if (std::abs(fx_next) <= cfg.residual_tol)
            return finish(p, x_next, k, fx_next, it, Termination::residual_met);
        if (std::abs(x_next - x) <= cfg.step_tol)
            return finish(p, x_next, k, fx_next, it, Termination::step_met);
        x = x_next;
        fx = fx_next;
    }
    fail_budget("fixed-point iteration hit max_iter before tolerance", it, cfg.max_iter, x, fx);
}

// Outward-doubling bracket [lo, hi] with f(lo) < 0 < f(hi). Assumes
// |f(0)| > 0 was already checked by the caller.
struct Bracket {
    double lo, hi;
};

Bracket find_bracket(const MaxEntProblem& p, double f0) {
    Bracket b{0.0, 0.0};
    if (f0 > 0.0) {
        // lambda < 0
        b.hi = 0.0;
        b.lo = -1.0;
        while (residual(p, b.lo) >= 0.0) {
            b.lo *= 2.0;
            if (b.lo < -1e300)
                throw NonConvergenceError("bracket search ran away below", {}, 0, b.lo, f0);
        }
    } else {
        b.lo = 0.0;
        b.hi = 1.0;
        while (residual(p, b.hi) <= 0.0) {
            b.hi *= 2.0;
            if (b.hi > 1e300)
                throw NonConvergenceError("bracket search ran away above", {}, 0, b.hi, f0);
        }
    }
    return b;
}

MaxEntResult solve_bisection(const MaxEntProblem& p, const SolverConfig& cfg) {
    IterationState it{{}, cfg.record_trace};

    const double f0 = residual(p, 0.0);
    it.add(0, 0.0, f0);
    if (std::abs(f0) <= cfg.residual_tol)
        return finish(p, 0.0, 0, f0, it, Termination::residual_met);

    Bracket b = find_bracket(p, f0);
    double mid = 0.0, fmid = f0;
    for (long k = 1; k <= cfg.max_iter; ++k) {
        mid = 0.5 * (b.lo + b.hi);
        fmid = residual(p, mid);
        it.add(k, mid, fmid);
        if (std::abs(fmid) <= cfg.residual_tol)
            return finish(p, mid, k, fmid, it, Termination::residual_met);
        // Interval exhausted: either below step_tol or numerically degenerate.
        if (0.5 * (b.hi - b.lo) <= cfg.step_tol || mid == b.lo || mid == b.hi)
            return finish(p, mid, k, fmid, it, Termination::step_met);
        if (fmid < 0.0)
            b.lo = mid;
        else
            b.hi = mid;
    }
    fail_budget("bisection hit max_iter before tolerance", it, cfg.max_iter, mid, fmid);
}

MaxEntResult do_solve_newton(const MaxEntProblem& p, const SolverConfig& cfg) {
    IterationState it{{}, cfg.record_trace};

    double x = cfg.initial_guess;
    double fx = residual(p, x);
    it.add(0, x, fx);
    if (std::abs(fx) <= cfg.residual_tol) return finish(p, x, 0, fx, it, Termination::residual_met);

    // Excursion bound from a sign-change bracket around lambda; wandering far
    // beyond it counts as divergence.
    Bracket b = find_bracket(p, residual(p, 0.0));
    const double excursion = 1e6 * (1.0 + std::max(std::abs(b.lo), std::abs(b.hi)));

    for (long k = 1; k <= cfg.max_iter; ++k) {
        const double d = residual_derivative(p, x);
        if (!(d > 0.0) || !std::isfinite(d))
            fail_budget("newton diverged: derivative underflowed to zero", it, k - 1, x, fx);
        const double step = fx / d;
        const double x_next = x - step;
        if (!std::isfinite(x_next) || std::abs(x_next) > excursion)
            fail_budget("newton diverged: iterate left the excursion bound", it, k - 1, x_next, fx);
        const double fx_next = residual(p, x_next);
        it.add(k, x_next, fx_next);
        if (std::abs(fx_next) <= cfg.residual_tol)
            return finish(p, x_next, k, fx_next, it, Termination::residual_met);
        if (std::abs(x_next - x) <= cfg.step_tol)
            return finish(p, x_next, k, fx_next, it, Termination::step_met);
        x = x_next;
        fx = fx_next;
    }
    fail_budget("newton hit max_iter before tolerance", it, cfg.max_iter, x, fx);
}

}  // namespace

MaxEntProblem::MaxEntProblem(Observable observable, double target_mean)
    : observable_(std::move(observable)), target_mean_(target_mean) {
    if (!std::isfinite(target_mean_))
        throw std::invalid_argument("target mean must be finite");
    const double eps = boundary_eps();
    if (target_mean_ < observable_.min() - eps || target_mean_ > observable_.max() + eps)
        throw NoSolutionError("mean outside " + format_bounds(observable_));
}

double MaxEntProblem::boundary_eps() const {
    return 1e-12 * std::max({1.0, std::abs(observable_.min()), std::abs(observable_.max())});
}

bool MaxEntProblem::at_min_boundary() const {
    return std::abs(target_mean_ - observable_.min()) <= boundary_eps();
}

bool MaxEntProblem::at_max_boundary() const {
    return std::abs(target_mean_ - observable_.max()) <= boundary_eps();
}

void SolverConfig::validate() const {
    if (!(residual_tol > 0.0)) throw std::invalid_argument("residual_tol must be positive");
    if (!(step_tol > 0.0)) throw std::invalid_argument("step_tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    if (!std::isfinite(initial_guess)) throw std::invalid_argument("initial_guess must be finite");
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::residual_met: return "residual_met";
        case Termination::step_met: return "step_met";
        case Termination::max_iter: return "max_iter";
    }
    return "unknown";
}

double residual(const MaxEntProblem& p, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("residual: x must be finite");
    const std::vector<double>& a = p.observable().values();
    double m = x * a[0];
    for (double ai : a) m = std::max(m, x * ai);
    double sw = 0.0, swa = 0.0;
    for (double ai : a) {
        const double w = std::exp(x * ai - m);
        sw += w;
        swa += w * ai;
    }
    return swa / sw - p.target_mean();
}

double residual_derivative(const MaxEntProblem& p, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("residual_derivative: x must be finite");
    const std::vector<double>& a = p.observable().values();
    const std::size_t n = a.size();
    double m = x * a[0];
    for (double ai : a) m = std::max(m, x * ai);
    std::vector<double> w(n);
    double sw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::exp(x * a[i] - m);
        sw += w[i];
    }
    // Pairwise form: no cancellation, manifestly positive.
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double gap = a[j] - a[i];
            acc += w[i] * w[j] * gap * gap;
        }
    }
    return acc / (sw * sw);
}

double if_step(const MaxEntProblem& p, double x) {
    const double d2 = p.observable().spread() * p.observable().spread();
    return x - residual(p, x) / d2;
}

MaxEntResult solve(const MaxEntProblem& p, const SolverConfig& cfg) {
    cfg.validate();
    const std::size_t n = p.size();
    if (p.at_min_boundary()) {
        std::optional<SolveTrace> trace;
        if (cfg.record_trace) trace = SolveTrace{};
        return {-kInf, pure_state(n, 0), 0, 0.0, std::move(trace)};
    }
    if (p.at_max_boundary()) {
        std::optional<SolveTrace> trace;
        if (cfg.record_trace) trace = SolveTrace{};
        return {kInf, pure_state(n, n - 1), 0, 0.0, std::move(trace)};
    }
    switch (cfg.method) {
        case SolveMethod::fixed_point: return solve_fixed_point(p, cfg);
        case SolveMethod::bisection: return solve_bisection(p, cfg);
        case SolveMethod::newton: return do_solve_newton(p, cfg);
    }
    throw std::invalid_argument("solve: unknown method");
}

MaxEntResult solve_newton(const MaxEntProblem& p, const SolverConfig& cfg) {
    SolverConfig c = cfg;
    c.method = SolveMethod::newton;
    return solve(p, c);
}

}  // namespace maxent
