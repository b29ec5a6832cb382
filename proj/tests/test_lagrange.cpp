#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxent/lagrange.hpp"
#include "maxent/oracle.hpp"
#include "support/generators.hpp"

using maxent::ClassicalState;
using maxent::MaxEntProblem;
using maxent::MaxEntResult;
using maxent::Observable;
using maxent::SolveMethod;
using maxent::SolverConfig;

namespace {
const double kQuadLambda = std::log((-1.0 + std::sqrt(13.0)) / 6.0);  // root of 3u^2 + u - 1

MaxEntProblem die_problem() { return {Observable({1, 2, 3, 4, 5, 6}), 3.5}; }
MaxEntProblem quad_problem() { return {Observable({0.0, 1.0, 2.0}), 0.5}; }
}  // namespace

TEST_CASE("problem validation") {
    CHECK_NOTHROW(MaxEntProblem(Observable({0.0, 1.0}), 0.5));
    CHECK_NOTHROW(MaxEntProblem(Observable({0.0, 1.0}), 0.0));  // boundary is legal
    CHECK_THROWS_AS(MaxEntProblem(Observable({0.0, 1.0}), 2.0), maxent::NoSolutionError);
    CHECK_THROWS_AS(MaxEntProblem(Observable({0.0, 1.0}), -0.1), maxent::NoSolutionError);
    CHECK_THROWS_AS(MaxEntProblem(Observable({0.0, 1.0}), std::nan("")), std::invalid_argument);

    SolverConfig bad;
    bad.residual_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = SolverConfig{};
    bad.max_iter = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("residual examples") {
    CHECK(maxent::residual(die_problem(), 0.0) == 0.0);
    CHECK(maxent::residual(quad_problem(), 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(maxent::residual(quad_problem(), -0.83411)) <= 1e-4);
    CHECK(std::abs(maxent::residual(quad_problem(), kQuadLambda)) <= 1e-14);

    // Saturates instead of overflowing.
    MaxEntProblem p(Observable({-3.0, 7.0}), 1.0);
    CHECK(maxent::residual(p, 1000.0) == doctest::Approx(7.0 - 1.0).epsilon(1e-12));
    CHECK(maxent::residual(p, -1000.0) == doctest::Approx(-3.0 - 1.0).epsilon(1e-12));
    CHECK(std::isfinite(maxent::residual(p, 708.0)));
    CHECK_THROWS_AS(maxent::residual(p, std::nan("")), std::invalid_argument);
}

TEST_CASE("residual_derivative closed forms") {
    // n = 2 with unit gap: e^x/(1+e^x)^2, maximal 1/4 at x = 0.
    MaxEntProblem p2(Observable({0.0, 1.0}), 0.5);
    for (double x : {-3.0, -1.0, 0.0, 0.7, 2.5}) {
        const double expected = std::exp(x) / std::pow(1.0 + std::exp(x), 2);
        CHECK(maxent::residual_derivative(p2, x) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(maxent::residual_derivative(p2, 0.0) == doctest::Approx(0.25).epsilon(1e-14));

    // At x = 0 the derivative is the variance of the uniform distribution.
    CHECK(maxent::residual_derivative(die_problem(), 0.0) ==
          doctest::Approx(35.0 / 12.0).epsilon(1e-13));

    // Far in the tail a single weight survives.
    CHECK(maxent::residual_derivative(die_problem(), -40.0) <= 1e-12);
}

TEST_CASE("derivative bounds and finite-difference agreement") {
    testgen::Rng rng(7201);
    std::uniform_real_distribution<double> pick_x(-20.0, 20.0);
    for (int t = 0; t < 1000; ++t) {
        MaxEntProblem p = testgen::random_problem(rng);
        const double x = pick_x(rng);
        const double d = maxent::residual_derivative(p, x);
        const double cap = p.observable().spread() * p.observable().spread();
        CHECK(d > 0.0);
        CHECK(d < cap);

        const double h = 1e-5;
        const double fd = (maxent::residual(p, x + h) - maxent::residual(p, x - h)) / (2.0 * h);
        CHECK(std::abs(d - fd) / std::max(1.0, std::abs(d)) <= 1e-6);
    }
}

TEST_CASE("if_step examples") {
    CHECK(maxent::if_step(die_problem(), 0.0) == 0.0);
    CHECK(maxent::if_step(quad_problem(), 0.0) == doctest::Approx(-0.125).epsilon(1e-14));
    // Fixed point at the multiplier itself.
    CHECK(maxent::if_step(quad_problem(), kQuadLambda) ==
          doctest::Approx(kQuadLambda).epsilon(1e-12));
}

TEST_CASE("sign equivalences of the damped step") {
    testgen::Rng rng(7202);
    std::uniform_real_distribution<double> pick_x(-30.0, 30.0);
    for (int t = 0; t < 200; ++t) {
        MaxEntProblem p = testgen::random_problem(rng);
        SolverConfig cfg;
        cfg.residual_tol = 1e-13;
        const double lambda = maxent::solve(p, cfg).lambda;
        for (int s = 0; s < 5; ++s) {
            const double x = pick_x(rng);
            const double step = maxent::if_step(p, x) - x;
            if (x < lambda - 1e-9) CHECK(step > 0.0);
            if (x > lambda + 1e-9) CHECK(step < 0.0);
        }
    }
}

TEST_CASE("solve: die problem") {
    MaxEntResult r = maxent::solve(die_problem());
    CHECK(std::abs(r.lambda) <= 1e-12);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(r.state[i] - 1.0 / 6.0) <= 1e-10);
}

TEST_CASE("solve: two outcomes force the state") {
    MaxEntProblem p(Observable({0.0, 1.0}), 0.75);
    MaxEntResult r = maxent::solve(p);
    CHECK(r.state[0] == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(r.state[1] == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(r.lambda == doctest::Approx(std::log(3.0)).epsilon(1e-10));
}

TEST_CASE("solve: quadratic-root cross check") {
    MaxEntResult r = maxent::solve(quad_problem());
    CHECK(std::abs(r.lambda - kQuadLambda) <= 1e-10);
    // Reference state from the root: (1, u, u^2)/(1 + u + u^2).
    const double u = std::exp(kQuadLambda);
    const double z = 1.0 + u + u * u;
    CHECK(std::abs(r.state[0] - 1.0 / z) <= 1e-10);
    CHECK(std::abs(r.state[1] - u / z) <= 1e-10);
    CHECK(std::abs(r.state[2] - u * u / z) <= 1e-10);
    CHECK(std::abs(maxent::expectation(quad_problem().observable(), r.state) - 0.5) <= 1e-8);
}

TEST_CASE("solve: boundary targets return pure states without iterating") {
    MaxEntProblem lo(Observable({1.0, 2.0, 3.0}), 1.0);
    MaxEntResult rlo = maxent::solve(lo);
    CHECK(rlo.lambda == -std::numeric_limits<double>::infinity());
    CHECK(rlo.state[0] == 1.0);
    CHECK(rlo.iterations == 0);

    MaxEntProblem hi(Observable({1.0, 2.0, 3.0}), 3.0);
    MaxEntResult rhi = maxent::solve(hi);
    CHECK(rhi.lambda == std::numeric_limits<double>::infinity());
    CHECK(rhi.state[2] == 1.0);
}

TEST_CASE("solve: mean target at the plain average gives the uniform state") {
    testgen::Rng rng(7203);
    for (int t = 0; t < 50; ++t) {
        Observable a = testgen::random_observable(rng);
        double mean = 0.0;
        for (double v : a.values()) mean += v;
        mean /= static_cast<double>(a.size());
        MaxEntResult r = maxent::solve(MaxEntProblem(a, mean));
        CHECK(std::abs(r.lambda) <= 1e-10);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(std::abs(r.state[i] - 1.0 / static_cast<double>(a.size())) <= 1e-10);
    }
}

TEST_CASE("fixed-point trace is monotone toward the multiplier") {
    testgen::Rng rng(7204);
    for (int t = 0; t < 100; ++t) {
        MaxEntProblem p = testgen::random_problem(rng);
        SolverConfig cfg;
        cfg.record_trace = true;
        const double lambda = maxent::solve(p, cfg).lambda;
        for (double offset : {0.5, 5.0, 50.0}) {
            for (double sign : {-1.0, 1.0}) {
                cfg.initial_guess = lambda + sign * offset;
                MaxEntResult r = maxent::solve(p, cfg);
                REQUIRE(r.trace.has_value());
                const auto& e = r.trace->entries;
                for (std::size_t k = 0; k + 1 < e.size(); ++k) {
                    if (sign < 0)
                        CHECK(e[k + 1].lambda >= e[k].lambda);
                    else
                        CHECK(e[k + 1].lambda <= e[k].lambda);
                }
            }
        }
    }
}

TEST_CASE("methods agree on the multiplier") {
    testgen::Rng rng(7205);
    for (int t = 0; t < 60; ++t) {
        MaxEntProblem p = testgen::random_problem(rng, {}, 0.05);
        SolverConfig cfg;
        cfg.residual_tol = 1e-13;
        cfg.step_tol = 1e-15;
        const double fp = maxent::solve(p, cfg).lambda;

        cfg.method = SolveMethod::bisection;
        const double bi = maxent::solve(p, cfg).lambda;
        CHECK(std::abs(fp - bi) <= 1e-8);

        try {
            const double nw = maxent::solve_newton(p, cfg).lambda;
            CHECK(std::abs(fp - nw) <= 1e-8);
        } catch (const maxent::NonConvergenceError&) {
            // Newton carries no guarantee; divergence is a legal outcome.
        }
    }
}

TEST_CASE("newton: trivial guess and cross-checked hard case") {
    SolverConfig cfg;
    MaxEntResult r = maxent::solve_newton(die_problem(), cfg);
    CHECK(std::abs(r.lambda) <= 1e-12);
    CHECK(r.iterations <= 1);

    MaxEntProblem hard(Observable({0.0, 10.0}), 9.999);
    const double reference = maxent::solve(hard).lambda;
    try {
        MaxEntResult rn = maxent::solve_newton(hard);
        CHECK(std::abs(rn.lambda - reference) <= 1e-8);
    } catch (const maxent::NonConvergenceError& e) {
        CHECK(e.iterations >= 0);
    }
}

TEST_CASE("non-convergence carries the recorded trace") {
    SolverConfig cfg;
    cfg.max_iter = 3;
    cfg.record_trace = true;
    cfg.initial_guess = 50.0;
    try {
        maxent::solve(quad_problem(), cfg);
        FAIL("expected NonConvergenceError");
    } catch (const maxent::NonConvergenceError& e) {
        CHECK(e.iterations == 3);
        CHECK(e.trace.termination == maxent::Termination::max_iter);
        CHECK(e.trace.entries.size() == 4);  // initial point plus three steps
        for (const auto& entry : e.trace.entries) CHECK(std::isfinite(entry.residual));
    }
}

TEST_CASE("interior solutions satisfy the mean constraint") {
    testgen::Rng rng(7206);
    for (int t = 0; t < 100; ++t) {
        MaxEntProblem p = testgen::random_problem(rng);
        MaxEntResult r = maxent::solve(p);
        CHECK(std::abs(maxent::expectation(p.observable(), r.state) - p.target_mean()) <= 1e-8);
        CHECK(r.residual <= 1e-12);
    }
}

TEST_CASE("solved state beats constrained samples on entropy") {
    testgen::Rng rng(7207);
    for (int t = 0; t < 10; ++t) {
        MaxEntProblem p = testgen::random_problem(rng, {}, 0.05);
        MaxEntResult r = maxent::solve(p);
        const double h = maxent::entropy(r.state);
        for (const ClassicalState& x : maxent::constrained_sampler(p, 200, 40 + t)) {
            CHECK(h >= maxent::entropy(x) - 1e-9);
        }
    }
}
