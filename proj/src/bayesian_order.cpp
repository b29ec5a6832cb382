#include "maxent/bayesian_order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "maxent/numeric.hpp"

namespace maxent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_length(const ClassicalState& x, const ClassicalState& y, const char* who) {
    if (x.size() != y.size())
        throw std::invalid_argument(std::string(who) + ": state lengths differ");
}

void require_interior(const MaxEntProblem& p, const char* who) {
    if (!p.interior())
        throw std::domain_error(std::string(who) +
                                ": target mean must lie strictly between a_1 and a_n");
}

}  // namespace

OrderVerdict leq_symmetric(const ClassicalState& x, const ClassicalState& y, double tol) {
    require_same_length(x, y, "leq_symmetric");
    const std::size_t n = x.size();

    // Any admissible permutation sorts x decreasingly; within tie blocks of x
    // it must also sort y decreasingly, which pins the arrangement up to
    // swaps of fully tied pairs.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        if (x[i] != x[j]) return x[i] > x[j];
        return y[i] > y[j];
    });

    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double xa = x[idx[k]], xb = x[idx[k + 1]];
        const double ya = y[idx[k]], yb = y[idx[k + 1]];
        if (yb > ya + tol) return {false, std::nullopt};        // y not sortable alongside x
        if (xa * yb > xb * ya + tol) return {false, std::nullopt};
    }
    return {true, std::move(idx)};
}

bool leq_projective(const ClassicalState& x, const ClassicalState& y, double tol) {
    require_same_length(x, y, "leq_projective");
    const std::size_t n = x.size();
    if (n > 6)
        throw std::invalid_argument(
            "leq_projective: n > 6 unsupported (recursion is exponential); use leq_symmetric");

    if (n == 2) {
        const double x1 = x[0], y1 = y[0];
        return (y1 <= x1 + tol && x1 <= 0.5 + tol) || (0.5 <= x1 + tol && x1 <= y1 + tol);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] >= 1.0 || y[i] >= 1.0) continue;  // outside dom(p_i), clause is vacuous
        if (!leq_projective(project(x, i), project(y, i), tol)) return false;
    }
    return true;
}

LambdaValue lambda_functional(const ClassicalState& x, const MaxEntProblem& p) {
    require_interior(p, "lambda_functional");
    if (x.size() != p.size())
        throw std::invalid_argument("lambda_functional: state and observable lengths differ");
    const Observable& a = p.observable();
    const std::size_t n = a.size();
    const bool positive_branch = if_step(p, 0.0) > 0.0;
    const double denom = positive_branch ? a[n - 1] - a[n - 2] : a[0] - a[1];

    ClassicalState s = sort_desc(x);
    if (s[1] == 0.0) {
        // Second-largest entry zero forces the rest to zero, i.e. a pure state.
        return {positive_branch ? kInf : -kInf};
    }
    return {std::log(s[0] / s[1]) / denom};
}

ClassicalState phi(const ClassicalState& x, const MaxEntProblem& p) {
    const double lam = lambda_functional(x, p).value;
    if (lam == kInf) return pure_state(p.size(), p.size() - 1);
    if (lam == -kInf) return pure_state(p.size(), 0);
    return ClassicalState(gibbs_weights(p.observable().values(), if_step(p, lam)).probs);
}

PhiChain phi_chain(const MaxEntProblem& p, long max_steps, double tol) {
    require_interior(p, "phi_chain");
    if (max_steps < 1) throw std::invalid_argument("phi_chain: max_steps must be at least 1");
    if (!(tol > 0.0)) throw std::invalid_argument("phi_chain: tol must be positive");

    const std::vector<double>& a = p.observable().values();
    PhiChain chain;
    chain.states.push_back(uniform_state(a.size()));
    chain.lambdas.push_back(0.0);

    // lambda(phi^k bottom) is exactly the k-th if_step iterate of 0, so the
    // chain is driven by the scalar recursion and the states materialized
    // from it.
    double lam = 0.0;
    for (long k = 1; k <= max_steps; ++k) {
        const double lam_next = if_step(p, lam);
        ClassicalState next(gibbs_weights(a, lam_next).probs);
        if (max_norm_distance(next, chain.states.back()) < tol) {
            chain.converged = true;
            break;
        }
        chain.states.push_back(std::move(next));
        chain.lambdas.push_back(lam_next);
        lam = lam_next;
    }
    return chain;
}

}  // namespace maxent
