#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "maxent/lagrange.hpp"
#include "maxent/state.hpp"

namespace maxent {

/// Outcome of a Bayesian-order comparison. When the symmetric method relates
/// the states, witness_permutation[k] gives the original index of the k-th
/// position of an arrangement putting both states into decreasing order and
/// satisfying the cross-product inequalities.
struct OrderVerdict {
    bool related = false;
    std::optional<std::vector<std::size_t>> witness_permutation;
};

inline constexpr double default_order_tol = 1e-12;

/// Decide x <= y in the Bayesian order via the symmetric formulation: find a
/// permutation placing both states in decreasing order and check
/// x_i y_{i+1} <= x_{i+1} y_i along it. Stable-sorting by (x desc, y desc)
/// is canonical: if that arrangement fails, every arrangement does.
OrderVerdict leq_symmetric(const ClassicalState& x, const ClassicalState& y,
                           double tol = default_order_tol);

/// Decide x <= y by the recursive definition: project away each outcome both
/// states admit and recurse, bottoming out at the two-outcome interval test.
/// Exponential in n; rejected for n > 6.
bool leq_projective(const ClassicalState& x, const ClassicalState& y,
                    double tol = default_order_tol);

/// The scalar lambda(x) attached to a state: log of the ratio of its two
/// largest entries over a fixed spacing of the observable, the spacing chosen
/// by the sign of if_step(0). Pure states map to +/-infinity.
struct LambdaValue {
    double value;
};

LambdaValue lambda_functional(const ClassicalState& x, const MaxEntProblem& p);

/// One update of the state-space map: softmax(if_step(lambda(x)) * a). For
/// pure x the limit state e_n (positive branch) or e_1 is returned.
ClassicalState phi(const ClassicalState& x, const MaxEntProblem& p);

/// The iteration of phi from the uniform state. states[k] is the k-th
/// iterate and lambdas[k] the k-th iterate of if_step from 0 (the two
/// sequences coincide by construction). converged is false when max_steps ran
/// out before successive states got within tol in max norm.
struct PhiChain {
    std::vector<ClassicalState> states;
    std::vector<double> lambdas;
    bool converged = false;
};

PhiChain phi_chain(const MaxEntProblem& p, long max_steps, double tol = 1e-12);

}  // namespace maxent
