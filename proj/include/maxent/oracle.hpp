#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "maxent/lagrange.hpp"
#include "maxent/state.hpp"

namespace maxent {

/// Desk-scale brute-force references, kept deliberately independent of the
/// solver: a simplex-grid entropy maximizer, the two-outcome closed form, and
/// a constrained sampler for optimality spot checks.

struct GridSpec {
    int resolution = 200;  // grid points per simplex edge, >= 10
    int dimension = 2;     // n, between 2 and 4

    void validate() const;
};

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Enumerate all grid states (k_1/R, ..., k_n/R) whose mean is within
/// (a_n - a_1)/R of E, repair each onto the exact constraint (dropping those
/// the repair pushes off the simplex), and return the repaired state of
/// maximal entropy. The result is feasible, so its entropy never exceeds the
/// true optimum, and it lies within O(1/R) of the optimizer.
ClassicalState oracle_maxent_grid(const MaxEntProblem& p, const GridSpec& g);

/// Exact multiplier for n = 2: log((E - a_1)/(a_2 - E)) / (a_2 - a_1).
/// Requires a_1 < E < a_2.
double oracle_lambda_n2(const MaxEntProblem& p);

/// Random states satisfying |<a|x> - E| <= 1e-9, produced by projecting
/// simplex samples onto the mean constraint and rejecting those that leave
/// the simplex. Stubborn draws fall back to convex combinations of the
/// constraint polytope's vertices so the call always terminates. Reproducible
/// for a fixed seed.
std::vector<ClassicalState> constrained_sampler(const MaxEntProblem& p, int count,
                                                std::uint64_t seed);

}  // namespace maxent
