#pragma once

#include "maxent/state.hpp"

namespace maxent {

/// The Boltzmann state of an observable together with the log of its
/// normalizing sum and the value of the free-energy functional there.
struct EquilibriumResult {
    ClassicalState state;
    double log_partition;     // log sum_i e^{-a_i}
    double functional_value;  // <a|state> - entropy(state), equals -log_partition
};

/// log sum_i e^{-a_i}, max-shifted so it stays finite over the full double
/// range of the a_i.
double log_partition(const Observable& a);

/// The unique minimizer of x -> <a|x> - entropy(x): state_i = e^{-a_i}/Za.
EquilibriumResult equilibrium_state(const Observable& a);

/// <a|x> - entropy(x). Throws std::invalid_argument on length mismatch.
double free_energy(const Observable& a, const ClassicalState& x);

}  // namespace maxent
