#include "maxent/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

#include "maxent/numeric.hpp"

namespace maxent {

double log_partition(const Observable& a) {
    return gibbs_weights(a.values(), -1.0).log_norm;
}

EquilibriumResult equilibrium_state(const Observable& a) {
    GibbsWeights w = gibbs_weights(a.values(), -1.0);
    for (double p : w.probs) {
        if (!(p > 0.0))
            throw std::domain_error(
                "equilibrium_state: observable spread too large, state entry underflows to zero");
    }
    ClassicalState state(std::move(w.probs));
    const double functional = free_energy(a, state);
    if (std::abs(functional + w.log_norm) > 1e-10)
        throw std::logic_error("equilibrium_state: functional does not match -log_partition");
    return {std::move(state), w.log_norm, functional};
}

double free_energy(const Observable& a, const ClassicalState& x) {
    return expectation(a, x) - entropy(x);
}

}  // namespace maxent
