#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace maxent {

// log(sum_i exp(v[i])), shifted by the max so no term overflows.
inline double log_sum_exp(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("log_sum_exp: empty input");
    const double m = *std::max_element(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

struct GibbsWeights {
    std::vector<double> probs;  // e^{t a_i} / sum_j e^{t a_j}
    double log_norm;            // log sum_j e^{t a_j}
};

// Normalized exponential weights e^{t a_i}, max-shifted. t must be finite.
inline GibbsWeights gibbs_weights(std::span<const double> a, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("gibbs_weights: non-finite exponent");
    if (a.empty()) throw std::invalid_argument("gibbs_weights: empty input");
    double m = t * a[0];
    for (double ai : a) m = std::max(m, t * ai);
    std::vector<double> w(a.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        w[i] = std::exp(t * a[i] - m);
        s += w[i];
    }
    for (double& wi : w) wi /= s;
    return {std::move(w), m + std::log(s)};
}

}  // namespace maxent
