#include "maxent/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace maxent {

Observable::Observable(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2)
        throw std::invalid_argument("observable needs at least 2 outcome values");
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("observable values must be finite");
    }
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        if (!(values_[i] < values_[i + 1]))
            throw std::invalid_argument("observable values must be strictly increasing");
    }
}

ClassicalState::ClassicalState(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2)
        throw std::invalid_argument("state needs at least 2 probabilities");
    double sum = 0.0;
    for (double p : probs_) {
        if (!std::isfinite(p)) throw std::invalid_argument("state probabilities must be finite");
        if (p < 0.0) throw std::invalid_argument("state probabilities must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > sum_reject_tol)
        throw std::invalid_argument("state probabilities sum to " + std::to_string(sum) +
                                    ", outside tolerance of 1");
    if (sum != 1.0) {
        for (double& p : probs_) p /= sum;
    }
}

bool ClassicalState::is_pure() const {
    for (double p : probs_)
        if (p == 1.0) return true;
    return false;
}

ClassicalState uniform_state(std::size_t n) {
    if (n < 2) throw std::invalid_argument("uniform_state: n must be >= 2");
    return ClassicalState(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ClassicalState pure_state(std::size_t n, std::size_t i) {
    if (n < 2) throw std::invalid_argument("pure_state: n must be >= 2");
    if (i >= n) throw std::invalid_argument("pure_state: index out of range");
    std::vector<double> p(n, 0.0);
    p[i] = 1.0;
    return ClassicalState(std::move(p));
}

double expectation(const Observable& a, const ClassicalState& x) {
    if (a.size() != x.size())
        throw std::invalid_argument("expectation: observable and state lengths differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
}

double entropy(const ClassicalState& x) {
    double h = 0.0;
    for (double p : x.probs()) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

ClassicalState project(const ClassicalState& x, std::size_t i) {
    if (x.size() < 3)
        throw std::invalid_argument("project: state must have at least 3 outcomes");
    if (i >= x.size()) throw std::invalid_argument("project: index out of range");
    if (x[i] >= 1.0) throw std::domain_error("project: cannot exclude an outcome of probability 1");
    std::vector<double> rest;
    rest.reserve(x.size() - 1);
    double mass = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j == i) continue;
        rest.push_back(x[j]);
        mass += x[j];
    }
    if (mass <= 0.0) throw std::domain_error("project: remaining mass is zero");
    for (double& p : rest) p /= mass;
    return ClassicalState(std::move(rest));
}

ClassicalState sort_desc(const ClassicalState& x) {
    std::vector<double> sorted = x.probs();
    std::stable_sort(sorted.begin(), sorted.end(), std::greater<double>());
    // Bypass the normalizing constructor: a permutation must not change bits.
    return ClassicalState(std::move(sorted), ClassicalState::raw_tag{});
}

std::vector<std::size_t> sort_desc_permutation(const ClassicalState& x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&x](std::size_t i, std::size_t j) { return x[i] > x[j]; });
    return idx;
}

double max_norm_distance(const ClassicalState& x, const ClassicalState& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("max_norm_distance: state lengths differ");
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
    return d;
}

}  // namespace maxent
