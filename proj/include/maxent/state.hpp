#pragma once

#include <cstddef>
#include <vector>

namespace maxent {

/// Outcome values a_1 < a_2 < ... < a_n, n >= 2. Entries must be finite and
/// strictly increasing; anything else is rejected at construction.
class Observable {
public:
    explicit Observable(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    double min() const { return values_.front(); }
    double max() const { return values_.back(); }
    double spread() const { return values_.back() - values_.front(); }

private:
    std::vector<double> values_;
};

/// A probability distribution over n >= 2 outcomes. Entries are nonnegative
/// and the vector is renormalized at construction when its sum is within
/// 1e-9 of 1; larger deviations are rejected as user error.
class ClassicalState {
public:
    explicit ClassicalState(std::vector<double> probs);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

    bool is_pure() const;

    static constexpr double sum_reject_tol = 1e-9;

private:
    struct raw_tag {};
    ClassicalState(std::vector<double> probs, raw_tag) : probs_(std::move(probs)) {}

    friend ClassicalState sort_desc(const ClassicalState&);
    std::vector<double> probs_;
};

/// The uniform distribution (1/n, ..., 1/n), the least element of the
/// Bayesian order.
ClassicalState uniform_state(std::size_t n);

/// The point mass e_i (zero-based i).
ClassicalState pure_state(std::size_t n, std::size_t i);

/// sum_i a_i x_i. Throws std::invalid_argument on length mismatch.
double expectation(const Observable& a, const ClassicalState& x);

/// Shannon entropy -sum_i x_i log x_i (natural log, 0 log 0 = 0).
double entropy(const ClassicalState& x);

/// Bayesian projection: remove coordinate i (zero-based) and renormalize.
/// Requires n >= 3 and x_i != 1.
ClassicalState project(const ClassicalState& x, std::size_t i);

/// Entries in decreasing order; stable on ties. The multiset of entries is
/// preserved exactly (no renormalization).
ClassicalState sort_desc(const ClassicalState& x);

/// The permutation realizing sort_desc: perm[k] is the original index of the
/// k-th largest entry, stable on ties.
std::vector<std::size_t> sort_desc_permutation(const ClassicalState& x);

/// max_i |x_i - y_i|. Throws std::invalid_argument on length mismatch.
double max_norm_distance(const ClassicalState& x, const ClassicalState& y);

}  // namespace maxent
