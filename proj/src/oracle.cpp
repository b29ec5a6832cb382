#include "maxent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace maxent {

namespace {

constexpr double kConstraintTol = 1e-9;

void require_interior(const MaxEntProblem& p, const char* who) {
    if (!p.interior())
        throw std::domain_error(std::string(who) +
                                ": target mean must lie strictly between a_1 and a_n");
}

double plain_entropy(const std::vector<double>& x) {
    double h = 0.0;
    for (double p : x)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

// Enumerate compositions of `resolution` into n nonnegative parts.
template <typename Visit>
void for_each_composition(int resolution, int n, Visit&& visit) {
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    // counts[0..n-2] chosen by nested descent, last coordinate forced.
    std::vector<int> remaining(static_cast<std::size_t>(n), resolution);
    int level = 0;
    counts[0] = -1;
    while (level >= 0) {
        if (level == n - 1) {
            counts[static_cast<std::size_t>(level)] = remaining[static_cast<std::size_t>(level)];
            visit(counts);
            --level;
            continue;
        }
        ++counts[static_cast<std::size_t>(level)];
        if (counts[static_cast<std::size_t>(level)] > remaining[static_cast<std::size_t>(level)]) {
            --level;
            continue;
        }
        remaining[static_cast<std::size_t>(level + 1)] =
            remaining[static_cast<std::size_t>(level)] - counts[static_cast<std::size_t>(level)];
        ++level;
        counts[static_cast<std::size_t>(level)] = -1;
    }
}

std::vector<double> dirichlet_uniform(std::size_t n, std::mt19937_64& rng) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> x(n);
    double s = 0.0;
    for (double& xi : x) {
        xi = exp1(rng);
        s += xi;
    }
    for (double& xi : x) xi /= s;
    return x;
}

// Move x along the mean-zero direction a - abar so that <a|x> = E. Keeps
// sum(x) = 1; may leave the nonnegativity cone.
void project_to_mean(std::vector<double>& x, const std::vector<double>& a, double target) {
    const std::size_t n = a.size();
    double abar = 0.0;
    for (double ai : a) abar += ai;
    abar /= static_cast<double>(n);
    double ad = 0.0, ax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ad += a[i] * (a[i] - abar);
        ax += a[i] * x[i];
    }
    const double t = (target - ax) / ad;
    for (std::size_t i = 0; i < n; ++i) x[i] += t * (a[i] - abar);
}

// Vertices of {x in simplex : <a|x> = E}: all two-point states on outcome
// pairs straddling E.
std::vector<std::vector<double>> slice_vertices(const Observable& a, double target) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> verts;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a[i] <= target && target <= a[j]) {
                std::vector<double> v(n, 0.0);
                const double t = (a[j] - target) / (a[j] - a[i]);
                v[i] = t;
                v[j] = 1.0 - t;
                verts.push_back(std::move(v));
            }
        }
    }
    return verts;
}

}  // namespace

void GridSpec::validate() const {
    if (resolution < 10) throw std::invalid_argument("grid resolution must be at least 10");
    if (dimension < 2 || dimension > 4)
        throw std::invalid_argument("grid oracle supports 2 <= n <= 4 only");
}

ClassicalState oracle_maxent_grid(const MaxEntProblem& p, const GridSpec& g) {
    g.validate();
    require_interior(p, "oracle_maxent_grid");
    const std::size_t n = p.size();
    if (n != static_cast<std::size_t>(g.dimension))
        throw std::invalid_argument("oracle_maxent_grid: grid dimension does not match observable");

    const std::vector<double>& a = p.observable().values();
    const double slack = p.observable().spread() / g.resolution;
    const double inv_r = 1.0 / g.resolution;

    // Candidates are grid points near the constraint, each repaired onto the
    // exact mean (same move as the sampler) so the winner is genuinely
    // feasible and its entropy a true lower bound for the optimum. Raw band
    // points would overshoot: entropy is concave in the mean, so the band
    // edge toward the plain average beats the exact-E optimum by about
    // |lambda| * slack, which would defeat the validation.
    double best_entropy = -1.0;
    std::vector<double> best;
    std::vector<double> x(n);
    for_each_composition(g.resolution, static_cast<int>(n), [&](const std::vector<int>& counts) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += a[i] * counts[i];
        mean *= inv_r;
        if (std::abs(mean - p.target_mean()) > slack) return;
        for (std::size_t i = 0; i < n; ++i) x[i] = counts[i] * inv_r;
        project_to_mean(x, a, p.target_mean());
        for (double xi : x)
            if (xi < 0.0) return;
        const double h = plain_entropy(x);
        if (h > best_entropy) {
            best_entropy = h;
            best = x;
        }
    });
    if (best.empty())
        throw OracleError(
            "oracle_maxent_grid: no grid point meets the constraint (resolution too coarse)");
    return ClassicalState(std::move(best));
}

double oracle_lambda_n2(const MaxEntProblem& p) {
    if (p.size() != 2) throw std::invalid_argument("oracle_lambda_n2: observable must have n = 2");
    require_interior(p, "oracle_lambda_n2");
    const Observable& a = p.observable();
    const double e = p.target_mean();
    return std::log((e - a[0]) / (a[1] - e)) / (a[1] - a[0]);
}

std::vector<ClassicalState> constrained_sampler(const MaxEntProblem& p, int count,
                                                std::uint64_t seed) {
    require_interior(p, "constrained_sampler");
    if (count < 1) throw std::invalid_argument("constrained_sampler: count must be at least 1");

    const std::vector<double>& a = p.observable().values();
    const double target = p.target_mean();
    const std::size_t n = a.size();
    std::mt19937_64 rng(seed);

    const int rejection_tries = 200;
    std::vector<std::vector<double>> verts;  // built lazily for the fallback

    std::vector<ClassicalState> out;
    out.reserve(static_cast<std::size_t>(count));
    while (out.size() < static_cast<std::size_t>(count)) {
        bool accepted = false;
        for (int attempt = 0; attempt < rejection_tries && !accepted; ++attempt) {
            std::vector<double> x = dirichlet_uniform(n, rng);
            project_to_mean(x, a, target);
            if (std::any_of(x.begin(), x.end(), [](double v) { return v < 0.0; })) continue;
            ClassicalState s(std::move(x));
            if (std::abs(expectation(p.observable(), s) - target) > kConstraintTol) continue;
            out.push_back(std::move(s));
            accepted = true;
        }
        if (accepted) continue;

        // Near-boundary targets can starve plain rejection; mix the slice's
        // vertices instead, which is feasible by construction.
        if (verts.empty()) verts = slice_vertices(p.observable(), target);
        bool fallback_ok = false;
        for (int attempt = 0; attempt < rejection_tries && !fallback_ok; ++attempt) {
            std::vector<double> w = dirichlet_uniform(verts.size(), rng);
            std::vector<double> x(n, 0.0);
            for (std::size_t k = 0; k < verts.size(); ++k)
                for (std::size_t i = 0; i < n; ++i) x[i] += w[k] * verts[k][i];
            project_to_mean(x, a, target);
            for (double& xi : x) xi = std::max(xi, 0.0);
            ClassicalState s(std::move(x));
            if (std::abs(expectation(p.observable(), s) - target) > kConstraintTol) continue;
            out.push_back(std::move(s));
            fallback_ok = true;
        }
        if (!fallback_ok)
            throw OracleError("constrained_sampler: retry budget exhausted");
    }
    return out;
}

}  // namespace maxent
