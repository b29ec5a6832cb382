#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "maxent/state.hpp"
#include "support/generators.hpp"

using maxent::ClassicalState;
using maxent::Observable;

TEST_CASE("observable validation") {
    CHECK_NOTHROW(Observable({0.0, 1.0}));
    CHECK_THROWS_AS(Observable({0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(Observable({1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Observable({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Observable({}), std::invalid_argument);
    CHECK_THROWS_AS(Observable({0.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(Observable({0.0, std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
}

TEST_CASE("state validation and renormalization") {
    CHECK_THROWS_AS(ClassicalState({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ClassicalState({0.5, -0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ClassicalState({0.6, 0.6}), std::invalid_argument);  // sum 1.2
    CHECK_THROWS_AS(ClassicalState({0.5, 0.5 + 1e-6}), std::invalid_argument);

    // Drift within 1e-9 is absorbed.
    ClassicalState s({0.5, 0.5 + 1e-10});
    double sum = 0.0;
    for (double p : s.probs()) sum += p;
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    ClassicalState pure({1.0, 0.0, 0.0});
    CHECK(pure.is_pure());
    CHECK(!maxent::uniform_state(3).is_pure());
}

TEST_CASE("expectation examples") {
    Observable die({1, 2, 3, 4, 5, 6});
    CHECK(maxent::expectation(die, maxent::uniform_state(6)) == doctest::Approx(3.5).epsilon(1e-12));

    Observable ab({0.0, 1.0});
    CHECK(maxent::expectation(ab, ClassicalState({1.0, 0.0})) == 0.0);

    // State from the two-largest-roots closed form for a=(0,1,2), E=1/2.
    Observable a012({0.0, 1.0, 2.0});
    ClassicalState quad({0.61621, 0.26759, 0.11620});
    CHECK(std::abs(maxent::expectation(a012, quad) - 0.5) <= 1e-4);

    CHECK_THROWS_AS(maxent::expectation(ab, maxent::uniform_state(3)), std::invalid_argument);
}

TEST_CASE("entropy examples") {
    CHECK(maxent::entropy(ClassicalState({1.0, 0.0, 0.0})) == 0.0);
    CHECK(maxent::entropy(maxent::uniform_state(2)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // Closed form: 1/2 log 2 + 2 * (1/4) log 4 = 3/2 log 2.
    CHECK(std::abs(maxent::entropy(ClassicalState({0.5, 0.25, 0.25})) - 1.5 * std::log(2.0)) <=
          1e-12);
}

TEST_CASE("projection examples and errors") {
    ClassicalState x({0.5, 0.25, 0.25});
    ClassicalState p3 = maxent::project(x, 2);
    CHECK(p3[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(p3[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    ClassicalState u = maxent::uniform_state(3);
    ClassicalState pu = maxent::project(u, 0);
    CHECK(pu[0] == doctest::Approx(0.5).epsilon(1e-14));

    ClassicalState y({0.7, 0.2, 0.1});
    ClassicalState py = maxent::project(y, 1);
    CHECK(py[0] == doctest::Approx(0.875).epsilon(1e-14));
    CHECK(py[1] == doctest::Approx(0.125).epsilon(1e-14));

    CHECK_THROWS_AS(maxent::project(ClassicalState({1.0, 0.0, 0.0}), 0), std::domain_error);
    CHECK_THROWS_AS(maxent::project(ClassicalState({0.5, 0.5}), 0), std::invalid_argument);
}

TEST_CASE("sort_desc examples, stability, idempotence") {
    ClassicalState a({0.1, 0.6, 0.3});
    ClassicalState sa = maxent::sort_desc(a);
    CHECK(sa[0] == 0.6);
    CHECK(sa[1] == 0.3);
    CHECK(sa[2] == 0.1);

    ClassicalState u = maxent::uniform_state(3);
    ClassicalState su = maxent::sort_desc(u);
    for (std::size_t i = 0; i < 3; ++i) CHECK(su[i] == u[i]);

    ClassicalState b({0.25, 0.5, 0.25});
    ClassicalState sb = maxent::sort_desc(b);
    CHECK(sb[0] == 0.5);
    CHECK(sb[1] == 0.25);
    CHECK(sb[2] == 0.25);
    // Stable: the tied entries keep their original relative order.
    auto perm = maxent::sort_desc_permutation(b);
    CHECK(perm == std::vector<std::size_t>{1, 0, 2});

    testgen::Rng rng(7001);
    for (int t = 0; t < 100; ++t) {
        ClassicalState x = testgen::random_state(rng, 2 + t % 7);
        ClassicalState s1 = maxent::sort_desc(x);
        ClassicalState s2 = maxent::sort_desc(s1);
        // Idempotent, and a permutation: multisets agree bitwise.
        std::multiset<double> mx(x.probs().begin(), x.probs().end());
        std::multiset<double> ms(s1.probs().begin(), s1.probs().end());
        CHECK(mx == ms);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(s1[i] == s2[i]);
        for (std::size_t i = 0; i + 1 < x.size(); ++i) CHECK(s1[i] >= s1[i + 1]);
    }
}

TEST_CASE("entropy bounds with equality characterization") {
    testgen::Rng rng(7002);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + t % 7;
        ClassicalState x = testgen::random_state(rng, n);
        const double h = maxent::entropy(x);
        CHECK(h >= 0.0);
        CHECK(h <= std::log(static_cast<double>(n)) + 1e-12);
    }
    for (std::size_t n = 2; n <= 8; ++n) {
        CHECK(std::abs(maxent::entropy(maxent::uniform_state(n)) -
                       std::log(static_cast<double>(n))) <= 1e-12);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(maxent::entropy(maxent::pure_state(n, i)) == 0.0);
    }
}

TEST_CASE("projection splits entropy into excluded-outcome and remainder parts") {
    testgen::Rng rng(7003);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 3 + t % 6;
        ClassicalState x = testgen::random_state(rng, n);
        const double hx = maxent::entropy(x);
        for (std::size_t k = 0; k < n; ++k) {
            if (x[k] >= 1.0) continue;
            const double lhs = hx;
            const double rhs = (1.0 - x[k]) * maxent::entropy(maxent::project(x, k)) +
                               maxent::entropy(ClassicalState({x[k], 1.0 - x[k]}));
            CHECK(std::abs(lhs - rhs) <= 1e-12);
        }
    }
}

TEST_CASE("uniform expectation is the plain average") {
    testgen::Rng rng(7004);
    for (int t = 0; t < 50; ++t) {
        maxent::Observable a = testgen::random_observable(rng);
        double mean = 0.0;
        for (double v : a.values()) mean += v;
        mean /= static_cast<double>(a.size());
        CHECK(std::abs(maxent::expectation(a, maxent::uniform_state(a.size())) - mean) <= 1e-12);
    }
}
