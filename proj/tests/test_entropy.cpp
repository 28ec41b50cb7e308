#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "entropia/entropy.hpp"

using namespace entropia;

namespace {

// Random stochastic vector with k entries, some of them possibly zero.
std::vector<double> random_probs(std::mt19937_64& rng, int k, bool allow_zero) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(k);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        double v = u(rng);
        if (allow_zero && u(rng) < 0.2) v = 0.0;
        p[i] = v;
        sum += v;
    }
    if (sum == 0.0) {
        p[0] = 1.0;
        return p;
    }
    for (double& v : p) v /= sum;  // residual error stays well under 1e-12
    return p;
}

double reference_shannon(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
}

}  // namespace

TEST_CASE("distribution validates its probabilities") {
    CHECK_NOTHROW(Distribution({0.5, 0.5}));
    CHECK_NOTHROW(Distribution({1.0}));
    CHECK_THROWS_AS(Distribution({0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution({1.5, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution({}), std::invalid_argument);
}

TEST_CASE("distribution from counts") {
    Distribution d = Distribution::from_counts({3, 1});
    CHECK(d.probabilities()[0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(d.probabilities()[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(Distribution::from_counts({0, 0}), EmptySystemError);
    CHECK_THROWS_AS(Distribution::from_counts({3, -1}), std::invalid_argument);
}

TEST_CASE("shannon entropy closed-form cases") {
    CHECK(shannon_entropy(Distribution({1.0})) == 0.0);
    CHECK(shannon_entropy(Distribution({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(shannon_entropy(Distribution({0.25, 0.25, 0.25, 0.25})) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(shannon_entropy(Distribution({1.0, 0.0, 0.0})) == doctest::Approx(0.0));
    // H(0.9, 0.1) against an independently computed value
    CHECK(shannon_entropy(Distribution({0.9, 0.1})) ==
          doctest::Approx(0.468995593589281).epsilon(1e-12));
}

TEST_CASE("entropy property battery over random distributions") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<int> kdist(1, 12);
    for (int trial = 0; trial < 1000; ++trial) {
        int k = kdist(rng);
        auto p = random_probs(rng, k, true);
        Distribution d(p);
        double h = shannon_entropy(d);

        // 1. non-negative
        CHECK(h >= -1e-12);
        // 2. bounded by log2 k
        CHECK(h <= std::log2(static_cast<double>(k)) + 1e-9);
        // 3. matches an independent formula evaluation
        CHECK(h == doctest::Approx(reference_shannon(p)).epsilon(1e-12));
        // 4. symmetric in its arguments
        auto q = p;
        std::shuffle(q.begin(), q.end(), rng);
        CHECK(shannon_entropy(Distribution(q)) == doctest::Approx(h).epsilon(1e-12));
        // 5. expansible: a zero-probability outcome changes nothing
        auto padded = p;
        padded.push_back(0.0);
        CHECK(shannon_entropy(Distribution(padded)) == doctest::Approx(h).epsilon(1e-12));
        // 6. additive over independent products
        auto p2 = random_probs(rng, kdist(rng), false);
        Distribution d2(p2);
        Distribution joint = product_distribution(d, d2);
        CHECK(shannon_entropy(joint) ==
              doctest::Approx(h + shannon_entropy(d2)).epsilon(1e-9));
        // 7. renyi approaches shannon near alpha = 1 and equals it at 1
        CHECK(renyi_entropy(d, 1.0) == doctest::Approx(h).epsilon(1e-12));
        CHECK(renyi_entropy(d, 1.0 + 1e-7) == doctest::Approx(h).epsilon(1e-4));
        // 8. renyi is non-increasing in alpha
        double prev = renyi_entropy(d, 0.25);
        for (double alpha : {0.5, 0.75, 2.0, 4.0, 16.0}) {
            double cur = renyi_entropy(d, alpha);
            CHECK(cur <= prev + 1e-9);
            prev = cur;
        }
    }
}

TEST_CASE("joint entropy is subadditive") {
    // build correlated joints by perturbing an independent product, then
    // check H(joint) <= H(marginal1) + H(marginal2)
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> kdist(2, 5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        int k1 = kdist(rng), k2 = kdist(rng);
        Distribution a(random_probs(rng, k1, false));
        Distribution b(random_probs(rng, k2, false));
        std::vector<double> joint = product_distribution(a, b).probabilities();
        // move mass between two cells to introduce correlation
        for (int moves = 0; moves < 4; ++moves) {
            std::uniform_int_distribution<std::size_t> cell(0, joint.size() - 1);
            std::size_t from = cell(rng), to = cell(rng);
            double amount = joint[from] * u(rng);
            joint[from] -= amount;
            joint[to] += amount;
        }
        // marginals of the perturbed joint
        std::vector<double> m1(k1, 0.0), m2(k2, 0.0);
        for (int i = 0; i < k1; ++i) {
            for (int j = 0; j < k2; ++j) {
                m1[i] += joint[i * k2 + j];
                m2[j] += joint[i * k2 + j];
            }
        }
        double hj = shannon_entropy(Distribution(joint));
        double hm = shannon_entropy(Distribution(m1)) + shannon_entropy(Distribution(m2));
        CHECK(hj <= hm + 1e-9);
    }
}

TEST_CASE("renyi entropy closed forms") {
    Distribution d({0.7, 0.3});
    // high-precision references computed with 30-digit arithmetic
    CHECK(renyi_entropy(d, 0.5) == doctest::Approx(0.938485394361).epsilon(1e-10));
    CHECK(renyi_entropy(d, 2.0) == doctest::Approx(0.785875194647).epsilon(1e-10));
    CHECK(renyi_entropy(d, 1.0) == doctest::Approx(0.881290899231).epsilon(1e-10));
    CHECK(shannon_entropy(d) == doctest::Approx(0.881290899231).epsilon(1e-10));
    CHECK_THROWS_AS(renyi_entropy(d, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(renyi_entropy(d, -0.5), std::invalid_argument);
}

TEST_CASE("default threshold table bands and boundaries") {
    ThresholdTable t = ThresholdTable::nasa_satc();
    REQUIRE(t.size() == 3);
    CHECK(t.bands()[0].label == "1");
    CHECK(t.bands()[0].risk.rfind("Good", 0) == 0);
    CHECK(t.category_of(1.0) == 0);
    CHECK(t.category_of(20.0) == 0);   // boundary goes to the lower band
    CHECK(t.category_of(21.0) == 1);
    CHECK(t.category_of(100.0) == 1);
    CHECK(t.category_of(101.0) == 2);
    CHECK(t.category_of(100000.0) == 2);
    CHECK_FALSE(t.category_of(0.0).has_value());
}

TEST_CASE("threshold table rejects malformed bands") {
    CHECK_THROWS_AS(ThresholdTable({}), ThresholdConfigError);
    // gap between bands
    CHECK_THROWS_AS(ThresholdTable({{"a", 1.0, 5.0, "low"}, {"b", 7.0, std::nullopt, "hi"}}),
                    ThresholdConfigError);
    // bounded last band
    CHECK_THROWS_AS(ThresholdTable({{"a", 1.0, 5.0, "low"}, {"b", 5.0, 9.0, "hi"}}),
                    ThresholdConfigError);
    // inner band missing its upper bound
    CHECK_THROWS_AS(
        ThresholdTable({{"a", 1.0, std::nullopt, "low"}, {"b", 5.0, std::nullopt, "hi"}}),
        ThresholdConfigError);
}

TEST_CASE("categorize handles boundaries and below-table values") {
    ThresholdTable t = ThresholdTable::nasa_satc();
    Categorization c = categorize({1, 20, 21, 100, 101}, t);
    CHECK(c.distribution.counts == std::vector<long>{2, 2, 1});
    CHECK(c.warnings.empty());

    Categorization below = categorize({0, 5}, t);
    CHECK(below.distribution.counts == std::vector<long>{2, 0, 0});
    REQUIRE(below.warnings.size() == 1);

    CHECK_THROWS_AS(categorize({0.0}, t, true), ValueBelowTableError);
}

TEST_CASE("degradation scores match the published populations") {
    struct Case {
        std::vector<long> counts;
        double h, score;
    };
    // references computed with 30-digit arithmetic
    const Case cases[] = {
        {{34, 3, 1}, 0.570858458057, 21.6926214062},
        {{38, 6, 2}, 0.807670205727, 37.1528294634},
        {{105, 12, 3}, 0.633805455061, 76.0566546073},
        {{126, 7, 6}, 0.541253807833, 75.2342792888},
        {{132, 11, 4}, 0.560803150548, 82.4380631306},
    };
    for (const auto& tc : cases) {
        CAPTURE(tc.counts[0]);
        DegradationScore s = degradation_score({tc.counts});
        CHECK(s.entropy_bits == doctest::Approx(tc.h).epsilon(1e-10));
        CHECK(s.score == doctest::Approx(tc.score).epsilon(1e-9));
    }
    CHECK_THROWS_AS(degradation_score({{0, 0, 0}}), EmptySystemError);
}

TEST_CASE("single-category systems carry zero entropy") {
    DegradationScore s = degradation_score({{13, 0, 0}});
    CHECK(s.entropy_bits == 0.0);
    CHECK(s.score == 0.0);
}
