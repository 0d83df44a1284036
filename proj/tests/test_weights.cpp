#include <doctest.h>

#include <random>

#include "bcc/weights.hpp"

using namespace bcc;

TEST_CASE("rational normalization and division") {
    Rational r(50, 100);
    CHECK(r.num == 1);
    CHECK(r.den == 2);
    Rational d = r.divided_by(80);
    CHECK(d.num == 1);
    CHECK(d.den == 160);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("integer weighted sums compare exactly") {
    WeightVector w = WeightVector::integers({3, 0, 7});
    WeightedSumComparator cmp(w);
    CHECK(cmp.compare({1, 99, 0}, {0, 0, 0}) > 0);
    CHECK(cmp.compare({0, 5, 1}, {0, 0, 1}) == 0);  // zero weight masks the middle
    CHECK(cmp.compare({0, 0, 1}, {3, 0, 0}) < 0);   // 7 < 9
    CHECK(cmp.compare({7, 0, 0}, {0, 0, 3}) == 0);  // 21 == 21
}

TEST_CASE("geometric weights: structural ties cancel without escalation") {
    WeightVector w = WeightVector::geometric(Rational(1, 833280), {0, 5, 5, 0});
    WeightedSumComparator cmp(w);
    // equal exponents with opposite count differences cancel exactly
    CHECK(cmp.compare({4, 9, 2, 1}, {1, 2, 9, 4}) == 0);
    CHECK(cmp.compare({2, 1, 1, 1}, {1, 1, 1, 1}) > 0);
    CHECK(cmp.compare({1, 1, 1, 0}, {1, 1, 1, 2}) < 0);
}

TEST_CASE("geometric comparison agrees with exact rational arithmetic") {
    // Cross-check against a slow exact evaluation over small exponents using
    // 128-bit integers: sum coeff * (den+num)^e * den^(emax-e).
    std::mt19937_64 gen(13);
    for (int rep = 0; rep < 2000; ++rep) {
        std::uint64_t den = 1 + gen() % 50;
        std::uint64_t num = 1 + gen() % den;
        std::size_t k = 1 + gen() % 4;
        std::vector<std::uint64_t> exps(k);
        for (auto& e : exps) e = gen() % 6;
        std::vector<std::uint64_t> a(k), b(k);
        for (std::size_t j = 0; j < k; ++j) {
            a[j] = gen() % 20;
            b[j] = gen() % 20;
        }
        WeightVector w = WeightVector::geometric(Rational(num, den), exps);
        Rational delta = w.delta();
        std::uint64_t e_max = *std::max_element(w.exponents().begin(), w.exponents().end());
        __int128 total = 0;
        for (std::size_t j = 0; j < k; ++j) {
            __int128 term = static_cast<__int128>(a[j]) - static_cast<__int128>(b[j]);
            for (std::uint64_t e = 0; e < w.exponents()[j]; ++e)
                term *= static_cast<__int128>(delta.num + delta.den);
            for (std::uint64_t e = w.exponents()[j]; e < e_max; ++e)
                term *= static_cast<__int128>(delta.den);
            total += term;
        }
        int expect = total < 0 ? -1 : (total > 0 ? 1 : 0);
        CHECK(WeightedSumComparator(w).compare(a, b) == expect);
    }
}

TEST_CASE("huge-exponent near-ties resolve deterministically") {
    // Exponents in the hundred-thousands: the long double path must either
    // prove the sign or the big-integer fallback must settle it; both sides of
    // a swap must stay consistent.
    WeightVector w = WeightVector::geometric(Rational(1, 26880), {0, 240500});
    WeightedSumComparator cmp(w);
    std::vector<std::uint64_t> a{26881, 0}, b{0, 26880};
    int ab = cmp.compare(a, b);
    int ba = cmp.compare(b, a);
    CHECK(ab == -ba);
    // (1+1/26880)^240500 is about e^8.95, far above 26881/26880
    CHECK(ab < 0);
}

TEST_CASE("geometric vector rejects a zero base") {
    CHECK_THROWS_AS(WeightVector::geometric(Rational(0, 5), {0}), std::invalid_argument);
}
