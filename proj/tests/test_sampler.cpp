#include <doctest.h>

#include <cmath>

#include "bcc/sampler.hpp"

using namespace bcc;

namespace {

Relation rel(std::uint32_t k, const std::vector<std::string>& tuples) {
    std::vector<std::uint32_t> masks;
    for (const auto& t : tuples) masks.push_back(RelationTuple::from_string(t).mask());
    return Relation(k, std::move(masks));
}

Dataset make_dataset(std::uint32_t dim, const std::vector<std::string>& rows) {
    Dataset ds(dim);
    for (const auto& r : rows) ds.add(BinaryVector::from_string(r));
    return ds;
}

std::vector<std::uint32_t> all_indices(const Dataset& x) {
    std::vector<std::uint32_t> v(x.size());
    for (std::uint32_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

}  // namespace

TEST_CASE("sample_size formula") {
    CHECK(sample_size(2, 0.5, 2.0) == 16);  // 2 * 8 * log2(2)
    CHECK(sample_size(1, 0.5, 1.0) == 4);
    CHECK(sample_size(3, 1.0, 2.0) == 6);   // log term clamps to 1
    CHECK(sample_size(1, 2.0, 1.0) == 1);   // floor at 1
    CHECK_THROWS_AS(sample_size(0, 0.5, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_size(2, 0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_size(2, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("sample_multisets determinism and totals") {
    Dataset x = make_dataset(2, {"00", "01", "10", "11"});
    auto subset = all_indices(x);
    Rng a(42), b(42);
    auto s1 = sample_multisets(x, subset, 3, 100, a);
    auto s2 = sample_multisets(x, subset, 3, 100, b);
    for (std::uint32_t j = 0; j < 3; ++j) {
        CHECK(s1[j].multiplicity == s2[j].multiplicity);
        std::uint64_t total = 0;
        for (auto m : s1[j].multiplicity) total += m;
        CHECK(total == 100);
    }
    CHECK_THROWS_AS(sample_multisets(x, {}, 1, 5, a), std::invalid_argument);
}

TEST_CASE("singleton domain forces every draw") {
    Dataset x = make_dataset(3, {"101"});
    Rng rng(1);
    auto sets = sample_multisets(x, {0}, 2, 1'000'000'000'000ull, rng);
    CHECK(sets[0].multiplicity[0] == 1'000'000'000'000ull);
    CHECK(sets[1].multiplicity[0] == 1'000'000'000'000ull);
}

TEST_CASE("draw frequencies stay within five sigma of uniform") {
    Dataset x = make_dataset(1, {"0", "0", "0", "0", "1", "1", "1", "1"});
    auto subset = all_indices(x);
    Rng rng(7);
    const std::uint64_t r = 100000;
    auto sets = sample_multisets(x, subset, 1, r, rng);
    double expect = static_cast<double>(r) / 8.0;
    double sigma = std::sqrt(static_cast<double>(r) * (1.0 / 8.0) * (7.0 / 8.0));
    for (std::uint64_t got : sets[0].multiplicity) {
        CHECK(std::fabs(static_cast<double>(got) - expect) <= 5.0 * sigma);
    }
}

TEST_CASE("binomial-chain path matches the explicit path in distribution") {
    // Compare first moments over repeated draws on both sides of the
    // size threshold; the chain must look uniform too.
    Dataset x = make_dataset(1, {"0", "1", "0"});
    auto subset = all_indices(x);
    const std::uint64_t big_r = 1u << 20;  // chain path
    double sum0 = 0;
    const int reps = 200;
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng = Rng(99).derive(rep);
        auto sets = sample_multisets(x, subset, 1, big_r, rng);
        sum0 += static_cast<double>(sets[0].multiplicity[0]) / big_r;
    }
    double mean_share = sum0 / reps;
    // standard error of the mean share: sqrt(p(1-p)/r/reps) ~ 3.2e-5
    CHECK(std::fabs(mean_share - 1.0 / 3.0) < 5e-4);
}

TEST_CASE("candidate centers: forced relation yields the unique solution") {
    Dataset x = make_dataset(2, {"00", "11", "01"});
    RelationFamily f = RelationFamily::shared(2, rel(2, {"10"}));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        CenterSet c = sample_candidate_centers(x, all_indices(x), 2, f, Rational(1, 100),
                                               0.5, 2.0, WeightVector::integers({1, 1}), rng);
        CHECK(c[0].to_string() == "11");
        CHECK(c[1].to_string() == "00");
    }
}

TEST_CASE("candidate centers: constant data gives zero cost under a full relation") {
    Dataset x = make_dataset(3, {"000", "000", "000", "000"});
    RelationFamily f = RelationFamily::shared(3, Relation::full(2));
    Rng rng(5);
    CenterSet c = sample_candidate_centers(x, all_indices(x), 2, f, Rational(1, 100), 0.5,
                                           2.0, WeightVector::integers({3, 4}), rng);
    CHECK(clustering_cost(x, c) == 0);
}

TEST_CASE("candidate centers always satisfy the family") {
    Rng master(2024);
    for (int rep = 0; rep < 1000; ++rep) {
        Rng rng = master.derive(rep);
        std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.next_below(3));
        std::uint32_t m = 1 + static_cast<std::uint32_t>(rng.next_below(4));
        std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.next_below(6));
        Dataset x(m);
        for (std::uint32_t v = 0; v < n; ++v) {
            BinaryVector b(m);
            for (std::uint32_t i = 0; i < m; ++i) b.set(i, rng.next_below(2));
            x.add(b);
        }
        std::uint32_t total = 1u << k;
        std::vector<std::uint32_t> masks;
        for (std::uint32_t t = 0; t < total; ++t)
            if (rng.next_below(2)) masks.push_back(t);
        if (masks.empty()) masks.push_back(static_cast<std::uint32_t>(rng.next_below(total)));
        RelationFamily f = RelationFamily::shared(m, Relation(k, std::move(masks)));
        std::vector<std::uint64_t> w(k);
        for (auto& v : w) v = rng.next_below(10);
        std::vector<std::uint32_t> subset(n);
        for (std::uint32_t i = 0; i < n; ++i) subset[i] = i;
        CenterSet c = sample_candidate_centers(x, subset, k, f, Rational(1, 100), 0.7, 2.0,
                                               WeightVector::integers(w), rng);
        CHECK(satisfies(c, f));
    }
}

TEST_CASE("identical inputs and seed give identical candidates") {
    Dataset x = make_dataset(2, {"00", "01", "10", "11", "11"});
    RelationFamily f = RelationFamily::shared(2, Relation::full(2));
    auto subset = all_indices(x);
    Rng r1(77), r2(77);
    CenterSet a = sample_candidate_centers(x, subset, 2, f, Rational(1, 9), 0.4, 2.0,
                                           WeightVector::integers({2, 5}), r1);
    CenterSet b = sample_candidate_centers(x, subset, 2, f, Rational(1, 9), 0.4, 2.0,
                                           WeightVector::integers({2, 5}), r2);
    CHECK(a.vectors() == b.vectors());
}

TEST_CASE("derived rng streams are stable against sibling consumption") {
    Rng parent(123);
    Rng child_before = parent.derive(4);
    parent.next_u64();
    parent.next_u64();
    Rng child_after = parent.derive(4);
    CHECK(child_before.next_u64() == child_after.next_u64());
}
