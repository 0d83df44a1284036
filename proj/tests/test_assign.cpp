#include <doctest.h>

#include <random>

#include "bcc/assign.hpp"

using namespace bcc;

namespace {

Relation rel(std::uint32_t k, const std::vector<std::string>& tuples) {
    std::vector<std::uint32_t> masks;
    for (const auto& t : tuples) masks.push_back(RelationTuple::from_string(t).mask());
    return Relation(k, std::move(masks));
}

CenterSet make_centers(const std::vector<std::string>& rows) {
    std::vector<BinaryVector> v;
    for (const auto& r : rows) v.push_back(BinaryVector::from_string(r));
    return CenterSet(std::move(v));
}

Dataset make_dataset(std::uint32_t dim, const std::vector<std::string>& rows) {
    Dataset ds(dim);
    for (const auto& r : rows) ds.add(BinaryVector::from_string(r));
    return ds;
}

// Independent exhaustive scan: evaluates f_i per tuple in exact 128-bit
// arithmetic for integer weights; first minimum wins.
std::uint32_t scan_argmin_integer(const Relation& r, const std::vector<std::uint64_t>& w,
                                  const std::vector<std::uint64_t>& zeros,
                                  const std::vector<std::uint64_t>& ones) {
    std::uint32_t k = r.arity();
    __int128 best = -1;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask : r.masks()) {
        __int128 f = 0;
        for (std::uint32_t j = 0; j < k; ++j) {
            bool bj = (mask >> (k - 1 - j)) & 1u;
            f += static_cast<__int128>(w[j]) * (bj ? zeros[j] : ones[j]);
        }
        if (best < 0 || f < best) {
            best = f;
            best_mask = mask;
        }
    }
    return best_mask;
}

}  // namespace

TEST_CASE("best_centers single-coordinate example") {
    // S1: z=2, d=1; S2: z=0, d=3; unit weights. f(01) = d1 + z2 = 1, f(10) = z1 + d2 = 5.
    CoordCounts cc;
    cc.dim = 1;
    cc.zeros = {{2}, {0}};
    cc.ones = {{1}, {3}};
    RelationFamily f = RelationFamily::shared(1, rel(2, {"01", "10"}));
    CenterSet c = best_centers(cc, WeightVector::integers({1, 1}), f);
    CHECK(c[0].to_string() == "0");
    CHECK(c[1].to_string() == "1");
}

TEST_CASE("best_centers degenerate weights take the canonical-first tuple") {
    CoordCounts cc;
    cc.dim = 2;
    cc.zeros = {{5, 0}, {1, 1}};
    cc.ones = {{0, 5}, {2, 2}};
    RelationFamily f = RelationFamily::shared(2, rel(2, {"10", "11", "01"}));
    CenterSet c = best_centers(cc, WeightVector::integers({0, 0}), f);
    // all f values are zero; canonical order puts (0,1) first
    CHECK(c[0].to_string() == "00");
    CHECK(c[1].to_string() == "11");
}

TEST_CASE("best_centers forced relation ignores the counts") {
    CoordCounts cc;
    cc.dim = 3;
    cc.zeros = {{9, 0, 4}, {2, 2, 2}};
    cc.ones = {{0, 9, 4}, {7, 7, 7}};
    RelationFamily f = RelationFamily::shared(3, rel(2, {"10"}));
    CenterSet c = best_centers(cc, WeightVector::integers({5, 3}), f);
    CHECK(c[0].to_string() == "111");
    CHECK(c[1].to_string() == "000");
    CHECK(satisfies(c, f));
}

TEST_CASE("best_centers matches the independent exhaustive scan") {
    std::mt19937_64 gen(47);
    for (int rep = 0; rep < 1000; ++rep) {
        std::uint32_t k = 1 + static_cast<std::uint32_t>(gen() % 6);
        std::uint32_t m = 1 + static_cast<std::uint32_t>(gen() % 5);
        std::uint32_t total = 1u << k;
        std::uint32_t size = 1 + static_cast<std::uint32_t>(gen() % total);
        std::vector<std::uint32_t> masks(total);
        for (std::uint32_t i = 0; i < total; ++i) masks[i] = i;
        std::shuffle(masks.begin(), masks.end(), gen);
        masks.resize(size);
        RelationFamily f = RelationFamily::shared(m, Relation(k, std::move(masks)));

        CoordCounts cc;
        cc.dim = m;
        cc.zeros.assign(k, std::vector<std::uint64_t>(m));
        cc.ones.assign(k, std::vector<std::uint64_t>(m));
        for (std::uint32_t j = 0; j < k; ++j)
            for (std::uint32_t i = 0; i < m; ++i) {
                cc.zeros[j][i] = gen() % 50;
                cc.ones[j][i] = gen() % 50;
            }
        std::vector<std::uint64_t> w(k);
        for (auto& x : w) x = gen() % 100;

        std::vector<std::uint32_t> chosen;
        best_centers(cc, WeightVector::integers(w), f, &chosen);
        for (std::uint32_t i = 0; i < m; ++i) {
            std::vector<std::uint64_t> z(k), d(k);
            for (std::uint32_t j = 0; j < k; ++j) {
                z[j] = cc.zeros[j][i];
                d[j] = cc.ones[j][i];
            }
            CHECK(chosen[i] == scan_argmin_integer(f.at(i), w, z, d));
        }
    }
}

TEST_CASE("induced_partition examples and tie rule") {
    Dataset x = make_dataset(2, {"00", "01", "11"});
    Partition p = induced_partition(x, make_centers({"00", "11"}));
    CHECK(p.label == std::vector<std::int32_t>{1, 1, 2});  // 01 ties, smaller index wins

    Partition single = induced_partition(x, make_centers({"10"}));
    CHECK(single.label == std::vector<std::int32_t>{1, 1, 1});

    Dataset empty(2);
    Partition none = induced_partition(empty, make_centers({"00"}));
    CHECK(none.label.empty());

    CHECK_THROWS_AS(induced_partition(x, CenterSet{}), std::invalid_argument);
}

TEST_CASE("induced partition splits the cost") {
    std::mt19937_64 gen(53);
    for (int rep = 0; rep < 200; ++rep) {
        std::uint32_t m = 1 + static_cast<std::uint32_t>(gen() % 6);
        std::uint32_t n = 1 + static_cast<std::uint32_t>(gen() % 10);
        std::uint32_t k = 1 + static_cast<std::uint32_t>(gen() % 3);
        Dataset x(m);
        for (std::uint32_t v = 0; v < n; ++v) {
            BinaryVector b(m);
            for (std::uint32_t i = 0; i < m; ++i) b.set(i, gen() & 1);
            x.add(b);
        }
        std::vector<BinaryVector> cs;
        for (std::uint32_t j = 0; j < k; ++j) {
            BinaryVector b(m);
            for (std::uint32_t i = 0; i < m; ++i) b.set(i, gen() & 1);
            cs.push_back(b);
        }
        CenterSet c(std::move(cs));
        Partition p = induced_partition(x, c);
        CHECK(clustering_cost(x, c) == partition_cost(x, p, c));
    }
}

TEST_CASE("partition_optimal_centers majority example") {
    Dataset x = make_dataset(2, {"00", "01", "11"});
    Partition p{2, {1, 1, 2}};
    RelationFamily f = RelationFamily::shared(2, Relation::full(2));
    CenterSet c = partition_optimal_centers(x, p, f);
    CHECK(c[0].to_string() == "00");  // coord2 ties 1:1, canonical 0 wins
    CHECK(c[1].to_string() == "11");
    CHECK(partition_cost(x, p, c) == 1);

    Partition empties{2, {}};
    CenterSet canon = partition_optimal_centers(Dataset(2), empties, f);
    CHECK(canon[0].to_string() == "00");
    CHECK(canon[1].to_string() == "00");

    RelationFamily forced = RelationFamily::per_coordinate({rel(1, {"0"}), rel(1, {"0"})});
    Partition all_one{1, {1, 1, 1}};
    CenterSet zero = partition_optimal_centers(x, all_one, forced);
    CHECK(zero[0].to_string() == "00");
}

TEST_CASE("partition optimality against exhaustive center enumeration") {
    std::mt19937_64 gen(59);
    for (int rep = 0; rep < 150; ++rep) {
        std::uint32_t k = 1 + static_cast<std::uint32_t>(gen() % 3);
        std::uint32_t m = 1 + static_cast<std::uint32_t>(gen() % 4);
        std::uint32_t n = 1 + static_cast<std::uint32_t>(gen() % 8);
        std::uint32_t total = 1u << k;
        std::uint32_t size = 1 + static_cast<std::uint32_t>(gen() % total);
        std::vector<std::uint32_t> masks(total);
        for (std::uint32_t i = 0; i < total; ++i) masks[i] = i;
        std::shuffle(masks.begin(), masks.end(), gen);
        masks.resize(size);
        Relation shared(k, std::move(masks));
        RelationFamily f = RelationFamily::shared(m, shared);

        Dataset x(m);
        Partition p;
        p.cluster_count = k;
        for (std::uint32_t v = 0; v < n; ++v) {
            BinaryVector b(m);
            for (std::uint32_t i = 0; i < m; ++i) b.set(i, gen() & 1);
            x.add(b);
            p.label.push_back(1 + static_cast<std::int32_t>(gen() % k));
        }

        CenterSet chosen = partition_optimal_centers(x, p, f);
        CHECK(satisfies(chosen, f));
        std::uint64_t chosen_cost = partition_cost(x, p, chosen);

        // enumerate every satisfying center set: one relation tuple per coordinate
        std::vector<std::uint32_t> pick(m, 0);
        std::uint64_t best = UINT64_MAX;
        for (;;) {
            std::vector<BinaryVector> cs(k, BinaryVector(m));
            for (std::uint32_t i = 0; i < m; ++i) {
                RelationTuple t = shared.tuple(pick[i]);
                for (std::uint32_t j = 0; j < k; ++j)
                    if (t.entry(j + 1)) cs[j].set(i, true);
            }
            best = std::min(best, partition_cost(x, p, CenterSet(std::move(cs))));
            std::uint32_t pos = 0;
            while (pos < m && ++pick[pos] == shared.size()) pick[pos++] = 0;
            if (pos == m) break;
        }
        CHECK(chosen_cost == best);

        // reassignment never hurts
        CHECK(clustering_cost(x, chosen) <= chosen_cost);
    }
}
