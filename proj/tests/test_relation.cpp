#include <doctest.h>

#include <random>

#include "bcc/relation.hpp"

using namespace bcc;

namespace {

CenterSet make_centers(const std::vector<std::string>& rows) {
    std::vector<BinaryVector> v;
    for (const auto& r : rows) v.push_back(BinaryVector::from_string(r));
    return CenterSet(std::move(v));
}

Relation rel(std::uint32_t k, const std::vector<std::string>& tuples) {
    std::vector<std::uint32_t> masks;
    for (const auto& t : tuples) masks.push_back(RelationTuple::from_string(t).mask());
    return Relation(k, std::move(masks));
}

std::vector<std::string> tuple_strings(const Relation& r) {
    std::vector<std::string> out;
    for (std::size_t t = 0; t < r.size(); ++t) out.push_back(r.tuple(t).to_string());
    return out;
}

Relation random_relation(std::mt19937_64& gen, std::uint32_t k) {
    std::uint32_t total = 1u << k;
    std::uint32_t size = 1 + static_cast<std::uint32_t>(gen() % total);
    std::vector<std::uint32_t> all(total);
    for (std::uint32_t i = 0; i < total; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), gen);
    all.resize(size);
    return Relation(k, std::move(all));
}

}  // namespace

TEST_CASE("satisfies on the three-center two-coordinate example") {
    // c1 = (0,1), c2 = (0,0), c3 = (1,1); row patterns (0,0,1) and (1,0,1).
    CenterSet c = make_centers({"01", "00", "11"});
    RelationFamily f = RelationFamily::per_coordinate(
        {rel(3, {"001", "100"}), rel(3, {"111", "101", "001"})});
    CHECK(satisfies(c, f));
}

TEST_CASE("satisfies trivial and negative cases") {
    CenterSet c = make_centers({"10", "01"});
    CHECK(satisfies(c, RelationFamily::shared(2, Relation::full(2))));
    CenterSet ones = make_centers({"1", "1"});
    CHECK_FALSE(satisfies(ones, RelationFamily::shared(1, rel(2, {"01"}))));
    CHECK_THROWS_AS(satisfies(make_centers({"1"}), RelationFamily::shared(1, rel(2, {"01"}))),
                    std::invalid_argument);
}

TEST_CASE("project basics") {
    Relation r = rel(3, {"001", "100"});
    CHECK(tuple_strings(project(r, IndexSet({1, 3}))) == std::vector<std::string>{"01", "10"});
    CHECK(project(r, IndexSet::full(3)) == r);
    CHECK(tuple_strings(project(rel(2, {"01", "11"}), IndexSet({2}))) ==
          std::vector<std::string>{"1"});
    CHECK_THROWS_AS(project(r, IndexSet({4})), std::invalid_argument);
}

TEST_CASE("restrict basics") {
    Relation r = rel(3, {"001", "100", "111"});
    CHECK(tuple_strings(restrict(r, IndexSet({1}), RelationTuple::from_string("1"))) ==
          std::vector<std::string>{"100", "111"});
    CHECK(tuple_strings(restrict(r, IndexSet::full(3), RelationTuple::from_string("100"))) ==
          std::vector<std::string>{"100"});
    CHECK(tuple_strings(restrict(rel(2, {"01"}), IndexSet({2}), RelationTuple::from_string("1"))) ==
          std::vector<std::string>{"01"});
    CHECK_THROWS_AS(restrict(r, IndexSet({2}), RelationTuple::from_string("1")),
                    std::invalid_argument);
}

TEST_CASE("reduce basics") {
    Relation r = rel(3, {"001", "100", "111"});
    CHECK(tuple_strings(reduce(r, IndexSet({1}), RelationTuple::from_string("1"))) ==
          std::vector<std::string>{"00", "11"});
    Relation degenerate = reduce(r, IndexSet::full(3), RelationTuple::from_string("001"));
    CHECK(degenerate.arity() == 0);
    CHECK(degenerate.size() == 1);
    CHECK(tuple_strings(reduce(rel(2, {"01", "10"}), IndexSet({1}),
                               RelationTuple::from_string("0"))) ==
          std::vector<std::string>{"1"});
}

TEST_CASE("merge property: reduce tuples interleave back into R") {
    std::mt19937_64 gen(17);
    for (int rep = 0; rep < 300; ++rep) {
        std::uint32_t k = 2 + static_cast<std::uint32_t>(gen() % 5);  // up to 6
        Relation r = random_relation(gen, k);
        std::uint32_t isize = 1 + static_cast<std::uint32_t>(gen() % k);
        std::vector<std::uint32_t> pool(k);
        for (std::uint32_t i = 0; i < k; ++i) pool[i] = i + 1;
        std::shuffle(pool.begin(), pool.end(), gen);
        pool.resize(isize);
        std::sort(pool.begin(), pool.end());
        IndexSet I(pool);

        Relation proj = project(r, I);
        for (std::size_t u = 0; u < proj.size(); ++u) {
            RelationTuple ut = proj.tuple(u);
            Relation red = reduce(r, I, ut);
            Relation res = restrict(r, I, ut);
            // every merged (u, v) lands in R, and all of restrict arises this way
            std::vector<std::uint32_t> merged;
            for (std::size_t v = 0; v < red.size(); ++v) {
                RelationTuple whole = merge_tuples(k, I, ut, red.tuple(v));
                CHECK(r.contains(whole.mask()));
                merged.push_back(whole.mask());
            }
            std::sort(merged.begin(), merged.end());
            CHECK(merged == res.masks());
        }
    }
}

TEST_CASE("projection composes") {
    std::mt19937_64 gen(19);
    for (int rep = 0; rep < 200; ++rep) {
        std::uint32_t k = 3 + static_cast<std::uint32_t>(gen() % 4);
        Relation r = random_relation(gen, k);
        // choose I within [k], then J as positions within I
        std::vector<std::uint32_t> im;
        for (std::uint32_t i = 1; i <= k; ++i)
            if (gen() & 1) im.push_back(i);
        if (im.empty()) im.push_back(1);
        IndexSet I(im);
        std::vector<std::uint32_t> jm;
        for (std::uint32_t j = 1; j <= I.size(); ++j)
            if (gen() & 1) jm.push_back(j);
        if (jm.empty()) jm.push_back(1);
        IndexSet Jpos(jm);
        std::vector<std::uint32_t> composed;
        for (std::uint32_t j : Jpos.members()) composed.push_back(I[j - 1]);
        CHECK(project(project(r, I), Jpos) == project(r, IndexSet(composed)));
    }
}

TEST_CASE("reduce_family keeps shared storage only for uniform patterns") {
    RelationFamily full = RelationFamily::shared(2, Relation::full(3));
    CenterSet c = make_centers({"01"});
    RelationFamily reduced = reduce_family(full, IndexSet({1}), c);
    CHECK(reduced.arity() == 2);
    for (std::uint32_t i = 0; i < 2; ++i) CHECK(reduced.at(i).size() == 4);

    // identical pattern at all coordinates keeps the shared representation
    CenterSet zero = make_centers({"00"});
    RelationFamily shared_kept =
        reduce_family(RelationFamily::shared(2, rel(2, {"00", "01"})), IndexSet({1}), zero);
    CHECK(shared_kept.is_shared());
    CHECK(tuple_strings(shared_kept.at(0)) == std::vector<std::string>{"0", "1"});

    // mixed patterns force per-coordinate storage
    RelationFamily mixed =
        reduce_family(RelationFamily::shared(2, rel(2, {"00", "10", "11"})), IndexSet({1}), c);
    CHECK_FALSE(mixed.is_shared());
    CHECK(tuple_strings(mixed.at(0)) == std::vector<std::string>{"0"});
    CHECK(tuple_strings(mixed.at(1)) == std::vector<std::string>{"0", "1"});

    CHECK_THROWS_AS(reduce_family(RelationFamily::shared(1, rel(2, {"01"})), IndexSet({1}),
                                  make_centers({"1"})),
                    std::invalid_argument);
}

TEST_CASE("extend_solution examples") {
    Dataset x(1);
    x.add(BinaryVector::from_string("0"));

    // only completing tuple of (0) under R = {(0,1),(1,1)} is (0,1)
    RelationFamily f1 = RelationFamily::shared(1, rel(2, {"01", "11"}));
    CenterSet c1(std::vector<BinaryVector>{BinaryVector::from_string("0")},
                 std::vector<std::uint32_t>{1});
    CenterSet ext = extend_solution(x, f1, c1, IndexSet({1}));
    CHECK(ext.size() == 2);
    CHECK(ext[0].to_string() == "0");
    CHECK(ext[1].to_string() == "1");

    // already complete: unchanged
    CenterSet done = make_centers({"0", "1"});
    CenterSet same = extend_solution(x, f1, done, IndexSet::full(2));
    CHECK(same[0] == done[0]);
    CHECK(same[1] == done[1]);

    // full relation: canonical-first completion is all-zero
    Dataset x3(3);
    RelationFamily full = RelationFamily::shared(3, Relation::full(3));
    CenterSet one(std::vector<BinaryVector>{BinaryVector::from_string("101")},
                  std::vector<std::uint32_t>{2});
    CenterSet ext3 = extend_solution(x3, full, one, IndexSet({2}));
    CHECK(ext3[0].to_string() == "000");
    CHECK(ext3[1].to_string() == "101");
    CHECK(ext3[2].to_string() == "000");

    RelationFamily forced = RelationFamily::shared(1, rel(2, {"01"}));
    CHECK_THROWS_AS(extend_solution(x, forced, make_centers({"1"}), IndexSet({1})),
                    std::invalid_argument);  // pattern (1) is outside proj(R, {1}) = {(0)}
}

TEST_CASE("extend_solution always satisfies and never costs more") {
    std::mt19937_64 gen(29);
    for (int rep = 0; rep < 300; ++rep) {
        std::uint32_t k = 2 + static_cast<std::uint32_t>(gen() % 3);
        std::uint32_t m = 1 + static_cast<std::uint32_t>(gen() % 4);
        std::uint32_t n = static_cast<std::uint32_t>(gen() % 7);
        Relation shared = random_relation(gen, k);
        RelationFamily f = RelationFamily::shared(m, shared);
        Dataset x(m);
        for (std::uint32_t v = 0; v < n; ++v) {
            BinaryVector b(m);
            for (std::uint32_t i = 0; i < m; ++i) b.set(i, gen() & 1);
            x.add(b);
        }
        // build a partial solution from a random relation tuple prefix
        std::uint32_t q = 1 + static_cast<std::uint32_t>(gen() % k);
        std::vector<std::uint32_t> pool(k);
        for (std::uint32_t i = 0; i < k; ++i) pool[i] = i + 1;
        std::shuffle(pool.begin(), pool.end(), gen);
        pool.resize(q);
        std::sort(pool.begin(), pool.end());
        IndexSet I(pool);
        std::vector<BinaryVector> partial(q, BinaryVector(m));
        for (std::uint32_t i = 0; i < m; ++i) {
            RelationTuple t = shared.tuple(gen() % shared.size());
            for (std::uint32_t j = 0; j < q; ++j)
                if (t.entry(I[j])) partial[j].set(i, true);
        }
        CenterSet c(partial, I.members());
        CenterSet full = extend_solution(x, f, c, I);
        CHECK(satisfies(full, f));
        if (n > 0 && q > 0)
            CHECK(clustering_cost(x, full) <= clustering_cost(x, c));
    }
}

TEST_CASE("relation constructor rejects bad input") {
    CHECK_THROWS_AS(Relation(17, {}), std::invalid_argument);
    CHECK_THROWS_AS(Relation(2, {4}), std::invalid_argument);
    CHECK_THROWS_AS(RelationFamily::shared(2, Relation(2, {})), std::invalid_argument);
}
