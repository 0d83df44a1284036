#include "bcc/reductions.hpp"

#include <stdexcept>

namespace bcc {

namespace {

// Lexicographic enumeration of {0,1}^r as r-bit values with entry 1 at the
// most significant bit, matching the canonical tuple layout.
std::uint32_t lambda_count(std::uint32_t r) { return 1u << r; }

}  // namespace

Relation gf2_relation(std::uint32_t r) {
    if (r < 1)
        throw std::invalid_argument("gf2_relation: rank must be positive");
    if (r > 4 || lambda_count(r) > kMaxArity)
        throw std::invalid_argument("gf2_relation: 2^r exceeds the arity cap");
    std::uint32_t k = lambda_count(r);
    std::vector<std::uint32_t> masks;
    masks.reserve(k);
    for (std::uint32_t x = 0; x < k; ++x) {
        std::uint32_t mask = 0;
        for (std::uint32_t lam = 0; lam < k; ++lam) {
            std::uint32_t prod = static_cast<std::uint32_t>(std::popcount(x & lam)) & 1u;
            if (prod) mask |= RelationTuple::bit(k, lam + 1);
        }
        masks.push_back(mask);
    }
    return Relation(k, std::move(masks));
}

Relation boolean_relation(std::uint32_t r) {
    if (r < 1)
        throw std::invalid_argument("boolean_relation: rank must be positive");
    if (r > 4 || lambda_count(r) > kMaxArity)
        throw std::invalid_argument("boolean_relation: 2^r exceeds the arity cap");
    std::uint32_t k = lambda_count(r);
    std::vector<std::uint32_t> masks;
    masks.reserve(k);
    for (std::uint32_t x = 0; x < k; ++x) {
        std::uint32_t mask = 0;
        for (std::uint32_t lam = 0; lam < k; ++lam)
            if (x & lam) mask |= RelationTuple::bit(k, lam + 1);
        masks.push_back(mask);
    }
    return Relation(k, std::move(masks));  // constructor deduplicates
}

Relation kmeans_relation(std::uint32_t k) { return Relation::full(k); }

Relation bicluster_relation(std::uint32_t k) {
    if (k < 1 || k > kMaxArity)
        throw std::invalid_argument("bicluster_relation: invalid k");
    std::vector<std::uint32_t> masks;
    masks.reserve(k);
    for (std::uint32_t j = 1; j <= k; ++j) masks.push_back(RelationTuple::bit(k, j));
    return Relation(k, std::move(masks));
}

ClusteringInstance matrix_to_instance(const LowRankInstance& inst) {
    if (inst.a.rows() == 0 || inst.a.cols() == 0)
        throw std::invalid_argument("matrix_to_instance: empty matrix");
    ClusteringInstance out;
    out.k = lambda_count(inst.rank);
    Relation rel = inst.field == RankField::GF2 ? gf2_relation(inst.rank)
                                                : boolean_relation(inst.rank);
    out.family = RelationFamily::shared(inst.a.rows(), std::move(rel));
    out.x = Dataset(inst.a.rows());
    for (std::uint32_t c = 0; c < inst.a.cols(); ++c) out.x.add(inst.a.column(c));
    return out;
}

std::uint32_t gf2_rank(const BinaryMatrix& b) {
    std::vector<BinaryVector> basis;
    for (std::uint32_t c = 0; c < b.cols(); ++c) {
        BinaryVector v = b.column(c);
        for (const BinaryVector& bv : basis) {
            // eliminate on the leading one of bv
            std::uint32_t lead = 0;
            while (lead < bv.dim() && !bv.get(lead)) ++lead;
            if (lead < v.dim() && v.get(lead)) {
                for (std::uint32_t i = 0; i < v.dim(); ++i)
                    v.set(i, v.get(i) ^ bv.get(i));
            }
        }
        bool zero = true;
        for (std::uint32_t i = 0; i < v.dim() && zero; ++i) zero = !v.get(i);
        if (!zero) {
            basis.push_back(v);
            // keep basis in echelon form: sort by leading position
            std::sort(basis.begin(), basis.end(), [](const BinaryVector& a, const BinaryVector& c2) {
                std::uint32_t la = 0, lc = 0;
                while (la < a.dim() && !a.get(la)) ++la;
                while (lc < c2.dim() && !c2.get(lc)) ++lc;
                return la < lc;
            });
        }
    }
    return static_cast<std::uint32_t>(basis.size());
}

std::pair<BinaryMatrix, std::uint64_t>
centers_to_matrix(const LowRankInstance& inst, const CenterSet& c) {
    ClusteringInstance reduced = matrix_to_instance(inst);
    if (!satisfies(c, reduced.family))
        throw std::invalid_argument("centers_to_matrix: centers violate the instance relation");
    BinaryMatrix b(inst.a.rows(), inst.a.cols());
    std::uint64_t cost = 0;
    for (std::uint32_t j = 0; j < inst.a.cols(); ++j) {
        auto [d, arg] = distance_to_set(inst.a.column(j), c);
        b.set_column(j, c[arg]);
        cost += d;
    }
    if (inst.field == RankField::GF2 && gf2_rank(b) > inst.rank)
        throw std::logic_error("centers_to_matrix: GF(2) rank bound violated");
    return {std::move(b), cost};
}

BaselineResult best_column_baseline(const BinaryMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0)
        throw std::invalid_argument("best_column_baseline: empty matrix");
    BinaryVector zero(a.rows());
    BaselineResult best;
    bool first = true;
    for (std::uint32_t uc = 0; uc < a.cols(); ++uc) {
        const BinaryVector& u = a.column(uc);
        BinaryMatrix b(a.rows(), a.cols());
        std::uint64_t cost = 0;
        for (std::uint32_t j = 0; j < a.cols(); ++j) {
            std::uint64_t du = hamming(a.column(j), u);
            std::uint64_t dz = hamming(a.column(j), zero);
            if (du < dz) {
                b.set_column(j, u);
                cost += du;
            } else {
                cost += dz;  // column stays zero
            }
        }
        if (first || cost < best.cost) {
            best.b = std::move(b);
            best.cost = cost;
            best.column = uc + 1;
            first = false;
        }
    }
    return best;
}

}  // namespace bcc
