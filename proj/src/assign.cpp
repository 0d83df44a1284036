#include "bcc/assign.hpp"

#include <stdexcept>

namespace bcc {

CenterSet best_centers(const CoordCounts& counts, const WeightVector& w,
                       const RelationFamily& f) {
    return best_centers(counts, w, f, nullptr);
}

CenterSet best_centers(const CoordCounts& counts, const WeightVector& w,
                       const RelationFamily& f, std::vector<std::uint32_t>* chosen_masks) {
    std::uint32_t k = f.arity();
    std::uint32_t m = f.coord_count();
    if (counts.set_count() != k || w.size() != k)
        throw std::invalid_argument("best_centers: counts/weights/arity mismatch");
    if (counts.dim != m)
        throw std::invalid_argument("best_centers: coordinate count mismatch");

    WeightedSumComparator cmp(w);
    std::vector<BinaryVector> centers(k, BinaryVector(m));
    if (chosen_masks) chosen_masks->assign(m, 0);

    std::vector<std::uint64_t> best_terms(k), cand_terms(k);
    for (std::uint32_t i = 0; i < m; ++i) {
        const Relation& rel = f.at(i);
        if (rel.empty())
            throw std::invalid_argument("best_centers: empty relation at a coordinate");
        auto fill_terms = [&](std::uint32_t mask, std::vector<std::uint64_t>& out) {
            for (std::uint32_t j = 0; j < k; ++j) {
                bool bj = (mask >> (k - 1 - j)) & 1u;
                out[j] = bj ? counts.zeros[j][i] : counts.ones[j][i];
            }
        };
        std::uint32_t best_mask = rel.masks()[0];
        fill_terms(best_mask, best_terms);
        for (std::size_t t = 1; t < rel.size(); ++t) {
            std::uint32_t mask = rel.masks()[t];
            fill_terms(mask, cand_terms);
            if (cmp.compare(cand_terms, best_terms) < 0) {
                best_mask = mask;
                best_terms.swap(cand_terms);
            }
        }
        for (std::uint32_t j = 0; j < k; ++j)
            if ((best_mask >> (k - 1 - j)) & 1u) centers[j].set(i, true);
        if (chosen_masks) (*chosen_masks)[i] = best_mask;
    }
    return CenterSet(std::move(centers));
}

Partition induced_partition(const Dataset& x, const CenterSet& c) {
    if (c.empty())
        throw std::invalid_argument("induced_partition: empty center set");
    Partition p;
    p.cluster_count = static_cast<std::uint32_t>(c.size());
    p.label.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        p.label[i] = static_cast<std::int32_t>(distance_to_set(x[i], c).second) + 1;
    return p;
}

CenterSet partition_optimal_centers(const Dataset& x, const Partition& p,
                                    const RelationFamily& f) {
    std::uint32_t k = f.arity();
    if (p.cluster_count != k)
        throw std::invalid_argument("partition_optimal_centers: cluster count mismatch");
    CoordCounts cc;
    cc.dim = f.coord_count();
    cc.zeros.assign(k, std::vector<std::uint64_t>(cc.dim, 0));
    cc.ones.assign(k, std::vector<std::uint64_t>(cc.dim, 0));
    for (std::size_t v = 0; v < p.label.size(); ++v) {
        if (p.label[v] == kUnassigned) continue;
        std::uint32_t j = static_cast<std::uint32_t>(p.label[v]) - 1;
        const BinaryVector& vec = x[v];
        for (std::uint32_t i = 0; i < cc.dim; ++i) {
            if (vec.get(i))
                ++cc.ones[j][i];
            else
                ++cc.zeros[j][i];
        }
    }
    return best_centers(cc, WeightVector::integers(std::vector<std::uint64_t>(k, 1)), f);
}

std::uint64_t partition_cost(const Dataset& x, const Partition& p, const CenterSet& c) {
    if (p.cluster_count != c.size())
        throw std::invalid_argument("partition_cost: cluster count mismatch");
    std::uint64_t total = 0;
    for (std::size_t v = 0; v < p.label.size(); ++v) {
        if (p.label[v] == kUnassigned) continue;
        total += hamming(x[v], c[static_cast<std::size_t>(p.label[v]) - 1]);
    }
    return total;
}

}  // namespace bcc
