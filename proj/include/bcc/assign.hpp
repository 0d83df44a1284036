#pragma once

#include <cstdint>
#include <vector>

#include "bcc/bitvec.hpp"
#include "bcc/relation.hpp"
#include "bcc/weights.hpp"

namespace bcc {

/// Cluster label per dataset vector: 1-based cluster index or kUnassigned.
inline constexpr std::int32_t kUnassigned = -1;

struct Partition {
    std::uint32_t cluster_count = 0;
    std::vector<std::int32_t> label;  // per dataset index

    std::vector<std::vector<std::uint32_t>> clusters() const {
        std::vector<std::vector<std::uint32_t>> out(cluster_count);
        for (std::uint32_t i = 0; i < label.size(); ++i)
            if (label[i] != kUnassigned)
                out[static_cast<std::uint32_t>(label[i]) - 1].push_back(i);
        return out;
    }
};

/// For each coordinate i independently, picks the relation tuple b minimizing
///   f_i(b) = sum_{j: b_j=1} w_j * zeros[j][i] + sum_{j: b_j=0} w_j * ones[j][i],
/// ties broken by canonical tuple order, and assembles the k centers
/// coordinate-wise. The result satisfies F by construction.
CenterSet best_centers(const CoordCounts& counts, const WeightVector& w,
                       const RelationFamily& f);

/// As best_centers but also reports the chosen tuple mask per coordinate.
CenterSet best_centers(const CoordCounts& counts, const WeightVector& w,
                       const RelationFamily& f, std::vector<std::uint32_t>* chosen_masks);

/// Assigns every vector to its nearest center, ties to the smallest index.
Partition induced_partition(const Dataset& x, const CenterSet& c);

/// The relation-feasible centers minimizing sum_j cost(P_j, {c_j}) for a fixed
/// partition: best_centers with the clusters as sample sets and unit weights.
CenterSet partition_optimal_centers(const Dataset& x, const Partition& p,
                                    const RelationFamily& f);

/// sum_j cost(P_j, {c_j}) for a fixed assignment (unassigned vectors ignored).
std::uint64_t partition_cost(const Dataset& x, const Partition& p, const CenterSet& c);

}  // namespace bcc
