#include "bcc/bitvec.hpp"

namespace bcc {

CoordCounts coordinate_counts(const Dataset& x,
                              const std::vector<std::uint32_t>& subset,
                              const std::vector<Multiset>& sets) {
    CoordCounts cc;
    cc.dim = x.dim();
    cc.zeros.assign(sets.size(), std::vector<std::uint64_t>(cc.dim, 0));
    cc.ones.assign(sets.size(), std::vector<std::uint64_t>(cc.dim, 0));
    for (std::size_t j = 0; j < sets.size(); ++j) {
        const Multiset& ms = sets[j];
        if (ms.multiplicity.size() != subset.size())
            throw std::invalid_argument("coordinate_counts: multiplicity/subset size mismatch");
        auto& ones = cc.ones[j];
        for (std::size_t s = 0; s < subset.size(); ++s) {
            std::uint64_t mult = ms.multiplicity[s];
            if (mult == 0) continue;
            const BinaryVector& v = x[subset[s]];
            for (std::uint32_t i = 0; i < cc.dim; ++i)
                if (v.get(i)) ones[i] += mult;
        }
        auto& zeros = cc.zeros[j];
        for (std::uint32_t i = 0; i < cc.dim; ++i)
            zeros[i] = ms.total - ones[i];
    }
    return cc;
}

CoordCounts coordinate_counts(const std::vector<std::vector<BinaryVector>>& sets,
                              std::uint32_t dim) {
    CoordCounts cc;
    cc.dim = dim;
    cc.zeros.assign(sets.size(), std::vector<std::uint64_t>(dim, 0));
    cc.ones.assign(sets.size(), std::vector<std::uint64_t>(dim, 0));
    for (std::size_t j = 0; j < sets.size(); ++j) {
        for (const BinaryVector& v : sets[j]) {
            if (v.dim() != dim)
                throw std::invalid_argument("coordinate_counts: dimension mismatch");
            for (std::uint32_t i = 0; i < dim; ++i) {
                if (v.get(i))
                    ++cc.ones[j][i];
                else
                    ++cc.zeros[j][i];
            }
        }
    }
    return cc;
}

}  // namespace bcc
