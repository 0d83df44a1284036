#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bcc/bitvec.hpp"
#include "bcc/relation.hpp"

namespace bcc {

/// 0/1 matrix stored column-major: columns are the clustering points.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::uint32_t rows, std::uint32_t cols)
        : rows_(rows), cols_(cols), columns_(cols, BinaryVector(rows)) {}

    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }

    bool get(std::uint32_t r, std::uint32_t c) const { return columns_[c].get(r); }
    void set(std::uint32_t r, std::uint32_t c, bool v) { columns_[c].set(r, v); }

    const BinaryVector& column(std::uint32_t c) const { return columns_[c]; }
    void set_column(std::uint32_t c, BinaryVector v) {
        if (v.dim() != rows_)
            throw std::invalid_argument("BinaryMatrix::set_column: dimension mismatch");
        columns_[c] = std::move(v);
    }

    bool operator==(const BinaryMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && columns_ == o.columns_;
    }

private:
    std::uint32_t rows_ = 0, cols_ = 0;
    std::vector<BinaryVector> columns_;
};

enum class RankField { GF2, Boolean };

struct LowRankInstance {
    BinaryMatrix a;
    std::uint32_t rank = 1;
    RankField field = RankField::GF2;
};

/// Relation of arity 2^r whose tuples are the GF(2) inner products of each
/// x in {0,1}^r against all vectors of {0,1}^r in lexicographic order: the
/// column patterns realizable by a rank-<=r matrix.
Relation gf2_relation(std::uint32_t r);

/// Same construction over the Boolean semiring (AND/OR); duplicates collapse.
Relation boolean_relation(std::uint32_t r);

/// The unconstrained relation {0,1}^k.
Relation kmeans_relation(std::uint32_t k);

/// The k one-hot tuples.
Relation bicluster_relation(std::uint32_t k);

struct ClusteringInstance {
    Dataset x;
    std::uint32_t k = 0;
    RelationFamily family;
};

/// Columns of A as points, k = 2^rank, shared field relation per row.
ClusteringInstance matrix_to_instance(const LowRankInstance& inst);

/// Approximating matrix whose column j is the center nearest to A's column j
/// (ties to the smallest center index) and its squared Frobenius error, which
/// equals the clustering cost of the centers on A's columns. C must satisfy
/// the instance relation; for GF(2) the rank bound of the result is asserted
/// by elimination.
std::pair<BinaryMatrix, std::uint64_t>
centers_to_matrix(const LowRankInstance& inst, const CenterSet& c);

/// GF(2) rank of the column span via Gaussian elimination.
std::uint32_t gf2_rank(const BinaryMatrix& b);

struct BaselineResult {
    BinaryMatrix b;
    std::uint64_t cost = 0;
    std::uint32_t column = 0;  // 1-based chosen column
};

/// Rank-1 best-column baseline: for each column u of A build the candidate
/// with column j equal to u when u beats the zero column on a_j (ties to
/// zero), and keep the cheapest candidate.
BaselineResult best_column_baseline(const BinaryMatrix& a);

}  // namespace bcc
