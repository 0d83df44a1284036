#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bcc {

/// Binary vector of fixed dimension, one bit per coordinate, packed into
/// 64-bit words. Bits past position dim-1 are kept at zero so whole-word
/// popcounts are exact.
class BinaryVector {
public:
    BinaryVector() = default;

    explicit BinaryVector(std::uint32_t dim)
        : dim_(dim), words_((dim + 63) / 64, 0) {}

    /// Parses a string of '0'/'1' characters, position p -> coordinate p.
    static BinaryVector from_string(const std::string& s) {
        BinaryVector v(static_cast<std::uint32_t>(s.size()));
        for (std::uint32_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                v.set(i, true);
            } else if (s[i] != '0') {
                throw std::invalid_argument("binary vector string must contain only 0/1");
            }
        }
        return v;
    }

    std::uint32_t dim() const { return dim_; }
    std::size_t word_count() const { return words_.size(); }
    const std::uint64_t* words() const { return words_.data(); }

    bool get(std::uint32_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::uint32_t i, bool value) {
        if (value)
            words_[i >> 6] |= (std::uint64_t{1} << (i & 63));
        else
            words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    std::string to_string() const {
        std::string s(dim_, '0');
        for (std::uint32_t i = 0; i < dim_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    bool operator==(const BinaryVector& o) const {
        return dim_ == o.dim_ && words_ == o.words_;
    }
    bool operator!=(const BinaryVector& o) const { return !(*this == o); }

private:
    std::uint32_t dim_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Hamming distance between two vectors of equal dimension.
inline std::uint64_t hamming(const BinaryVector& x, const BinaryVector& y) {
    if (x.dim() != y.dim())
        throw std::invalid_argument("hamming: dimension mismatch");
    std::uint64_t d = 0;
    const std::uint64_t* a = x.words();
    const std::uint64_t* b = y.words();
    for (std::size_t w = 0; w < x.word_count(); ++w)
        d += static_cast<std::uint64_t>(std::popcount(a[w] ^ b[w]));
    return d;
}

/// Ordered list of equal-dimension binary vectors with stable indices.
/// Duplicates are allowed (multiset semantics).
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::uint32_t dim) : dim_(dim) {}

    std::uint32_t dim() const { return dim_; }
    std::size_t size() const { return vecs_.size(); }
    bool empty() const { return vecs_.empty(); }
    const BinaryVector& operator[](std::size_t i) const { return vecs_[i]; }
    const std::vector<BinaryVector>& vectors() const { return vecs_; }

    void add(BinaryVector v) {
        if (v.dim() != dim_)
            throw std::invalid_argument("Dataset::add: dimension mismatch");
        vecs_.push_back(std::move(v));
    }

private:
    std::uint32_t dim_ = 0;
    std::vector<BinaryVector> vecs_;
};

/// A set of at most k candidate cluster centers together with the sorted
/// 1-based cluster indices they occupy. vectors()[j] occupies indices()[j].
class CenterSet {
public:
    CenterSet() = default;

    /// Full center set occupying indices 1..vecs.size().
    explicit CenterSet(std::vector<BinaryVector> vecs) : vecs_(std::move(vecs)) {
        idx_.resize(vecs_.size());
        for (std::uint32_t j = 0; j < idx_.size(); ++j) idx_[j] = j + 1;
        check();
    }

    CenterSet(std::vector<BinaryVector> vecs, std::vector<std::uint32_t> indices)
        : vecs_(std::move(vecs)), idx_(std::move(indices)) {
        if (vecs_.size() != idx_.size())
            throw std::invalid_argument("CenterSet: centers/indices size mismatch");
        for (std::size_t j = 1; j < idx_.size(); ++j)
            if (idx_[j - 1] >= idx_[j])
                throw std::invalid_argument("CenterSet: indices must be strictly increasing");
        if (!idx_.empty() && idx_.front() == 0)
            throw std::invalid_argument("CenterSet: indices are 1-based");
        check();
    }

    std::size_t size() const { return vecs_.size(); }
    bool empty() const { return vecs_.empty(); }
    std::uint32_t dim() const { return vecs_.empty() ? 0 : vecs_[0].dim(); }
    const std::vector<BinaryVector>& vectors() const { return vecs_; }
    const std::vector<std::uint32_t>& indices() const { return idx_; }
    const BinaryVector& operator[](std::size_t j) const { return vecs_[j]; }

private:
    void check() const {
        for (const auto& v : vecs_)
            if (v.dim() != dim())
                throw std::invalid_argument("CenterSet: mixed dimensions");
    }

    std::vector<BinaryVector> vecs_;
    std::vector<std::uint32_t> idx_;
};

/// Minimum Hamming distance from x to any center, together with the smallest
/// 0-based center position attaining it.
inline std::pair<std::uint64_t, std::uint32_t>
distance_to_set(const BinaryVector& x, const CenterSet& c) {
    if (c.empty())
        throw std::invalid_argument("distance_to_set: empty center set");
    std::uint64_t best = hamming(x, c[0]);
    std::uint32_t arg = 0;
    for (std::uint32_t j = 1; j < c.size(); ++j) {
        std::uint64_t d = hamming(x, c[j]);
        if (d < best) {
            best = d;
            arg = j;
        }
    }
    return {best, arg};
}

/// Total clustering cost: sum over x in X of the distance to the nearest center.
inline std::uint64_t clustering_cost(const Dataset& x, const CenterSet& c) {
    if (c.empty())
        throw std::invalid_argument("clustering_cost: empty center set");
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        total += distance_to_set(x[i], c).first;
    return total;
}

/// Per-coordinate zero/one tallies for a list of sample multisets.
/// zeros[j][i] + ones[j][i] equals the size of multiset j for every i.
struct CoordCounts {
    std::uint32_t dim = 0;
    std::vector<std::vector<std::uint64_t>> zeros;  // [set][coordinate]
    std::vector<std::vector<std::uint64_t>> ones;

    std::size_t set_count() const { return zeros.size(); }
};

/// A multiset over a subset of a dataset, stored as multiplicities. The
/// positions vector selects dataset indices; multiplicity[s] counts how many
/// times vector positions[s] occurs.
struct Multiset {
    std::vector<std::uint64_t> multiplicity;  // parallel to the subset it was drawn over
    std::uint64_t total = 0;
};

/// Exact per-coordinate tallies for k multisets drawn over X restricted to
/// `subset` (dataset indices). Empty multisets yield all-zero tallies.
CoordCounts coordinate_counts(const Dataset& x,
                              const std::vector<std::uint32_t>& subset,
                              const std::vector<Multiset>& sets);

/// Convenience overload for explicit vector multisets (test and oracle paths).
CoordCounts coordinate_counts(const std::vector<std::vector<BinaryVector>>& sets,
                              std::uint32_t dim);

}  // namespace bcc
