#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "bcc/bitvec.hpp"

namespace bcc {

/// Largest supported relation arity. Tuples are stored as machine-word masks,
/// so relations have at most 2^kMaxArity tuples.
inline constexpr std::uint32_t kMaxArity = 16;

/// One k-ary 0/1 tuple, stored as a k-bit mask with entry 1 at the most
/// significant position (bit k-1) and entry k at bit 0. With that layout the
/// integer order of masks is the canonical order used everywhere for
/// tie-breaking: lexicographic, comparing entry 1 first.
class RelationTuple {
public:
    RelationTuple() = default;
    RelationTuple(std::uint32_t arity, std::uint32_t mask) : arity_(arity), mask_(mask) {}

    static RelationTuple from_entries(const std::vector<int>& entries) {
        RelationTuple t;
        t.arity_ = static_cast<std::uint32_t>(entries.size());
        for (std::size_t j = 0; j < entries.size(); ++j)
            if (entries[j]) t.mask_ |= bit(t.arity_, static_cast<std::uint32_t>(j + 1));
        return t;
    }

    static RelationTuple from_string(const std::string& s);

    std::uint32_t arity() const { return arity_; }
    std::uint32_t mask() const { return mask_; }

    /// Entry at 1-based position j.
    bool entry(std::uint32_t j) const { return (mask_ >> (arity_ - j)) & 1u; }

    std::string to_string() const {
        std::string s(arity_, '0');
        for (std::uint32_t j = 1; j <= arity_; ++j)
            if (entry(j)) s[j - 1] = '1';
        return s;
    }

    bool operator==(const RelationTuple& o) const {
        return arity_ == o.arity_ && mask_ == o.mask_;
    }
    bool operator<(const RelationTuple& o) const { return mask_ < o.mask_; }

    static std::uint32_t bit(std::uint32_t arity, std::uint32_t j) {
        return 1u << (arity - j);
    }

private:
    std::uint32_t arity_ = 0;
    std::uint32_t mask_ = 0;
};

/// Sorted set of 1-based positions within {1..k}.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::vector<std::uint32_t> members);

    /// Full set {1..k}.
    static IndexSet full(std::uint32_t k);

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<std::uint32_t>& members() const { return members_; }
    std::uint32_t operator[](std::size_t j) const { return members_[j]; }
    bool contains(std::uint32_t i) const;

    /// Members of {1..k} not in this set, ascending.
    IndexSet complement(std::uint32_t k) const;

private:
    std::vector<std::uint32_t> members_;
};

/// A k-ary relation: deduplicated tuples held in canonical (ascending mask)
/// order. Nonempty whenever used as a constraint.
class Relation {
public:
    Relation() = default;
    Relation(std::uint32_t arity, std::vector<std::uint32_t> masks);

    static Relation from_tuples(std::uint32_t arity, const std::vector<std::vector<int>>& tuples);

    /// The unconstrained relation {0,1}^k.
    static Relation full(std::uint32_t arity);

    std::uint32_t arity() const { return arity_; }
    std::size_t size() const { return masks_.size(); }
    bool empty() const { return masks_.empty(); }
    const std::vector<std::uint32_t>& masks() const { return masks_; }
    RelationTuple tuple(std::size_t t) const { return RelationTuple(arity_, masks_[t]); }
    bool contains(std::uint32_t mask) const;

    bool operator==(const Relation& o) const {
        return arity_ == o.arity_ && masks_ == o.masks_;
    }

private:
    std::uint32_t arity_ = 0;
    std::vector<std::uint32_t> masks_;  // sorted ascending, unique
};

/// Keeps only the entries of `mask` at positions I, packed into an |I|-bit mask.
std::uint32_t project_mask(std::uint32_t arity, std::uint32_t mask, const IndexSet& I);

/// Projection of R onto positions I.
Relation project(const Relation& r, const IndexSet& I);

/// Tuples of R that agree with u on positions I. u must lie in project(r, I).
Relation restrict(const Relation& r, const IndexSet& I, const RelationTuple& u);

/// Projection of restrict(r, I, u) onto the complement of I: the patterns that
/// merge with u into a full tuple of R.
Relation reduce(const Relation& r, const IndexSet& I, const RelationTuple& u);

/// Interleaves u (on positions I) with v (on the complement) into a k-tuple.
RelationTuple merge_tuples(std::uint32_t arity, const IndexSet& I,
                           const RelationTuple& u, const RelationTuple& v);

/// One relation per coordinate, or a single relation shared by all
/// coordinates.
class RelationFamily {
public:
    RelationFamily() = default;

    static RelationFamily shared(std::uint32_t m, Relation r);
    static RelationFamily per_coordinate(std::vector<Relation> rs);

    std::uint32_t coord_count() const { return m_; }
    std::uint32_t arity() const { return arity_; }
    bool is_shared() const { return std::holds_alternative<SharedRep>(rep_); }

    const Relation& at(std::uint32_t coord) const {
        if (const auto* s = std::get_if<SharedRep>(&rep_)) return *s->rel;
        return *std::get<PerCoordRep>(rep_).rels[coord];
    }

    /// The single relation of a shared family.
    const Relation& shared_relation() const { return *std::get<SharedRep>(rep_).rel; }

    /// Per-coordinate projection onto positions I. Shared storage is preserved.
    RelationFamily project_family(const IndexSet& I) const;

    /// Copy bound to a concrete coordinate count. Shared families parsed from
    /// text defer m until the dataset is known; per-coordinate families must
    /// already match.
    RelationFamily with_coords(std::uint32_t m) const;

private:
    struct SharedRep {
        std::shared_ptr<const Relation> rel;
    };
    struct PerCoordRep {
        std::vector<std::shared_ptr<const Relation>> rels;
    };

    std::uint32_t m_ = 0;
    std::uint32_t arity_ = 0;
    std::variant<SharedRep, PerCoordRep> rep_;

    friend RelationFamily reduce_family(const RelationFamily&, const IndexSet&, const CenterSet&);
};

/// True iff for every coordinate i the pattern (c_1[i],...,c_k[i]) is a tuple
/// of R_i. |C| must equal the family arity; C's j-th vector maps to entry j.
bool satisfies(const CenterSet& c, const RelationFamily& f);

/// Per-coordinate reduction by the patterns of C at positions I. C must
/// satisfy project_family(I); the result has arity k - |I|. Shared storage is
/// preserved only when the restriction pattern is identical at every
/// coordinate.
RelationFamily reduce_family(const RelationFamily& f, const IndexSet& I, const CenterSet& c);

/// Completes a partial center set occupying positions I to a full solution of
/// size k satisfying F. Each coordinate is completed from the canonically
/// first tuple of restrict(R_i, I, pattern of C at i). Since the input centers
/// are kept, the completed set never costs more than the partial one.
CenterSet extend_solution(const Dataset& x, const RelationFamily& f,
                          const CenterSet& c, const IndexSet& I);

}  // namespace bcc
