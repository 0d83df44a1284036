#include "bcc/relation.hpp"

#include <algorithm>
#include <stdexcept>

namespace bcc {

RelationTuple RelationTuple::from_string(const std::string& s) {
    std::vector<int> entries;
    entries.reserve(s.size());
    for (char ch : s) {
        if (ch != '0' && ch != '1')
            throw std::invalid_argument("relation tuple string must contain only 0/1");
        entries.push_back(ch == '1' ? 1 : 0);
    }
    return from_entries(entries);
}

IndexSet::IndexSet(std::vector<std::uint32_t> members) : members_(std::move(members)) {
    for (std::size_t j = 0; j < members_.size(); ++j) {
        if (members_[j] == 0)
            throw std::invalid_argument("IndexSet: members are 1-based");
        if (j > 0 && members_[j - 1] >= members_[j])
            throw std::invalid_argument("IndexSet: members must be strictly increasing");
    }
}

IndexSet IndexSet::full(std::uint32_t k) {
    std::vector<std::uint32_t> m(k);
    for (std::uint32_t i = 0; i < k; ++i) m[i] = i + 1;
    return IndexSet(std::move(m));
}

bool IndexSet::contains(std::uint32_t i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
}

IndexSet IndexSet::complement(std::uint32_t k) const {
    std::vector<std::uint32_t> out;
    out.reserve(k - members_.size());
    std::size_t p = 0;
    for (std::uint32_t i = 1; i <= k; ++i) {
        if (p < members_.size() && members_[p] == i) {
            ++p;
        } else {
            out.push_back(i);
        }
    }
    return IndexSet(std::move(out));
}

Relation::Relation(std::uint32_t arity, std::vector<std::uint32_t> masks)
    : arity_(arity), masks_(std::move(masks)) {
    if (arity_ > kMaxArity)
        throw std::invalid_argument("Relation: arity exceeds the configured cap");
    std::sort(masks_.begin(), masks_.end());
    masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
    std::uint32_t limit = arity_ >= 32 ? 0xFFFFFFFFu : ((1u << arity_) - 1u);
    for (std::uint32_t m : masks_)
        if (m > limit)
            throw std::invalid_argument("Relation: tuple mask out of range for arity");
}

Relation Relation::from_tuples(std::uint32_t arity,
                               const std::vector<std::vector<int>>& tuples) {
    std::vector<std::uint32_t> masks;
    masks.reserve(tuples.size());
    for (const auto& t : tuples) {
        if (t.size() != arity)
            throw std::invalid_argument("Relation::from_tuples: arity mismatch");
        masks.push_back(RelationTuple::from_entries(t).mask());
    }
    return Relation(arity, std::move(masks));
}

Relation Relation::full(std::uint32_t arity) {
    if (arity > kMaxArity)
        throw std::invalid_argument("Relation::full: arity exceeds the configured cap");
    std::vector<std::uint32_t> masks(std::size_t{1} << arity);
    for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
    return Relation(arity, std::move(masks));
}

bool Relation::contains(std::uint32_t mask) const {
    return std::binary_search(masks_.begin(), masks_.end(), mask);
}

std::uint32_t project_mask(std::uint32_t arity, std::uint32_t mask, const IndexSet& I) {
    std::uint32_t out = 0;
    std::uint32_t r = static_cast<std::uint32_t>(I.size());
    for (std::uint32_t j = 0; j < r; ++j) {
        std::uint32_t pos = I[j];
        if (pos > arity)
            throw std::invalid_argument("project_mask: index out of range");
        if ((mask >> (arity - pos)) & 1u) out |= 1u << (r - 1 - j);
    }
    return out;
}

Relation project(const Relation& r, const IndexSet& I) {
    std::vector<std::uint32_t> masks;
    masks.reserve(r.size());
    for (std::uint32_t m : r.masks())
        masks.push_back(project_mask(r.arity(), m, I));
    return Relation(static_cast<std::uint32_t>(I.size()), std::move(masks));
}

Relation restrict(const Relation& r, const IndexSet& I, const RelationTuple& u) {
    if (u.arity() != I.size())
        throw std::invalid_argument("restrict: tuple arity must match |I|");
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m : r.masks())
        if (project_mask(r.arity(), m, I) == u.mask()) masks.push_back(m);
    if (masks.empty())
        throw std::invalid_argument("restrict: pattern not in the projection of R on I");
    return Relation(r.arity(), std::move(masks));
}

Relation reduce(const Relation& r, const IndexSet& I, const RelationTuple& u) {
    return project(restrict(r, I, u), I.complement(r.arity()));
}

RelationTuple merge_tuples(std::uint32_t arity, const IndexSet& I,
                           const RelationTuple& u, const RelationTuple& v) {
    IndexSet comp = I.complement(arity);
    if (u.arity() != I.size() || v.arity() != comp.size())
        throw std::invalid_argument("merge_tuples: arity mismatch");
    std::uint32_t mask = 0;
    for (std::uint32_t j = 0; j < I.size(); ++j)
        if (u.entry(j + 1)) mask |= RelationTuple::bit(arity, I[j]);
    for (std::uint32_t j = 0; j < comp.size(); ++j)
        if (v.entry(j + 1)) mask |= RelationTuple::bit(arity, comp[j]);
    return RelationTuple(arity, mask);
}

RelationFamily RelationFamily::shared(std::uint32_t m, Relation r) {
    if (r.empty())
        throw std::invalid_argument("RelationFamily: empty relation");
    RelationFamily f;
    f.m_ = m;
    f.arity_ = r.arity();
    f.rep_ = SharedRep{std::make_shared<const Relation>(std::move(r))};
    return f;
}

RelationFamily RelationFamily::per_coordinate(std::vector<Relation> rs) {
    if (rs.empty())
        throw std::invalid_argument("RelationFamily: need at least one coordinate");
    RelationFamily f;
    f.m_ = static_cast<std::uint32_t>(rs.size());
    f.arity_ = rs[0].arity();
    PerCoordRep rep;
    rep.rels.reserve(rs.size());
    for (auto& r : rs) {
        if (r.arity() != f.arity_)
            throw std::invalid_argument("RelationFamily: mixed arities");
        if (r.empty())
            throw std::invalid_argument("RelationFamily: empty relation");
        rep.rels.push_back(std::make_shared<const Relation>(std::move(r)));
    }
    f.rep_ = std::move(rep);
    return f;
}

RelationFamily RelationFamily::project_family(const IndexSet& I) const {
    RelationFamily out;
    out.m_ = m_;
    out.arity_ = static_cast<std::uint32_t>(I.size());
    if (const auto* s = std::get_if<SharedRep>(&rep_)) {
        out.rep_ = SharedRep{std::make_shared<const Relation>(project(*s->rel, I))};
    } else {
        const auto& rels = std::get<PerCoordRep>(rep_).rels;
        PerCoordRep rep;
        rep.rels.reserve(rels.size());
        for (const auto& r : rels)
            rep.rels.push_back(std::make_shared<const Relation>(project(*r, I)));
        out.rep_ = std::move(rep);
    }
    return out;
}

RelationFamily RelationFamily::with_coords(std::uint32_t m) const {
    if (const auto* s = std::get_if<SharedRep>(&rep_)) {
        RelationFamily out;
        out.m_ = m;
        out.arity_ = arity_;
        out.rep_ = SharedRep{s->rel};
        return out;
    }
    if (m_ != m)
        throw std::invalid_argument(
            "relation family has " + std::to_string(m_) +
            " coordinates but the data has " + std::to_string(m));
    return *this;
}

namespace {

/// Pattern of the centers at coordinate i, as an |C|-bit mask in tuple layout.
std::uint32_t pattern_at(const CenterSet& c, std::uint32_t i) {
    std::uint32_t k = static_cast<std::uint32_t>(c.size());
    std::uint32_t mask = 0;
    for (std::uint32_t j = 0; j < k; ++j)
        if (c[j].get(i)) mask |= RelationTuple::bit(k, j + 1);
    return mask;
}

}  // namespace

bool satisfies(const CenterSet& c, const RelationFamily& f) {
    if (c.size() != f.arity())
        throw std::invalid_argument("satisfies: |C| must equal the family arity");
    if (!c.empty() && f.coord_count() > 0 && c.dim() != f.coord_count())
        throw std::invalid_argument("satisfies: dimension mismatch");
    for (std::uint32_t i = 0; i < f.coord_count(); ++i)
        if (!f.at(i).contains(pattern_at(c, i))) return false;
    return true;
}

RelationFamily reduce_family(const RelationFamily& f, const IndexSet& I, const CenterSet& c) {
    if (c.size() != I.size())
        throw std::invalid_argument("reduce_family: |C| must equal |I|");
    if (!satisfies(c, f.project_family(I)))
        throw std::invalid_argument("reduce_family: C does not satisfy the projection on I");

    std::uint32_t r = static_cast<std::uint32_t>(I.size());
    if (f.is_shared()) {
        const Relation& rel = f.shared_relation();
        // Group coordinates by their restriction pattern; at most 2^r distinct.
        std::vector<std::uint32_t> pattern_of(f.coord_count());
        bool uniform = true;
        for (std::uint32_t i = 0; i < f.coord_count(); ++i) {
            pattern_of[i] = pattern_at(c, i);
            if (pattern_of[i] != pattern_of[0]) uniform = false;
        }
        if (uniform) {
            return RelationFamily::shared(
                f.coord_count(), reduce(rel, I, RelationTuple(r, pattern_of.empty() ? 0 : pattern_of[0])));
        }
        std::vector<std::shared_ptr<const Relation>> cache(std::size_t{1} << r);
        std::vector<Relation> out;
        out.reserve(f.coord_count());
        for (std::uint32_t i = 0; i < f.coord_count(); ++i) {
            auto& slot = cache[pattern_of[i]];
            if (!slot)
                slot = std::make_shared<const Relation>(
                    reduce(rel, I, RelationTuple(r, pattern_of[i])));
            out.push_back(*slot);
        }
        return RelationFamily::per_coordinate(std::move(out));
    }

    std::vector<Relation> out;
    out.reserve(f.coord_count());
    for (std::uint32_t i = 0; i < f.coord_count(); ++i)
        out.push_back(reduce(f.at(i), I, RelationTuple(r, pattern_at(c, i))));
    return RelationFamily::per_coordinate(std::move(out));
}

CenterSet extend_solution(const Dataset& x, const RelationFamily& f,
                          const CenterSet& c, const IndexSet& I) {
    (void)x;  // the guarantee is structural: the input centers are preserved
    if (c.size() != I.size())
        throw std::invalid_argument("extend_solution: |C| must equal |I|");
    std::uint32_t k = f.arity();
    std::uint32_t m = f.coord_count();
    if (!c.empty() && c.dim() != m)
        throw std::invalid_argument("extend_solution: dimension mismatch");
    if (!satisfies(c, f.project_family(I)))
        throw std::invalid_argument("extend_solution: C does not satisfy the projection on I");

    std::uint32_t r = static_cast<std::uint32_t>(I.size());
    std::vector<BinaryVector> full(k, BinaryVector(m));
    for (std::uint32_t i = 0; i < m; ++i) {
        std::uint32_t pattern = pattern_at(c, i);
        const Relation& rel = f.at(i);
        // Canonically first tuple agreeing with the pattern on I; masks are
        // sorted, so the first hit is the canonical choice.
        bool found = false;
        for (std::uint32_t mask : rel.masks()) {
            if (project_mask(k, mask, I) == pattern) {
                RelationTuple t(k, mask);
                for (std::uint32_t j = 0; j < k; ++j)
                    if (t.entry(j + 1)) full[j].set(i, true);
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("extend_solution: no completing tuple");  // unreachable given the check above
    }
    (void)r;
    return CenterSet(std::move(full));
}

}  // namespace bcc
