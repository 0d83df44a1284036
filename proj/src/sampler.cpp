#include "bcc/sampler.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace bcc {

std::uint64_t sample_size(std::uint32_t k, double eps, double c) {
    if (k < 1 || eps <= 0.0 || c <= 0.0)
        throw std::invalid_argument("sample_size: need k >= 1, eps > 0, c > 0");
    long double log_term = eps >= 1.0 ? 1.0L : log2l(1.0L / static_cast<long double>(eps));
    long double r = ceill(static_cast<long double>(c) * static_cast<long double>(k) /
                          (static_cast<long double>(eps) * static_cast<long double>(eps)) *
                          log_term);
    if (r < 1.0L) return 1;
    constexpr long double kCap = 4611686018427387904.0L;  // 2^62
    if (r > kCap) return static_cast<std::uint64_t>(kCap);
    return static_cast<std::uint64_t>(r);
}

namespace {

// Multiplicities of r iid uniform picks over s cells, via the binomial chain
// decomposition of the multinomial. Small r is drawn pick-by-pick.
void draw_multiplicities(std::uint64_t r, std::size_t s, Rng& rng,
                         std::vector<std::uint64_t>& out) {
    out.assign(s, 0);
    if (s == 1) {
        out[0] = r;
        return;
    }
    constexpr std::uint64_t kExplicitLimit = 4096;
    if (r <= kExplicitLimit) {
        for (std::uint64_t t = 0; t < r; ++t) ++out[rng.next_below(s)];
        return;
    }
    std::uint64_t remaining = r;
    for (std::size_t cell = 0; cell + 1 < s && remaining > 0; ++cell) {
        double p = 1.0 / static_cast<double>(s - cell);
        std::binomial_distribution<std::int64_t> bin(static_cast<std::int64_t>(remaining), p);
        std::uint64_t taken = static_cast<std::uint64_t>(bin(rng));
        out[cell] = taken;
        remaining -= taken;
    }
    out[s - 1] += remaining;
}

}  // namespace

std::vector<Multiset> sample_multisets(const Dataset& x,
                                       const std::vector<std::uint32_t>& subset,
                                       std::uint32_t k, std::uint64_t r, Rng& rng) {
    if (subset.empty())
        throw std::invalid_argument("sample_multisets: empty sampling domain");
    (void)x;
    std::vector<Multiset> sets(k);
    for (std::uint32_t j = 0; j < k; ++j) {
        sets[j].total = r;
        draw_multiplicities(r, subset.size(), rng, sets[j].multiplicity);
    }
    return sets;
}

CenterSet sample_candidate_centers(const Dataset& x,
                                   const std::vector<std::uint32_t>& subset,
                                   std::uint32_t k, const RelationFamily& f,
                                   const Rational& delta, double eps, double c,
                                   const WeightVector& w, Rng& rng,
                                   std::uint64_t r_override) {
    if (f.arity() != k || w.size() != k)
        throw std::invalid_argument("sample_candidate_centers: arity/weight mismatch");
    if (w.is_geometric() &&
        (w.delta().num != delta.num || w.delta().den != delta.den))
        throw std::invalid_argument("sample_candidate_centers: weight base disagrees with delta");
    std::uint64_t r = r_override != 0 ? r_override : sample_size(k, eps, c);
    std::vector<Multiset> sets = sample_multisets(x, subset, k, r, rng);
    CoordCounts counts = coordinate_counts(x, subset, sets);
    return best_centers(counts, w, f);
}

}  // namespace bcc
