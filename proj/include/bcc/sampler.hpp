#pragma once

#include <cstdint>
#include <vector>

#include "bcc/assign.hpp"
#include "bcc/bitvec.hpp"
#include "bcc/relation.hpp"
#include "bcc/rng.hpp"
#include "bcc/weights.hpp"

namespace bcc {

/// Per-set sample size ceil(c * (k/eps^2) * log2(1/eps)), at least 1. For
/// eps >= 1 the log term is clamped to 1. Clamped at 2^62 so counts stay well
/// inside 64 bits.
std::uint64_t sample_size(std::uint32_t k, double eps, double c);

/// Draws k multisets of r vectors each, uniformly with repetition from X
/// restricted to `subset`. Returned multisets hold multiplicities parallel to
/// `subset`. Deterministic given the rng value; huge r is handled by drawing
/// the multiplicity vector directly (binomial chain), which has the same
/// distribution as r independent uniform picks.
std::vector<Multiset> sample_multisets(const Dataset& x,
                                       const std::vector<std::uint32_t>& subset,
                                       std::uint32_t k, std::uint64_t r, Rng& rng);

/// One sampling round: draws k sample multisets of size sample_size(k, eps, c)
/// from X|subset and returns the best-response centers for the drawn counts,
/// the given weights, and F. The output always satisfies F; its quality
/// guarantee is probabilistic and not checked per call. `delta` is the
/// promised accuracy of the weights; it does not enter the computation, but a
/// geometric weight vector must be built on base 1+delta. A nonzero
/// `r_override` replaces the derived sample size; the solver uses it to keep
/// per-trial sampling noise alive when the derived size is so large that the
/// counts would freeze at their expectations.
CenterSet sample_candidate_centers(const Dataset& x,
                                   const std::vector<std::uint32_t>& subset,
                                   std::uint32_t k, const RelationFamily& f,
                                   const Rational& delta, double eps, double c,
                                   const WeightVector& w, Rng& rng,
                                   std::uint64_t r_override = 0);

}  // namespace bcc
