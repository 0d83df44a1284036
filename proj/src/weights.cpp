#include "bcc/weights.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace bcc {

WeightVector WeightVector::geometric(Rational delta, std::vector<std::uint64_t> exponents) {
    if (delta.num == 0)
        throw std::invalid_argument("WeightVector::geometric: delta must be positive");
    WeightVector v;
    v.is_geom_ = true;
    v.delta_ = delta;
    v.exps_ = std::move(exponents);
    v.pow_value_.reserve(v.exps_.size());
    v.pow_error_.reserve(v.exps_.size());
    long double base = 1.0L + static_cast<long double>(delta.num) / static_cast<long double>(delta.den);
    for (std::uint64_t e : v.exps_) {
        long double val = powl(base, static_cast<long double>(e));
        // powl is correct to a few ulp; repeated-exponent growth is bounded by
        // roughly e ulps. Take a generous cushion.
        long double err = val * (static_cast<long double>(e) * 4.0L + 16.0L) * 0x1.0p-63L;
        v.pow_value_.push_back(val);
        v.pow_error_.push_back(err);
    }
    return v;
}

int WeightedSumComparator::compare(const std::vector<std::uint64_t>& a,
                                   const std::vector<std::uint64_t>& b) const {
    std::size_t k = w_->size();
    if (a.size() != k || b.size() != k)
        throw std::invalid_argument("WeightedSumComparator: count length mismatch");

    if (!w_->is_geometric()) {
        // Counts and weights both fit 64 bits, so products fit 128 bits and a
        // signed 128-bit accumulator is exact for k <= 2^63 terms.
        __int128 acc = 0;
        for (std::size_t j = 0; j < k; ++j) {
            __int128 d = static_cast<__int128>(a[j]) - static_cast<__int128>(b[j]);
            acc += d * static_cast<__int128>(w_->ints_[j]);
        }
        return acc < 0 ? -1 : (acc > 0 ? 1 : 0);
    }

    // Aggregate the difference per distinct exponent. Structural ties (equal
    // counts against equal weights) cancel exactly here, which keeps the
    // big-integer fallback out of the hot path.
    std::vector<std::pair<std::uint64_t, __int128>> terms;  // (exponent, coefficient)
    for (std::size_t j = 0; j < k; ++j) {
        std::int64_t d = static_cast<std::int64_t>(a[j]) - static_cast<std::int64_t>(b[j]);
        if (d == 0) continue;
        std::uint64_t e = w_->exps_[j];
        bool merged = false;
        for (auto& t : terms) {
            if (t.first == e) {
                t.second += d;
                merged = true;
                break;
            }
        }
        if (!merged) terms.emplace_back(e, d);
    }
    terms.erase(std::remove_if(terms.begin(), terms.end(),
                               [](const auto& t) { return t.second == 0; }),
                terms.end());
    if (terms.empty()) return 0;
    if (terms.size() == 1) return terms[0].second < 0 ? -1 : 1;

    long double base =
        1.0L + static_cast<long double>(w_->delta_.num) / static_cast<long double>(w_->delta_.den);
    long double sum = 0.0L, err = 0.0L;
    for (const auto& [e, coeff] : terms) {
        long double val = powl(base, static_cast<long double>(e));
        long double verr = val * (static_cast<long double>(e) * 4.0L + 16.0L) * 0x1.0p-63L;
        long double cmag = fabsl(static_cast<long double>(coeff));
        long double term = static_cast<long double>(coeff) * val;
        sum += term;
        err += cmag * verr + fabsl(term) * 0x1.0p-61L;
    }
    if (sum > err) return 1;
    if (sum < -err) return -1;
    return compare_exact_geometric_terms(terms);
}

int WeightedSumComparator::compare_exact_geometric_terms(
    const std::vector<std::pair<std::uint64_t, __int128>>& terms) const {
    // Sign of sum coeff_e * ((den+num)/den)^e. Dividing by the smallest power
    // and scaling by den^{gap_max} turns every term into an integer:
    // coeff_e * (den+num)^{e-e_min} * den^{gap_max-(e-e_min)}.
    const Rational& dlt = w_->delta_;
    std::uint64_t e_min = UINT64_MAX, e_max = 0;
    for (const auto& [e, coeff] : terms) {
        e_min = std::min(e_min, e);
        e_max = std::max(e_max, e);
    }
    std::uint64_t gap_max = e_max - e_min;

    mpz_t acc, term, p_pow, q_pow, p, q, coeff_z;
    mpz_inits(acc, term, p_pow, q_pow, p, q, coeff_z, nullptr);
    mpz_set_ui(acc, 0);
    mpz_import(p, 1, 1, sizeof(std::uint64_t), 0, 0, &dlt.num);
    mpz_import(q, 1, 1, sizeof(std::uint64_t), 0, 0, &dlt.den);
    mpz_add(p, p, q);  // p = den + num
    for (const auto& [e, coeff] : terms) {
        std::uint64_t gap = e - e_min;
        mpz_pow_ui(p_pow, p, static_cast<unsigned long>(gap));
        mpz_pow_ui(q_pow, q, static_cast<unsigned long>(gap_max - gap));
        mpz_mul(term, p_pow, q_pow);
        __int128 cv = coeff < 0 ? -coeff : coeff;
        std::uint64_t lo = static_cast<std::uint64_t>(cv);
        std::uint64_t hi = static_cast<std::uint64_t>(cv >> 64);
        mpz_set_ui(coeff_z, 0);
        if (hi) {
            mpz_import(coeff_z, 1, 1, sizeof(std::uint64_t), 0, 0, &hi);
            mpz_mul_2exp(coeff_z, coeff_z, 64);
        }
        mpz_t lo_z;
        mpz_init(lo_z);
        mpz_import(lo_z, 1, 1, sizeof(std::uint64_t), 0, 0, &lo);
        mpz_add(coeff_z, coeff_z, lo_z);
        mpz_clear(lo_z);
        mpz_mul(term, term, coeff_z);
        if (coeff < 0)
            mpz_sub(acc, acc, term);
        else
            mpz_add(acc, acc, term);
    }
    int sign = mpz_sgn(acc);
    mpz_clears(acc, term, p_pow, q_pow, p, q, coeff_z, nullptr);
    return sign;
}

}  // namespace bcc
