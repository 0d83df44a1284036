#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace bcc {

/// Exact nonnegative rational with 64-bit parts, kept in lowest terms.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    Rational() = default;
    Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    void normalize() {
        std::uint64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    /// this / d, guarding 64-bit overflow of the denominator.
    Rational divided_by(std::uint64_t d) const {
        Rational r;
        r.num = num;
        std::uint64_t g = std::gcd(num, d);
        r.num = num / g;
        std::uint64_t dd = d / g;
        if (den > UINT64_MAX / dd)
            throw std::overflow_error("Rational: denominator overflow");
        r.den = den * dd;
        r.normalize();
        return r;
    }
};

/// Nonnegative per-cluster weights in one of two exact forms:
///  - Integer: plain 64-bit integers (cluster sizes, all-ones, compositions);
///  - GeomPow: powers (1+delta)^e of a common exact rational base, stored by
///    exponent so weighted sums can be compared deterministically.
class WeightVector {
public:
    static WeightVector integers(std::vector<std::uint64_t> w) {
        WeightVector v;
        v.ints_ = std::move(w);
        v.is_geom_ = false;
        return v;
    }

    static WeightVector geometric(Rational delta, std::vector<std::uint64_t> exponents);

    std::size_t size() const { return is_geom_ ? exps_.size() : ints_.size(); }
    bool is_geometric() const { return is_geom_; }
    const std::vector<std::uint64_t>& integer_weights() const { return ints_; }
    const std::vector<std::uint64_t>& exponents() const { return exps_; }
    const Rational& delta() const { return delta_; }

    /// Weight value as long double (exact for the integer form, best-effort
    /// for the geometric form; comparisons never rely on this alone).
    long double approx(std::size_t j) const {
        return is_geom_ ? pow_value_[j] : static_cast<long double>(ints_[j]);
    }

    /// Rigorous absolute error bound of approx(j).
    long double approx_error(std::size_t j) const {
        return is_geom_ ? pow_error_[j] : 0.0L;
    }

    bool all_zero() const {
        if (is_geom_) return false;  // geometric weights are >= 1
        for (auto w : ints_)
            if (w) return false;
        return true;
    }

private:
    bool is_geom_ = false;
    std::vector<std::uint64_t> ints_;
    Rational delta_;
    std::vector<std::uint64_t> exps_;
    std::vector<long double> pow_value_;  // (1+delta)^e per entry
    std::vector<long double> pow_error_;

    friend class WeightedSumComparator;
};

/// Deterministic comparison of weighted count sums f = sum_j w_j * c_j.
/// Integer weights compare exactly in 128-bit arithmetic. Geometric weights
/// compare the difference term-by-term in long double with a rigorous error
/// bound and fall back to exact big-integer evaluation on a near-tie.
class WeightedSumComparator {
public:
    explicit WeightedSumComparator(const WeightVector& w) : w_(&w) {}

    /// Sign of sum_j w_j*(a_j - b_j): -1, 0, or +1.
    int compare(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) const;

private:
    int compare_exact_geometric_terms(
        const std::vector<std::pair<std::uint64_t, __int128>>& terms) const;

    const WeightVector* w_;
};

}  // namespace bcc
