#pragma once

// Exact arithmetic in F_p and in the truncated power series ring
// F_p[[x]]/(x^N).  A series carries its own modulus and precision; mixing
// them is an error, never a silent coercion.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "floerkit/errors.hpp"

namespace floerkit {

inline constexpr int kDefaultPrecision = 16;
inline constexpr int kInfValuation = std::numeric_limits<int>::max();

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

class FieldElem {
  public:
    FieldElem() : value_(0), p_(2) {}
    FieldElem(std::int64_t value, std::uint32_t p) : p_(p) {
        if (p >= (1u << 16) || !is_prime_u32(p))
            throw structural_error("modulus must be a prime below 2^16, got " + std::to_string(p));
        std::int64_t r = value % static_cast<std::int64_t>(p);
        if (r < 0) r += p;
        value_ = static_cast<std::uint32_t>(r);
    }

    std::uint32_t value() const { return value_; }
    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return value_ == 0; }

    friend FieldElem operator+(FieldElem a, FieldElem b) {
        a.check(b);
        return FieldElem::raw((a.value_ + b.value_) % a.p_, a.p_);
    }
    friend FieldElem operator-(FieldElem a, FieldElem b) {
        a.check(b);
        return FieldElem::raw((a.value_ + a.p_ - b.value_) % a.p_, a.p_);
    }
    friend FieldElem operator*(FieldElem a, FieldElem b) {
        a.check(b);
        std::uint64_t prod = static_cast<std::uint64_t>(a.value_) * b.value_;
        return FieldElem::raw(static_cast<std::uint32_t>(prod % a.p_), a.p_);
    }
    FieldElem operator-() const { return raw(value_ == 0 ? 0 : p_ - value_, p_); }

    FieldElem inverse() const {
        if (value_ == 0) throw not_a_unit_error("inverse of 0 in F_p");
        // extended Euclid
        std::int64_t a = value_, b = p_, x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return FieldElem(x0, p_);
    }

    bool operator==(const FieldElem& o) const { return value_ == o.value_ && p_ == o.p_; }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

  private:
    static FieldElem raw(std::uint32_t v, std::uint32_t p) {
        FieldElem e;
        e.value_ = v;
        e.p_ = p;
        return e;
    }
    void check(const FieldElem& o) const {
        if (p_ != o.p_) throw structural_error("mixed moduli in F_p arithmetic");
    }
    std::uint32_t value_;
    std::uint32_t p_;
};

// Element of F_p[[x]] known modulo x^N.  coeffs_[j] is the coefficient of x^j.
class TruncatedSeries {
  public:
    TruncatedSeries() : TruncatedSeries(2, kDefaultPrecision) {}
    TruncatedSeries(std::uint32_t p, int precision) : p_(p), coeffs_(check_precision(precision), 0) {
        if (p >= (1u << 16) || !is_prime_u32(p))
            throw structural_error("modulus must be a prime below 2^16, got " + std::to_string(p));
    }

    static TruncatedSeries from_coeffs(std::uint32_t p, int precision,
                                       const std::vector<std::int64_t>& c) {
        TruncatedSeries s(p, precision);
        for (size_t j = 0; j < c.size() && j < s.coeffs_.size(); ++j) {
            std::int64_t r = c[j] % static_cast<std::int64_t>(p);
            if (r < 0) r += p;
            s.coeffs_[j] = static_cast<std::uint32_t>(r);
        }
        return s;
    }
    static TruncatedSeries constant(std::uint32_t p, int precision, std::int64_t c) {
        return from_coeffs(p, precision, {c});
    }
    static TruncatedSeries one(std::uint32_t p, int precision) { return constant(p, precision, 1); }
    static TruncatedSeries zero(std::uint32_t p, int precision) { return TruncatedSeries(p, precision); }
    // u * x^k for u = 1
    static TruncatedSeries x_power(std::uint32_t p, int precision, int k) {
        TruncatedSeries s(p, precision);
        if (k < precision) s.coeffs_[k] = 1 % p;
        return s;
    }

    std::uint32_t modulus() const { return p_; }
    int precision() const { return static_cast<int>(coeffs_.size()); }
    std::uint32_t coeff(int j) const { return coeffs_.at(j); }
    void set_coeff(int j, std::int64_t v) {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        coeffs_.at(j) = static_cast<std::uint32_t>(r);
    }

    bool is_zero() const {
        for (auto c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    // Smallest index of a nonzero stored coefficient; kInfValuation when the
    // series is zero to working precision.
    int valuation() const {
        for (int j = 0; j < precision(); ++j)
            if (coeffs_[j] != 0) return j;
        return kInfValuation;
    }
    bool is_unit() const { return coeffs_[0] != 0; }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check(b);
        TruncatedSeries r(a.p_, a.precision());
        for (int j = 0; j < a.precision(); ++j) r.coeffs_[j] = (a.coeffs_[j] + b.coeffs_[j]) % a.p_;
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check(b);
        TruncatedSeries r(a.p_, a.precision());
        for (int j = 0; j < a.precision(); ++j)
            r.coeffs_[j] = (a.coeffs_[j] + a.p_ - b.coeffs_[j]) % a.p_;
        return r;
    }
    TruncatedSeries operator-() const {
        TruncatedSeries r(p_, precision());
        for (int j = 0; j < precision(); ++j) r.coeffs_[j] = coeffs_[j] == 0 ? 0 : p_ - coeffs_[j];
        return r;
    }
    // Cauchy product truncated at x^N.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check(b);
        const int n = a.precision();
        TruncatedSeries r(a.p_, n);
        for (int i = 0; i < n; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (int j = 0; i + j < n; ++j) {
                if (b.coeffs_[j] == 0) continue;
                std::uint64_t t = r.coeffs_[i + j] +
                                  static_cast<std::uint64_t>(a.coeffs_[i]) * b.coeffs_[j];
                r.coeffs_[i + j] = static_cast<std::uint32_t>(t % a.p_);
            }
        }
        return r;
    }
    friend TruncatedSeries operator*(FieldElem c, const TruncatedSeries& a) {
        if (c.modulus() != a.p_) throw structural_error("mixed moduli in scalar multiple");
        TruncatedSeries r(a.p_, a.precision());
        for (int j = 0; j < a.precision(); ++j)
            r.coeffs_[j] = static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(c.value()) * a.coeffs_[j]) % a.p_);
        return r;
    }

    // Multiplicative inverse; requires valuation zero.  Newton-free schoolbook
    // recursion: b_0 = a_0^{-1}, b_k = -a_0^{-1} sum_{j=1..k} a_j b_{k-j}.
    TruncatedSeries inverse() const {
        if (!is_unit()) throw not_a_unit_error("series has positive valuation, not invertible");
        const int n = precision();
        TruncatedSeries b(p_, n);
        FieldElem a0inv = FieldElem(coeffs_[0], p_).inverse();
        b.coeffs_[0] = a0inv.value();
        for (int k = 1; k < n; ++k) {
            std::uint64_t acc = 0;
            for (int j = 1; j <= k; ++j)
                acc = (acc + static_cast<std::uint64_t>(coeffs_[j]) * b.coeffs_[k - j]) % p_;
            std::uint64_t v = (acc * a0inv.value()) % p_;
            b.coeffs_[k] = static_cast<std::uint32_t>(v == 0 ? 0 : p_ - v);
        }
        return b;
    }

    // Exact division by x^k; requires valuation >= k.  The k top coefficients
    // of the result are unknown at this precision and are set to zero.
    TruncatedSeries shift_down(int k) const {
        if (k == 0) return *this;
        if (valuation() < k) throw domain_error("shift_down would lose nonzero coefficients");
        TruncatedSeries r(p_, precision());
        for (int j = 0; j + k < precision(); ++j) r.coeffs_[j] = coeffs_[j + k];
        return r;
    }
    TruncatedSeries shift_up(int k) const {
        TruncatedSeries r(p_, precision());
        for (int j = 0; j + k < precision(); ++j) r.coeffs_[j + k] = coeffs_[j];
        return r;
    }

    // The constant coefficient as a precision-1 series (tensoring with the
    // residue field, where x acts by zero).
    TruncatedSeries reduce_mod_x() const {
        TruncatedSeries r(p_, 1);
        r.coeffs_[0] = coeffs_[0];
        return r;
    }

    bool operator==(const TruncatedSeries& o) const { return p_ == o.p_ && coeffs_ == o.coeffs_; }
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

    std::string str() const {
        std::string out;
        bool first = true;
        for (int j = 0; j < precision(); ++j) {
            if (coeffs_[j] == 0) continue;
            if (!first) out += " + ";
            first = false;
            if (j == 0) out += std::to_string(coeffs_[j]);
            else {
                if (coeffs_[j] != 1) out += std::to_string(coeffs_[j]) + "*";
                out += (j == 1) ? "x" : "x^" + std::to_string(j);
            }
        }
        return first ? "0" : out;
    }

  private:
    static int check_precision(int n) {
        if (n < 1) throw structural_error("precision must be at least 1");
        return n;
    }
    void check(const TruncatedSeries& o) const {
        if (p_ != o.p_) throw structural_error("mixed moduli in series arithmetic");
        if (coeffs_.size() != o.coeffs_.size())
            throw structural_error("mixed precisions in series arithmetic");
    }

    std::uint32_t p_;
    std::vector<std::uint32_t> coeffs_;
};

inline TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) { return a + b; }
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }
inline TruncatedSeries series_invert(const TruncatedSeries& a) { return a.inverse(); }
inline int valuation(const TruncatedSeries& a) { return a.valuation(); }

}  // namespace floerkit
