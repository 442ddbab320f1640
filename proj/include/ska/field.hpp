#ifndef SKA_FIELD_HPP
#define SKA_FIELD_HPP

#include <cstdint>
#include <vector>

#include "ska/errors.hpp"

namespace ska {

namespace detail {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this witness set.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace detail

/// Prime field F_q. Primality is checked at construction.
class FieldSpec {
public:
    explicit FieldSpec(uint64_t modulus) : q_(modulus) {
        if (!detail::is_prime_u64(modulus))
            throw invalid_params("FieldSpec: modulus " + std::to_string(modulus) + " is not prime");
    }

    uint64_t modulus() const { return q_; }
    bool operator==(const FieldSpec& o) const { return q_ == o.q_; }
    bool operator!=(const FieldSpec& o) const { return q_ != o.q_; }

private:
    uint64_t q_;
};

/// Residue in [0, q). Carries its modulus so cross-field arithmetic is rejected.
class FieldElement {
public:
    FieldElement() : value_(0), q_(2) {}
    FieldElement(uint64_t value, const FieldSpec& field)
        : value_(value % field.modulus()), q_(field.modulus()) {}

    uint64_t value() const { return value_; }
    uint64_t modulus() const { return q_; }
    bool is_zero() const { return value_ == 0; }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        a.check(b);
        uint64_t s = a.value_ + b.value_;
        if (s >= a.q_) s -= a.q_;
        return FieldElement(s, a.q_, raw_tag{});
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        a.check(b);
        uint64_t s = a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + a.q_ - b.value_;
        return FieldElement(s, a.q_, raw_tag{});
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        a.check(b);
        return FieldElement(detail::mulmod(a.value_, b.value_, a.q_), a.q_, raw_tag{});
    }
    FieldElement operator-() const {
        return FieldElement(value_ == 0 ? 0 : q_ - value_, q_, raw_tag{});
    }

    /// Inverse via extended Euclid.
    FieldElement inverse() const {
        if (value_ == 0) throw zero_inverse("field_inv: zero has no inverse");
        int64_t t = 0, new_t = 1;
        int64_t r = static_cast<int64_t>(q_), new_r = static_cast<int64_t>(value_);
        while (new_r != 0) {
            int64_t quot = r / new_r;
            int64_t tmp = t - quot * new_t;
            t = new_t; new_t = tmp;
            tmp = r - quot * new_r;
            r = new_r; new_r = tmp;
        }
        if (t < 0) t += static_cast<int64_t>(q_);
        return FieldElement(static_cast<uint64_t>(t), q_, raw_tag{});
    }

    FieldElement pow(uint64_t e) const {
        return FieldElement(detail::powmod(value_, e, q_), q_, raw_tag{});
    }

    bool operator==(const FieldElement& o) const { return value_ == o.value_ && q_ == o.q_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    struct raw_tag {};
    FieldElement(uint64_t v, uint64_t q, raw_tag) : value_(v), q_(q) {}

    void check(const FieldElement& o) const {
        if (q_ != o.q_)
            throw mismatched_field("field arithmetic across F_" + std::to_string(q_) +
                                   " and F_" + std::to_string(o.q_));
    }

    uint64_t value_;
    uint64_t q_;
};

inline FieldElement field_inv(const FieldElement& a) { return a.inverse(); }

/// Coefficients in ascending degree, all over one field.
class Polynomial {
public:
    Polynomial(std::vector<FieldElement> coeffs, const FieldSpec& field)
        : coeffs_(std::move(coeffs)), q_(field.modulus()) {
        for (const auto& c : coeffs_)
            if (c.modulus() != q_)
                throw mismatched_field("Polynomial: coefficient field mismatch");
    }

    const std::vector<FieldElement>& coefficients() const { return coeffs_; }
    uint64_t modulus() const { return q_; }

    /// Horner evaluation.
    FieldElement evaluate(const FieldElement& x) const {
        if (x.modulus() != q_)
            throw mismatched_field("eval_poly: point in wrong field");
        FieldSpec f(q_);
        FieldElement acc(0, f);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

private:
    std::vector<FieldElement> coeffs_;
    uint64_t q_;
};

inline FieldElement eval_poly(const Polynomial& p, const FieldElement& x) {
    return p.evaluate(x);
}

/// Unique degree-<k polynomial through k points (Lagrange form).
inline Polynomial interpolate(const std::vector<std::pair<FieldElement, FieldElement>>& points,
                              std::size_t target_degree_bound, const FieldSpec& field) {
    const std::size_t k = target_degree_bound;
    if (points.size() != k)
        throw wrong_count("interpolate: got " + std::to_string(points.size()) +
                          " points, expected " + std::to_string(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (points[i].first == points[j].first)
                throw duplicate_abscissa("interpolate: repeated abscissa " +
                                         std::to_string(points[i].first.value()));

    const FieldElement zero(0, field);
    const FieldElement one(1, field);
    std::vector<FieldElement> result(k, zero);
    std::vector<FieldElement> basis;
    basis.reserve(k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        // L_i(x) = prod_{j != i} (x - x_j) / (x_i - x_j), accumulated in coefficient form
        basis.assign(1, one);
        FieldElement denom = one;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            basis.push_back(zero);
            for (std::size_t d = basis.size() - 1; d > 0; --d)
                basis[d] = basis[d - 1] - points[j].first * basis[d];
            basis[0] = -(points[j].first * basis[0]);
            denom = denom * (points[i].first - points[j].first);
        }
        FieldElement scale = points[i].second * denom.inverse();
        for (std::size_t d = 0; d < basis.size(); ++d)
            result[d] = result[d] + scale * basis[d];
    }
    return Polynomial(std::move(result), field);
}

} // namespace ska

#endif
