#ifndef SKA_RS_HPP
#define SKA_RS_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ska/errors.hpp"
#include "ska/field.hpp"

namespace ska {

inline constexpr uint64_t kDefaultEnumBudget = 1ull << 22;

/// (n,k) generalized Reed-Solomon parameters: evaluation points alpha_j
/// (nonzero, pairwise distinct) and nonzero column coefficients v_j.
struct RsParams {
    FieldSpec field;
    std::size_t n;
    std::size_t k;
    std::vector<FieldElement> alphas;
    std::vector<FieldElement> coeffs;

    RsParams(FieldSpec f, std::size_t n_, std::size_t k_,
             std::vector<FieldElement> alphas_, std::vector<FieldElement> coeffs_)
        : field(f), n(n_), k(k_), alphas(std::move(alphas_)), coeffs(std::move(coeffs_)) {
        validate();
    }

    /// Plain RS defaults: alpha_j = j, v_j = 1.
    static RsParams plain(uint64_t q, std::size_t n, std::size_t k) {
        FieldSpec f(q);
        std::vector<FieldElement> a, v;
        for (std::size_t j = 1; j <= n; ++j) {
            a.emplace_back(j, f);
            v.emplace_back(1, f);
        }
        return RsParams(f, n, k, std::move(a), std::move(v));
    }

    void validate() const {
        if (k < 1 || k > n || n > field.modulus() - 1)
            throw invalid_params("RsParams: need 1 <= k <= n <= q-1 (n=" + std::to_string(n) +
                                 ", k=" + std::to_string(k) + ", q=" + std::to_string(field.modulus()) + ")");
        if (alphas.size() != n || coeffs.size() != n)
            throw invalid_params("RsParams: alphas/coeffs length must equal n");
        for (std::size_t i = 0; i < n; ++i) {
            if (alphas[i].is_zero())
                throw invalid_params("RsParams: evaluation points must be nonzero");
            if (coeffs[i].is_zero())
                throw invalid_params("RsParams: column coefficients must be nonzero");
            for (std::size_t j = i + 1; j < n; ++j)
                if (alphas[i] == alphas[j])
                    throw invalid_params("RsParams: duplicate evaluation point " +
                                         std::to_string(alphas[i].value()));
        }
    }

    std::size_t distance() const { return n - k + 1; }
};

/// Entry (i,j) = v_j * alpha_j^i for i in [0,k).
struct GeneratorMatrix {
    std::vector<std::vector<FieldElement>> rows;
};

/// Message m = (s, u_1, ..., u_{k-1}): secret plus uniform pads.
struct KeyBlock {
    FieldElement secret;
    std::vector<FieldElement> pads;

    std::size_t length() const { return 1 + pads.size(); }
    FieldElement coeff(std::size_t i) const { return i == 0 ? secret : pads[i - 1]; }

    bool operator==(const KeyBlock& o) const { return secret == o.secret && pads == o.pads; }
    bool operator!=(const KeyBlock& o) const { return !(*this == o); }
};

struct Codeword {
    std::vector<FieldElement> symbols;
};

/// One codeword position with its symbol; index is 1-based.
struct Share {
    std::size_t index;
    FieldElement symbol;
};

inline GeneratorMatrix build_generator(const RsParams& params) {
    params.validate();
    GeneratorMatrix g;
    g.rows.resize(params.k);
    for (std::size_t i = 0; i < params.k; ++i) {
        g.rows[i].reserve(params.n);
        for (std::size_t j = 0; j < params.n; ++j)
            g.rows[i].push_back(params.coeffs[j] * params.alphas[j].pow(i));
    }
    return g;
}

inline Codeword encode(const KeyBlock& key, const RsParams& params) {
    if (key.length() != params.k)
        throw length_mismatch("encode: key length " + std::to_string(key.length()) +
                              " != k = " + std::to_string(params.k));
    std::vector<FieldElement> coeffs;
    coeffs.reserve(params.k);
    for (std::size_t i = 0; i < params.k; ++i) coeffs.push_back(key.coeff(i));
    Polynomial f(std::move(coeffs), params.field);
    Codeword c;
    c.symbols.reserve(params.n);
    for (std::size_t j = 0; j < params.n; ++j)
        c.symbols.push_back(params.coeffs[j] * f.evaluate(params.alphas[j]));
    return c;
}

/// Erasure decode: unmask by v_j^{-1}, interpolate the lexicographically
/// smallest k indices, verify any surplus shares against the result.
inline KeyBlock decode(std::vector<Share> shares, const RsParams& params) {
    std::sort(shares.begin(), shares.end(),
              [](const Share& a, const Share& b) { return a.index < b.index; });
    std::vector<Share> distinct;
    for (const auto& s : shares) {
        if (s.index < 1 || s.index > params.n)
            throw invalid_params("decode: share index " + std::to_string(s.index) + " out of range");
        if (!distinct.empty() && distinct.back().index == s.index) {
            if (distinct.back().symbol != s.symbol)
                throw inconsistent_shares("decode: conflicting symbols at index " +
                                          std::to_string(s.index));
            continue;
        }
        distinct.push_back(s);
    }
    if (distinct.size() < params.k)
        throw insufficient_shares("decode: " + std::to_string(distinct.size()) +
                                  " distinct shares, need k = " + std::to_string(params.k));

    std::vector<std::pair<FieldElement, FieldElement>> points;
    points.reserve(params.k);
    for (std::size_t i = 0; i < params.k; ++i) {
        const auto& s = distinct[i];
        points.emplace_back(params.alphas[s.index - 1],
                            params.coeffs[s.index - 1].inverse() * s.symbol);
    }
    Polynomial f = interpolate(points, params.k, params.field);

    for (std::size_t i = params.k; i < distinct.size(); ++i) {
        const auto& s = distinct[i];
        FieldElement expect = params.coeffs[s.index - 1] * f.evaluate(params.alphas[s.index - 1]);
        if (expect != s.symbol)
            throw inconsistent_shares("decode: share at index " + std::to_string(s.index) +
                                      " off the interpolated polynomial");
    }

    std::vector<FieldElement> coeffs = f.coefficients();
    coeffs.resize(params.k, FieldElement(0, params.field));
    KeyBlock key{coeffs[0], {coeffs.begin() + 1, coeffs.end()}};
    return key;
}

struct DistanceReport {
    std::size_t min_distance;
    std::size_t singleton_distance; // n - k + 1
    bool is_mds;
    uint64_t codewords_enumerated;
};

namespace detail {

/// Number of enumeration states q^k, or nullopt-equivalent overflow via budget.
inline uint64_t checked_pow(uint64_t q, std::size_t k, uint64_t cap) {
    uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (total > cap / q) return cap + 1;
        total *= q;
    }
    return total;
}

} // namespace detail

/// Exhaustive minimum pairwise Hamming distance over all q^k codewords.
/// By linearity this equals the minimum weight of a nonzero codeword.
inline DistanceReport verify_mds_distance(const RsParams& params,
                                          uint64_t budget = kDefaultEnumBudget) {
    const uint64_t q = params.field.modulus();
    const uint64_t total = detail::checked_pow(q, params.k, budget);
    if (total > budget)
        throw budget_exceeded("verify_mds_distance: q^k exceeds enumeration budget " +
                              std::to_string(budget));

    std::size_t min_weight = params.n + 1;
    for (uint64_t idx = 1; idx < total; ++idx) {
        uint64_t rem = idx;
        KeyBlock key{FieldElement(rem % q, params.field), {}};
        rem /= q;
        for (std::size_t i = 1; i < params.k; ++i) {
            key.pads.emplace_back(rem % q, params.field);
            rem /= q;
        }
        Codeword c = encode(key, params);
        std::size_t w = 0;
        for (const auto& s : c.symbols)
            if (!s.is_zero()) ++w;
        min_weight = std::min(min_weight, w);
    }
    return DistanceReport{min_weight, params.distance(),
                          min_weight == params.distance(), total};
}

} // namespace ska

#endif
