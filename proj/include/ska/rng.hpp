#ifndef SKA_RNG_HPP
#define SKA_RNG_HPP

#include <cstdint>
#include <random>

#include "ska/field.hpp"

namespace ska {

/// Seeded counter-mode generator (splitmix64 over an incrementing counter).
/// Uniform field elements come from rejection sampling so the exact-uniformity
/// oracles see no modulo bias.
class DetRng {
public:
    explicit DetRng(uint64_t seed) : seed_(seed), counter_(0) {}

    static DetRng from_entropy() {
        std::random_device rd;
        return DetRng((static_cast<uint64_t>(rd()) << 32) ^ rd());
    }

    uint64_t next() {
        uint64_t z = seed_ + (counter_++ + 1) * 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t uniform_below(uint64_t bound) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % bound;
    }

    FieldElement uniform_element(const FieldSpec& field) {
        return FieldElement(uniform_below(field.modulus()), field);
    }

private:
    uint64_t seed_;
    uint64_t counter_;
};

} // namespace ska

#endif
