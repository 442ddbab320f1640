#include <catch2/catch_amalgamated.hpp>

#include "ska/field.hpp"
#include "ska/rng.hpp"

using namespace ska;

TEST_CASE("field arithmetic basics") {
    FieldSpec f5(5), f7(7);
    CHECK((FieldElement(3, f5) + FieldElement(4, f5)).value() == 2);
    CHECK((FieldElement(2, f7) - FieldElement(6, f7)).value() == 3);
    CHECK((FieldElement(0, f7) * FieldElement(6, f7)).value() == 0);
    CHECK((FieldElement(0, f5) * FieldElement(3, f5)).value() == 0);
    CHECK_THROWS_AS(FieldElement(1, f5) + FieldElement(1, f7), mismatched_field);
}

TEST_CASE("non-prime modulus rejected") {
    CHECK_THROWS_AS(FieldSpec(1), invalid_params);
    CHECK_THROWS_AS(FieldSpec(4), invalid_params);
    CHECK_THROWS_AS(FieldSpec(91), invalid_params); // 7 * 13
    CHECK_NOTHROW(FieldSpec(2));
    CHECK_NOTHROW(FieldSpec(2147483647)); // 2^31 - 1
}

TEST_CASE("inverse") {
    FieldSpec f7(7), f5(5);
    CHECK(field_inv(FieldElement(3, f7)).value() == 5);
    CHECK(field_inv(FieldElement(1, f5)).value() == 1);
    CHECK_THROWS_AS(field_inv(FieldElement(0, f5)), zero_inverse);

    for (uint64_t q : {5ull, 7ull, 11ull, 13ull}) {
        FieldSpec f(q);
        for (uint64_t a = 1; a < q; ++a) {
            FieldElement x(a, f);
            CHECK((x * field_inv(x)).value() == 1);
            CHECK(field_inv(field_inv(x)) == x);
        }
    }
}

TEST_CASE("ring axioms over random triples") {
    DetRng rng(42);
    for (uint64_t q : {5ull, 13ull, 10007ull}) {
        FieldSpec f(q);
        for (int trial = 0; trial < 200; ++trial) {
            FieldElement a = rng.uniform_element(f);
            FieldElement b = rng.uniform_element(f);
            FieldElement c = rng.uniform_element(f);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
        }
    }
}

TEST_CASE("polynomial evaluation") {
    FieldSpec f7(7);
    // f(x) = 3 + 2x over F_7
    Polynomial p({FieldElement(3, f7), FieldElement(2, f7)}, f7);
    CHECK(eval_poly(p, FieldElement(1, f7)).value() == 5);
    CHECK(eval_poly(p, FieldElement(0, f7)).value() == 3); // f(0) = constant term
    Polynomial zero({}, f7);
    CHECK(eval_poly(zero, FieldElement(4, f7)).value() == 0);
    CHECK_THROWS_AS(eval_poly(p, FieldElement(1, FieldSpec(5))), mismatched_field);
}

TEST_CASE("interpolation") {
    FieldSpec f7(7);
    auto pt = [&](uint64_t x, uint64_t y) {
        return std::make_pair(FieldElement(x, f7), FieldElement(y, f7));
    };

    SECTION("two points give 3 + 2x") {
        Polynomial p = interpolate({pt(2, 0), pt(3, 2)}, 2, f7);
        REQUIRE(p.coefficients().size() == 2);
        CHECK(p.coefficients()[0].value() == 3);
        CHECK(p.coefficients()[1].value() == 2);
        CHECK(eval_poly(p, FieldElement(2, f7)).value() == 0);
        CHECK(eval_poly(p, FieldElement(3, f7)).value() == 2);
    }
    SECTION("single point, k = 1") {
        Polynomial p = interpolate({pt(4, 6)}, 1, f7);
        REQUIRE(p.coefficients().size() == 1);
        CHECK(p.coefficients()[0].value() == 6);
    }
    SECTION("errors") {
        CHECK_THROWS_AS(interpolate({pt(2, 0), pt(2, 1)}, 2, f7), duplicate_abscissa);
        CHECK_THROWS_AS(interpolate({pt(2, 0)}, 2, f7), wrong_count);
    }
}

TEST_CASE("interpolate inverts evaluation at k distinct points") {
    DetRng rng(7);
    for (uint64_t q : {5ull, 7ull, 11ull, 13ull}) {
        FieldSpec f(q);
        for (std::size_t k = 1; k <= q - 1; ++k) {
            for (int trial = 0; trial < 10; ++trial) {
                std::vector<FieldElement> coeffs;
                for (std::size_t i = 0; i < k; ++i) coeffs.push_back(rng.uniform_element(f));
                Polynomial p(coeffs, f);
                std::vector<std::pair<FieldElement, FieldElement>> pts;
                for (uint64_t x = 1; x <= k; ++x) {
                    FieldElement fx(x, f);
                    pts.emplace_back(fx, eval_poly(p, fx));
                }
                Polynomial back = interpolate(pts, k, f);
                REQUIRE(back.coefficients().size() == k);
                for (std::size_t i = 0; i < k; ++i)
                    CHECK(back.coefficients()[i] == coeffs[i]);
                for (const auto& [x, y] : pts)
                    CHECK(eval_poly(back, x) == y);
            }
        }
    }
}
