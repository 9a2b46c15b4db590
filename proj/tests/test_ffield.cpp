#include <doctest.h>

#include <set>

#include "gkg/ffield.hpp"

using namespace gkg;

TEST_CASE("field construction") {
    auto f2 = field_make(2, 1);
    CHECK(f2->size() == 2);
    auto f9 = field_make(3, 2);
    CHECK(f9->size() == 9);
    CHECK_THROWS_AS(field_make(4, 1), std::invalid_argument); // composite characteristic
    CHECK_THROWS_AS(field_make(2, 33), std::invalid_argument); // over the 2^32 cap
}

TEST_CASE("canonical polynomials are the documented ones") {
    // lexicographically smallest irreducibles
    CHECK(canonical_irreducible(2, 2) == std::vector<uint32_t>{1, 1, 1}); // x^2+x+1
    CHECK(canonical_irreducible(2, 3) == std::vector<uint32_t>{1, 1, 0, 1}); // x^3+x+1
    CHECK(canonical_irreducible(3, 2) == std::vector<uint32_t>{1, 0, 1}); // x^2+1
    CHECK(canonical_irreducible(5, 2) == std::vector<uint32_t>{2, 0, 1}); // x^2+2
    std::string list = canonical_polynomial_list(16);
    CHECK(list.find("GF(4) = GF(2^2): x^2 + x + 1") != std::string::npos);
    CHECK(list.find("GF(16) = GF(2^4): x^4 + x + 1") != std::string::npos);
}

TEST_CASE("GF(4) multiplicative group is cyclic of order 3") {
    auto f = field_make(2, 2);
    uint32_t g = f->generator();
    CHECK(f->element_order(g) == 3);
    // walk the powers of the generator: all nonzero elements appear
    std::set<uint32_t> seen;
    uint32_t x = 1;
    for (int i = 0; i < 3; ++i) {
        seen.insert(x);
        x = f->mul(x, g);
    }
    CHECK(seen.size() == 3);
    CHECK(x == 1);
}

TEST_CASE("field axioms, exhaustive to p^k <= 81") {
    for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{
             {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6},
             {3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2},
             {7, 1}, {7, 2}, {11, 1}, {13, 1}, {79, 1}}) {
        auto f = field_make(p, k);
        uint32_t q = static_cast<uint32_t>(f->size());
        REQUIRE(q <= 81);
        // distributivity and associativity over all triples
        for (uint32_t a = 0; a < q; ++a) {
            for (uint32_t b = 0; b < q; ++b) {
                for (uint32_t c = 0; c < q; ++c) {
                    CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                    CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                    CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
                }
            }
        }
        // inverses
        for (uint32_t a = 1; a < q; ++a) {
            CHECK(f->mul(a, f->inverse(a)) == 1);
            CHECK(f->add(a, f->neg(a)) == 0);
        }
        // a generator exists
        CHECK(f->element_order(f->generator()) == f->size() - 1);
    }
}

TEST_CASE("frobenius is a ring homomorphism") {
    for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{{2, 4}, {3, 3}, {3, 4}, {5, 2}}) {
        auto f = field_make(p, k);
        uint32_t q = static_cast<uint32_t>(f->size());
        for (uint32_t a = 0; a < q; ++a) {
            for (uint32_t b = 0; b < q; ++b) {
                // (a+b)^p = a^p + b^p
                CHECK(f->frobenius(f->add(a, b), 1) ==
                      f->add(f->frobenius(a, 1), f->frobenius(b, 1)));
                CHECK(f->frobenius(f->mul(a, b), 1) ==
                      f->mul(f->frobenius(a, 1), f->frobenius(b, 1)));
            }
            // full orbit returns home
            CHECK(f->frobenius(a, k) == a);
        }
    }
}

TEST_CASE("frobenius fixed points") {
    auto f2 = field_make(2, 1);
    for (uint32_t x = 0; x < 2; ++x) CHECK(f2->frobenius(x, 5) == x);
    auto f9 = field_make(3, 2);
    for (uint32_t x = 0; x < 9; ++x) CHECK(f9->frobenius(x, 2) == x);
    auto f4 = field_make(2, 2);
    uint32_t g = f4->generator();
    CHECK(f4->frobenius(g, 1) == f4->mul(g, g));
    CHECK(f4->frobenius(g, 1) != g);
}

TEST_CASE("field element wrapper and descriptor") {
    auto f = field_make(3, 2);
    FieldElement a{f, 4}, b{f, 7};
    CHECK((a + b).code == f->add(4, 7));
    CHECK((a * b).code == f->mul(4, 7));
    CHECK(frobenius(a, 2) == a);
    CHECK(f->descriptor() == "3^2:1,0,1");
}
