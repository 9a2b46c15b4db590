#include <doctest.h>

#include <random>

#include "gkg/numtheory.hpp"

using namespace gkg;

namespace {

// independent oracle: plain trial division, no shared code with factor()
std::vector<std::pair<uint64_t, uint32_t>> trial_division(uint64_t n) {
    std::vector<std::pair<uint64_t, uint32_t>> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        uint32_t e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

} // namespace

TEST_CASE("factor basics") {
    CHECK(factor(1).empty());
    CHECK(factor(1).to_string() == "1");
    CHECK(factor(360).to_string() == "2^3*3^2*5");
    // |L3(4)| = 20160
    CHECK(factor(20160).to_string() == "2^6*3^2*5*7");
    CHECK_THROWS_AS(factor(0), std::invalid_argument);
}

TEST_CASE("factor agrees with trial division") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 400; ++i) {
        uint64_t n = rng() % 1000000 + 1;
        auto expect = trial_division(n);
        auto got = factor(n);
        REQUIRE(got.parts().size() == expect.size());
        for (size_t j = 0; j < expect.size(); ++j) {
            CHECK(got.parts()[j].prime == expect[j].first);
            CHECK(got.parts()[j].exponent == expect[j].second);
        }
        CHECK(got.value() == n);
    }
    // product reconstruction on a dense small range
    for (uint64_t n = 1; n <= 5000; ++n) CHECK(factor(n).value() == n);
}

TEST_CASE("factor handles large semiprimes") {
    uint64_t a = 1000003, b = 998244353;
    Factorization f = factor(a * b);
    REQUIRE(f.parts().size() == 2);
    CHECK(f.parts()[0].prime == a);
    CHECK(f.parts()[1].prime == b);
}

TEST_CASE("is_prime on known values") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));        // Carmichael
    CHECK(is_prime(2147483647ull));    // 2^31 - 1
    CHECK(is_prime(2305843009213693951ull)); // 2^61 - 1
    CHECK_FALSE(is_prime((1ull << 32) + 1));
}

TEST_CASE("r_part") {
    CHECK(r_part(24, 2) == 8);
    CHECK(r_part(3, 3) == 3); // the (q - e)_3 = 3 case at q = 4
    CHECK(r_part(35, 2) == 1);
    CHECK_THROWS_AS(r_part(10, 4), std::invalid_argument);
    CHECK_THROWS_AS(r_part(0, 2), std::invalid_argument);
}

TEST_CASE("r_part is multiplicative") {
    std::mt19937_64 rng(7);
    const uint64_t primes[] = {2, 3, 5, 7, 11};
    for (int i = 0; i < 300; ++i) {
        uint64_t a = rng() % 100000 + 1;
        uint64_t b = rng() % 100000 + 1;
        uint64_t r = primes[rng() % 5];
        CHECK(r_part(a, r) * r_part(b, r) == r_part(a * b, r));
    }
}

TEST_CASE("divisor_count") {
    CHECK(divisor_count(1) == 1);
    CHECK(divisor_count(12) == 6);
    CHECK(divisor_count(1ull << 10) == 11);
    // oracle: enumerate divisors directly
    for (uint64_t l = 1; l <= 300; ++l) {
        uint64_t count = 0;
        for (uint64_t d = 1; d <= l; ++d)
            if (l % d == 0) ++count;
        CHECK(divisor_count(l) == count);
    }
}

TEST_CASE("divisor_count is multiplicative on coprime arguments") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        uint64_t a = rng() % 3000 + 1;
        uint64_t b = rng() % 3000 + 1;
        if (std::gcd(a, b) != 1) continue;
        CHECK(divisor_count(a) * divisor_count(b) == divisor_count(a * b));
    }
}

TEST_CASE("divisors are sorted and complete") {
    auto d = divisors(360);
    CHECK(d.size() == 24);
    CHECK(d.front() == 1);
    CHECK(d.back() == 360);
    CHECK(std::is_sorted(d.begin(), d.end()));
}

TEST_CASE("checked arithmetic rejects overflow") {
    CHECK_THROWS_AS(checked_mul(UINT64_MAX, 2), std::overflow_error);
    CHECK_THROWS_AS(checked_pow(2, 64), std::overflow_error);
    CHECK(checked_pow(2, 63) == (1ull << 63));
    CHECK_THROWS_AS(Factorization({{4, 1}}), std::invalid_argument); // non-prime base
}
