#ifndef GKG_NUMTHEORY_HPP
#define GKG_NUMTHEORY_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkg {

// All integer arithmetic is unsigned 64-bit with explicit overflow checks.
// Anything that would wrap throws instead.

inline uint64_t checked_mul(uint64_t a, uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) {
        throw std::overflow_error("u64 multiplication overflow");
    }
    return a * b;
}

inline uint64_t checked_add(uint64_t a, uint64_t b) {
    if (b > UINT64_MAX - a) {
        throw std::overflow_error("u64 addition overflow");
    }
    return a + b;
}

inline uint64_t checked_pow(uint64_t base, uint32_t exp) {
    uint64_t result = 1;
    while (exp > 0) {
        if (exp & 1) result = checked_mul(result, base);
        exp >>= 1;
        if (exp > 0) base = checked_mul(base, base);
    }
    return result;
}

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 1) return 0;
    uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Deterministic Miller-Rabin for the full u64 range.
// The 7-base set is a known deterministic witness set below 3.3 * 10^24.
inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        uint64_t x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

namespace detail {

// Brent's cycle-finding variant of Pollard rho. n must be composite, odd, > 1.
inline uint64_t pollard_brent(uint64_t n) {
    if (n % 2 == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1;
        uint64_t q = 1;
        int steps = 0;
        while (d == 1) {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            uint64_t diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            q = mulmod(q, diff, n);
            if (++steps % 64 == 0) {
                d = std::gcd(q, n);
                q = 1;
            }
        }
        if (d == 1) d = std::gcd(q, n);
        if (d != 1 && d != n) return d;
        // cycle collapsed without a factor: retry with the next constant
    }
}

} // namespace detail

struct PrimePower {
    uint64_t prime;
    uint32_t exponent;

    bool operator==(const PrimePower&) const = default;
};

// Exact factorization of a positive 64-bit integer, stored as sorted
// (prime, exponent) pairs. Also used as an overflow-free stand-in for
// integers too large to hold in u64 (e.g. sporadic group orders).
class Factorization {
public:
    Factorization() = default;

    explicit Factorization(std::vector<PrimePower> parts) : parts_(std::move(parts)) {
        normalize();
    }

    const std::vector<PrimePower>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    uint32_t exponent_of(uint64_t p) const {
        for (const auto& pp : parts_)
            if (pp.prime == p) return pp.exponent;
        return 0;
    }

    std::vector<uint64_t> primes() const {
        std::vector<uint64_t> out;
        out.reserve(parts_.size());
        for (const auto& pp : parts_) out.push_back(pp.prime);
        return out;
    }

    // Throws on overflow; callers that only need pi(n) should not call this.
    uint64_t value() const {
        uint64_t v = 1;
        for (const auto& pp : parts_)
            for (uint32_t i = 0; i < pp.exponent; ++i) v = checked_mul(v, pp.prime);
        return v;
    }

    Factorization& multiply(const Factorization& other) {
        for (const auto& pp : other.parts_) add_power(pp.prime, pp.exponent);
        normalize();
        return *this;
    }

    // Exact division; throws if other does not divide *this.
    Factorization& divide(const Factorization& other) {
        for (const auto& pp : other.parts_) {
            bool found = false;
            for (auto& mine : parts_) {
                if (mine.prime == pp.prime) {
                    if (mine.exponent < pp.exponent)
                        throw std::invalid_argument("Factorization::divide: not divisible");
                    mine.exponent -= pp.exponent;
                    found = true;
                    break;
                }
            }
            if (!found) throw std::invalid_argument("Factorization::divide: not divisible");
        }
        parts_.erase(std::remove_if(parts_.begin(), parts_.end(),
                                    [](const PrimePower& pp) { return pp.exponent == 0; }),
                     parts_.end());
        return *this;
    }

    uint64_t divisor_count() const {
        uint64_t d = 1;
        for (const auto& pp : parts_) d = checked_mul(d, pp.exponent + 1);
        return d;
    }

    // "2^6*3^2*5*7"; "1" for the empty product.
    std::string to_string() const {
        if (parts_.empty()) return "1";
        std::string s;
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i > 0) s += '*';
            s += std::to_string(parts_[i].prime);
            if (parts_[i].exponent > 1) {
                s += '^';
                s += std::to_string(parts_[i].exponent);
            }
        }
        return s;
    }

    bool operator==(const Factorization&) const = default;

    void add_power(uint64_t p, uint32_t e) {
        for (auto& pp : parts_) {
            if (pp.prime == p) {
                pp.exponent += e;
                return;
            }
        }
        parts_.push_back({p, e});
        std::sort(parts_.begin(), parts_.end(),
                  [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    }

private:
    void normalize() {
        std::sort(parts_.begin(), parts_.end(),
                  [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
        for (size_t i = 0; i + 1 < parts_.size(); ++i) {
            if (parts_[i].prime == parts_[i + 1].prime)
                throw std::invalid_argument("Factorization: duplicate prime");
        }
        for (const auto& pp : parts_) {
            if (pp.exponent == 0) throw std::invalid_argument("Factorization: zero exponent");
            if (!is_prime(pp.prime)) throw std::invalid_argument("Factorization: non-prime base");
        }
    }

    std::vector<PrimePower> parts_;
};

// Trial division up to 10^6, then Miller-Rabin + Pollard rho for whatever
// cofactor is left. Exact for all of u64.
inline Factorization factor(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor: n must be positive");
    std::vector<PrimePower> parts;
    auto strip = [&](uint64_t p) {
        uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) parts.push_back({p, e});
    };
    strip(2);
    strip(3);
    strip(5);
    for (uint64_t d = 7; d <= 1000000 && d * d <= n; d += 2) {
        if (d % 3 == 0 || d % 5 == 0) continue;
        strip(d);
    }
    // remaining cofactor has no prime factor below 10^6
    std::vector<uint64_t> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        uint64_t m = stack.back();
        stack.pop_back();
        if (is_prime(m)) {
            bool merged = false;
            for (auto& pp : parts) {
                if (pp.prime == m) {
                    ++pp.exponent;
                    merged = true;
                    break;
                }
            }
            if (!merged) parts.push_back({m, 1});
            continue;
        }
        uint64_t d = detail::pollard_brent(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    return Factorization(std::move(parts));
}

// (a)_r: the highest power of the prime r dividing a.
inline uint64_t r_part(uint64_t a, uint64_t r) {
    if (a == 0) throw std::invalid_argument("r_part: a must be positive");
    if (!is_prime(r)) throw std::invalid_argument("r_part: r must be prime");
    uint64_t part = 1;
    while (a % r == 0) {
        a /= r;
        part *= r;
    }
    return part;
}

// d(l): number of positive divisors.
inline uint64_t divisor_count(uint64_t l) {
    return factor(l).divisor_count();
}

inline std::vector<uint64_t> divisors(uint64_t n) {
    Factorization f = factor(n);
    std::vector<uint64_t> out{1};
    for (const auto& pp : f.parts()) {
        size_t base = out.size();
        uint64_t pe = 1;
        for (uint32_t e = 1; e <= pp.exponent; ++e) {
            pe = checked_mul(pe, pp.prime);
            for (size_t i = 0; i < base; ++i) out.push_back(checked_mul(out[i], pe));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace gkg

#endif
