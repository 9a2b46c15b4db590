#ifndef GKG_FFIELD_HPP
#define GKG_FFIELD_HPP

#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkg/numtheory.hpp"

namespace gkg {

namespace fdetail {

// Dense polynomials over GF(p), coefficients little-endian, no trailing zeros.
using Poly = std::vector<uint32_t>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + uint64_t(a[i]) * b[j]) % p;
    // reduce modulo the monic polynomial `mod`
    size_t k = mod.size() - 1;
    for (size_t i = acc.size(); i-- > k;) {
        uint64_t c = acc[i];
        if (c == 0) continue;
        acc[i] = 0;
        for (size_t j = 0; j < k; ++j) {
            uint64_t sub = (c * mod[j]) % p;
            acc[i - k + j] = (acc[i - k + j] + p - sub) % p;
        }
    }
    Poly out(acc.begin(), acc.begin() + std::min(acc.size(), k));
    Poly res(out.size());
    for (size_t i = 0; i < out.size(); ++i) res[i] = static_cast<uint32_t>(out[i]);
    trim(res);
    return res;
}

inline Poly poly_powmod_xp(const Poly& base, uint64_t exp, const Poly& mod, uint64_t p) {
    Poly result{1};
    Poly b = base;
    while (exp > 0) {
        if (exp & 1) result = poly_mulmod(result, b, mod, p);
        b = poly_mulmod(b, b, mod, p);
        exp >>= 1;
    }
    return result;
}

inline Poly poly_gcd(Poly a, Poly b, uint64_t p) {
    auto inv_mod_p = [&](uint64_t x) { return powmod(x, p - 2, p); };
    while (!b.empty()) {
        // a mod b
        Poly r = a;
        uint64_t lead_inv = inv_mod_p(b.back());
        while (r.size() >= b.size() && !r.empty()) {
            uint64_t c = (uint64_t(r.back()) * lead_inv) % p;
            size_t shift = r.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                uint64_t sub = (c * b[i]) % p;
                r[shift + i] = static_cast<uint32_t>((r[shift + i] + p - sub) % p);
            }
            trim(r);
        }
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin's irreducibility test for a monic polynomial of degree k over GF(p).
inline bool is_irreducible(const Poly& f, uint64_t p) {
    size_t k = f.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    Poly x{0, 1};
    // x^(p^k) == x mod f
    Poly t = x;
    for (size_t i = 0; i < k; ++i) t = poly_powmod_xp(t, p, f, p);
    if (t != x) return false;
    for (uint64_t r : factor(static_cast<uint64_t>(k)).primes()) {
        Poly u = x;
        for (size_t i = 0; i < k / r; ++i) u = poly_powmod_xp(u, p, f, p);
        // gcd(x^(p^(k/r)) - x, f) must be 1
        Poly diff = u;
        diff.resize(std::max(diff.size(), x.size()), 0);
        diff[1] = static_cast<uint32_t>((diff[1] + p - 1) % p);
        trim(diff);
        Poly g = poly_gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace fdetail

// Canonical defining polynomial for GF(p^k): the monic irreducible of degree k
// whose coefficient vector (c_0, ..., c_{k-1}), read as a base-p integer with
// c_0 least significant, is smallest. Returned little-endian including the
// leading 1.
inline std::vector<uint32_t> canonical_irreducible(uint64_t p, uint32_t k) {
    if (!is_prime(p)) throw std::invalid_argument("canonical_irreducible: p must be prime");
    if (k == 0) throw std::invalid_argument("canonical_irreducible: k must be positive");
    if (k == 1) return {0, 1}; // x, so GF(p) is Z/p with the obvious representation
    uint64_t count = checked_pow(p, k);
    for (uint64_t v = 0; v < count; ++v) {
        fdetail::Poly f(k + 1, 0);
        uint64_t t = v;
        for (uint32_t i = 0; i < k; ++i) {
            f[i] = static_cast<uint32_t>(t % p);
            t /= p;
        }
        f[k] = 1;
        if (fdetail::is_irreducible(f, p)) return f;
    }
    throw std::logic_error("canonical_irreducible: no irreducible found"); // unreachable
}

// Exact arithmetic in GF(p^k). Elements are codes in [0, p^k): the coefficient
// vector of the residue read as a base-p integer (constant term least
// significant). Immutable after construction. Fields with at most 2^16
// elements get full log/antilog tables; larger ones fall back to polynomial
// arithmetic.
class Field {
public:
    Field(uint64_t p, uint32_t k) : p_(p), k_(k) {
        if (!is_prime(p)) throw std::invalid_argument("field_make: characteristic must be prime");
        if (k == 0) throw std::invalid_argument("field_make: degree must be positive");
        q_ = checked_pow(p, k);
        if (q_ > (uint64_t(1) << 32)) throw std::invalid_argument("field_make: p^k above 2^32 cap");
        defining_ = canonical_irreducible(p, k);
        if (!fdetail::is_irreducible(defining_, p))
            throw std::logic_error("field_make: defining polynomial not irreducible");
        if (q_ <= (uint64_t(1) << 16)) build_log_tables();
        if (q_ <= 512) build_add_table();
    }

    uint64_t p() const { return p_; }
    uint32_t degree() const { return k_; }
    uint64_t size() const { return q_; }
    const std::vector<uint32_t>& defining_polynomial() const { return defining_; }

    uint32_t zero() const { return 0; }
    uint32_t one() const { return 1; }

    uint32_t add(uint32_t a, uint32_t b) const {
        if (p_ == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[size_t(a) * q_ + b];
        return add_digits(a, b);
    }

    uint32_t neg(uint32_t a) const {
        if (p_ == 2) return a;
        uint32_t r = 0, mul = 1;
        while (a > 0) {
            uint32_t d = a % p_;
            r += ((p_ - d) % p_) * mul;
            mul *= static_cast<uint32_t>(p_);
            a /= static_cast<uint32_t>(p_);
        }
        return r;
    }

    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        if (!log_.empty()) {
            uint64_t e = uint64_t(log_[a]) + log_[b];
            if (e >= q_ - 1) e -= q_ - 1;
            return exp_[e];
        }
        return mul_poly(a, b);
    }

    uint32_t inverse(uint32_t a) const {
        if (a == 0) throw std::domain_error("Field::inverse of zero");
        if (!log_.empty()) {
            uint64_t e = (q_ - 1 - log_[a]) % (q_ - 1);
            return exp_[e];
        }
        return pow(a, q_ - 2);
    }

    uint32_t pow(uint32_t a, uint64_t e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        e %= (q_ - 1);
        uint32_t result = 1, base = a;
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }

    // x -> x^(p^power); power = k is the identity.
    uint32_t frobenius(uint32_t a, uint32_t power) const {
        if (a == 0 || a == 1) return a;
        uint64_t e = powmod(p_, power % k_, q_ - 1);
        return pow(a, e);
    }

    // smallest code generating the multiplicative group
    uint32_t generator() const {
        if (q_ == 2) return 1;
        Factorization f = factor(q_ - 1);
        for (uint32_t c = 2; c < q_; ++c) {
            bool ok = true;
            for (uint64_t r : f.primes()) {
                if (pow(c, (q_ - 1) / r) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) return c;
        }
        throw std::logic_error("Field::generator: none found"); // unreachable
    }

    uint64_t element_order(uint32_t a) const {
        if (a == 0) throw std::domain_error("element_order of zero");
        uint64_t ord = q_ - 1;
        for (uint64_t r : factor(q_ - 1).primes()) {
            while (ord % r == 0 && pow(a, ord / r) == 1) ord /= r;
        }
        return ord;
    }

    // "p^k:c0,c1,...,ck" with the defining polynomial's coefficients
    std::string descriptor() const {
        std::ostringstream os;
        os << p_ << '^' << k_ << ':';
        for (size_t i = 0; i < defining_.size(); ++i) {
            if (i > 0) os << ',';
            os << defining_[i];
        }
        return os.str();
    }

private:
    void build_log_tables() {
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        // bootstrap multiplication by x (code p) using digit shifts + reduction
        uint32_t g = 0;
        {
            // find a generator using polynomial multiplication only
            Factorization f = factor(q_ - 1);
            for (uint32_t c = q_ == 2 ? 1 : 2; c < q_; ++c) {
                bool ok = true;
                for (uint64_t r : f.primes()) {
                    if (pow_poly(c, (q_ - 1) / r) == 1) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    g = c;
                    break;
                }
            }
        }
        uint32_t cur = 1;
        for (uint64_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = cur;
            log_[cur] = static_cast<uint32_t>(i);
            cur = mul_poly(cur, g);
        }
        if (cur != 1) throw std::logic_error("Field: generator order mismatch");
    }

    void build_add_table() {
        add_table_.assign(q_ * q_, 0);
        for (uint32_t a = 0; a < q_; ++a)
            for (uint32_t b = 0; b < q_; ++b) add_table_[size_t(a) * q_ + b] = add_digits(a, b);
    }

    uint32_t add_digits(uint32_t a, uint32_t b) const {
        uint32_t r = 0, mul = 1;
        while (a > 0 || b > 0) {
            uint32_t d = (a % p_ + b % p_) % p_;
            r += d * mul;
            mul *= static_cast<uint32_t>(p_);
            a /= static_cast<uint32_t>(p_);
            b /= static_cast<uint32_t>(p_);
        }
        return r;
    }

    uint32_t mul_poly(uint32_t a, uint32_t b) const {
        fdetail::Poly fa = decode(a), fb = decode(b);
        fdetail::Poly prod = fdetail::poly_mulmod(fa, fb, defining_, p_);
        return encode(prod);
    }

    uint32_t pow_poly(uint32_t a, uint64_t e) const {
        uint32_t result = 1, base = a;
        while (e > 0) {
            if (e & 1) result = mul_poly(result, base);
            base = mul_poly(base, base);
            e >>= 1;
        }
        return result;
    }

    fdetail::Poly decode(uint32_t code) const {
        fdetail::Poly f;
        while (code > 0) {
            f.push_back(code % static_cast<uint32_t>(p_));
            code /= static_cast<uint32_t>(p_);
        }
        return f;
    }

    uint32_t encode(const fdetail::Poly& f) const {
        uint32_t code = 0, mul = 1;
        for (uint32_t c : f) {
            code += c * mul;
            mul *= static_cast<uint32_t>(p_);
        }
        return code;
    }

    uint64_t p_;
    uint32_t k_;
    uint64_t q_;
    std::vector<uint32_t> defining_;
    std::vector<uint32_t> log_, exp_;
    std::vector<uint32_t> add_table_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr field_make(uint64_t p, uint32_t k) {
    return std::make_shared<const Field>(p, k);
}

// Plain value wrapper for callers that want element-level syntax.
struct FieldElement {
    FieldPtr field;
    uint32_t code = 0;

    FieldElement operator+(const FieldElement& o) const { return {field, field->add(code, o.code)}; }
    FieldElement operator-(const FieldElement& o) const { return {field, field->sub(code, o.code)}; }
    FieldElement operator*(const FieldElement& o) const { return {field, field->mul(code, o.code)}; }
    bool operator==(const FieldElement& o) const { return code == o.code; }
};

inline FieldElement frobenius(const FieldElement& x, uint32_t power) {
    return {x.field, x.field->frobenius(x.code, power)};
}

// Documentation helper: the canonical defining polynomials for all prime
// powers up to qmax, one per line, e.g. "GF(9) = GF(3^2): x^2 + 1".
inline std::string canonical_polynomial_list(uint64_t qmax) {
    std::ostringstream os;
    for (uint64_t p = 2; p <= qmax; ++p) {
        if (!is_prime(p)) continue;
        for (uint32_t k = 1;; ++k) {
            uint64_t q;
            try {
                q = checked_pow(p, k);
            } catch (const std::overflow_error&) {
                break;
            }
            if (q > qmax) break;
            auto f = canonical_irreducible(p, k);
            os << "GF(" << q << ") = GF(" << p << '^' << k << "): ";
            bool first = true;
            for (size_t i = f.size(); i-- > 0;) {
                if (f[i] == 0) continue;
                if (!first) os << " + ";
                first = false;
                if (i == 0 || f[i] != 1) os << f[i];
                if (i >= 1) {
                    os << 'x';
                    if (i > 1) os << '^' << i;
                }
            }
            os << '\n';
        }
    }
    return os.str();
}

} // namespace gkg

#endif
