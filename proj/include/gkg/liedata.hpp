#ifndef GKG_LIEDATA_HPP
#define GKG_LIEDATA_HPP

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gkg/group.hpp"
#include "gkg/numtheory.hpp"

namespace gkg {

struct SpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Symbolic identifier of a finite simple group of Lie type. The twist is part
// of the family token (A vs 2A vs 3D); rank is always the untwisted Dynkin
// rank, and q the defining field parameter (for 2A_n(q) the matrices live over
// GF(q^2), the spec still carries q).
struct GroupSpec {
    uint32_t twist = 1; // 1, 2 or 3
    char letter = 'A';  // A B C D E F G
    uint32_t rank = 1;
    uint64_t q = 2;

    std::string to_string() const {
        std::string s;
        if (twist > 1) s += std::to_string(twist);
        s += letter;
        s += std::to_string(rank);
        s += '(';
        s += std::to_string(q);
        s += ')';
        return s;
    }

    bool operator==(const GroupSpec&) const = default;
    auto operator<=>(const GroupSpec&) const = default;
};

// "A1(9)", "2A2(3)", "3D4(2)", "E6(4)", "2B2(8)"
inline GroupSpec parse_group_spec(const std::string& text) {
    GroupSpec s;
    size_t i = 0;
    auto fail = [&]() { throw SpecError("bad group spec: " + text); };
    if (i < text.size() && (text[i] == '2' || text[i] == '3')) {
        s.twist = text[i] - '0';
        ++i;
    }
    if (i >= text.size() || text[i] < 'A' || text[i] > 'G') fail();
    s.letter = text[i++];
    size_t j = i;
    while (j < text.size() && isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) fail();
    s.rank = static_cast<uint32_t>(std::stoul(text.substr(i, j - i)));
    if (j >= text.size() || text[j] != '(') fail();
    size_t close = text.find(')', j);
    if (close == std::string::npos || close + 1 != text.size()) fail();
    s.q = std::stoull(text.substr(j + 1, close - j - 1));
    if (s.q < 2 || factor(s.q).parts().size() != 1)
        throw SpecError("field size is not a prime power: " + text);
    return s;
}

// (p, l) with q = p^l; throws on non prime powers.
inline std::pair<uint64_t, uint32_t> spec_field(const GroupSpec& s) {
    Factorization f = factor(s.q);
    if (f.parts().size() != 1 || s.q < 2)
        throw SpecError(s.to_string() + ": q is not a prime power");
    return {f.parts()[0].prime, f.parts()[0].exponent};
}

// Validity including the simplicity exceptions: specs naming non-simple or
// misparametrized groups are rejected.
inline void validate_spec(const GroupSpec& s) {
    auto [p, l] = spec_field(s);
    auto fail = [&](const std::string& why) { throw SpecError(s.to_string() + ": " + why); };
    switch (s.twist * 100 + s.letter) {
        case 100 + 'A':
            if (s.rank < 1) fail("rank must be >= 1");
            if (s.rank == 1 && s.q <= 3) fail("A1(2), A1(3) are solvable");
            break;
        case 200 + 'A':
            if (s.rank < 2) fail("2A needs rank >= 2");
            if (s.rank == 2 && s.q == 2) fail("2A2(2) is solvable");
            break;
        case 100 + 'B':
            if (s.rank < 2) fail("B needs rank >= 2");
            if (s.rank == 2 && s.q == 2) fail("B2(2) is not simple");
            break;
        case 100 + 'C':
            if (s.rank < 3) fail("C needs rank >= 3 (C2 = B2)");
            break;
        case 100 + 'D':
            if (s.rank < 4) fail("D needs rank >= 4");
            break;
        case 200 + 'D':
            if (s.rank < 4) fail("2D needs rank >= 4");
            break;
        case 300 + 'D':
            if (s.rank != 4) fail("3D4 has rank 4");
            break;
        case 100 + 'E':
            if (s.rank < 6 || s.rank > 8) fail("E rank must be 6, 7 or 8");
            break;
        case 200 + 'E':
            if (s.rank != 6) fail("2E6 has rank 6");
            break;
        case 100 + 'F':
            if (s.rank != 4) fail("F4 has rank 4");
            break;
        case 200 + 'F':
            if (s.rank != 4) fail("2F4 has rank 4");
            if (p != 2 || l % 2 == 0) fail("2F4 needs q = 2^l, l odd");
            if (s.q == 2) fail("2F4(2) is not simple");
            break;
        case 100 + 'G':
            if (s.rank != 2) fail("G2 has rank 2");
            if (s.q == 2) fail("G2(2) is not simple");
            break;
        case 200 + 'B':
            if (s.rank != 2) fail("2B2 has rank 2");
            if (p != 2 || l % 2 == 0 || l < 3) fail("2B2 needs q = 2^l, l odd >= 3");
            break;
        case 200 + 'G':
            if (s.rank != 2) fail("2G2 has rank 2");
            if (p != 3 || l % 2 == 0) fail("2G2 needs q = 3^l, l odd");
            if (s.q == 3) fail("2G2(3) is not simple");
            break;
        default:
            fail("unknown family");
    }
}

// --- cyclotomic polynomials -------------------------------------------------

namespace ldetail {

// Coefficients of the n-th cyclotomic polynomial, little-endian. Computed by
// dividing x^n - 1 by the lower-order cyclotomics; exact in int64 far beyond
// the indices used here. The cache lock keeps concurrent first uses safe
// (std::map references stay valid across inserts).
inline const std::vector<int64_t>& cyclotomic_coeffs(uint32_t n) {
    static std::map<uint32_t, std::vector<int64_t>> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    std::vector<int64_t> poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1; // x^n - 1
    for (uint32_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const std::vector<int64_t> div = cyclotomic_coeffs(d);
        // exact polynomial division, divisor is monic
        std::vector<int64_t> quot(poly.size() - div.size() + 1, 0);
        std::vector<int64_t> rem = poly;
        for (size_t i = quot.size(); i-- > 0;) {
            int64_t c = rem[i + div.size() - 1];
            quot[i] = c;
            if (c == 0) continue;
            for (size_t j = 0; j < div.size(); ++j) rem[i + j] -= c * div[j];
        }
        for (int64_t c : rem)
            if (c != 0) throw std::logic_error("cyclotomic division not exact");
        poly = std::move(quot);
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(n, std::move(poly)).first->second;
}

} // namespace ldetail

// Phi_n(q), exact, with overflow detection.
inline uint64_t cyclotomic_value(uint32_t n, uint64_t q) {
    const auto& c = ldetail::cyclotomic_coeffs(n);
    __int128 acc = 0;
    const __int128 limit = static_cast<__int128>(UINT64_MAX);
    for (size_t i = c.size(); i-- > 0;) {
        acc = acc * static_cast<__int128>(q) + c[i];
        if (acc > limit || acc < -limit) throw std::overflow_error("cyclotomic_value overflow");
    }
    if (acc <= 0) throw std::logic_error("cyclotomic_value: nonpositive");
    return static_cast<uint64_t>(acc);
}

namespace ldetail {

struct OrderShape {
    uint32_t q_exponent = 0;               // power of q in front
    std::map<uint32_t, uint32_t> cyclo;    // Phi_d(q) multiplicities
    uint64_t diagonal = 1;                 // divisor d shared with the center
};

inline void add_minus_term(OrderShape& shape, uint32_t i) {
    // q^i - 1 = prod_{d | i} Phi_d(q)
    for (uint32_t d = 1; d <= i; ++d)
        if (i % d == 0) shape.cyclo[d] += 1;
}

inline void add_plus_term(OrderShape& shape, uint32_t i) {
    // q^i + 1 = prod_{d | 2i, d not | i} Phi_d(q)
    for (uint32_t d = 1; d <= 2 * i; ++d)
        if ((2 * i) % d == 0 && i % d != 0) shape.cyclo[d] += 1;
}

inline uint64_t gcd4_power(uint64_t q, uint32_t n, bool plus) {
    // gcd(4, q^n -+ 1) via arithmetic mod 4
    uint64_t qn = powmod(q % 4, n, 4);
    uint64_t v = plus ? (qn + 1) % 4 : (qn + 3) % 4;
    if (v == 0) return 4;
    return std::gcd<uint64_t>(4, v);
}

inline OrderShape order_shape(const GroupSpec& s) {
    OrderShape shape;
    uint32_t n = s.rank;
    uint64_t q = s.q;
    switch (s.twist * 100 + s.letter) {
        case 100 + 'A':
            shape.q_exponent = n * (n + 1) / 2;
            for (uint32_t i = 2; i <= n + 1; ++i) add_minus_term(shape, i);
            shape.diagonal = std::gcd<uint64_t>(n + 1, q - 1);
            break;
        case 200 + 'A':
            shape.q_exponent = n * (n + 1) / 2;
            for (uint32_t i = 2; i <= n + 1; ++i) {
                if (i % 2 == 0) add_minus_term(shape, i);
                else add_plus_term(shape, i);
            }
            shape.diagonal = std::gcd<uint64_t>(n + 1, q + 1);
            break;
        case 100 + 'B':
        case 100 + 'C':
            shape.q_exponent = n * n;
            for (uint32_t i = 1; i <= n; ++i) add_minus_term(shape, 2 * i);
            shape.diagonal = std::gcd<uint64_t>(2, q - 1);
            break;
        case 100 + 'D':
            shape.q_exponent = n * (n - 1);
            add_minus_term(shape, n);
            for (uint32_t i = 1; i + 1 <= n; ++i) add_minus_term(shape, 2 * i);
            shape.diagonal = gcd4_power(q, n, false);
            break;
        case 200 + 'D':
            shape.q_exponent = n * (n - 1);
            add_plus_term(shape, n);
            for (uint32_t i = 1; i + 1 <= n; ++i) add_minus_term(shape, 2 * i);
            shape.diagonal = gcd4_power(q, n, true);
            break;
        case 300 + 'D':
            shape.q_exponent = 12;
            shape.cyclo = {{1, 2}, {2, 2}, {3, 2}, {6, 2}, {12, 1}};
            break;
        case 100 + 'G':
            shape.q_exponent = 6;
            add_minus_term(shape, 6);
            add_minus_term(shape, 2);
            break;
        case 100 + 'F':
            shape.q_exponent = 24;
            for (uint32_t i : {2, 6, 8, 12}) add_minus_term(shape, i);
            break;
        case 100 + 'E':
            if (n == 6) {
                shape.q_exponent = 36;
                for (uint32_t i : {2, 5, 6, 8, 9, 12}) add_minus_term(shape, i);
                shape.diagonal = std::gcd<uint64_t>(3, q - 1);
            } else if (n == 7) {
                shape.q_exponent = 63;
                for (uint32_t i : {2, 6, 8, 10, 12, 14, 18}) add_minus_term(shape, i);
                shape.diagonal = std::gcd<uint64_t>(2, q - 1);
            } else {
                shape.q_exponent = 120;
                for (uint32_t i : {2, 8, 12, 14, 18, 20, 24, 30}) add_minus_term(shape, i);
            }
            break;
        case 200 + 'E':
            shape.q_exponent = 36;
            for (uint32_t i : {2, 6, 8, 12}) add_minus_term(shape, i);
            add_plus_term(shape, 5);
            add_plus_term(shape, 9);
            shape.diagonal = std::gcd<uint64_t>(3, q + 1);
            break;
        case 200 + 'B':
            shape.q_exponent = 2;
            add_plus_term(shape, 2);
            add_minus_term(shape, 1);
            break;
        case 200 + 'G':
            shape.q_exponent = 3;
            add_plus_term(shape, 3);
            add_minus_term(shape, 1);
            break;
        case 200 + 'F':
            shape.q_exponent = 12;
            add_plus_term(shape, 6);
            add_minus_term(shape, 4);
            add_plus_term(shape, 3);
            add_minus_term(shape, 1);
            break;
    }
    return shape;
}

} // namespace ldetail

// Exact factored order of the simple group named by the spec, diagonal
// divisor included. Exact even when the order itself exceeds u64.
inline Factorization order_of(const GroupSpec& s) {
    validate_spec(s);
    auto [p, l] = spec_field(s);
    ldetail::OrderShape shape = ldetail::order_shape(s);
    Factorization order;
    order.add_power(p, shape.q_exponent * l);
    for (const auto& [d, mult] : shape.cyclo) {
        uint64_t value = cyclotomic_value(d, s.q);
        if (value == 1) continue;
        Factorization part = factor(value);
        for (uint32_t i = 0; i < mult; ++i) order.multiply(part);
    }
    order.divide(factor(shape.diagonal));
    return order;
}

inline std::vector<uint64_t> spec_pi(const GroupSpec& s) { return order_of(s).primes(); }

// Order as a plain u64, without factoring anything; throws std::overflow_error
// when the order does not fit.
inline uint64_t spec_order_value(const GroupSpec& s) {
    validate_spec(s);
    ldetail::OrderShape shape = ldetail::order_shape(s);
    auto [p, l] = spec_field(s);
    (void)p;
    (void)l;
    uint64_t v = checked_pow(s.q, shape.q_exponent);
    for (const auto& [d, mult] : shape.cyclo) {
        uint64_t value = cyclotomic_value(d, s.q);
        for (uint32_t i = 0; i < mult; ++i) v = checked_mul(v, value);
    }
    return v / shape.diagonal;
}

// --- outer automorphism structure -------------------------------------------

enum class PhiGammaShape { Zl, ZlxZ2, ZlxSym3, Z2l, Z3l };
enum class GammaAction { None, Invert, SpinSwap, Sym3Perm };

inline const char* phigamma_name(PhiGammaShape s) {
    switch (s) {
        case PhiGammaShape::Zl: return "Zl";
        case PhiGammaShape::ZlxZ2: return "ZlxZ2";
        case PhiGammaShape::ZlxSym3: return "ZlxSym3";
        case PhiGammaShape::Z2l: return "Z2l";
        case PhiGammaShape::Z3l: return "Z3l";
    }
    return "?";
}

// Decomposition Out S = Outdiag S >< Phi Gamma with enough action data to
// materialize Out S as a concrete group.
struct OutStructure {
    std::vector<uint32_t> outdiag_factors; // cyclic factor orders; empty = trivial
    uint64_t outdiag_order = 1;
    PhiGammaShape shape = PhiGammaShape::Zl;
    uint32_t l = 1;   // q = p^l
    uint64_t p = 2;   // phi acts on Outdiag by multiplication with p
    GammaAction gamma = GammaAction::None;
    uint64_t phigamma_order = 1;
    uint64_t out_order = 1;
    bool suzuki_ree = false;
    std::string source;
};

// The per-family table, also shipped as data/out_structure.tbl. Columns:
//   family | rank pattern | condition | outdiag | phigamma | gamma | phi | source
// First matching row wins.
inline const std::string& out_structure_table_text() {
    static const std::string text =
        "# Outer automorphism structure of the simple groups of Lie type:\n"
        "# Out S = Outdiag S x| Phi_S Gamma_S (split per Steinberg's theorem,\n"
        "# Gorenstein-Lyons-Solomon, The Classification of the Finite Simple Groups,\n"
        "# Number 3, Theorem 2.5.12; cross-checked against the Atlas Out columns).\n"
        "# Columns: family | rank | condition | outdiag | phigamma | gamma-action | phi-action | source\n"
        "# Vocabulary:\n"
        "#   outdiag: 1, gcd(m,q-1), gcd(m,q+1) with m in {2,3,n+1}, spin(q^n-1), spin(q^n+1);\n"
        "#     spin(...) means gcd(4, q^n -+ 1), a Klein group for untwisted D with even rank\n"
        "#     and q odd, cyclic otherwise.\n"
        "#   phigamma: Zl, ZlxZ2, ZlxSym3 (field x graph), Z2l, Z3l (twisted/extraordinary,\n"
        "#     cyclic generated by a field-graph automorphism), with q = p^l.\n"
        "#   gamma-action on Outdiag: invert, spinswap (swap the two half-spin classes,\n"
        "#     inversion in the cyclic case), sym3 (permute the three involutions), or -.\n"
        "#   phi-action on Outdiag: multp (multiplication by p) or -.\n"
        "A  | n=1  | -   | gcd(2,q-1)   | Zl      | -        | multp | GLS 2.5.12; Out(L2(p^l)) = Z(2,q-1) x Zl\n"
        "A  | n>=2 | -   | gcd(n+1,q-1) | ZlxZ2   | invert   | multp | GLS 2.5.12; graph aut = inverse-transpose\n"
        "2A | n>=2 | -   | gcd(n+1,q+1) | Z2l     | -        | multp | GLS 2.5.12; Phi = <x -> x^p> on GF(q^2)\n"
        "B  | n=2  | p=2 | 1            | Z2l     | -        | -     | GLS 2.5.12; extraordinary graph aut of Sp4(2^l)\n"
        "B  | n>=2 | -   | gcd(2,q-1)   | Zl      | -        | multp | GLS 2.5.12\n"
        "C  | n>=3 | -   | gcd(2,q-1)   | Zl      | -        | multp | GLS 2.5.12\n"
        "D  | n=4  | -   | spin(q^n-1)  | ZlxSym3 | sym3     | multp | GLS 2.5.12; triality\n"
        "D  | n>=5 | -   | spin(q^n-1)  | ZlxZ2   | spinswap | multp | GLS 2.5.12; gamma swaps the half-spin classes\n"
        "2D | n>=4 | -   | spin(q^n+1)  | Z2l     | -        | multp | GLS 2.5.12\n"
        "3D | n=4  | -   | 1            | Z3l     | -        | -     | GLS 2.5.12\n"
        "E  | n=6  | -   | gcd(3,q-1)   | ZlxZ2   | invert   | multp | GLS 2.5.12\n"
        "2E | n=6  | -   | gcd(3,q+1)   | Z2l     | -        | multp | GLS 2.5.12\n"
        "E  | n=7  | -   | gcd(2,q-1)   | Zl      | -        | multp | GLS 2.5.12\n"
        "E  | n=8  | -   | 1            | Zl      | -        | -     | GLS 2.5.12\n"
        "F  | n=4  | p=2 | 1            | Z2l     | -        | -     | GLS 2.5.12; extraordinary graph aut of F4(2^l)\n"
        "F  | n=4  | -   | 1            | Zl      | -        | -     | GLS 2.5.12\n"
        "G  | n=2  | p=3 | 1            | Z2l     | -        | -     | GLS 2.5.12; extraordinary graph aut of G2(3^l)\n"
        "G  | n=2  | -   | 1            | Zl      | -        | -     | GLS 2.5.12\n"
        "2B | n=2  | p=2 | 1            | Zl      | -        | -     | GLS 2.5.12; Suzuki groups, field auts only\n"
        "2G | n=2  | p=3 | 1            | Zl      | -        | -     | GLS 2.5.12; Ree groups, field auts only\n"
        "2F | n=4  | p=2 | 1            | Zl      | -        | -     | GLS 2.5.12; Ree groups, field auts only\n";
    return text;
}

namespace ldetail {

struct OutRule {
    std::string family;  // "A", "2A", ...
    uint32_t rank_min = 0;
    bool rank_exact = false;
    uint64_t p_equals = 0; // 0 = no condition
    std::string outdiag, phigamma, gamma, phi, source;
};

inline std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

inline const std::vector<OutRule>& out_rules() {
    static const std::vector<OutRule> rules = [] {
        std::vector<OutRule> out;
        std::istringstream is(out_structure_table_text());
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::vector<std::string> cols;
            size_t pos = 0;
            while (true) {
                size_t bar = line.find('|', pos);
                if (bar == std::string::npos) {
                    cols.push_back(strip(line.substr(pos)));
                    break;
                }
                cols.push_back(strip(line.substr(pos, bar - pos)));
                pos = bar + 1;
            }
            if (cols.size() != 8) throw std::logic_error("out table: bad row: " + line);
            OutRule r;
            r.family = cols[0];
            std::string rk = cols[1];
            if (rk.rfind("n=", 0) == 0) {
                r.rank_exact = true;
                r.rank_min = static_cast<uint32_t>(std::stoul(rk.substr(2)));
            } else if (rk.rfind("n>=", 0) == 0) {
                r.rank_min = static_cast<uint32_t>(std::stoul(rk.substr(3)));
            } else {
                throw std::logic_error("out table: bad rank pattern: " + rk);
            }
            if (cols[2] != "-") {
                if (cols[2].rfind("p=", 0) != 0)
                    throw std::logic_error("out table: bad condition: " + cols[2]);
                r.p_equals = std::stoull(cols[2].substr(2));
            }
            r.outdiag = cols[3];
            r.phigamma = cols[4];
            r.gamma = cols[5];
            r.phi = cols[6];
            r.source = cols[7];
            out.push_back(std::move(r));
        }
        return out;
    }();
    return rules;
}

inline std::string family_token(const GroupSpec& s) {
    std::string t;
    if (s.twist > 1) t += std::to_string(s.twist);
    t += s.letter;
    return t;
}

inline std::pair<uint64_t, std::vector<uint32_t>> eval_outdiag(const std::string& token,
                                                               const GroupSpec& s) {
    uint64_t n = s.rank;
    uint64_t q = s.q;
    uint64_t d = 1;
    bool maybe_klein = false;
    if (token == "1") {
        d = 1;
    } else if (token == "gcd(2,q-1)") {
        d = std::gcd<uint64_t>(2, q - 1);
    } else if (token == "gcd(3,q-1)") {
        d = std::gcd<uint64_t>(3, q - 1);
    } else if (token == "gcd(3,q+1)") {
        d = std::gcd<uint64_t>(3, q + 1);
    } else if (token == "gcd(n+1,q-1)") {
        d = std::gcd<uint64_t>(n + 1, q - 1);
    } else if (token == "gcd(n+1,q+1)") {
        d = std::gcd<uint64_t>(n + 1, q + 1);
    } else if (token == "spin(q^n-1)") {
        d = gcd4_power(q, s.rank, false);
        maybe_klein = s.rank % 2 == 0;
    } else if (token == "spin(q^n+1)") {
        d = gcd4_power(q, s.rank, true);
    } else {
        throw std::logic_error("out table: bad outdiag token: " + token);
    }
    std::vector<uint32_t> factors;
    if (d == 4 && maybe_klein) factors = {2, 2};
    else if (d > 1) factors = {static_cast<uint32_t>(d)};
    return {d, factors};
}

} // namespace ldetail

inline OutStructure out_structure(const GroupSpec& s) {
    validate_spec(s);
    auto [p, l] = spec_field(s);
    const std::string fam = ldetail::family_token(s);
    for (const auto& r : ldetail::out_rules()) {
        if (r.family != fam) continue;
        if (r.rank_exact ? s.rank != r.rank_min : s.rank < r.rank_min) continue;
        if (r.p_equals != 0 && p != r.p_equals) continue;
        OutStructure out;
        auto [d, factors] = ldetail::eval_outdiag(r.outdiag, s);
        out.outdiag_order = d;
        out.outdiag_factors = std::move(factors);
        out.l = l;
        out.p = p;
        if (r.phigamma == "Zl") {
            out.shape = PhiGammaShape::Zl;
            out.phigamma_order = l;
        } else if (r.phigamma == "ZlxZ2") {
            out.shape = PhiGammaShape::ZlxZ2;
            out.phigamma_order = 2ull * l;
        } else if (r.phigamma == "ZlxSym3") {
            out.shape = PhiGammaShape::ZlxSym3;
            out.phigamma_order = 6ull * l;
        } else if (r.phigamma == "Z2l") {
            out.shape = PhiGammaShape::Z2l;
            out.phigamma_order = 2ull * l;
        } else if (r.phigamma == "Z3l") {
            out.shape = PhiGammaShape::Z3l;
            out.phigamma_order = 3ull * l;
        } else {
            throw std::logic_error("out table: bad phigamma token: " + r.phigamma);
        }
        if (r.gamma == "-") out.gamma = GammaAction::None;
        else if (r.gamma == "invert") out.gamma = GammaAction::Invert;
        else if (r.gamma == "spinswap") out.gamma = GammaAction::SpinSwap;
        else if (r.gamma == "sym3") out.gamma = GammaAction::Sym3Perm;
        else throw std::logic_error("out table: bad gamma token: " + r.gamma);
        out.out_order = checked_mul(out.outdiag_order, out.phigamma_order);
        out.suzuki_ree = fam == "2B" || fam == "2G" || fam == "2F";
        out.source = r.source;
        return out;
    }
    throw SpecError(s.to_string() + ": no out-structure table row matches");
}

// --- materializing Out S ------------------------------------------------------

namespace ldetail {

// Sym3 as GL(2,2) acting on the Klein group; index 0 is the identity.
inline const std::array<std::array<uint32_t, 4>, 6>& sym3_matrices() {
    // each entry: row-major 2x2 bits (a,b;c,d)
    static const std::array<std::array<uint32_t, 4>, 6> mats = {{
        {1, 0, 0, 1},
        {1, 1, 0, 1},
        {0, 1, 1, 0},
        {0, 1, 1, 1},
        {1, 0, 1, 1},
        {1, 1, 1, 0},
    }};
    return mats;
}

inline uint32_t sym3_mul(uint32_t a, uint32_t b) {
    const auto& m = sym3_matrices();
    std::array<uint32_t, 4> prod{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            uint32_t acc = 0;
            for (int k = 0; k < 2; ++k) acc ^= m[a][i * 2 + k] & m[b][k * 2 + j];
            prod[i * 2 + j] = acc;
        }
    for (uint32_t i = 0; i < 6; ++i)
        if (m[i] == prod) return i;
    throw std::logic_error("sym3_mul: product not found");
}

inline uint32_t sym3_inverse(uint32_t a) {
    for (uint32_t i = 0; i < 6; ++i)
        if (sym3_mul(a, i) == 0) return i;
    throw std::logic_error("sym3_inverse: not found");
}

// Element layout: [outdiag components..., shape-specific tail]
//   Zl:       tail = [f]
//   ZlxZ2:    tail = [f, g]        g in {0,1}
//   ZlxSym3:  tail = [f, s]        s in 0..5
//   Z2l/Z3l:  tail = [t]
class OutOps final : public GroupOps {
public:
    explicit OutOps(const OutStructure& st) : st_(st) {}

    size_t diag_width() const { return st_.outdiag_factors.size(); }
    size_t tail_width() const {
        switch (st_.shape) {
            case PhiGammaShape::Zl: return 1;
            case PhiGammaShape::ZlxZ2:
            case PhiGammaShape::ZlxSym3: return 2;
            case PhiGammaShape::Z2l:
            case PhiGammaShape::Z3l: return 1;
        }
        return 0;
    }

    Element identity() const override {
        return Element(diag_width() + tail_width(), 0);
    }

    Element mul(const Element& a, const Element& b) const override {
        std::vector<uint32_t> bd(b.begin(), b.begin() + diag_width());
        act_on_diag(a, bd);
        Element out;
        out.reserve(a.size());
        for (size_t i = 0; i < diag_width(); ++i) {
            uint32_t d = st_.outdiag_factors[i];
            out.push_back((a[i] + bd[i]) % d);
        }
        tail_mul(a, b, out);
        return out;
    }

    Element inverse(const Element& a) const override {
        // brute inverse via order (tiny groups); keeps the action code in one place
        Element id = identity();
        Element cur = a;
        Element prev = id;
        while (cur != id) {
            prev = cur;
            cur = mul(cur, a);
        }
        return prev == id && a != id ? a : prev;
    }

private:
    // image of b's diag part under the PhiGamma part of a
    void act_on_diag(const Element& a, std::vector<uint32_t>& bd) const {
        if (diag_width() == 0) return;
        uint64_t phi_exp = 0;
        uint32_t gamma_part = 0; // meaning depends on shape
        switch (st_.shape) {
            case PhiGammaShape::Zl:
                phi_exp = a[diag_width()];
                break;
            case PhiGammaShape::ZlxZ2:
            case PhiGammaShape::ZlxSym3:
                phi_exp = a[diag_width()];
                gamma_part = a[diag_width() + 1];
                break;
            case PhiGammaShape::Z2l:
            case PhiGammaShape::Z3l:
                phi_exp = a[diag_width()];
                break;
        }
        // phi acts by multiplication with p (trivial on exponent-2 factors)
        for (size_t i = 0; i < diag_width(); ++i) {
            uint32_t d = st_.outdiag_factors[i];
            bd[i] = static_cast<uint32_t>((bd[i] * powmod(st_.p % d, phi_exp, d)) % d);
        }
        if (gamma_part == 0) return;
        switch (st_.gamma) {
            case GammaAction::None:
                break;
            case GammaAction::Invert:
                for (size_t i = 0; i < diag_width(); ++i) {
                    uint32_t d = st_.outdiag_factors[i];
                    bd[i] = (d - bd[i]) % d;
                }
                break;
            case GammaAction::SpinSwap:
                if (diag_width() == 2) {
                    bd[0] = bd[0] ^ bd[1]; // e1 fixed, e2 -> e1 + e2
                } else {
                    for (size_t i = 0; i < diag_width(); ++i) {
                        uint32_t d = st_.outdiag_factors[i];
                        bd[i] = (d - bd[i]) % d;
                    }
                }
                break;
            case GammaAction::Sym3Perm: {
                const auto& m = sym3_matrices()[gamma_part];
                uint32_t x = bd[0], y = bd[1];
                bd[0] = (m[0] & x) ^ (m[1] & y);
                bd[1] = (m[2] & x) ^ (m[3] & y);
                break;
            }
        }
    }

    void tail_mul(const Element& a, const Element& b, Element& out) const {
        size_t dw = diag_width();
        switch (st_.shape) {
            case PhiGammaShape::Zl:
                out.push_back((a[dw] + b[dw]) % st_.l);
                break;
            case PhiGammaShape::ZlxZ2:
                out.push_back((a[dw] + b[dw]) % st_.l);
                out.push_back((a[dw + 1] + b[dw + 1]) % 2);
                break;
            case PhiGammaShape::ZlxSym3:
                out.push_back((a[dw] + b[dw]) % st_.l);
                out.push_back(sym3_mul(a[dw + 1], b[dw + 1]));
                break;
            case PhiGammaShape::Z2l:
                out.push_back((a[dw] + b[dw]) % (2 * st_.l));
                break;
            case PhiGammaShape::Z3l:
                out.push_back((a[dw] + b[dw]) % (3 * st_.l));
                break;
        }
    }

    OutStructure st_;
};

} // namespace ldetail

constexpr uint64_t kOutMaterializeCap = 10'000;

// Out S as an abstract concrete group built from the table data.
inline ConcreteGroup materialize_out(const OutStructure& st) {
    if (st.out_order > kOutMaterializeCap)
        throw CapExceeded("materialize_out: structure too large");
    auto ops = std::make_shared<const ldetail::OutOps>(st);
    std::vector<Element> elems;
    // enumerate tuples: diag components x tail components
    std::vector<uint32_t> radices;
    for (uint32_t d : st.outdiag_factors) radices.push_back(d);
    switch (st.shape) {
        case PhiGammaShape::Zl:
            radices.push_back(st.l);
            break;
        case PhiGammaShape::ZlxZ2:
            radices.push_back(st.l);
            radices.push_back(2);
            break;
        case PhiGammaShape::ZlxSym3:
            radices.push_back(st.l);
            radices.push_back(6);
            break;
        case PhiGammaShape::Z2l:
            radices.push_back(2 * st.l);
            break;
        case PhiGammaShape::Z3l:
            radices.push_back(3 * st.l);
            break;
    }
    Element cur(radices.size(), 0);
    while (true) {
        elems.push_back(cur);
        size_t i = 0;
        while (i < radices.size()) {
            if (++cur[i] < radices[i]) break;
            cur[i] = 0;
            ++i;
        }
        if (i == radices.size()) break;
    }
    std::sort(elems.begin(), elems.end());
    // generators: one per position
    std::vector<Element> gens;
    for (size_t i = 0; i < radices.size(); ++i) {
        if (radices[i] <= 1) continue;
        Element g(radices.size(), 0);
        g[i] = 1;
        gens.push_back(std::move(g));
    }
    ConcreteGroup out(ops, std::move(elems), std::move(gens), "Out");
    if (out.order() != st.out_order)
        throw std::logic_error("materialize_out: order mismatch");
    return out;
}

// Exact number of cyclic subgroups of Out S, by enumerating the cyclic
// subgroup generated by every element.
inline uint64_t cyclic_subgroup_count(const OutStructure& st) {
    ConcreteGroup out = materialize_out(st);
    std::set<std::vector<Element>> subgroups;
    for (const auto& g : out.elements()) {
        std::vector<Element> cyc;
        Element cur = g;
        Element id = out.identity();
        cyc.push_back(id);
        while (cur != id) {
            cyc.push_back(cur);
            cur = out.mul(cur, g);
        }
        std::sort(cyc.begin(), cyc.end());
        subgroups.insert(std::move(cyc));
    }
    return subgroups.size();
}

// n <= 2|pi(S)| + 3 and d(l) <= |pi(S)| + 1 (Cameron-Maslova shape bounds).
struct RankDivisorBounds {
    uint64_t rank = 0, pi_size = 0, dl = 0;
    bool rank_ok = false, dl_ok = false;
    bool both() const { return rank_ok && dl_ok; }
};

inline RankDivisorBounds check_rank_divisor_bounds(const GroupSpec& s) {
    RankDivisorBounds b;
    auto [p, l] = spec_field(s);
    b.rank = s.rank;
    b.pi_size = spec_pi(s).size();
    b.dl = divisor_count(l);
    b.rank_ok = b.rank <= 2 * b.pi_size + 3;
    b.dl_ok = b.dl <= b.pi_size + 1;
    return b;
}

// All valid specs with q <= qcap and rank <= ncap, deterministic order.
inline std::vector<GroupSpec> all_specs_in_caps(uint64_t qcap, uint32_t ncap) {
    std::vector<GroupSpec> out;
    std::vector<uint64_t> qs;
    for (uint64_t q = 2; q <= qcap; ++q) {
        auto f = factor(q);
        if (f.parts().size() == 1) qs.push_back(q);
    }
    struct FamilySlot {
        uint32_t twist;
        char letter;
        uint32_t rank;
    };
    std::vector<FamilySlot> slots;
    for (uint32_t n = 1; n <= ncap; ++n) slots.push_back({1, 'A', n});
    for (uint32_t n = 2; n <= ncap; ++n) slots.push_back({2, 'A', n});
    for (uint32_t n = 2; n <= ncap; ++n) slots.push_back({1, 'B', n});
    for (uint32_t n = 3; n <= ncap; ++n) slots.push_back({1, 'C', n});
    for (uint32_t n = 4; n <= ncap; ++n) slots.push_back({1, 'D', n});
    for (uint32_t n = 4; n <= ncap; ++n) slots.push_back({2, 'D', n});
    if (ncap >= 4) slots.push_back({3, 'D', 4});
    if (ncap >= 6) slots.push_back({1, 'E', 6});
    if (ncap >= 6) slots.push_back({2, 'E', 6});
    if (ncap >= 7) slots.push_back({1, 'E', 7});
    if (ncap >= 8) slots.push_back({1, 'E', 8});
    if (ncap >= 4) slots.push_back({1, 'F', 4});
    if (ncap >= 4) slots.push_back({2, 'F', 4});
    if (ncap >= 2) slots.push_back({1, 'G', 2});
    if (ncap >= 2) slots.push_back({2, 'B', 2});
    if (ncap >= 2) slots.push_back({2, 'G', 2});
    for (const auto& slot : slots) {
        for (uint64_t q : qs) {
            GroupSpec s{slot.twist, slot.letter, slot.rank, q};
            try {
                validate_spec(s);
            } catch (const SpecError&) {
                continue;
            }
            out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Readable one-record dump for the CLI.
inline std::string show_record(const GroupSpec& s) {
    validate_spec(s);
    auto [p, l] = spec_field(s);
    Factorization order = order_of(s);
    OutStructure st = out_structure(s);
    std::ostringstream os;
    os << "spec: " << s.to_string() << '\n';
    os << "q: " << s.q << " = " << p << '^' << l << ", rank: " << s.rank << '\n';
    os << "order: " << order.to_string() << '\n';
    os << "pi: ";
    auto pi = order.primes();
    for (size_t i = 0; i < pi.size(); ++i) os << (i ? "," : "") << pi[i];
    os << '\n';
    os << "outdiag: " << st.outdiag_order;
    if (st.outdiag_factors.size() == 2) os << " (Klein)";
    else if (st.outdiag_order > 1) os << " (cyclic)";
    os << '\n';
    os << "phigamma: " << phigamma_name(st.shape) << ", l=" << st.l
       << ", order " << st.phigamma_order << '\n';
    os << "out_order: " << st.out_order << '\n';
    os << "suzuki_ree: " << (st.suzuki_ree ? "yes" : "no") << '\n';
    os << "cyclic_subgroups_of_out: " << cyclic_subgroup_count(st) << '\n';
    os << "source: " << st.source << '\n';
    return os.str();
}

} // namespace gkg

#endif
