#ifndef GKG_SPECTRA_HPP
#define GKG_SPECTRA_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gkg/group.hpp"

namespace gkg {

// omega(G), the divisor-closed set of element orders, stored by its maximal
// elements (pairwise non-dividing). Membership is divisibility into one of
// them; 1 is always a member. The full closure is materialized once on demand
// and shared between copies.
class Spectrum {
public:
    Spectrum() : Spectrum(std::vector<uint64_t>{1}) {}

    static Spectrum from_orders(const std::set<uint64_t>& orders) {
        std::vector<uint64_t> sorted(orders.begin(), orders.end());
        return Spectrum(reduce(sorted));
    }

    static Spectrum from_maximal(std::vector<uint64_t> values) {
        if (values.empty()) values.push_back(1);
        return Spectrum(reduce(values));
    }

    const std::vector<uint64_t>& mu() const { return mu_; }

    bool contains(uint64_t m) const {
        if (m == 0) return false;
        for (uint64_t top : mu_)
            if (top % m == 0) return true;
        return false;
    }

    // full divisor closure, ascending; computed on first use
    const std::vector<uint64_t>& closure() const {
        std::call_once(cache_->flag, [this] {
            std::set<uint64_t> all;
            for (uint64_t top : mu_)
                for (uint64_t d : divisors(top)) all.insert(d);
            cache_->values.assign(all.begin(), all.end());
        });
        return cache_->values;
    }

    bool operator==(const Spectrum& o) const { return mu_ == o.mu_; }

private:
    explicit Spectrum(std::vector<uint64_t> mu)
        : mu_(std::move(mu)), cache_(std::make_shared<ClosureCache>()) {}

    struct ClosureCache {
        std::once_flag flag;
        std::vector<uint64_t> values;
    };

    static std::vector<uint64_t> reduce(std::vector<uint64_t> values) {
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        if (values.empty() || values.front() == 0)
            throw std::invalid_argument("Spectrum: orders must be positive");
        std::vector<uint64_t> out;
        for (size_t i = 0; i < values.size(); ++i) {
            bool divides_later = false;
            for (size_t j = i + 1; j < values.size(); ++j) {
                if (values[j] % values[i] == 0) {
                    divides_later = true;
                    break;
                }
            }
            if (!divides_later) out.push_back(values[i]);
        }
        return out;
    }

    std::vector<uint64_t> mu_;
    std::shared_ptr<ClosureCache> cache_;
};

// Exact spectrum by scanning every element's order.
inline Spectrum spectrum_bruteforce(const ConcreteGroup& g) {
    std::set<uint64_t> orders;
    for (const auto& e : g.elements()) orders.insert(element_order(g, e));
    return Spectrum::from_orders(orders);
}

enum class L2Variant { PSL, PGL };

// Classical closed form for the spectra of L_2(q) and PGL_2(q), q = p^l >= 4:
//   PSL: {p, (q-1)/d, (q+1)/d} with d = (2, q-1);  PGL: {p, q-1, q+1}.
// Validated against brute force in the tests before any other use.
inline Spectrum spectrum_l2_closed(uint64_t q, L2Variant variant) {
    if (q < 4) throw std::invalid_argument("spectrum_l2_closed: q must be at least 4");
    Factorization f = factor(q);
    if (f.parts().size() != 1)
        throw std::invalid_argument("spectrum_l2_closed: q must be a prime power");
    uint64_t p = f.parts()[0].prime;
    uint64_t d = std::gcd<uint64_t>(2, q - 1);
    std::vector<uint64_t> mu;
    if (variant == L2Variant::PSL) {
        mu = {p, (q - 1) / d, (q + 1) / d};
    } else {
        mu = {p, q - 1, q + 1};
    }
    return Spectrum::from_maximal(std::move(mu));
}

inline bool isospectral(const Spectrum& a, const Spectrum& b) { return a.mu() == b.mu(); }

struct ScaledSubsetResult {
    bool holds = true;
    std::optional<uint64_t> first_violation;
};

// r * omega(small) subset of omega(big); on failure reports the smallest
// violating member of omega(small).
inline ScaledSubsetResult scaled_subset(uint64_t r, const Spectrum& small, const Spectrum& big) {
    for (uint64_t m : small.closure()) {
        if (!big.contains(checked_mul(r, m))) return {false, m};
    }
    return {true, std::nullopt};
}

// {"group":"<descriptor>","mu":[..]} -- the on-wire form used by the CLI.
// Descriptors contain no characters that need JSON escaping.
inline std::string spectrum_to_json(const std::string& descriptor, const Spectrum& s) {
    std::string out = "{\"group\":\"" + descriptor + "\",\"mu\":[";
    for (size_t i = 0; i < s.mu().size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(s.mu()[i]);
    }
    out += "]}";
    return out;
}

} // namespace gkg

#endif
