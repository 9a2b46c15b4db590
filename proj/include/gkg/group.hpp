#ifndef GKG_GROUP_HPP
#define GKG_GROUP_HPP

#include <cstdint>
#include <deque>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gkg/matrix.hpp"

namespace gkg {

// Raised when a construction would exceed the enumeration cap.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Group elements are canonical-form encodings: two elements are equal iff
// their encodings are identical. The encoding layout is fixed per GroupOps.
using Element = std::vector<uint32_t>;

struct ElementHash {
    size_t operator()(const Element& e) const {
        uint64_t h = 1469598103934665603ull;
        for (uint32_t x : e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

// Multiplication rule of a concrete group. Implementations must keep elements
// in canonical form: mul and inverse of canonical inputs are canonical.
class GroupOps {
public:
    virtual ~GroupOps() = default;
    virtual Element mul(const Element& a, const Element& b) const = 0;
    virtual Element inverse(const Element& a) const = 0;
    virtual Element identity() const = 0;
    virtual std::string describe(const Element& a) const {
        std::string s = "(";
        for (size_t i = 0; i < a.size(); ++i) {
            if (i > 0) s += ",";
            s += std::to_string(a[i]);
        }
        return s + ")";
    }
};

using OpsPtr = std::shared_ptr<const GroupOps>;

constexpr uint64_t kDefaultEnumerationCap = 10'000'000; // hard cap on |G|

// Breadth-first closure of a generator set under multiplication. Inverses come
// for free in a finite closure. Throws CapExceeded past the cap.
inline std::vector<Element> closure(const GroupOps& ops, const std::vector<Element>& generators,
                                    uint64_t cap = kDefaultEnumerationCap) {
    std::unordered_map<Element, uint32_t, ElementHash> seen;
    std::deque<Element> todo;
    Element id = ops.identity();
    seen.emplace(id, 0);
    todo.push_back(id);
    for (const auto& g : generators) {
        if (seen.emplace(g, 0).second) todo.push_back(g);
    }
    while (!todo.empty()) {
        Element cur = std::move(todo.front());
        todo.pop_front();
        for (const auto& g : generators) {
            Element prod = ops.mul(cur, g);
            if (seen.emplace(prod, 0).second) {
                if (seen.size() > cap) throw CapExceeded("closure: enumeration cap exceeded");
                todo.push_back(std::move(prod));
            }
        }
    }
    std::vector<Element> out;
    out.reserve(seen.size());
    for (const auto& [e, _] : seen) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
}

// A fully enumerated finite group: multiplication rule plus the sorted element
// universe. Immutable once built; cheap to copy (shared ops, shared universe).
class ConcreteGroup {
public:
    ConcreteGroup() = default;

    ConcreteGroup(OpsPtr ops, std::vector<Element> elements, std::vector<Element> generators,
                  std::string descriptor)
        : ops_(std::move(ops)),
          elements_(std::make_shared<std::vector<Element>>(std::move(elements))),
          generators_(std::move(generators)),
          descriptor_(std::move(descriptor)) {
        index_ = std::make_shared<std::unordered_map<Element, uint32_t, ElementHash>>();
        index_->reserve(elements_->size());
        for (uint32_t i = 0; i < elements_->size(); ++i) index_->emplace((*elements_)[i], i);
        if (index_->size() != elements_->size())
            throw std::logic_error("ConcreteGroup: duplicate canonical forms");
    }

    uint64_t order() const { return elements_->size(); }
    const std::vector<Element>& elements() const { return *elements_; }
    const std::vector<Element>& generators() const { return generators_; }
    const GroupOps& ops() const { return *ops_; }
    OpsPtr ops_ptr() const { return ops_; }
    const std::string& descriptor() const { return descriptor_; }

    bool contains(const Element& e) const { return index_->count(e) > 0; }

    Element identity() const { return ops_->identity(); }
    Element mul(const Element& a, const Element& b) const { return ops_->mul(a, b); }
    Element inverse(const Element& a) const { return ops_->inverse(a); }

    bool same_universe(const ConcreteGroup& other) const { return elements_ == other.elements_; }

private:
    OpsPtr ops_;
    std::shared_ptr<std::vector<Element>> elements_;
    std::shared_ptr<std::unordered_map<Element, uint32_t, ElementHash>> index_;
    std::vector<Element> generators_;
    std::string descriptor_;
};

inline ConcreteGroup group_from_generators(OpsPtr ops, std::vector<Element> generators,
                                           std::string descriptor,
                                           uint64_t cap = kDefaultEnumerationCap) {
    auto elements = closure(*ops, generators, cap);
    return ConcreteGroup(std::move(ops), std::move(elements), std::move(generators),
                         std::move(descriptor));
}

// Smallest k >= 1 with g^k = 1.
inline uint64_t element_order(const ConcreteGroup& g, const Element& e) {
    if (!g.contains(e)) throw std::invalid_argument("element_order: element not in group");
    Element id = g.identity();
    Element cur = e;
    uint64_t k = 1;
    while (cur != id) {
        cur = g.mul(cur, e);
        ++k;
        if (k > g.order()) throw std::logic_error("element_order: no finite order found");
    }
    return k;
}

// --- basic ops implementations -------------------------------------------

class CyclicOps final : public GroupOps {
public:
    explicit CyclicOps(uint32_t n) : n_(n) {
        if (n == 0) throw std::invalid_argument("CyclicOps: order must be positive");
    }
    Element mul(const Element& a, const Element& b) const override { return {(a[0] + b[0]) % n_}; }
    Element inverse(const Element& a) const override { return {(n_ - a[0]) % n_}; }
    Element identity() const override { return {0}; }

private:
    uint32_t n_;
};

inline ConcreteGroup cyclic_group(uint32_t n) {
    auto ops = std::make_shared<const CyclicOps>(n);
    std::vector<Element> elems;
    elems.reserve(n);
    for (uint32_t i = 0; i < n; ++i) elems.push_back({i});
    return ConcreteGroup(ops, std::move(elems), {{n > 1 ? 1u : 0u}}, "Z" + std::to_string(n));
}

class ProductOps final : public GroupOps {
public:
    ProductOps(OpsPtr left, size_t left_width, OpsPtr right, size_t right_width)
        : left_(std::move(left)), right_(std::move(right)), lw_(left_width), rw_(right_width) {}

    Element mul(const Element& a, const Element& b) const override {
        auto [al, ar] = split(a);
        auto [bl, br] = split(b);
        return join(left_->mul(al, bl), right_->mul(ar, br));
    }
    Element inverse(const Element& a) const override {
        auto [al, ar] = split(a);
        return join(left_->inverse(al), right_->inverse(ar));
    }
    Element identity() const override { return join(left_->identity(), right_->identity()); }

    std::pair<Element, Element> split(const Element& a) const {
        return {Element(a.begin(), a.begin() + lw_), Element(a.begin() + lw_, a.end())};
    }
    Element join(const Element& l, const Element& r) const {
        Element out = l;
        out.insert(out.end(), r.begin(), r.end());
        return out;
    }

private:
    OpsPtr left_, right_;
    size_t lw_, rw_;
};

inline ConcreteGroup direct_product(const ConcreteGroup& a, const ConcreteGroup& b,
                                    uint64_t cap = kDefaultEnumerationCap) {
    if (checked_mul(a.order(), b.order()) > cap)
        throw CapExceeded("direct_product: order exceeds cap");
    size_t lw = a.identity().size();
    size_t rw = b.identity().size();
    auto ops = std::make_shared<const ProductOps>(a.ops_ptr(), lw, b.ops_ptr(), rw);
    std::vector<Element> elems;
    elems.reserve(a.order() * b.order());
    for (const auto& x : a.elements())
        for (const auto& y : b.elements()) elems.push_back(ops->join(x, y));
    std::sort(elems.begin(), elems.end());
    std::vector<Element> gens;
    for (const auto& g : a.generators()) gens.push_back(ops->join(g, b.identity()));
    for (const auto& g : b.generators()) gens.push_back(ops->join(a.identity(), g));
    return ConcreteGroup(ops, std::move(elems), std::move(gens),
                         a.descriptor() + " x " + b.descriptor());
}

// Subgroup generated inside an existing group (shares the parent's ops).
inline ConcreteGroup subgroup(const ConcreteGroup& g, std::vector<Element> generators,
                              std::string descriptor = "") {
    for (const auto& x : generators)
        if (!g.contains(x)) throw std::invalid_argument("subgroup: generator outside group");
    auto elements = closure(g.ops(), generators, g.order());
    if (descriptor.empty()) descriptor = g.descriptor() + " subgroup";
    return ConcreteGroup(g.ops_ptr(), std::move(elements), std::move(generators),
                         std::move(descriptor));
}

inline ConcreteGroup trivial_subgroup(const ConcreteGroup& g) {
    return ConcreteGroup(g.ops_ptr(), {g.identity()}, {}, "1");
}

// K normal in G, tested by conjugating K's elements with G's generators.
inline bool is_normal_in(const ConcreteGroup& g, const ConcreteGroup& k) {
    for (const auto& x : k.elements())
        if (!g.contains(x)) throw std::invalid_argument("is_normal_in: K not inside G");
    for (const auto& gen : g.generators()) {
        Element gen_inv = g.inverse(gen);
        for (const auto& x : k.elements()) {
            Element conj = g.mul(gen_inv, g.mul(x, gen));
            if (!k.contains(conj)) return false;
        }
    }
    return true;
}

inline bool is_subgroup_of(const ConcreteGroup& g, const ConcreteGroup& h) {
    if (h.order() > g.order()) return false;
    for (const auto& x : h.elements())
        if (!g.contains(x)) return false;
    return true;
}

inline bool is_abelian(const ConcreteGroup& g) {
    const auto& gens = g.generators();
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i])) return false;
    return true;
}

inline std::vector<Element> center_elements(const ConcreteGroup& g) {
    std::vector<Element> out;
    for (const auto& z : g.elements()) {
        bool central = true;
        for (const auto& gen : g.generators()) {
            if (g.mul(z, gen) != g.mul(gen, z)) {
                central = false;
                break;
            }
        }
        if (central) out.push_back(z);
    }
    return out;
}

inline bool is_cyclic(const ConcreteGroup& g) {
    for (const auto& e : g.elements())
        if (element_order(g, e) == g.order()) return true;
    return false;
}

// --- quotient -------------------------------------------------------------

// Quotient G/N for N normal in G. A coset is represented by its smallest
// element (lexicographic on encodings), so quotient elements are canonical.
class QuotientOps final : public GroupOps {
public:
    QuotientOps(OpsPtr parent,
                std::shared_ptr<const std::unordered_map<Element, Element, ElementHash>> coset_rep,
                Element id)
        : parent_(std::move(parent)), rep_(std::move(coset_rep)), id_(std::move(id)) {}

    Element mul(const Element& a, const Element& b) const override {
        return rep_->at(parent_->mul(a, b));
    }
    Element inverse(const Element& a) const override { return rep_->at(parent_->inverse(a)); }
    Element identity() const override { return id_; }

private:
    OpsPtr parent_;
    std::shared_ptr<const std::unordered_map<Element, Element, ElementHash>> rep_;
    Element id_;
};

inline ConcreteGroup quotient_group(const ConcreteGroup& g, const ConcreteGroup& n,
                                    std::string descriptor = "") {
    if (!is_normal_in(g, n)) throw std::invalid_argument("quotient_group: subgroup not normal");
    auto rep = std::make_shared<std::unordered_map<Element, Element, ElementHash>>();
    rep->reserve(g.order());
    std::vector<Element> cosets;
    for (const auto& x : g.elements()) {
        if (rep->count(x)) continue;
        // coset xN; the universe is sorted, so the first visit is the minimum
        Element least = x;
        std::vector<Element> members;
        members.reserve(n.order());
        for (const auto& k : n.elements()) {
            Element m = g.mul(x, k);
            if (m < least) least = m;
            members.push_back(std::move(m));
        }
        for (auto& m : members) rep->emplace(std::move(m), least);
        cosets.push_back(std::move(least));
    }
    std::sort(cosets.begin(), cosets.end());
    Element id = rep->at(g.identity());
    auto ops = std::make_shared<const QuotientOps>(
        g.ops_ptr(), std::shared_ptr<const std::unordered_map<Element, Element, ElementHash>>(rep),
        id);
    std::vector<Element> gens;
    for (const auto& gen : g.generators()) {
        Element q = rep->at(gen);
        if (q != id) gens.push_back(q);
    }
    if (descriptor.empty()) descriptor = g.descriptor() + " / " + n.descriptor();
    return ConcreteGroup(ops, std::move(cosets), std::move(gens), std::move(descriptor));
}

} // namespace gkg

#endif
