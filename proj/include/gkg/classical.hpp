#ifndef GKG_CLASSICAL_HPP
#define GKG_CLASSICAL_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gkg/group.hpp"

namespace gkg {

struct DescriptorError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class MatrixFamily { SL, GL, SU, GU, Sp };

inline const char* family_name(MatrixFamily f) {
    switch (f) {
        case MatrixFamily::SL: return "SL";
        case MatrixFamily::GL: return "GL";
        case MatrixFamily::SU: return "SU";
        case MatrixFamily::GU: return "GU";
        case MatrixFamily::Sp: return "Sp";
    }
    return "?";
}

// Group descriptor, one per line in corpus files:
//   FAMILY n q [projective] [rtimes-field r]
// For SU/GU the parameter q is the unitary q, i.e. matrices live over GF(q^2).
struct GroupDescriptor {
    MatrixFamily family = MatrixFamily::SL;
    uint32_t n = 0;
    uint64_t q = 0;
    bool projective = false;
    uint32_t field_aut = 1; // r in "rtimes-field r"; 1 means no extension

    std::string to_string() const {
        std::ostringstream os;
        os << family_name(family) << ' ' << n << ' ' << q;
        if (projective) os << " projective";
        if (field_aut > 1) os << " rtimes-field " << field_aut;
        return os.str();
    }
};

// (p, l) with q = p^l, or nothing if q is not a prime power.
inline std::optional<std::pair<uint64_t, uint32_t>> prime_power_split(uint64_t q) {
    if (q < 2) return std::nullopt;
    Factorization f = factor(q);
    if (f.parts().size() != 1) return std::nullopt;
    return std::make_pair(f.parts()[0].prime, f.parts()[0].exponent);
}

inline GroupDescriptor parse_descriptor(const std::string& text) {
    std::istringstream is(text);
    std::string fam;
    GroupDescriptor d;
    if (!(is >> fam)) throw DescriptorError("empty group descriptor");
    if (fam == "SL") d.family = MatrixFamily::SL;
    else if (fam == "GL") d.family = MatrixFamily::GL;
    else if (fam == "SU") d.family = MatrixFamily::SU;
    else if (fam == "GU") d.family = MatrixFamily::GU;
    else if (fam == "Sp") d.family = MatrixFamily::Sp;
    else throw DescriptorError("unknown family: " + fam);
    if (!(is >> d.n) || d.n == 0) throw DescriptorError("bad dimension in descriptor");
    if (!(is >> d.q)) throw DescriptorError("bad field size in descriptor");
    if (!prime_power_split(d.q)) throw DescriptorError("field size is not a prime power");
    std::string tok;
    while (is >> tok) {
        if (tok == "projective") {
            d.projective = true;
        } else if (tok == "rtimes-field") {
            if (!(is >> d.field_aut) || d.field_aut == 0)
                throw DescriptorError("bad rtimes-field parameter");
        } else {
            throw DescriptorError("unexpected token in descriptor: " + tok);
        }
    }
    if (d.family == MatrixFamily::Sp && d.n % 2 != 0)
        throw DescriptorError("Sp needs even dimension");
    if (d.n < 2) throw DescriptorError("dimension must be at least 2");
    return d;
}

// --- matrix group ops ------------------------------------------------------

class MatrixGroupOps final : public GroupOps {
public:
    MatrixGroupOps(FieldPtr field, uint32_t n, bool projective)
        : space_(std::move(field), n), projective_(projective) {}

    const MatrixSpace& space() const { return space_; }
    bool projective() const { return projective_; }
    uint32_t dim() const { return space_.dim(); }

    Element to_element(const Matrix& m) const {
        Matrix c = projective_ ? space_.normalize_projective(m) : m;
        return c.a;
    }
    Matrix to_matrix(const Element& e) const {
        Matrix m;
        m.n = space_.dim();
        m.a = e;
        return m;
    }

    Element mul(const Element& a, const Element& b) const override {
        return to_element(space_.mul(to_matrix(a), to_matrix(b)));
    }
    Element inverse(const Element& a) const override {
        return to_element(space_.inverse(to_matrix(a)));
    }
    Element identity() const override { return to_element(Matrix::identity(space_.dim())); }
    std::string describe(const Element& a) const override {
        return space_.to_string(to_matrix(a));
    }

private:
    MatrixSpace space_;
    bool projective_;
};

inline ConcreteGroup matrix_group_from_generators(FieldPtr field, uint32_t n,
                                                  const std::vector<Matrix>& gens, bool projective,
                                                  std::string descriptor,
                                                  uint64_t cap = kDefaultEnumerationCap) {
    auto ops = std::make_shared<const MatrixGroupOps>(std::move(field), n, projective);
    std::vector<Element> gen_elems;
    gen_elems.reserve(gens.size());
    for (const auto& m : gens) gen_elems.push_back(ops->to_element(m));
    return group_from_generators(ops, std::move(gen_elems), std::move(descriptor), cap);
}

namespace cdetail {

inline uint64_t classical_order(MatrixFamily fam, uint32_t n, uint64_t q, bool projective) {
    uint64_t order = 1;
    switch (fam) {
        case MatrixFamily::SL:
        case MatrixFamily::GL: {
            order = checked_pow(q, n * (n - 1) / 2);
            for (uint32_t i = 2; i <= n; ++i)
                order = checked_mul(order, checked_pow(q, i) - 1);
            if (fam == MatrixFamily::GL) order = checked_mul(order, q - 1);
            if (projective)
                order /= fam == MatrixFamily::GL ? (q - 1) : std::gcd<uint64_t>(n, q - 1);
            break;
        }
        case MatrixFamily::SU:
        case MatrixFamily::GU: {
            order = checked_pow(q, n * (n - 1) / 2);
            for (uint32_t i = 2; i <= n; ++i) {
                uint64_t qi = checked_pow(q, i);
                order = checked_mul(order, i % 2 == 0 ? qi - 1 : qi + 1);
            }
            if (fam == MatrixFamily::GU) order = checked_mul(order, q + 1);
            if (projective)
                order /= fam == MatrixFamily::GU ? (q + 1) : std::gcd<uint64_t>(n, q + 1);
            break;
        }
        case MatrixFamily::Sp: {
            uint32_t m = n / 2;
            order = checked_pow(q, m * m);
            for (uint32_t i = 1; i <= m; ++i)
                order = checked_mul(order, checked_pow(q, 2 * i) - 1);
            if (projective) order /= std::gcd<uint64_t>(2, q - 1);
            break;
        }
    }
    return order;
}

// Additive basis of GF(p^k) as codes: 1, x, x^2, ..., x^(k-1).
inline std::vector<uint32_t> field_basis(const Field& f) {
    std::vector<uint32_t> basis;
    uint64_t code = 1;
    for (uint32_t i = 0; i < f.degree(); ++i) {
        basis.push_back(static_cast<uint32_t>(code));
        code *= f.p();
    }
    return basis;
}

inline std::vector<Matrix> sl_generators(const Field& f, uint32_t n) {
    std::vector<Matrix> gens;
    for (uint32_t a : field_basis(f)) {
        for (uint32_t i = 0; i < n; ++i) {
            for (uint32_t j = 0; j < n; ++j) {
                if (i == j) continue;
                Matrix t = Matrix::identity(n);
                t.at(i, j) = a;
                gens.push_back(std::move(t));
            }
        }
    }
    return gens;
}

// All vectors over the field with first nonzero coordinate 1 (one per line).
inline std::vector<std::vector<uint32_t>> projective_lines(const Field& f, uint32_t n) {
    std::vector<std::vector<uint32_t>> lines;
    uint64_t q = f.size();
    uint64_t total = 1;
    for (uint32_t i = 0; i < n; ++i) total = checked_mul(total, q);
    for (uint64_t code = 1; code < total; ++code) {
        std::vector<uint32_t> v(n);
        uint64_t t = code;
        for (uint32_t i = 0; i < n; ++i) {
            v[i] = static_cast<uint32_t>(t % q);
            t /= q;
        }
        uint32_t first = 0;
        for (uint32_t i = 0; i < n; ++i) {
            if (v[i] != 0) {
                first = v[i];
                break;
            }
        }
        if (first == 1) lines.push_back(std::move(v));
    }
    return lines;
}

// Symplectic transvections x -> x + lambda <x,v> v for the standard form
// J = [[0, I], [-I, 0]].
inline std::vector<Matrix> sp_generators(const Field& f, uint32_t n) {
    uint32_t m = n / 2;
    Matrix jmat;
    jmat.n = n;
    jmat.a.assign(size_t(n) * n, 0);
    for (uint32_t i = 0; i < m; ++i) {
        jmat.at(i, m + i) = 1;
        jmat.at(m + i, i) = f.neg(1);
    }
    std::vector<Matrix> gens;
    for (const auto& v : projective_lines(f, n)) {
        // w = J v
        std::vector<uint32_t> w(n, 0);
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j) w[i] = f.add(w[i], f.mul(jmat.at(i, j), v[j]));
        for (uint32_t lam : field_basis(f)) {
            Matrix t = Matrix::identity(n);
            for (uint32_t i = 0; i < n; ++i)
                for (uint32_t j = 0; j < n; ++j)
                    t.at(i, j) = f.add(t.at(i, j), f.mul(lam, f.mul(v[i], w[j])));
            gens.push_back(std::move(t));
        }
    }
    return gens;
}

// Unitary transvections x -> x + lambda <x,v> v for the identity Gram matrix,
// with v isotropic and lambda of trace zero.
inline std::vector<Matrix> su_generators(const Field& f, uint32_t n, uint32_t conj_power) {
    auto conj = [&](uint32_t x) { return f.frobenius(x, conj_power); };
    // GF(p)-basis of the trace-zero subspace {lambda : lambda + conj(lambda) = 0}
    std::vector<uint32_t> tz;
    std::vector<uint32_t> span{0};
    for (uint32_t x = 1; x < f.size() && span.size() < (1u << 16); ++x) {
        if (f.add(x, conj(x)) != 0) continue;
        bool in_span = false;
        for (uint32_t s : span)
            if (s == x) in_span = true;
        if (in_span) continue;
        tz.push_back(x);
        std::vector<uint32_t> next = span;
        for (uint32_t s : span) {
            uint32_t acc = s;
            for (uint64_t c = 1; c < f.p(); ++c) {
                acc = f.add(acc, x);
                next.push_back(acc);
            }
        }
        span = std::move(next);
    }
    std::vector<Matrix> gens;
    for (const auto& v : projective_lines(f, n)) {
        uint32_t norm = 0;
        for (uint32_t i = 0; i < n; ++i) norm = f.add(norm, f.mul(v[i], conj(v[i])));
        if (norm != 0) continue;
        for (uint32_t lam : tz) {
            Matrix t = Matrix::identity(n);
            for (uint32_t i = 0; i < n; ++i)
                for (uint32_t j = 0; j < n; ++j)
                    t.at(i, j) = f.add(t.at(i, j), f.mul(lam, f.mul(v[i], conj(v[j]))));
            gens.push_back(std::move(t));
        }
    }
    return gens;
}

// Exhaustive scan of the whole matrix space for the unitary groups. The
// isotropic transvections generate SU(n,q) in every case except SU(3,2), so
// this only ever runs at tiny sizes.
inline ConcreteGroup unitary_bruteforce(const FieldPtr& field, MatrixFamily fam, uint32_t n,
                                        uint32_t conj_power, bool projective,
                                        std::string descriptor) {
    const Field& f = *field;
    uint64_t cells = n * n;
    uint64_t total = 1;
    for (uint64_t i = 0; i < cells; ++i) {
        total = checked_mul(total, f.size());
        if (total > (1ull << 22))
            throw std::logic_error("unitary generators incomplete and matrix space too large");
    }
    auto ops = std::make_shared<const MatrixGroupOps>(field, n, projective);
    MatrixSpace sp(field, n);
    std::unordered_map<Element, uint32_t, ElementHash> seen;
    for (uint64_t code = 0; code < total; ++code) {
        Matrix m;
        m.n = n;
        m.a.resize(cells);
        uint64_t t = code;
        for (uint64_t i = 0; i < cells; ++i) {
            m.a[i] = static_cast<uint32_t>(t % f.size());
            t /= f.size();
        }
        if (!sp.is_identity(sp.mul(m, sp.conj_transpose(m, conj_power)))) continue;
        if (fam == MatrixFamily::SU && sp.det(m) != 1) continue;
        seen.emplace(ops->to_element(m), 0);
    }
    std::vector<Element> elements;
    elements.reserve(seen.size());
    for (const auto& [e, _] : seen) elements.push_back(e);
    std::sort(elements.begin(), elements.end());
    // greedy small generating set
    std::vector<Element> gens;
    uint64_t have = 1;
    for (const auto& e : elements) {
        if (have == elements.size()) break;
        std::vector<Element> trial = gens;
        trial.push_back(e);
        uint64_t size = closure(*ops, trial, elements.size()).size();
        if (size > have) {
            gens = std::move(trial);
            have = size;
        }
    }
    return ConcreteGroup(ops, std::move(elements), std::move(gens), std::move(descriptor));
}

inline void check_group_condition(const FieldPtr& fptr, MatrixFamily fam, uint32_t n,
                                  uint32_t conj_power, const Matrix& g) {
    const Field& f = *fptr;
    MatrixSpace sp(fptr, n);
    switch (fam) {
        case MatrixFamily::SL:
            if (sp.det(g) != 1) throw std::logic_error("generator has determinant != 1");
            break;
        case MatrixFamily::GL:
            if (sp.det(g) == 0) throw std::logic_error("generator is singular");
            break;
        case MatrixFamily::SU:
        case MatrixFamily::GU: {
            Matrix prod = sp.mul(g, sp.conj_transpose(g, conj_power));
            if (!sp.is_identity(prod)) throw std::logic_error("generator is not unitary");
            if (fam == MatrixFamily::SU && sp.det(g) != 1)
                throw std::logic_error("generator has determinant != 1");
            break;
        }
        case MatrixFamily::Sp: {
            uint32_t m = n / 2;
            Matrix jmat;
            jmat.n = n;
            jmat.a.assign(size_t(n) * n, 0);
            for (uint32_t i = 0; i < m; ++i) {
                jmat.at(i, m + i) = 1;
                jmat.at(m + i, i) = f.neg(1);
            }
            Matrix gt;
            gt.n = n;
            gt.a.assign(size_t(n) * n, 0);
            for (uint32_t i = 0; i < n; ++i)
                for (uint32_t j = 0; j < n; ++j) gt.at(j, i) = g.at(i, j);
            Matrix prod = sp.mul(gt, sp.mul(jmat, g));
            if (prod != jmat) throw std::logic_error("generator is not symplectic");
            break;
        }
    }
}

} // namespace cdetail

// Fully enumerated classical group (optionally projective = modulo scalars).
// The enumerated order is checked against the closed-form order formula.
inline ConcreteGroup build_classical(MatrixFamily fam, uint32_t n, uint64_t q, bool projective,
                                     uint64_t cap = kDefaultEnumerationCap) {
    auto pp = prime_power_split(q);
    if (!pp) throw DescriptorError("field size is not a prime power");
    if (n < 2) throw DescriptorError("dimension must be at least 2");
    if (fam == MatrixFamily::Sp && n % 2 != 0) throw DescriptorError("Sp needs even dimension");

    uint64_t predicted = 0;
    try {
        predicted = cdetail::classical_order(fam, n, q, projective);
    } catch (const std::overflow_error&) {
        throw CapExceeded("group order does not fit in 64 bits, far above any cap");
    }
    if (predicted > cap) throw CapExceeded("group order " + std::to_string(predicted) +
                                           " exceeds enumeration cap " + std::to_string(cap));

    bool unitary = fam == MatrixFamily::SU || fam == MatrixFamily::GU;
    FieldPtr field = unitary ? field_make(pp->first, 2 * pp->second)
                             : field_make(pp->first, pp->second);
    uint32_t conj_power = unitary ? pp->second : 0;

    std::vector<Matrix> gens;
    switch (fam) {
        case MatrixFamily::SL:
            gens = cdetail::sl_generators(*field, n);
            break;
        case MatrixFamily::GL: {
            gens = cdetail::sl_generators(*field, n);
            Matrix d = Matrix::identity(n);
            d.at(0, 0) = field->generator();
            gens.push_back(std::move(d));
            break;
        }
        case MatrixFamily::SU:
            gens = cdetail::su_generators(*field, n, conj_power);
            break;
        case MatrixFamily::GU: {
            gens = cdetail::su_generators(*field, n, conj_power);
            // diagonal of norm-one determinant ringing the full det group
            uint32_t zeta = field->pow(field->generator(),
                                       (field->size() - 1) / (q + 1));
            Matrix d = Matrix::identity(n);
            d.at(0, 0) = zeta;
            gens.push_back(std::move(d));
            break;
        }
        case MatrixFamily::Sp:
            gens = cdetail::sp_generators(*field, n);
            break;
    }
    for (const auto& g : gens) cdetail::check_group_condition(field, fam, n, conj_power, g);

    GroupDescriptor d;
    d.family = fam;
    d.n = n;
    d.q = q;
    d.projective = projective;
    ConcreteGroup grp = matrix_group_from_generators(field, n, gens, projective, d.to_string(), cap);
    if (grp.order() != predicted && unitary) {
        // SU(3,2) is the one case where transvections span a proper subgroup
        grp = cdetail::unitary_bruteforce(field, fam, n, conj_power, projective, d.to_string());
    }
    if (grp.order() != predicted)
        throw std::logic_error("enumerated order " + std::to_string(grp.order()) +
                               " does not match the order formula " + std::to_string(predicted) +
                               " for " + d.to_string());
    return grp;
}

// --- field-automorphism extensions ----------------------------------------

// Elements (A, i) with (A, i)(B, j) = (A phi^i(B), i+j mod m), phi the
// entrywise Frobenius power of order m on the base group.
class FieldAutExtensionOps final : public GroupOps {
public:
    FieldAutExtensionOps(std::shared_ptr<const MatrixGroupOps> base, uint32_t frob_power,
                         uint32_t aut_order)
        : base_(std::move(base)), e_(frob_power), m_(aut_order) {}

    uint32_t aut_order() const { return m_; }
    const MatrixGroupOps& base() const { return *base_; }

    Element apply_phi(const Element& a, uint32_t times) const {
        // frobenius fixes 0 and 1, so projective canonical form is preserved
        Matrix mtx = base_->to_matrix(a);
        uint32_t k = base_->space().field().degree();
        Matrix img = base_->space().apply_frobenius(mtx, (e_ * times) % k);
        return img.a;
    }

    Element mul(const Element& a, const Element& b) const override {
        auto [am, ai] = split(a);
        auto [bm, bi] = split(b);
        Element prod = base_->mul(am, apply_phi(bm, ai));
        prod.push_back((ai + bi) % m_);
        return prod;
    }

    Element inverse(const Element& a) const override {
        auto [am, ai] = split(a);
        uint32_t inv_i = (m_ - ai) % m_;
        Element inv = apply_phi(base_->inverse(am), inv_i);
        inv.push_back(inv_i);
        return inv;
    }

    Element identity() const override {
        Element id = base_->identity();
        id.push_back(0);
        return id;
    }

    std::pair<Element, uint32_t> split(const Element& a) const {
        return {Element(a.begin(), a.end() - 1), a.back()};
    }

private:
    std::shared_ptr<const MatrixGroupOps> base_;
    uint32_t e_;
    uint32_t m_;
};

// base rtimes <phi> where phi is the field automorphism x -> x^(p^(k/r)) of
// order r on GF(p^k). Requires r | k. r = 1 returns a copy of the base.
inline ConcreteGroup semidirect_field_aut(const ConcreteGroup& base, uint32_t r,
                                          uint64_t cap = kDefaultEnumerationCap) {
    auto base_ops = std::dynamic_pointer_cast<const MatrixGroupOps>(base.ops_ptr());
    if (!base_ops)
        throw std::invalid_argument("semidirect_field_aut: base is not a matrix group");
    uint32_t k = base_ops->space().field().degree();
    if (r == 0 || k % r != 0)
        throw std::invalid_argument("semidirect_field_aut: automorphism order must divide " +
                                    std::to_string(k));
    if (checked_mul(base.order(), r) > cap)
        throw CapExceeded("semidirect_field_aut: order exceeds cap");

    auto ops = std::make_shared<const FieldAutExtensionOps>(base_ops, k / r, r);
    // phi must stabilize the base universe, otherwise the recipe is invalid
    for (const auto& b : base.elements()) {
        if (!base.contains(ops->apply_phi(b, 1)))
            throw std::invalid_argument(
                "semidirect_field_aut: Frobenius does not stabilize the base group");
    }
    std::vector<Element> elems;
    elems.reserve(base.order() * r);
    for (const auto& b : base.elements()) {
        for (uint32_t i = 0; i < r; ++i) {
            Element e = b;
            e.push_back(i);
            elems.push_back(std::move(e));
        }
    }
    std::sort(elems.begin(), elems.end());
    std::vector<Element> gens;
    for (const auto& g : base.generators()) {
        Element e = g;
        e.push_back(0);
        gens.push_back(std::move(e));
    }
    if (r > 1) {
        Element phi = base.identity();
        phi.push_back(1);
        gens.push_back(std::move(phi));
    }
    std::string descriptor = base.descriptor() + " rtimes-field " + std::to_string(r);
    return ConcreteGroup(ops, std::move(elems), std::move(gens), std::move(descriptor));
}

// Builds the group named by a descriptor line, including an optional
// field-automorphism extension.
inline ConcreteGroup build_from_descriptor(const std::string& text,
                                           uint64_t cap = kDefaultEnumerationCap) {
    GroupDescriptor d = parse_descriptor(text);
    ConcreteGroup base = build_classical(d.family, d.n, d.q, d.projective, cap);
    if (d.field_aut == 1) return base;
    return semidirect_field_aut(base, d.field_aut, cap);
}

// AGL(1,p) = Z_p rtimes Z_{p-1} as 2x2 matrices [[a, b], [0, 1]] over GF(p).
// Returns the full affine group; its translation subgroup is the kernel K of
// the Frobenius-action examples.
inline ConcreteGroup affine_frobenius_group(uint64_t p, uint64_t cap = kDefaultEnumerationCap) {
    if (!is_prime(p)) throw std::invalid_argument("affine_frobenius_group: p must be prime");
    FieldPtr f = field_make(p, 1);
    Matrix scale = Matrix::identity(2);
    scale.at(0, 0) = f->generator();
    Matrix shift = Matrix::identity(2);
    shift.at(0, 1) = 1;
    ConcreteGroup g = matrix_group_from_generators(f, 2, {scale, shift}, false,
                                                   "AGL(1," + std::to_string(p) + ")", cap);
    if (g.order() != p * (p - 1))
        throw std::logic_error("affine_frobenius_group: unexpected order");
    return g;
}

// The translation subgroup of affine_frobenius_group(p).
inline ConcreteGroup affine_translations(const ConcreteGroup& affine) {
    auto ops = std::dynamic_pointer_cast<const MatrixGroupOps>(affine.ops_ptr());
    if (!ops) throw std::invalid_argument("affine_translations: not a matrix group");
    Matrix shift = Matrix::identity(2);
    shift.at(0, 1) = 1;
    return subgroup(affine, {ops->to_element(shift)}, "translations");
}

} // namespace gkg

#endif
