#include <doctest.h>

#include <random>

#include "gkg/classical.hpp"
#include "gkg/subgroups.hpp"

using namespace gkg;

namespace {

// independent order oracle: repeated squaring on the matrix itself
uint64_t order_by_squaring(const MatrixSpace& sp, const Matrix& m) {
    // x^k = 1 for some k <= |GL(n,q)|; find it as lcm-free linear scan with
    // doubling to bound, then bisect down by division
    Matrix cur = m;
    uint64_t k = 1;
    while (!sp.is_identity(cur)) {
        cur = sp.mul(cur, m);
        ++k;
       if (k > 2000000) throw std::logic_error("no order found");
    }
    return k;
}

} // namespace

TEST_CASE("descriptor grammar") {
    GroupDescriptor d = parse_descriptor("SL 2 7 projective");
    CHECK(d.family == MatrixFamily::SL);
    CHECK(d.n == 2);
    CHECK(d.q == 7);
    CHECK(d.projective);
    CHECK(d.to_string() == "SL 2 7 projective");
    CHECK(parse_descriptor("Sp 4 3 projective rtimes-field 1").field_aut == 1);
    CHECK(parse_descriptor("SL 2 9 projective rtimes-field 2").field_aut == 2);
    CHECK_THROWS_AS(parse_descriptor("XX 2 3"), DescriptorError);
    CHECK_THROWS_AS(parse_descriptor("SL 2 6"), DescriptorError); // not a prime power
    CHECK_THROWS_AS(parse_descriptor("Sp 3 3"), DescriptorError); // odd symplectic dim
    CHECK_THROWS_AS(parse_descriptor("SL 2 7 bogus"), DescriptorError);
}

TEST_CASE("classical orders match the order formulas") {
    CHECK(build_classical(MatrixFamily::SL, 2, 3, false).order() == 24);
    CHECK(build_classical(MatrixFamily::SL, 2, 7, true).order() == 168);
    CHECK(build_classical(MatrixFamily::SU, 3, 3, true).order() == 6048);
    CHECK(build_classical(MatrixFamily::GL, 2, 9, true).order() == 720);
    CHECK(build_classical(MatrixFamily::Sp, 4, 2, false).order() == 720);
    CHECK(build_classical(MatrixFamily::GU, 2, 3, false).order() == 96); // (q+1)|SU(2,3)|
}

TEST_CASE("SU(3,2) and friends: the non-transvection-generated case") {
    // isotropic transvections span an index-4 subgroup here; the exhaustive
    // fallback must still deliver the full groups
    CHECK(build_classical(MatrixFamily::SU, 3, 2, false).order() == 216);
    CHECK(build_classical(MatrixFamily::SU, 3, 2, true).order() == 72);
    CHECK(build_classical(MatrixFamily::GU, 3, 2, false).order() == 648);
    CHECK(build_classical(MatrixFamily::GU, 3, 2, true).order() == 216);
    // PSU(3,2) = (Z3 x Z3) : Q8, a Frobenius group
    ConcreteGroup psu = build_classical(MatrixFamily::SU, 3, 2, true);
    CHECK(sylow_shape(psu, 2).shape == SylowShape::GeneralizedQuaternion);
    ConcreteGroup syl3 = sylow_subgroup(psu, 3);
    CHECK(syl3.order() == 9);
    CHECK(is_normal_in(psu, syl3));
    CHECK(fixed_point_free_check(psu, syl3).fixed_point_free);
}

TEST_CASE("cap is enforced before enumeration") {
    CHECK_THROWS_AS(build_classical(MatrixFamily::SL, 2, 7, true, 100), CapExceeded);
    CHECK_THROWS_AS(build_classical(MatrixFamily::SL, 4, 64, false), CapExceeded);
}

TEST_CASE("element orders in SL(2,5) and PSL(2,5)") {
    ConcreteGroup sl = build_classical(MatrixFamily::SL, 2, 5, false);
    auto ops = std::dynamic_pointer_cast<const MatrixGroupOps>(sl.ops_ptr());
    Matrix m;
    m.n = 2;
    m.a = {0, 1, 4, 0}; // [[0,1],[-1,0]]
    CHECK(element_order(sl, ops->to_element(m)) == 4);
    CHECK(order_by_squaring(ops->space(), m) == 4);

    ConcreteGroup psl = build_classical(MatrixFamily::SL, 2, 5, true);
    auto pops = std::dynamic_pointer_cast<const MatrixGroupOps>(psl.ops_ptr());
    CHECK(element_order(psl, pops->to_element(m)) == 2); // square is -I, a scalar
    CHECK(element_order(psl, psl.identity()) == 1);
}

TEST_CASE("closure property on sampled products") {
    std::mt19937_64 rng(3);
    for (const std::string& desc :
         {std::string("SL 2 9 projective"), std::string("Sp 4 3 projective"),
          std::string("SU 3 3 projective")}) {
        ConcreteGroup g = build_from_descriptor(desc);
        std::uniform_int_distribution<size_t> pick(0, g.elements().size() - 1);
        for (int i = 0; i < 200; ++i) {
            const Element& a = g.elements()[pick(rng)];
            const Element& b = g.elements()[pick(rng)];
            CHECK(g.contains(g.mul(a, b)));
            CHECK(g.contains(g.inverse(a)));
        }
    }
}

TEST_CASE("lagrange: element orders divide the group order") {
    for (const std::string& desc :
         {std::string("SL 2 7 projective"), std::string("SL 2 9 projective"),
          std::string("SU 3 3 projective"), std::string("SL 3 3 projective")}) {
        ConcreteGroup g = build_from_descriptor(desc);
        for (const auto& e : g.elements()) CHECK(g.order() % element_order(g, e) == 0);
    }
}

TEST_CASE("field-automorphism extension") {
    ConcreteGroup psl9 = build_classical(MatrixFamily::SL, 2, 9, true);
    ConcreteGroup ext = semidirect_field_aut(psl9, 2);
    CHECK(ext.order() == 720); // |base| * r
    ConcreteGroup psl4 = build_classical(MatrixFamily::SL, 2, 4, true);
    CHECK(semidirect_field_aut(psl4, 2).order() == 120);

    // r = 1 is the trivial extension
    ConcreteGroup same = semidirect_field_aut(psl9, 1);
    CHECK(same.order() == psl9.order());

    // the i = 0 slice is a subgroup isomorphic to the base
    auto ops = std::dynamic_pointer_cast<const FieldAutExtensionOps>(ext.ops_ptr());
    REQUIRE(ops);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<size_t> pick(0, psl9.elements().size() - 1);
    for (int i = 0; i < 100; ++i) {
        Element a = psl9.elements()[pick(rng)];
        Element b = psl9.elements()[pick(rng)];
        Element ab = psl9.mul(a, b);
        Element ea = a, eb = b, eab = ab;
        ea.push_back(0);
        eb.push_back(0);
        eab.push_back(0);
        CHECK(ext.mul(ea, eb) == eab); // slice multiplication = base multiplication
        CHECK(ext.contains(ea));
    }
    // quotient by the slice is cyclic of order r
    std::vector<Element> slice_gens;
    for (const auto& g : psl9.generators()) {
        Element e = g;
        e.push_back(0);
        slice_gens.push_back(e);
    }
    ConcreteGroup slice = subgroup(ext, slice_gens, "base slice");
    CHECK(slice.order() == psl9.order());
    ConcreteGroup quot = quotient_group(ext, slice);
    CHECK(quot.order() == 2);
    CHECK(is_cyclic(quot));

    CHECK_THROWS_AS(semidirect_field_aut(psl9, 3), std::invalid_argument); // 3 does not divide l=2
}

TEST_CASE("direct products and cyclic groups") {
    ConcreteGroup z6 = cyclic_group(6);
    CHECK(z6.order() == 6);
    CHECK(is_cyclic(z6));
    CHECK(is_abelian(z6));
    ConcreteGroup z2xz2 = direct_product(cyclic_group(2), cyclic_group(2));
    CHECK(z2xz2.order() == 4);
    CHECK_FALSE(is_cyclic(z2xz2));
}

TEST_CASE("fixed-point-free actions") {
    // Frobenius group of order 20: all 15 outer elements act freely
    ConcreteGroup aff5 = affine_frobenius_group(5);
    ConcreteGroup k5 = affine_translations(aff5);
    CHECK(aff5.order() == 20);
    CHECK(k5.order() == 5);
    auto res = fixed_point_free_check(aff5, k5);
    CHECK(res.fixed_point_free);

    // abelian: everything centralizes, with a witness
    ConcreteGroup z6 = cyclic_group(6);
    ConcreteGroup z3 = subgroup(z6, {{2}});
    auto bad = fixed_point_free_check(z6, z3);
    CHECK_FALSE(bad.fixed_point_free);
    REQUIRE(bad.witness);
    CHECK_FALSE(z3.contains(bad.witness->first));
    CHECK(z3.contains(bad.witness->second));

    // S3 x Z3 with K the second factor
    ConcreteGroup s3 = build_classical(MatrixFamily::SL, 2, 2, false);
    ConcreteGroup prod = direct_product(s3, cyclic_group(3));
    auto pops = std::dynamic_pointer_cast<const ProductOps>(prod.ops_ptr());
    ConcreteGroup kz3 = subgroup(prod, {pops->join(s3.identity(), {1})});
    CHECK_FALSE(fixed_point_free_check(prod, kz3).fixed_point_free);

    // K must be normal
    auto ops = std::dynamic_pointer_cast<const MatrixGroupOps>(aff5.ops_ptr());
    Matrix scale = Matrix::identity(2);
    scale.at(0, 0) = 2;
    ConcreteGroup nonnormal = subgroup(aff5, {ops->to_element(scale)});
    CHECK_THROWS_AS(fixed_point_free_check(aff5, nonnormal), std::invalid_argument);
}

TEST_CASE("sylow shapes") {
    ConcreteGroup z4 = cyclic_group(4);
    CHECK(sylow_shape(z4, 2).shape == SylowShape::Cyclic);

    // Q8 inside SL(2,3)
    ConcreteGroup sl23 = build_classical(MatrixFamily::SL, 2, 3, false);
    auto cls = sylow_shape(sl23, 2);
    CHECK(cls.order == 8);
    CHECK(cls.shape == SylowShape::GeneralizedQuaternion);
    CHECK(sylow_shape(sl23, 3).shape == SylowShape::Cyclic);

    ConcreteGroup klein = direct_product(cyclic_group(2), cyclic_group(2));
    CHECK(sylow_shape(klein, 2).shape == SylowShape::Other);

    // r not dividing |Q|: trivial flag
    auto trivial = sylow_shape(z4, 7);
    CHECK(trivial.trivial);
    CHECK(trivial.shape == SylowShape::Cyclic);

    // a noncyclic odd Sylow
    ConcreteGroup psl9 = build_classical(MatrixFamily::SL, 2, 9, true);
    CHECK(sylow_shape(psl9, 3).shape == SylowShape::Other);
    CHECK(sylow_shape(psl9, 5).shape == SylowShape::Cyclic);
}

TEST_CASE("sylow subgroups have the right order and are subgroups") {
    ConcreteGroup g = build_classical(MatrixFamily::Sp, 4, 3, true);
    for (uint64_t r : {2ull, 3ull, 5ull}) {
        ConcreteGroup p = sylow_subgroup(g, r);
        CHECK(p.order() == r_part(g.order(), r));
        for (const auto& e : p.elements()) CHECK(g.contains(e));
    }
}

TEST_CASE("nilpotency via sylow normality") {
    CHECK(is_nilpotent(cyclic_group(12)));
    CHECK(is_nilpotent(direct_product(cyclic_group(4), cyclic_group(9))));
    ConcreteGroup s3 = build_classical(MatrixFamily::SL, 2, 2, false);
    CHECK_FALSE(is_nilpotent(s3));
    ConcreteGroup sl23 = build_classical(MatrixFamily::SL, 2, 3, false);
    CHECK_FALSE(is_nilpotent(sl23));
    ConcreteGroup q8 = sylow_subgroup(sl23, 2);
    CHECK(is_nilpotent(q8));
}

TEST_CASE("simplicity probe") {
    CHECK(probe_simplicity(build_classical(MatrixFamily::SL, 2, 5, true)).simple);
    CHECK(probe_simplicity(build_classical(MatrixFamily::SL, 2, 7, true)).simple);
    CHECK_FALSE(probe_simplicity(build_classical(MatrixFamily::SL, 2, 5, false)).simple); // center
    CHECK_FALSE(probe_simplicity(cyclic_group(60)).simple);
    ConcreteGroup s3 = build_classical(MatrixFamily::SL, 2, 2, false);
    CHECK_FALSE(probe_simplicity(s3).simple);
}

TEST_CASE("quotient groups") {
    ConcreteGroup sl23 = build_classical(MatrixFamily::SL, 2, 3, false);
    ConcreteGroup q8 = sylow_subgroup(sl23, 2);
    ConcreteGroup quot = quotient_group(sl23, q8);
    CHECK(quot.order() == 3);
    CHECK(is_cyclic(quot));
    // PSL(2,5) = SL(2,5) / center
    ConcreteGroup sl25 = build_classical(MatrixFamily::SL, 2, 5, false);
    auto center = center_elements(sl25);
    CHECK(center.size() == 2);
    ConcreteGroup z = subgroup(sl25, center, "center");
    CHECK(quotient_group(sl25, z).order() == 60);
}

TEST_CASE("unitary groups obey the defining form") {
    // SU(n, q): A Abar^T = I with entrywise conjugation x -> x^q
    ConcreteGroup su = build_classical(MatrixFamily::SU, 3, 2, false);
    CHECK(su.order() == 216);
    auto ops = std::dynamic_pointer_cast<const MatrixGroupOps>(su.ops_ptr());
    const MatrixSpace& sp = ops->space();
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<size_t> pick(0, su.elements().size() - 1);
    for (int i = 0; i < 50; ++i) {
        Matrix m = ops->to_matrix(su.elements()[pick(rng)]);
        CHECK(sp.is_identity(sp.mul(m, sp.conj_transpose(m, 1))));
        CHECK(sp.det(m) == 1);
    }
}
