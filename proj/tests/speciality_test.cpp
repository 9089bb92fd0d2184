#include <gtest/gtest.h>

#include <random>

#include "builders.hpp"
#include "oracles.hpp"
#include "dialg/errors.hpp"
#include "dialg/speciality.hpp"
#include "dialg/workbench.hpp"

using namespace dialg;
using namespace dialg::testing;

namespace {

const FieldSpec kQ = FieldSpec::rationals();
const FieldSpec kP = FieldSpec::prime(kDefaultPrime);

const OperadMorphism& M(const char* name) { return builtin_morphism(name).morphism; }
const VarietyPresentation& V(const char* name) { return builtin_variety(name); }

Polynomial assoc_poly(std::initializer_list<std::pair<Rational, Monomial>> terms) {
    return P(V("assoc").signature_ptr(), terms);
}

} // namespace

TEST(EvaluateMorphism, Examples) {
    auto b = V("lie").signature_ptr();
    auto got = evaluate_morphism(M("lie-to-assoc"), P(b, T(0, {T(0, {X(1), X(2)}), X(3)})));
    EXPECT_EQ(got, assoc_poly({{1, T(0, {T(0, {X(1), X(2)}), X(3)})},
                               {-1, T(0, {T(0, {X(2), X(1)}), X(3)})},
                               {-1, T(0, {X(3), T(0, {X(1), X(2)})})},
                               {1, T(0, {X(3), T(0, {X(2), X(1)})})}}));
    // modulo associativity this is x1x2x3 - x2x1x3 - x3x1x2 + x3x2x1
    auto flat = assoc_poly({{1, T(0, {T(0, {X(1), X(2)}), X(3)})},
                            {-1, T(0, {T(0, {X(2), X(1)}), X(3)})},
                            {-1, T(0, {T(0, {X(3), X(1)}), X(2)})},
                            {1, T(0, {T(0, {X(3), X(2)}), X(1)})}});
    EXPECT_TRUE(identity_implies(V("assoc"), got - flat));

    auto t = V("jts").signature_ptr();
    EXPECT_EQ(evaluate_morphism(M("jts-to-assoc"), P(t, T(0, {X(1), X(2), X(3)}))),
              assoc_poly({{1, T(0, {T(0, {X(1), X(2)}), X(3)})}, {1, T(0, {T(0, {X(3), X(2)}), X(1)})}}));

    EXPECT_EQ(evaluate_morphism(M("lie-to-assoc"), Polynomial::identity(b)), Polynomial::identity(V("assoc").signature_ptr()));
}

TEST(EvaluateMorphism, Errors) {
    OperadMorphism partial("partial", mixed_sig(), V("assoc"),
                           {P(V("assoc").signature_ptr(), T(0, {X(1), X(2)})), std::nullopt});
    EXPECT_NO_THROW(evaluate_morphism(partial, P(mixed_sig(), T(0, {X(1), X(2)}))));
    EXPECT_THROW(evaluate_morphism(partial, P(mixed_sig(), T(1, {X(1), X(2), X(3)}))), ArgumentError);
    EXPECT_THROW(evaluate_morphism(M("lie-to-assoc"), P(mixed_sig(), T(0, {X(1), X(2)}))), ArgumentError);
    // wrong image degree
    EXPECT_THROW(OperadMorphism("bad", binary_sig(), V("assoc"),
                                {P(V("assoc").signature_ptr(), T(0, {T(0, {X(1), X(2)}), X(3)}))}),
                 ArgumentError);
}

TEST(EvaluateMorphism, CommutesWithSymmetricGroup) {
    std::mt19937 rng(11);
    auto w = mixed_morphism();
    for (std::size_t n = 2; n <= 5; ++n)
        for (int i = 0; i < 30; ++i) {
            auto p = random_polynomial(rng, mixed_sig(), n);
            auto s = random_permutation(rng, n);
            ASSERT_EQ(evaluate_morphism(w, apply_permutation(s, p)), apply_permutation(s, evaluate_morphism(w, p)));
        }
}

TEST(EvaluateMorphism, CompositionLawExhaustiveThroughDegreeFour) {
    auto w = mixed_morphism();
    auto sig = mixed_sig();
    for (std::size_t a = 1; a <= 4; ++a)
        for (const auto& f : enumerate_monomials(*sig, a))
            for_each_monomial_tuple(*sig, a, 4, [&](const std::vector<Monomial>& gs) {
                std::vector<Polynomial> gp, wg;
                for (const auto& g : gs) {
                    gp.push_back(P(sig, g));
                    wg.push_back(evaluate_morphism(w, gp.back()));
                }
                ASSERT_EQ(evaluate_morphism(w, compose(P(sig, f), gp)), compose(evaluate_morphism(w, P(sig, f)), wg));
            });
}

TEST(MorphismKernel, Examples) {
    auto k2 = morphism_kernel_at_degree(M("lie-to-assoc"), 2, RationalField{});
    ASSERT_EQ(k2.kernel.rank(), 1u);
    auto b = V("lie").signature_ptr();
    EXPECT_EQ(to_polynomial(k2.kernel.rows()[0], *k2.basis, RationalField{}, b),
              P(b, {{1, T(0, {X(1), X(2)})}, {1, T(0, {X(2), X(1)})}}));
    auto k3 = morphism_kernel_at_degree(M("lie-to-assoc"), 3, RationalField{});
    EXPECT_EQ(k3.kernel.rank(), 10u);
    EXPECT_EQ(k3.image_rank, 2u);
    auto j2 = morphism_kernel_at_degree(M("jordan-to-assoc"), 2, PrimeField(kDefaultPrime));
    ASSERT_EQ(j2.kernel.rank(), 1u);
    auto c = V("jordan").signature_ptr();
    EXPECT_EQ(to_polynomial(j2.kernel.rows()[0], *j2.basis, PrimeField(kDefaultPrime), c),
              P(c, {{1, T(0, {X(1), X(2)})}, {-1, T(0, {X(2), X(1)})}}, kP));
}

TEST(MorphismKernel, ClosedUnderSymmetricGroup) {
    PrimeField f(kDefaultPrime);
    for (const char* name : {"lie-to-assoc", "jordan-to-assoc", "jts-to-assoc"}) {
        const auto& w = M(name);
        for (std::size_t d = 2; d <= 4; ++d) {
            auto k = morphism_kernel_at_degree(w, d, f);
            Permutation s = identity_permutation(d);
            do {
                for (const auto& row : k.kernel.rows()) {
                    auto p = apply_permutation(s, to_polynomial(row, *k.basis, f, w.source_ptr()));
                    ASSERT_TRUE(k.kernel.contains(to_vector(p, *k.basis, f)));
                }
            } while (std::next_permutation(s.begin(), s.end()));
        }
    }
}

TEST(SpecialIdentities, NoneForLieAndJordanThroughDegreeFive) {
    for (std::size_t d = 2; d <= 5; ++d) {
        EXPECT_TRUE(special_identities(M("lie-to-assoc"), V("lie"), d, kP).empty()) << d;
        EXPECT_TRUE(special_identities(M("jordan-to-assoc"), V("jordan"), d, kP).empty()) << d;
    }
    for (std::size_t d = 2; d <= 4; ++d) {
        EXPECT_TRUE(special_identities(M("lie-to-assoc"), V("lie"), d, kQ).empty()) << d;
        EXPECT_TRUE(special_identities(M("jordan-to-assoc"), V("jordan"), d, kQ).empty()) << d;
    }
}

TEST(SpecialIdentities, CommutativityForTheFreeVariety) {
    for (const FieldSpec& f : {kQ, kP}) {
        auto s = special_identities(M("free-to-comassoc"), V("free-binary"), 2, f);
        ASSERT_EQ(s.size(), 1u);
        auto m = V("free-binary").signature_ptr();
        EXPECT_EQ(s[0], P(m, {{1, T(0, {X(1), X(2)})}, {-1, T(0, {X(2), X(1)})}}, f));
    }
}

TEST(SpecialIdentities, JordanTriplesOfJordanAlgebras) {
    // The triple product of a Jordan algebra satisfies the triple-system axioms.
    EXPECT_NO_THROW(check_induced_morphism(M("jts-to-jordan"), V("jts"), kP));
    EXPECT_NO_THROW(check_induced_morphism(M("jts-to-assoc"), V("jts"), kQ));
}

TEST(SpecialIdentities, PreconditionNamesTheFailingGenerator) {
    auto a = V("assoc").signature_ptr();
    OperadMorphism plain("plain", V("lie").signature_ptr(), V("assoc"), {P(a, T(0, {X(1), X(2)}))});
    try {
        special_identities(plain, V("lie"), 3, kQ);
        FAIL() << "expected a precondition error";
    } catch (const ArgumentError& e) {
        EXPECT_NE(std::string(e.what()).find("anti"), std::string::npos) << e.what();
    }
}

TEST(DiSpecialIdentities, Examples) {
    for (std::size_t d = 2; d <= 4; ++d) {
        auto r = di_special_identities(M("lie-to-assoc"), V("lie"), d, kP);
        EXPECT_TRUE(r.basis.empty());
        EXPECT_TRUE(r.lift_match);
    }
    auto j = di_special_identities(M("jordan-to-assoc"), V("jordan"), 4, kQ);
    EXPECT_TRUE(j.basis.empty());
    EXPECT_TRUE(j.lift_match);

    auto f = di_special_identities(M("free-to-comassoc"), V("free-binary"), 2, kQ);
    ASSERT_EQ(f.basis.size(), 2u);
    EXPECT_TRUE(f.lift_match);
    EXPECT_TRUE(f.lift_contained);
    EXPECT_EQ(f.special_dim, 1u);
    auto m = V("free-binary").signature_ptr();
    auto comm = P(m, {{1, T(0, {X(1), X(2)})}, {-1, T(0, {X(2), X(1)})}});
    DiPolynomial e1(m, 2), e2(m, 2);
    e1.add(1, comm);
    e2.add(2, comm);
    EXPECT_EQ(f.basis[0], e1);
    EXPECT_EQ(f.basis[1], e2);
}

TEST(DiSpecialIdentities, DimensionIsDegreeTimesSpecialDimension) {
    for (std::size_t d = 2; d <= 3; ++d) {
        auto r = di_special_identities(M("free-to-comassoc"), V("free-binary"), d, kP);
        EXPECT_TRUE(r.lift_match);
        EXPECT_EQ(r.basis.size(), d * r.special_dim);
        EXPECT_GT(r.special_dim, 0u);
    }
}

TEST(BsoTheorem, Examples) {
    for (const FieldSpec& f : {kQ, kP}) {
        EXPECT_TRUE(verify_bso_theorem(M("lie-to-assoc"), 3, f).equal);
        auto j = verify_bso_theorem(M("jts-to-assoc"), 3, f);
        EXPECT_TRUE(j.equal);
        EXPECT_EQ(j.ambient_dim, 18u);
        auto fr = verify_bso_theorem(M("free-to-comassoc"), 2, f);
        EXPECT_TRUE(fr.equal);
        EXPECT_EQ(fr.kernel_dim, 2u);
    }
}

TEST(BsoTheorem, FreeVarietyLiftsOfCommutativity) {
    // The kernel at degree 2 is spanned by the two rho-lifts of x1x2 - x2x1.
    Doubling d(V("free-binary").signature_ptr());
    auto comm = P(d.base_ptr(), {{1, T(0, {X(1), X(2)})}, {-1, T(0, {X(2), X(1)})}});
    auto l1 = rho_poly(comm, 1, d), l2 = rho_poly(comm, 2, d);
    const auto s1 = d.map().symbol(0, 1), s2 = d.map().symbol(0, 2);
    EXPECT_EQ(l1, P(d.doubled_ptr(), {{1, T(s1, {X(1), X(2)})}, {-1, T(s2, {X(2), X(1)})}}));
    EXPECT_EQ(l2, P(d.doubled_ptr(), {{1, T(s2, {X(1), X(2)})}, {-1, T(s1, {X(2), X(1)})}}));
    EXPECT_EQ(zeta_poly(l1, d).component(1), comm);
    EXPECT_TRUE(zeta_poly(l1, d).component(2).is_zero());
}

TEST(BsoTheorem, CharacteristicGuard) {
    for (std::uint64_t p : {5u, 7u}) {
        EXPECT_THROW(verify_bso_theorem(M("lie-to-assoc"), p, FieldSpec::prime(p)), CharacteristicGuardError);
        EXPECT_THROW(verify_bso_theorem(M("lie-to-assoc"), p + 1, FieldSpec::prime(p)), CharacteristicGuardError);
        for (std::size_t d = 2; d <= 4; ++d) {
            auto fp = verify_bso_theorem(M("lie-to-assoc"), d, FieldSpec::prime(p));
            auto q = verify_bso_theorem(M("lie-to-assoc"), d, kQ);
            EXPECT_EQ(fp.equal, q.equal);
            EXPECT_EQ(fp.kernel_dim, q.kernel_dim);
            EXPECT_EQ(fp.presentation_ideal, q.presentation_ideal);
        }
    }
    EXPECT_THROW(verify_bso_theorem(M("lie-to-assoc"), 1, kQ), ArgumentError);
}
