#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "builders.hpp"
#include "dialg/errors.hpp"
#include "dialg/polynomial.hpp"

using namespace dialg;
using namespace dialg::testing;

namespace {

// Brute-force oracle: all trees over the signature with leaves labelled by
// every permutation of 1..n, built without the basis machinery.
std::set<std::vector<std::int32_t>> brute_force_monomials(const Signature& sig, std::size_t n) {
    std::function<std::vector<std::vector<std::int32_t>>(std::size_t)> shapes = [&](std::size_t k) {
        std::vector<std::vector<std::int32_t>> out;
        if (k == 1) {
            out.push_back({0});
            return out;
        }
        for (std::size_t s = 0; s < sig.size(); ++s) {
            std::function<void(std::size_t, std::size_t, std::vector<std::int32_t>)> rec =
                [&](std::size_t slot, std::size_t left, std::vector<std::int32_t> acc) {
                    if (slot == sig.arity(s)) {
                        if (left == 0) out.push_back(acc);
                        return;
                    }
                    for (std::size_t c = 1; c + (sig.arity(s) - slot - 1) <= left; ++c)
                        for (const auto& sub : shapes(c)) {
                            auto next = acc;
                            next.insert(next.end(), sub.begin(), sub.end());
                            rec(slot + 1, left - c, next);
                        }
                };
            rec(0, k, {-static_cast<std::int32_t>(s) - 1});
        }
        return out;
    };
    std::set<std::vector<std::int32_t>> all;
    for (auto shape : shapes(n)) {
        Permutation w = identity_permutation(n);
        do {
            auto t = shape;
            std::size_t k = 0;
            for (auto& v : t)
                if (v == 0) v = w[k++];
            all.insert(t);
        } while (std::next_permutation(w.begin(), w.end()));
    }
    return all;
}

// Every tuple of `slots` monomials (with standard variables) whose degrees sum to `total`.
std::vector<std::vector<Polynomial>> monomial_tuples(const std::shared_ptr<const Signature>& sig, std::size_t slots,
                                                     std::size_t total) {
    std::vector<std::vector<Polynomial>> out;
    if (slots == 0) {
        if (total == 0) out.emplace_back();
        return out;
    }
    for (std::size_t d = 1; d + (slots - 1) <= total; ++d)
        for (const auto& m : enumerate_monomials(*sig, d))
            for (auto rest : monomial_tuples(sig, slots - 1, total - d)) {
                rest.insert(rest.begin(), Polynomial::monomial(sig, m));
                out.push_back(std::move(rest));
            }
    return out;
}

std::size_t catalan(std::size_t n) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

} // namespace

TEST(EnumerateMonomials, KnownCounts) {
    auto mu = binary_sig();
    auto tau = ternary_sig();
    auto mixed = mixed_sig();
    auto one = enumerate_monomials(*mu, 1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], X(1));
    EXPECT_EQ(enumerate_monomials(*mu, 3).size(), 12u);
    EXPECT_EQ(enumerate_monomials(*tau, 3).size(), 6u);
    EXPECT_EQ(enumerate_monomials(*mixed, 3).size(), 18u);
}

TEST(EnumerateMonomials, MatchesBruteForceAndIsOrdered) {
    for (auto sig : {binary_sig(), ternary_sig(), mixed_sig()}) {
        for (std::size_t n = 1; n <= 5; ++n) {
            auto monos = enumerate_monomials(*sig, n);
            auto oracle = brute_force_monomials(*sig, n);
            ASSERT_EQ(monos.size(), oracle.size()) << "n=" << n;
            std::set<std::vector<std::int32_t>> got;
            for (const auto& m : monos) got.insert(m.tokens());
            EXPECT_EQ(got, oracle);
            EXPECT_TRUE(std::is_sorted(monos.begin(), monos.end()));
            EXPECT_EQ(std::adjacent_find(monos.begin(), monos.end()), monos.end());
        }
    }
}

TEST(EnumerateMonomials, CatalanSkeletonCount) {
    auto mu = binary_sig();
    for (std::size_t n = 1; n <= 6; ++n) {
        auto b = basis_for(*mu, n);
        EXPECT_EQ(b->skeleton_count(), catalan(n - 1));
        EXPECT_EQ(b->size(), catalan(n - 1) * factorial(n));
    }
}

TEST(EnumerateMonomials, IndexRoundTrip) {
    auto b = basis_for(*mixed_sig(), 5);
    for (std::size_t i = 0; i < b->size(); ++i) ASSERT_EQ(b->index(b->monomial(i)), i);
}

TEST(EnumerateMonomials, CanonicalOrderSmall) {
    auto mu = binary_sig();
    auto monos = enumerate_monomials(*mu, 3);
    // leaf < internal: x1 (x2 x3) comes before (x1 x2) x3
    EXPECT_EQ(monos.front(), T(0, {X(1), T(0, {X(2), X(3)})}));
    EXPECT_EQ(monos[6], T(0, {T(0, {X(1), X(2)}), X(3)}));
}

TEST(EnumerateMonomials, CapIsEnforced) {
    auto mu = binary_sig();
    try {
        enumerate_monomials(*mu, 9);
        FAIL() << "expected a resource-limit error";
    } catch (const ResourceLimitError& e) {
        EXPECT_EQ(e.cap(), kDefaultEnumerationCap);
        EXPECT_NE(std::string(e.what()).find("8"), std::string::npos);
    }
    EXPECT_THROW(enumerate_monomials(*mu, 4, 3), ResourceLimitError);
}

TEST(ApplyPermutation, Examples) {
    auto mu = binary_sig();
    EXPECT_EQ(apply_permutation({2, 1}, P(mu, T(0, {X(1), X(2)}))), P(mu, T(0, {X(2), X(1)})));
    auto p = P(mu, {{2, T(0, {T(0, {X(1), X(2)}), X(3)})}, {-1, T(0, {X(3), T(0, {X(2), X(1)})})}});
    EXPECT_EQ(apply_permutation(identity_permutation(3), p), p);
    // (1 2 3): 1 -> 2, 2 -> 3, 3 -> 1
    EXPECT_EQ(apply_permutation({2, 3, 1}, P(mu, T(0, {T(0, {X(1), X(2)}), X(3)}))),
              P(mu, T(0, {T(0, {X(2), X(3)}), X(1)})));
    EXPECT_THROW(apply_permutation({1, 2}, p), ArgumentError);
}

TEST(ApplyPermutation, IsAGroupAction) {
    std::mt19937 rng(7);
    auto sig = mixed_sig();
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 3 + trial % 3;
        auto p = random_polynomial(rng, sig, n);
        auto s = random_permutation(rng, n);
        auto t = random_permutation(rng, n);
        EXPECT_EQ(apply_permutation(compose_permutations(s, t), p), apply_permutation(s, apply_permutation(t, p)));
        EXPECT_EQ(apply_permutation(identity_permutation(n), p), p);
    }
}

TEST(Compose, Examples) {
    auto mu = binary_sig();
    auto id = Polynomial::identity(mu);
    auto m12 = P(mu, T(0, {X(1), X(2)}));
    EXPECT_EQ(compose(m12, {id, m12}), P(mu, T(0, {X(1), T(0, {X(2), X(3)})})));

    auto comm = P(mu, {{1, T(0, {X(1), X(2)})}, {-1, T(0, {X(2), X(1)})}});
    auto expected =
        P(mu, {{1, T(0, {T(0, {X(1), X(2)}), X(3)})}, {-1, T(0, {X(3), T(0, {X(1), X(2)})})}});
    EXPECT_EQ(compose(comm, {m12, id}), expected);

    EXPECT_EQ(compose(m12, {m12, m12}), P(mu, T(0, {T(0, {X(1), X(2)}), T(0, {X(3), X(4)})})));
    EXPECT_THROW(compose(m12, {m12}), ArgumentError);
}

TEST(SubstituteAt, Examples) {
    auto mu = binary_sig();
    auto m12 = P(mu, T(0, {X(1), X(2)}));
    EXPECT_EQ(substitute_at(T(0, {X(1), X(2)}), 2, m12), P(mu, T(0, {X(1), T(0, {X(2), X(3)})})));
    EXPECT_EQ(substitute_at(T(0, {X(1), X(2)}), 1, Polynomial::identity(mu)), m12);
    EXPECT_EQ(substitute_at(T(0, {T(0, {X(1), X(2)}), X(3)}), 2, m12),
              P(mu, T(0, {T(0, {X(1), T(0, {X(2), X(3)})}), X(4)})));
    EXPECT_THROW(substitute_at(T(0, {X(1), X(2)}), 3, m12), ArgumentError);
    EXPECT_THROW(substitute_at(T(0, {X(1), X(2)}), 0, m12), ArgumentError);
}

TEST(SubstituteAt, AgreesWithCompose) {
    std::mt19937 rng(11);
    auto sig = mixed_sig();
    auto id = Polynomial::identity(sig);
    for (int trial = 0; trial < 100; ++trial) {
        auto w = enumerate_monomials(*sig, 3)[rng() % 18];
        auto u = random_polynomial(rng, sig, 2 + trial % 2);
        std::size_t i = 1 + rng() % 3;
        std::vector<Polynomial> gs(3, id);
        gs[i - 1] = u;
        EXPECT_EQ(substitute_at(w, i, u), compose(Polynomial::monomial(sig, w), gs));
    }
}

// gamma(gamma(f; g1..gn); h...) = gamma(f; gamma(g1; h..), ..., gamma(gn; h..)),
// exhaustive over every monomial triple whose final degree is at most 4.
TEST(Compose, OperadAssociativityExhaustive) {
    auto sig = mixed_sig();
    std::size_t checked = 0;
    for (std::size_t final_degree = 2; final_degree <= 4; ++final_degree)
        for (std::size_t nf = 1; nf <= final_degree; ++nf)
            for (const auto& fm : enumerate_monomials(*sig, nf)) {
                auto f = Polynomial::monomial(sig, fm);
                for (std::size_t mid = nf; mid <= final_degree; ++mid)
                    for (const auto& gs : monomial_tuples(sig, nf, mid))
                        for (const auto& hs : monomial_tuples(sig, mid, final_degree)) {
                            auto lhs = compose(compose(f, gs), hs);
                            std::vector<Polynomial> inner;
                            std::size_t pos = 0;
                            for (const auto& g : gs) {
                                std::vector<Polynomial> sub(hs.begin() + pos, hs.begin() + pos + g.degree());
                                inner.push_back(compose(g, sub));
                                pos += g.degree();
                            }
                            ASSERT_EQ(lhs, compose(f, inner));
                            ++checked;
                        }
            }
    EXPECT_GT(checked, 1000u);
}

// gamma(sigma.f; g1..gn) = tau.gamma(f; g_sigma(1)..g_sigma(n)) where tau
// moves each block back to the position of its g.
TEST(Compose, EquivarianceExhaustive) {
    auto sig = mixed_sig();
    std::size_t checked = 0;
    for (std::size_t total = 2; total <= 4; ++total)
        for (std::size_t nf = 2; nf <= total; ++nf)
            for (const auto& fm : enumerate_monomials(*sig, nf))
                for (const auto& gs : monomial_tuples(sig, nf, total)) {
                    auto f = Polynomial::monomial(sig, fm);
                    Permutation sigma = identity_permutation(nf);
                    do {
                        std::vector<std::size_t> off1(nf, 0), off2(nf, 0);
                        for (std::size_t i = 1; i < nf; ++i) {
                            off1[i] = off1[i - 1] + gs[i - 1].degree();
                            off2[i] = off2[i - 1] + gs[sigma[i - 1] - 1].degree();
                        }
                        Permutation tau(total);
                        std::vector<Polynomial> permuted_gs;
                        for (std::size_t i = 0; i < nf; ++i) {
                            std::size_t j = sigma[i] - 1;
                            permuted_gs.push_back(gs[j]);
                            for (std::size_t t = 1; t <= gs[j].degree(); ++t)
                                tau[off2[i] + t - 1] = static_cast<int>(off1[j] + t);
                        }
                        ASSERT_EQ(compose(apply_permutation(sigma, f), gs),
                                  apply_permutation(tau, compose(f, permuted_gs)));
                        ++checked;
                    } while (std::next_permutation(sigma.begin(), sigma.end()));
                }
    EXPECT_GT(checked, 100u);
}

TEST(Linearize, Examples) {
    auto mu = binary_sig();
    RawPolynomial already{mu, {{T(0, {X(1), X(2)}), 1}}};
    EXPECT_EQ(linearize(already), P(mu, T(0, {X(1), X(2)})));

    RawPolynomial square{mu, {{T(0, {X(1), X(1)}), 1}}};
    EXPECT_EQ(linearize(square), P(mu, {{1, T(0, {X(1), X(2)})}, {1, T(0, {X(2), X(1)})}}));

    RawPolynomial cube{mu, {{T(0, {T(0, {X(1), X(1)}), X(1)}), 1}}};
    auto lin = linearize(cube);
    EXPECT_EQ(lin.size(), 6u);
    Permutation abc = identity_permutation(3);
    do {
        EXPECT_EQ(lin.coefficient(T(0, {T(0, {X(abc[0]), X(abc[1])}), X(abc[2])})), 1);
    } while (std::next_permutation(abc.begin(), abc.end()));
}

TEST(Linearize, BlocksFollowVariableOrder) {
    auto mu = binary_sig();
    // (x^2 y) x with x = 1, y = 2: x -> {1,2,3}, y -> {4}
    RawPolynomial jordan_term{mu, {{T(0, {T(0, {T(0, {X(1), X(1)}), X(2)}), X(1)}), 1}}};
    auto lin = linearize(jordan_term);
    EXPECT_EQ(lin.degree(), 4u);
    EXPECT_EQ(lin.size(), 6u);
    EXPECT_EQ(lin.coefficient(T(0, {T(0, {T(0, {X(1), X(2)}), X(4)}), X(3)})), 1);
}

TEST(Linearize, RejectsNonHomogeneous) {
    auto mu = binary_sig();
    RawPolynomial bad{mu, {{T(0, {X(1), X(1)}), 1}, {T(0, {X(1), X(2)}), 1}}};
    EXPECT_THROW(linearize(bad), ArgumentError);
}

TEST(Linearize, MultilinearIsFixedAndOutputIsMultilinear) {
    std::mt19937 rng(3);
    auto sig = mixed_sig();
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_polynomial(rng, sig, 2 + trial % 4);
        if (p.is_zero()) continue;
        RawPolynomial raw{sig, {}};
        for (const auto& [m, c] : p.terms()) raw.terms.emplace_back(m, c);
        EXPECT_EQ(linearize(raw), p);
    }
    // a term with x1 twice and x2 once: output symmetric in the x1 block
    RawPolynomial raw{sig, {{T(1, {X(1), X(2), X(1)}), 1}}};
    auto lin = linearize(raw);
    EXPECT_EQ(apply_permutation({2, 1, 3}, lin), lin);
    for (const auto& [m, c] : lin.terms()) EXPECT_TRUE(m.is_multilinear());
}

TEST(DoubleSignature, Examples) {
    auto d = double_signature(Signature({{"mu", 2}}));
    ASSERT_EQ(d.doubled().size(), 2u);
    EXPECT_EQ(d.doubled().op(0), (Operation{"mu^1", 2}));
    EXPECT_EQ(d.doubled().op(1), (Operation{"mu^2", 2}));

    auto t = double_signature(Signature({{"tau", 3}}));
    ASSERT_EQ(t.doubled().size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(t.doubled().arity(k), 3u);
    EXPECT_EQ(t.doubled().op(2).name, "tau^3");

    auto m = double_signature(Signature({{"mu", 2}, {"tau", 3}}));
    EXPECT_EQ(m.doubled().size(), 5u);
    EXPECT_EQ(m.split(m.symbol(1, 2)), (std::pair<std::size_t, std::size_t>{1, 2}));
}

TEST(Signature, Validation) {
    EXPECT_THROW(Signature({{"mu", 2}, {"mu", 3}}), ArgumentError);
    EXPECT_THROW(Signature({{"u", 1}}), ArgumentError);
}

TEST(Polynomial, RejectsInvalidTerms) {
    auto mu = binary_sig();
    Polynomial p(mu, 2);
    EXPECT_THROW(p.add_term(T(0, {X(1), X(1)}), 1), ArgumentError);
    EXPECT_THROW(p.add_term(T(0, {X(1), T(0, {X(2), X(3)})}), 1), ArgumentError);
    EXPECT_THROW(p.add_term(Monomial({-1, 1}), 1), ArgumentError);
    p.add_term(T(0, {X(1), X(2)}), 3);
    p.add_term(T(0, {X(1), X(2)}), -3);
    EXPECT_TRUE(p.is_zero());
}

TEST(Polynomial, PrimeFieldNormalization) {
    auto mu = binary_sig();
    Polynomial p(mu, 2, FieldSpec::prime(5));
    p.add_term(T(0, {X(1), X(2)}), -1);
    p.add_term(T(0, {X(2), X(1)}), Rational(1, 2));
    EXPECT_EQ(p.coefficient(T(0, {X(1), X(2)})), 4);
    EXPECT_EQ(p.coefficient(T(0, {X(2), X(1)})), 3);
    p.add_term(T(0, {X(1), X(2)}), 6);
    EXPECT_EQ(p.size(), 1u);
}
