#include <gtest/gtest.h>

#include <random>

#include "dialg/sparse.hpp"

using namespace dialg;

namespace {

using QVec = SparseVec<Rational>;

SparseMatrix<RationalField> dense_q(std::size_t ncols, const std::vector<std::vector<int>>& rows) {
    SparseMatrix<RationalField> m(RationalField{}, ncols);
    for (const auto& r : rows) {
        QVec v;
        for (std::uint32_t c = 0; c < r.size(); ++c)
            if (r[c] != 0) v.emplace_back(c, r[c]);
        m.add_row(v);
    }
    return m;
}

// Dense Gaussian elimination used as an independent rank oracle.
std::size_t dense_rank_mod(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
    std::size_t rank = 0;
    const std::size_t ncols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < ncols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && ((a[piv][c] % p) + p) % p == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        PrimeField f(static_cast<std::uint64_t>(p));
        auto inv = f.inv(static_cast<std::uint64_t>(((a[rank][c] % p) + p) % p));
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == rank) continue;
            std::int64_t factor = ((a[r][c] % p) + p) % p * static_cast<std::int64_t>(inv) % p;
            for (std::size_t k = 0; k < ncols; ++k) a[r][k] = ((a[r][k] - factor * a[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

} // namespace

TEST(RowReduce, Examples) {
    auto s = row_reduce(dense_q(2, {{1, 2}, {2, 4}}));
    ASSERT_EQ(s.rank(), 1u);
    EXPECT_EQ(s.pivots(), std::vector<std::uint32_t>{0});
    EXPECT_EQ(s.rows()[0], (QVec{{0, 1}, {1, 2}}));

    EXPECT_EQ(row_reduce(SparseMatrix<RationalField>(RationalField{}, 3)).rank(), 0u);

    auto id = row_reduce(dense_q(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    EXPECT_EQ(id.rank(), 3u);
    EXPECT_EQ(id.rows()[2], (QVec{{2, 1}}));
}

TEST(RowReduce, CanonicalRref) {
    auto s = row_reduce(dense_q(4, {{0, 2, 4, 6}, {1, 1, 1, 1}, {1, 2, 3, 4}}));
    ASSERT_EQ(s.rank(), 2u);
    EXPECT_EQ(s.rows()[0], (QVec{{0, 1}, {2, -1}, {3, -2}}));
    EXPECT_EQ(s.rows()[1], (QVec{{1, 1}, {2, 2}, {3, 3}}));
}

TEST(RowReduce, RejectsOutOfRangeColumns) {
    SparseMatrix<RationalField> m(RationalField{}, 2);
    EXPECT_THROW(m.add_row({{5, 1}}), ArgumentError);
}

TEST(KernelBasis, Examples) {
    auto k = kernel_basis(dense_q(2, {{1, 1}}));
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0], (QVec{{0, -1}, {1, 1}}));  // (1,-1) up to sign, free column 1 normalized

    EXPECT_TRUE(kernel_basis(dense_q(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());
    EXPECT_EQ(kernel_basis(dense_q(3, {{0, 0, 0}})).size(), 3u);
}

TEST(Membership, Examples) {
    auto s = row_reduce(dense_q(2, {{1, 2}}));
    EXPECT_TRUE(membership<RationalField>({{0, 1}, {1, 2}}, s));
    auto t = row_reduce(dense_q(2, {{0, 1}}));
    EXPECT_FALSE(membership<RationalField>({{0, 1}}, t));
    EXPECT_TRUE(membership<RationalField>({}, t));
    EXPECT_THROW(membership<RationalField>({{7, 1}}, t), ArgumentError);
}

TEST(SubspaceEqual, Examples) {
    EXPECT_TRUE(subspace_equal(row_reduce(dense_q(2, {{1, 0}, {0, 1}})), row_reduce(dense_q(2, {{1, 1}, {1, -1}}))));
    EXPECT_FALSE(subspace_equal(row_reduce(dense_q(2, {{1, 0}})), row_reduce(dense_q(2, {{0, 1}}))));
    EXPECT_TRUE(subspace_equal(row_reduce(dense_q(2, {})), row_reduce(dense_q(2, {}))));
    EXPECT_THROW(subspace_equal(row_reduce(dense_q(2, {})), row_reduce(dense_q(3, {}))), ArgumentError);
}

TEST(SubspaceEqual, MixedFieldsRejected) {
    Subspace<PrimeField> a(PrimeField(5), 2), b(PrimeField(7), 2);
    EXPECT_THROW((void)(a == b), ArgumentError);
}

TEST(PrimeField, Arithmetic) {
    PrimeField f(kDefaultPrime);
    for (std::uint64_t a : std::vector<std::uint64_t>{1, 2, 999, kDefaultPrime - 1}) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    EXPECT_EQ(f.from_rational(Rational(-1, 2)), f.neg(f.inv(2)));
    EXPECT_THROW(PrimeField(5).from_rational(Rational(1, 5)), ArgumentError);
    EXPECT_THROW(FieldSpec::prime(6), ArgumentError);
    EXPECT_EQ(FieldSpec::parse("p:7").characteristic(), 7u);
    EXPECT_TRUE(FieldSpec::parse("q").is_rational());
}

// rank + nullity = columns; RREF idempotent; ranks agree with a dense oracle
// and between F_p and Q on integer matrices with small entries.
TEST(LinalgProperties, RandomMatrices) {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t nrows = 1 + rng() % 8, ncols = 1 + rng() % 10;
        std::vector<std::vector<std::int64_t>> dense(nrows, std::vector<std::int64_t>(ncols, 0));
        SparseMatrix<RationalField> mq(RationalField{}, ncols);
        SparseMatrix<PrimeField> mp(PrimeField(kDefaultPrime), ncols);
        for (std::size_t r = 0; r < nrows; ++r) {
            QVec vq;
            SparseVec<std::uint64_t> vp;
            for (std::uint32_t c = 0; c < ncols; ++c) {
                int x = (rng() % 3 == 0) ? static_cast<int>(rng() % 7) - 3 : 0;
                dense[r][c] = x;
                if (x) {
                    vq.emplace_back(c, x);
                    vp.emplace_back(c, PrimeField(kDefaultPrime).from_rational(x));
                }
            }
            mq.add_row(vq);
            mp.add_row(vp);
        }
        auto sq = row_reduce(mq);
        auto sp = row_reduce(mp);
        EXPECT_EQ(sq.rank(), dense_rank_mod(dense, kDefaultPrime));
        EXPECT_EQ(sq.rank(), sp.rank());
        EXPECT_EQ(sq.rank() + kernel_basis(mq).size(), ncols);

        SparseMatrix<RationalField> again(RationalField{}, ncols);
        for (const auto& row : sq.rows()) again.add_row(row);
        EXPECT_TRUE(subspace_equal(row_reduce(again), sq));

        // kernel vectors really are annihilated by every row
        for (const auto& k : kernel_basis(mq))
            for (const auto& row : mq.rows()) {
                Rational dot = 0;
                for (const auto& [c, a] : row)
                    for (const auto& [c2, b] : k)
                        if (c == c2) dot += a * b;
                EXPECT_EQ(dot, 0);
            }
        // every row is a member of its own row space
        for (const auto& row : mq.rows()) EXPECT_TRUE(sq.contains(row));
    }
}

TEST(EchelonBuilder, IncrementalMatchesBatch) {
    std::mt19937 rng(5);
    PrimeField f(101);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t ncols = 12;
        std::vector<SparseVec<std::uint64_t>> vs;
        for (int i = 0; i < 10; ++i) {
            SparseVec<std::uint64_t> v;
            for (std::uint32_t c = 0; c < ncols; ++c)
                if (rng() % 4 == 0) v.emplace_back(c, 1 + rng() % 100);
            vs.push_back(v);
        }
        auto forward = span_of(f, ncols, vs);
        std::reverse(vs.begin(), vs.end());
        auto backward = span_of(f, ncols, vs);
        EXPECT_EQ(forward, backward);
        auto rebuilt = Subspace<PrimeField>::from_rref(f, ncols, forward.rows());
        EXPECT_EQ(rebuilt, forward);
    }
}
