#include "ratk/fm.hpp"
#include "ratk/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ratk;
using namespace ratk::testing;

namespace {

RatMatrix rat(std::initializer_list<std::initializer_list<long>> rows) { return to_rational(int_matrix(rows)); }

} // namespace

TEST(FmSpaces, FiniteDimensional) {
    EXPECT_EQ(fm_finite_dim(FiniteDimAlgebra({1}), 1).total(), 1u);
    EXPECT_EQ(fm_finite_dim(FiniteDimAlgebra({1}), 2).total(), 0u);
    const auto s = fm_finite_dim(FiniteDimAlgebra({2, 3}), 3);
    EXPECT_EQ(s.summand_dims, (std::vector<std::uint8_t>{1, 1}));
    EXPECT_EQ(fm_finite_dim(FiniteDimAlgebra({2, 3}), 5).summand_dims, (std::vector<std::uint8_t>{0, 1}));
    EXPECT_THROW(fm_finite_dim(FiniteDimAlgebra({1}), 0), InputError);
}

TEST(FmSpaces, Circle) {
    EXPECT_EQ(fm_circle(circle({1}), 1).total(), 1u);
    EXPECT_EQ(fm_circle(circle({1}), 2).total(), 0u);
    EXPECT_EQ(fm_circle(circle({8}), 5).total(), 1u);
    // Both parities count, up to 2n - 1.
    for (int m = 1; m <= 15; ++m) EXPECT_EQ(fm_circle(circle({8}), m).total(), 1u);
    EXPECT_EQ(fm_circle(circle({8}), 16).total(), 0u);
    // Size 2 reaches m = 3 only; size 3 reaches m = 5.
    EXPECT_EQ(fm_circle(circle({1, 2, 3}), 4).live(), (std::vector<std::size_t>{2}));
}

TEST(FmSpaces, LiveThreshold) {
    for (int m = 1; m <= 40; ++m) {
        const Integer h = live_threshold(m);
        EXPECT_TRUE(Integer(m) <= 2 * h - 1);
        EXPECT_FALSE(h > 1 && Integer(m) <= 2 * (h - 1) - 1);
    }
}

TEST(FmInduced, BunceDeddensStep) {
    SignatureMatrix s(circle({8}), circle({16}), int_matrix({{2}}), int_matrix({{1}}));
    EXPECT_EQ(fm_induced(s, 1), rat({{2}}));
    EXPECT_EQ(fm_induced(s, 2), rat({{1}}));
}

TEST(FmInduced, GoodearlEvenPart) {
    SignatureMatrix s(circle({16}), circle({64}), int_matrix({{4}}), int_matrix({{2}}));
    for (int m = 2; m <= 30; m += 2) EXPECT_EQ(fm_induced(s, m), rat({{2}}));
}

TEST(FmInduced, DropsDeadCoordinates) {
    SignatureMatrix s(circle({1, 3}), circle({2, 7}), int_matrix({{0, 0}, {1, 2}}), int_matrix({{0, 0}, {-1, 3}}));
    EXPECT_EQ(fm_induced(s, 1), rat({{0, 0}, {1, 2}}));
    // m = 4: source summand 0 (size 1) and target summand 0 (size 2) are dead.
    EXPECT_EQ(fm_induced(s, 4), rat({{3}}));
    EXPECT_EQ(fm_induced(s, 40).size(), 0);
}

TEST(FmInduced, RejectsInvalidSignature) {
    SignatureMatrix s(circle({2}), circle({3}), int_matrix({{2}}), int_matrix({{0}}));
    EXPECT_THROW(fm_induced(s, 1), InputError);
}

TEST(Rank, Examples) {
    EXPECT_EQ(rank(rat({{2}})), 1u);
    EXPECT_EQ(rank(rat({{1, 2}, {2, 4}})), 1u);
    EXPECT_EQ(rank(RatMatrix(0, 3)), 0u);
    EXPECT_EQ(rank(rat({{0, 0}, {0, 0}})), 0u);
    EXPECT_EQ(rank(rat({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})), 2u);
    RatMatrix f(2, 2);
    f << Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1);
    EXPECT_EQ(rank(f), 1u);
}

TEST(Rank, BigEntriesStayExact) {
    RatMatrix m(2, 2);
    const Rational big(Integer("1000000000000000000000000000007"));
    m << big, big + 1, big - 1, big;
    // det = big^2 - (big^2 - 1) = 1.
    EXPECT_EQ(rank(m), 2u);
}

TEST(ColimDim, ConstantTwo) {
    MatrixSequence seq;
    seq.period = {rat({{2}})};
    const auto r = colim_dim(seq);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.dimension(), 1);
}

TEST(ColimDim, ZeroMaps) {
    MatrixSequence seq;
    seq.period = {rat({{0}})};
    EXPECT_EQ(colim_dim(seq).dimension(), 0);
}

TEST(ColimDim, Idempotent) {
    MatrixSequence seq;
    seq.period = {rat({{1, 0}, {0, 0}})};
    const auto r = colim_dim(seq);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.dimension(), 1);
}

TEST(ColimDim, NilpotentNeedsPowers) {
    // rank T = 2 but T^3 = 0.
    MatrixSequence seq;
    seq.period = {rat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})};
    const auto r = colim_dim(seq);
    EXPECT_EQ(r.dimension(), 0);
    EXPECT_EQ(r.evidence, (std::vector<std::size_t>{2, 1, 0}));
}

TEST(ColimDim, PeriodMustCloseUp) {
    MatrixSequence seq;
    seq.period = {rat({{1, 0}})};
    EXPECT_THROW(colim_dim(seq), InputError);
}

TEST(ColimDim, FiniteDataSettles) {
    MatrixSequence seq;
    for (int k = 0; k < 30; ++k) seq.prefix.push_back(rat({{1, 0}, {0, 0}}));
    const auto r = colim_dim(seq, 4);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.dimension(), 1);
}

TEST(ColimDim, ShortFiniteDataIsAnInterval) {
    MatrixSequence seq;
    seq.prefix = {rat({{1, 0}, {0, 1}}), rat({{1, 0}, {0, 0}})};
    const auto r = colim_dim(seq, 8);
    EXPECT_FALSE(r.exact);
    EXPECT_LE(r.lower, r.upper);
    EXPECT_EQ(r.upper, 2);
}

TEST(FmOfSystem, Examples) {
    const auto bd = builtin_system("bunce-deddens");
    const auto g = builtin_system("goodearl", {4, 2});
    for (int m = 1; m <= 20; ++m) {
        const auto r1 = fm_of_system(bd, m);
        EXPECT_TRUE(r1.exact);
        EXPECT_EQ(r1.dimension(), 1) << "m = " << m;
        const auto r2 = fm_of_system(g, m);
        EXPECT_TRUE(r2.exact);
        EXPECT_EQ(r2.dimension(), 1) << "m = " << m;
    }
    const auto c = builtin_system("constant");
    EXPECT_EQ(fm_of_system(c, 1).dimension(), 1);
    EXPECT_EQ(fm_of_system(c, 2).dimension(), 0);
}

TEST(FmOfSystem, WindingZeroKillsEvenPart) {
    // Every step is diag(f(1), f(1)): the even part dies, the odd part survives.
    auto t = tmpl(int_matrix({{2}}), int_matrix({{0}}), int_vector({0}));
    const auto sys = periodic(circle({1}), {t});
    EXPECT_EQ(fm_of_system(sys, 1).dimension(), 1);
    EXPECT_EQ(fm_of_system(sys, 2).dimension(), 0);
    EXPECT_EQ(fm_of_system(sys, 7).dimension(), 1);
}

TEST(FmOfSystem, SingleStageWithoutTail) {
    const InductiveSystem one({circle({2, 5})}, {});
    EXPECT_EQ(fm_of_system(one, 3).dimension(), 2);
    EXPECT_FALSE(fm_of_system(one, 3).exact);
}
