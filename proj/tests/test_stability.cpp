#include "ratk/io.hpp"
#include "ratk/stability.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ratk;
using namespace ratk::testing;

namespace {

const Decision kYesExact{Verdict::Yes, true};
const Decision kNoExact{Verdict::No, true};

} // namespace

TEST(Digraph, SelfLoopOfMultiplicityOneIsNeutral) {
    const auto c = builtin_system("constant");
    MultiplicityDigraph g(c.tail());
    ASSERT_EQ(g.vertices().size(), 1u);
    const auto comps = g.components();
    ASSERT_EQ(comps.size(), 1u);
    EXPECT_TRUE(g.is_neutral_cycle(comps[0]));
    EXPECT_EQ(g.bounded_persistent_class(), std::optional<std::size_t>(0));
}

TEST(Digraph, DoublingGrows) {
    MultiplicityDigraph g(builtin_system("bunce-deddens").tail());
    EXPECT_EQ(g.growth()[0], MultiplicityDigraph::Growth::Unbounded);
    EXPECT_FALSE(g.bounded_persistent_class());
}

TEST(Digraph, PadBreaksNeutrality) {
    auto t = tmpl(int_matrix({{1}}), int_matrix({{1}}), int_vector({1}));
    MultiplicityDigraph g(periodic(circle({1}), {t}).tail());
    EXPECT_FALSE(g.bounded_persistent_class());
}

TEST(Digraph, InflowBreaksNeutrality) {
    // Summand 1 grows and feeds summand 0, which otherwise copies itself.
    auto t = tmpl(int_matrix({{1, 1}, {0, 2}}), int_matrix({{0, 0}, {0, 1}}), int_vector({0, 0}));
    MultiplicityDigraph g(periodic(circle({1, 1}), {t}).tail());
    EXPECT_FALSE(g.bounded_persistent_class());
}

TEST(Digraph, TwoPhaseCycle) {
    // Period 2 with summand 0 bouncing between phases with multiplicity 1.
    auto t0 = tmpl(int_matrix({{1, 0}, {1, 2}}), int_matrix({{0, 0}, {0, 0}}), int_vector({0, 0}));
    auto t1 = tmpl(int_matrix({{1, 0}, {0, 1}}), int_matrix({{0, 0}, {0, 0}}), int_vector({0, 1}));
    MultiplicityDigraph g(periodic(circle({2, 1}), {t0, t1}).tail());
    auto v = g.bounded_persistent_class();
    ASSERT_TRUE(v);
    EXPECT_EQ(g.vertices()[*v].summand, 0u);
    // The bounded class feeds summand 1, which grows.
    EXPECT_EQ(g.growth()[g.id(1, 1)], MultiplicityDigraph::Growth::Unbounded);
}

TEST(Digraph, TransientBoundedClassIsNotPersistent) {
    // Summand 1 receives nothing and only gets its pad.
    auto t = tmpl(int_matrix({{2, 1}, {0, 0}}), int_matrix({{1, 0}, {0, 0}}), int_vector({0, 1}));
    MultiplicityDigraph g(periodic(circle({1, 1}), {t}).tail());
    EXPECT_FALSE(g.persistent()[g.id(0, 1)]);
    EXPECT_FALSE(g.bounded_persistent_class());
}

TEST(OrphanElimination, BunceDeddensDropsFirstStage) {
    const auto r = orphan_eliminate(builtin_system("bunce-deddens"), 1, 64);
    ASSERT_EQ(r.outcome, EliminationOutcome::Eliminated);
    EXPECT_EQ(r.retained.front(), 1u);
    EXPECT_EQ(min_dim(r.system.stages().front()), Integer(2));
    for (int m = 1; m <= 12; ++m) EXPECT_EQ(fm_of_system(r.system, m).dimension(), 1);
}

TEST(OrphanElimination, ConstantIsBlocked) {
    const auto r = orphan_eliminate(builtin_system("constant"), 1, 64);
    EXPECT_EQ(r.outcome, EliminationOutcome::Blocked);
    EXPECT_EQ(r.blocking_summand, 0u);
}

TEST(OrphanElimination, HandBuiltOrphans) {
    // Sizes [1, 2]; nothing enters the size-1 summand, which only gets its pad.
    auto t = tmpl(int_matrix({{0, 0}, {2, 2}}), int_matrix({{0, 0}, {1, -1}}), int_vector({1, 0}));
    const auto sys = periodic(circle({1, 2}), {t});
    const auto r = orphan_eliminate(sys, 1, 64);
    ASSERT_EQ(r.outcome, EliminationOutcome::Eliminated);
    for (const auto& a : r.system.stages()) EXPECT_GE(*min_dim(a), Integer(2));
    for (int m = 1; m <= 6; ++m) {
        const auto before = fm_of_system(sys, m);
        const auto after = fm_of_system(r.system, m);
        EXPECT_TRUE(before.exact && after.exact);
        EXPECT_EQ(before.dimension(), after.dimension()) << "m = " << m;
    }
}

TEST(OrphanElimination, MapsAreComposedNotDeleted) {
    // Stages 1 and 3 feed their size-1 summand from the previous stage, so
    // stages 2 and 4 are selected and the retained map is the composite 2 -> 4.
    SignatureMatrix s0(circle({1, 2}), circle({1, 5}), int_matrix({{1, 0}, {1, 2}}), int_matrix({{0, 0}, {1, 1}}));
    SignatureMatrix s1(circle({1, 5}), circle({1, 12}), int_matrix({{0, 0}, {2, 2}}), int_matrix({{0, 0}, {1, 0}}));
    SignatureMatrix s2(circle({1, 12}), circle({1, 25}), int_matrix({{1, 0}, {1, 2}}), int_matrix({{1, 0}, {0, 1}}));
    SignatureMatrix s3(circle({1, 25}), circle({1, 52}), int_matrix({{0, 0}, {2, 2}}), int_matrix({{0, 0}, {1, -1}}));
    const InductiveSystem sys({circle({1, 2}), circle({1, 5}), circle({1, 12}), circle({1, 25}), circle({1, 52})},
                              {s0, s1, s2, s3});
    const auto r = orphan_eliminate(sys, 1, 64);
    ASSERT_EQ(r.outcome, EliminationOutcome::Eliminated);
    EXPECT_EQ(r.retained, (std::vector<std::size_t>{2, 4}));
    ASSERT_EQ(r.system.maps().size(), 1u);
    const auto& map = r.system.maps().front();
    EXPECT_EQ(map.source(), circle({12}));
    EXPECT_EQ(map.target(), circle({52}));
    EXPECT_EQ(map.multiplicities(), int_matrix({{4}}));
    EXPECT_EQ(map.windings(), int_matrix({{-1}}));
}

TEST(OrphanElimination, PreconditionIsEnforced) {
    EXPECT_THROW(orphan_eliminate(builtin_system("bunce-deddens"), 2, 64), InputError);
}

TEST(OrphanElimination, PeriodicResultReplaysTheSystem) {
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 15; ++trial) {
        const auto sys = random_periodic_system(rng);
        const auto r = orphan_eliminate(sys, 1, 128);
        if (r.outcome != EliminationOutcome::Eliminated || r.unchanged) continue;
        ++checked;
        ASSERT_TRUE(r.system.tail().is_periodic());
        Unrolling orig(sys), reduced(r.system);
        // Stage sizes of the reduced unrolling are the surviving sizes of the
        // selected original stages, period after period.
        const std::size_t gap_sum = r.retained.back() - r.retained[r.cycle_start];
        const std::size_t cycle = r.retained.size() - 1 - r.cycle_start;
        for (std::size_t k = 0; k < r.retained.size() + 2 * cycle; ++k) {
            std::size_t original;
            if (k < r.retained.size()) {
                original = r.retained[k];
            } else {
                const std::size_t over = k - (r.retained.size() - 1);
                const std::size_t laps = (over - 1) / cycle + 1;
                const std::size_t pos = (over - 1) % cycle + 1;
                original = r.retained[r.cycle_start + pos] + laps * gap_sum;
            }
            const auto kept = split_by_size(orig.stage(original), 1).above;
            ASSERT_EQ(kept.size(), reduced.stage(k).summands());
            for (std::size_t j = 0; j < kept.size(); ++j) EXPECT_EQ(orig.stage(original).size(kept[j]), reduced.stage(k).size(j));
        }
    }
    EXPECT_GE(checked, 5);
}

TEST(CheckSdg, Examples) {
    EXPECT_EQ(check_sdg(builtin_system("bunce-deddens"), 9, 64).decision, kYesExact);
    EXPECT_EQ(check_sdg(builtin_system("goodearl", {4, 2}), 33, 64).decision, kYesExact);
    const auto c = check_sdg(builtin_system("constant"), 3, 64);
    EXPECT_EQ(c.decision, kNoExact);
    ASSERT_TRUE(c.witness);
    EXPECT_EQ(c.witness->size, 1);
    ASSERT_FALSE(c.trace.empty());
    EXPECT_EQ(c.trace.back().outcome, EliminationOutcome::Blocked);
}

TEST(CheckSdg, FiniteSystemsAreNeverExact) {
    const auto r = check_sdg(generate_prefix(builtin_system("bunce-deddens"), 6), 5, 64);
    EXPECT_FALSE(r.decision.exact);
}

TEST(CheckRational, Examples) {
    auto bd = check_rational_k_stability(builtin_system("bunce-deddens"), 12, 4);
    EXPECT_EQ(bd.raw.verdict, Verdict::Yes);
    EXPECT_EQ(bd.decision, kYesExact);

    auto c = check_rational_k_stability(builtin_system("constant"), 3, 3);
    EXPECT_EQ(c.raw, kNoExact);
    ASSERT_TRUE(c.witness);
    EXPECT_EQ(c.witness->m, 2);
    EXPECT_EQ(c.witness->j, 2);
    EXPECT_EQ(c.witness->dim_small, 0);
    EXPECT_EQ(c.witness->dim_large, 1);
}

TEST(CheckRational, ZeroAlgebra) {
    const InductiveSystem zero({CircleAlgebra()}, {});
    EXPECT_EQ(check_rational_k_stability(zero, 5, 3).raw.verdict, Verdict::Yes);
}

TEST(CheckRational, BoundedCycleOfSizeTwoIsFound) {
    // Summand 0 copies itself at size 2; summand 1 doubles.
    auto t = tmpl(int_matrix({{1, 0}, {1, 2}}), int_matrix({{1, 0}, {0, 1}}), int_vector({0, 0}));
    const auto sys = periodic(circle({2, 1}), {t});
    const auto r = check_rational_k_stability(sys, 9, 2);
    EXPECT_EQ(r.raw, kNoExact);
    ASSERT_TRUE(r.witness);
    EXPECT_GE(r.witness->m, 4);
}

TEST(InclusionData, BunceDeddens) {
    bool exact = false;
    const auto d = inclusion_data(builtin_system("bunce-deddens"), 5, 3, &exact);
    EXPECT_TRUE(exact);
    EXPECT_EQ(d.dim_small, 1);
    EXPECT_EQ(d.dim_large, 1);
    EXPECT_EQ(d.induced_rank, 1);
}

TEST(Report, Examples) {
    const auto sys = builtin_system("bunce-deddens");
    auto r = k_stability_report(sys, default_bounds(sys));
    EXPECT_EQ(r.sdg, kYesExact);
    EXPECT_EQ(r.rationally_k_stable, kYesExact);
    EXPECT_EQ(r.k_stable, kYesExact);

    const auto g = builtin_system("goodearl", {4, 2});
    r = k_stability_report(g, default_bounds(g));
    EXPECT_EQ(r.k_stable, kYesExact);

    const auto c = builtin_system("constant");
    r = k_stability_report(c, default_bounds(c));
    EXPECT_EQ(r.sdg, kNoExact);
    EXPECT_EQ(r.rationally_k_stable, kNoExact);
    EXPECT_EQ(r.k_stable, kNoExact);
    ASSERT_TRUE(r.failing_pair && r.persistent_class);
}

TEST(Quotient, BunceDeddensIsUhf) {
    const auto af = quotient_system(builtin_system("bunce-deddens"));
    EXPECT_EQ(af.stages.front().sizes(), (std::vector<Integer>{1}));
    ASSERT_EQ(af.period.size(), 1u);
    EXPECT_EQ(af.period[0].multiplicities, int_matrix({{2}}));
    for (int m = 1; m <= 9; ++m) EXPECT_EQ(fm_of_af_system(af, m).dimension(), m % 2) << "m = " << m;
}

TEST(Quotient, ZeroSystem) {
    const auto af = quotient_system(InductiveSystem({CircleAlgebra()}, {}));
    ASSERT_EQ(af.stages.size(), 1u);
    EXPECT_EQ(af.stages[0].summands(), 0u);
    EXPECT_EQ(fm_of_af_system(af, 1).dimension(), 0);
}
