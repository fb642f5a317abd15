#include "ratk/hom.hpp"
#include "ratk/io.hpp"
#include "ratk/stability.hpp"
#include "ratk/verify.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace ratk;
using namespace ratk::testing;

namespace {

// Written from the definition, without the library's FmSpace bookkeeping.
std::vector<Eigen::Index> live_oracle(const CircleAlgebra& a, int m) {
    std::vector<Eigen::Index> out;
    for (std::size_t j = 0; j < a.summands(); ++j)
        if (Integer(m) <= 2 * a.size(j) - 1) out.push_back(static_cast<Eigen::Index>(j));
    return out;
}

RatMatrix induced_oracle(const SignatureMatrix& s, int m) {
    const auto rows = live_oracle(s.target(), m), cols = live_oracle(s.source(), m);
    const IntMatrix& src = m % 2 ? s.multiplicities() : s.windings();
    RatMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Rational(src(rows[i], cols[j]));
    return out;
}

// dim of the limit as rank of the composite from stage `from` to stage `to`,
// once both are deep enough that nothing changes any more.
std::size_t brute_force_colim(const InductiveSystem& sys, int m, std::size_t from, std::size_t to) {
    const auto p = generate_prefix(sys, to + 1);
    RatMatrix t;
    for (std::size_t s = from; s < to; ++s) {
        const RatMatrix step = induced_oracle(p.maps()[s], m);
        t = s == from ? step : RatMatrix(step * t);
    }
    return rank(t);
}

SignatureMatrix random_step(CircleAlgebra& current, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> urows(1, 3);
    auto s = random_signature(current, static_cast<std::size_t>(urows(rng)), rng);
    current = s.target();
    return s;
}

TypeABlock random_block(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> ua(1, 5), uw(-2, 2), unum(0, 11);
    const auto a = static_cast<std::size_t>(ua(rng));
    TypeABlock b;
    b.source_size = 2;
    b.target_size = Integer(static_cast<long>(2 * a + 1));
    b.permutation.resize(a);
    std::iota(b.permutation.begin(), b.permutation.end(), std::size_t{0});
    std::shuffle(b.permutation.begin(), b.permutation.end(), rng);
    b.paths.assign(a, PowerPath{0, 0});
    for (const auto& cycle : cycle_decomposition(b.permutation)) {
        Rational phase(unum(rng), 12), used(0);
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            Rational turns = k + 1 == cycle.size() ? Rational(uw(rng)) - used : Rational(unum(rng) - 6, 12);
            b.paths[cycle[k]] = ArcPath{turns, phase};
            used += turns;
            phase += turns;
        }
    }
    return b;
}

} // namespace

TEST(Properties, FmInducedMatchesOracle) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        CircleAlgebra a = circle({1, 2, 3});
        const auto s = random_step(a, rng);
        for (int m = 1; m <= 12; ++m) ASSERT_EQ(fm_induced(s, m), induced_oracle(s, m)) << "m = " << m;
    }
}

TEST(Properties, Functoriality) {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> usz(1, 4);
        CircleAlgebra a({Integer(usz(rng)), Integer(usz(rng))});
        const auto s1 = random_step(a, rng);
        const auto s2 = random_step(a, rng);
        const auto c = compose(s2, s1);
        EXPECT_TRUE(validate(c).ok());
        for (int m = 1; m <= 30; ++m) ASSERT_EQ(fm_induced(c, m), RatMatrix(fm_induced(s2, m) * fm_induced(s1, m)));
        EXPECT_EQ(compose(identity_signature(s2.target()), s2), s2);
    }
}

TEST(Properties, ColimitMatchesLongChain) {
    std::mt19937_64 rng(303);
    CorpusOptions wide;
    wide.max_dim = 4;
    for (int trial = 0; trial < 25; ++trial) {
        const auto sys = random_periodic_system(rng, wide);
        for (int m = 1; m <= 6; ++m) {
            const auto r = fm_of_system(sys, m);
            ASSERT_TRUE(r.exact);
            EXPECT_EQ(r.dimension(), Integer(static_cast<unsigned long>(brute_force_colim(sys, m, 20, 50))))
                << "trial " << trial << ", m = " << m << "\n" << emit_system(sys);
        }
    }
}

TEST(Properties, ColimitIgnoresPrefixRepresentation) {
    // Writing out part of the tail explicitly must not change anything.
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 15; ++trial) {
        const auto sys = random_periodic_system(rng);
        Unrolling u(sys);
        std::vector<CircleAlgebra> stages;
        std::vector<SignatureMatrix> maps;
        const std::size_t extra = 3 * sys.period();
        for (std::size_t s = 0; s <= extra; ++s) stages.push_back(u.stage(s));
        for (std::size_t s = 0; s < extra; ++s) maps.push_back(u.map(s));
        const InductiveSystem longer(stages, maps, sys.tail());
        for (int m = 1; m <= 8; ++m) EXPECT_EQ(fm_of_system(longer, m).dimension(), fm_of_system(sys, m).dimension());
    }
}

TEST(Properties, OrphanEliminationPreservesFm) {
    std::mt19937_64 rng(505);
    int eliminated = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto sys = random_periodic_system(rng);
        const auto r = orphan_eliminate(sys, 1, 256);
        if (r.outcome != EliminationOutcome::Eliminated || r.unchanged) continue;
        ++eliminated;
        EXPECT_GE(*min_dim(r.system.stages().front()), 2);
        for (int m = 1; m <= 12; ++m)
            EXPECT_EQ(fm_of_system(r.system, m).dimension(), fm_of_system(sys, m).dimension())
                << "m = " << m << "\n" << emit_system(sys);
    }
    EXPECT_GT(eliminated, 5);
}

TEST(Properties, InclusionDataAgreesWithAmplification) {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 10; ++trial) {
        const auto sys = random_periodic_system(rng);
        for (int j = 2; j <= 3; ++j)
            for (int m = 1; m <= 7; ++m) {
                bool exact = false;
                const auto d = inclusion_data(sys, m, j, &exact);
                EXPECT_TRUE(exact);
                EXPECT_EQ(d.dim_small, fm_of_system(amplify(sys, j - 1), m).dimension());
                EXPECT_EQ(d.dim_large, fm_of_system(amplify(sys, j), m).dimension());
                EXPECT_LE(d.induced_rank, std::min(d.dim_small, d.dim_large));
            }
    }
}

TEST(Properties, ExactVerdictsAreConsistent) {
    std::mt19937_64 rng(707);
    for (int trial = 0; trial < 20; ++trial) {
        const auto sys = random_periodic_system(rng);
        auto bounds = default_bounds(sys);
        bounds.j_max = 3;
        const auto report = k_stability_report(sys, bounds);
        ASSERT_TRUE(report.sdg.exact);
        EXPECT_EQ(report.k_stable.verdict, report.sdg.verdict);
        EXPECT_EQ(report.rationally_k_stable.verdict, report.sdg.verdict);
        EXPECT_EQ(report.persistent_class.has_value(), report.sdg.verdict == Verdict::No);
    }
}

TEST(Properties, RandomBlocksReduceAndRealize) {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 30; ++trial) {
        const auto b = random_block(rng);
        const auto d = reduce_to_diagonal(b);
        // Each cycle's lifts sum to an integer, so the total is one too.
        Rational total(0);
        for (const auto& p : b.paths) total += std::get<ArcPath>(p).turns;
        EXPECT_EQ(signature_of(d).b, Integer(numerator(total)));
        EXPECT_EQ(signature_of(d).a, Integer(static_cast<long>(b.multiplicity())));
        const auto f = random_trig_polynomial(2, 3, rng);
        const auto g = random_trig_polynomial(2, 3, rng);
        EXPECT_LT(realizer_deviation(b, f, g, 128).max(), 1e-9) << "trial " << trial;
    }
}
