#include <gtest/gtest.h>

#include <filesystem>

#include "generators.hpp"
#include "hopps/error.hpp"
#include "hopps/sat.hpp"

namespace hopps::sat {
namespace {

std::size_t count_true(const std::vector<bool>& v) { return static_cast<std::size_t>(std::count(v.begin(), v.end(), true)); }

std::vector<Lit> fresh(SatInstance& inst, int n) {
    std::vector<Lit> lits;
    for (int i = 0; i < n; ++i) lits.push_back(Lit::pos(inst.new_var()));
    return lits;
}

TEST(SatInstance, UnitAndContradiction) {
    SatInstance a;
    const int x = a.new_var();
    a.add_clause({Lit::pos(x)});
    const auto r = solve(a);
    ASSERT_TRUE(r.sat());
    EXPECT_TRUE(r.model.value(x));

    a.add_clause({Lit::neg(x)});
    EXPECT_EQ(solve(a).status, SolveStatus::Unsat);
}

TEST(SatInstance, XorGadgetModels) {
    SatInstance inst;
    const int x = inst.new_var();
    const int y = inst.new_var();
    inst.add_clause({Lit::pos(x), Lit::pos(y)});
    inst.add_clause({Lit::neg(x), Lit::neg(y)});
    const auto models = testing::projected_models(inst, 2);
    ASSERT_EQ(models.size(), 2U);
    for (const auto& m : models) EXPECT_NE(m[0], m[1]);
}

TEST(SatInstance, RejectsUnallocatedAndEmpty) {
    SatInstance inst;
    (void)inst.new_var();
    EXPECT_THROW(inst.add_clause({Lit::pos(2)}), std::invalid_argument);
    EXPECT_THROW(inst.add_clause(std::span<const Lit>{}), std::invalid_argument);
}

TEST(SatInstance, NamedFamiliesAreInjective) {
    SatInstance inst;
    const int v = inst.new_named_var("cnot", {0, 1});
    EXPECT_EQ(inst.named_var("cnot", {0, 1}), v);
    EXPECT_FALSE(inst.named_var("cnot", {1, 0}).has_value());
    EXPECT_THROW((void)inst.new_named_var("cnot", {0, 1}), std::invalid_argument);
}

TEST(Cardinality, PairwiseAtMostOne) {
    SatInstance inst;
    const auto lits = fresh(inst, 3);
    at_most_k(inst, lits, 1);
    EXPECT_EQ(inst.clauses().size(), 3U);
    EXPECT_EQ(inst.num_vars(), 3);
}

TEST(Cardinality, TrivialBoundsAddNothing) {
    SatInstance inst;
    const auto lits = fresh(inst, 4);
    at_most_k(inst, lits, 4);
    at_most_k(inst, lits, 9);
    at_least_k(inst, lits, 0);
    EXPECT_TRUE(inst.clauses().empty());
}

TEST(Cardinality, AtMostTwoOfFour) {
    SatInstance inst;
    const auto lits = fresh(inst, 4);
    at_most_k(inst, lits, 2);
    EXPECT_EQ(testing::projected_models(inst, 4).size(), 11U);
}

TEST(Cardinality, AtLeastOneIsAClause) {
    SatInstance inst;
    const auto lits = fresh(inst, 2);
    at_least_k(inst, lits, 1);
    ASSERT_EQ(inst.clauses().size(), 1U);
    EXPECT_EQ(inst.clauses()[0], (Clause{lits[0], lits[1]}));
}

TEST(Cardinality, AtLeastTwoOfThree) {
    SatInstance inst;
    const auto lits = fresh(inst, 3);
    at_least_k(inst, lits, 2);
    EXPECT_EQ(testing::projected_models(inst, 3).size(), 4U);
}

TEST(Cardinality, AtLeastMoreThanAvailableIsUnsat) {
    SatInstance inst;
    const auto lits = fresh(inst, 2);
    at_least_k(inst, lits, 3);
    EXPECT_EQ(solve(inst).status, SolveStatus::Unsat);
}

TEST(Cardinality, RandomGadgetsMatchEnumeration) {
    testing::Rng rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 8)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(0, static_cast<std::size_t>(n) + 1)(rng);
        const bool at_most = trial % 2 == 0;
        SatInstance inst;
        auto lits = fresh(inst, n);
        for (auto& l : lits) {
            if (std::bernoulli_distribution(0.3)(rng)) l = ~l;
        }
        if (at_most) {
            at_most_k(inst, lits, k);
        } else {
            at_least_k(inst, lits, k);
        }
        const auto models = testing::projected_models(inst, n);
        std::size_t expected = 0;
        for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
            std::size_t t = 0;
            for (int i = 0; i < n; ++i) t += (((mask >> i) & 1U) != 0) != lits[static_cast<std::size_t>(i)].negated ? 1 : 0;
            if (at_most ? t <= k : t >= k) ++expected;
        }
        EXPECT_EQ(models.size(), expected) << "n=" << n << " k=" << k;
        for (const auto& m : models) {
            std::size_t t = 0;
            for (int i = 0; i < n; ++i) t += m[static_cast<std::size_t>(i)] != lits[static_cast<std::size_t>(i)].negated ? 1 : 0;
            EXPECT_TRUE(at_most ? t <= k : t >= k);
        }
    }
}

TEST(CdclSolver, EmptyInstanceIsSat) {
    SatInstance inst;
    EXPECT_TRUE(solve(inst).sat());
}

TEST(CdclSolver, PigeonholeThreeIntoTwo) {
    SatInstance inst;
    std::vector<std::vector<Lit>> sits(3);
    for (auto& p : sits) p = fresh(inst, 2);
    for (const auto& p : sits) at_least_k(inst, p, 1);
    for (std::size_t h = 0; h < 2; ++h) {
        std::vector<Lit> hole;
        for (const auto& p : sits) hole.push_back(p[h]);
        at_most_k(inst, hole, 1);
    }
    EXPECT_EQ(solve(inst).status, SolveStatus::Unsat);
}

TEST(CdclSolver, HarderPigeonholeIsUnsat) {
    SatInstance inst;
    const std::size_t holes = 7;
    std::vector<std::vector<Lit>> sits(holes + 1);
    for (auto& p : sits) p = fresh(inst, static_cast<int>(holes));
    for (const auto& p : sits) at_least_k(inst, p, 1);
    for (std::size_t h = 0; h < holes; ++h) {
        std::vector<Lit> hole;
        for (const auto& p : sits) hole.push_back(p[h]);
        at_most_k(inst, hole, 1);
    }
    EXPECT_EQ(solve(inst).status, SolveStatus::Unsat);
}

TEST(CdclSolver, AgreesWithTruthTables) {
    testing::Rng rng(99);
    int sat_count = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 18)(rng);
        const std::size_t m = std::uniform_int_distribution<std::size_t>(1, static_cast<std::size_t>(5 * n))(rng);
        const auto inst = testing::random_cnf(n, m, 3, rng);
        const auto r = solve(inst);
        ASSERT_NE(r.status, SolveStatus::Timeout);
        EXPECT_EQ(r.sat(), testing::brute_force_sat(inst)) << "trial " << trial;
        if (r.sat()) {
            ++sat_count;
            for (const auto& clause : inst.clauses()) {
                EXPECT_TRUE(std::any_of(clause.begin(), clause.end(), [&](Lit l) { return r.model.value(l); }));
            }
        }
    }
    EXPECT_GT(sat_count, 30);
    EXPECT_LT(sat_count, 270);
}

TEST(CdclSolver, IncrementalLoadKeepsAnswersSound) {
    testing::Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto inst = testing::random_cnf(14, 30, 3, rng);
        CdclSolver solver;
        solver.load(inst);
        auto r = solver.solve();
        EXPECT_EQ(r.sat(), testing::brute_force_sat(inst));
        const auto more = testing::random_cnf(14, 20, 3, rng);
        for (const auto& c : more.clauses()) inst.add_clause(c);
        solver.load(inst);
        r = solver.solve();
        EXPECT_EQ(r.sat(), testing::brute_force_sat(inst));
    }
}

TEST(CdclSolver, ExpiredDeadlineTimesOut) {
    SatInstance inst;
    const std::size_t holes = 10;
    std::vector<std::vector<Lit>> sits(holes + 1);
    for (auto& p : sits) p = fresh(inst, static_cast<int>(holes));
    for (const auto& p : sits) at_least_k(inst, p, 1);
    for (std::size_t h = 0; h < holes; ++h) {
        std::vector<Lit> hole;
        for (const auto& p : sits) hole.push_back(p[h]);
        at_most_k(inst, hole, 1);
    }
    EXPECT_EQ(solve(inst, Clock::now()).status, SolveStatus::Timeout);
}

TEST(Dimacs, Format) {
    EXPECT_EQ(export_dimacs(SatInstance{}), "p cnf 0 0\n");
    SatInstance inst;
    (void)inst.new_var();
    (void)inst.new_var();
    inst.add_clause({Lit::pos(1), Lit::neg(2)});
    EXPECT_EQ(export_dimacs(inst), "p cnf 2 1\n1 -2 0\n");
}

TEST(Dimacs, RoundTripKeepsClausesAndFamilies) {
    testing::Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = testing::random_cnf(10, 25, 4, rng);
        (void)inst.new_named_var("P", {trial, 1, 2});
        inst.add_clause({Lit::neg(inst.num_vars())});
        const auto back = parse_dimacs(export_dimacs(inst));
        EXPECT_EQ(back.num_vars(), inst.num_vars());
        EXPECT_EQ(back.clauses(), inst.clauses());
        EXPECT_EQ(back.named_var("P", {trial, 1, 2}), inst.named_var("P", {trial, 1, 2}));
    }
}

TEST(Dimacs, MalformedInputThrows) {
    EXPECT_THROW((void)parse_dimacs("1 2 0\n"), ParseError);
    EXPECT_THROW((void)parse_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);
    EXPECT_THROW((void)parse_dimacs("p cnf 2 2\n1 2 0\n"), ParseError);
    EXPECT_THROW((void)parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
}

TEST(SolverOutput, Parses) {
    const auto r = parse_solver_output("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 3);
    ASSERT_TRUE(r.sat());
    EXPECT_TRUE(r.model.value(1));
    EXPECT_FALSE(r.model.value(2));
    EXPECT_TRUE(r.model.value(3));
    EXPECT_EQ(parse_solver_output("s UNSATISFIABLE\n", 3).status, SolveStatus::Unsat);
    EXPECT_EQ(parse_solver_output("s UNKNOWN\n", 3).status, SolveStatus::Timeout);
    EXPECT_THROW((void)parse_solver_output("", 3), Error);
}

TEST(ExternalBackend, AgreesWithInternal) {
    const std::filesystem::path solver = HOPPS_EXTERNAL_SOLVER;
    if (std::system(("python3 -c 'import pysat' 2>/dev/null")) != 0) GTEST_SKIP() << "python-sat not installed";
    testing::Rng rng(77);
    ExternalBackend external(solver);
    for (int trial = 0; trial < 5; ++trial) {
        const auto inst = testing::random_cnf(12, 50, 3, rng);
        const auto a = external.solve(inst, std::nullopt);
        EXPECT_EQ(a.sat(), solve(inst).sat());
    }
}

TEST(Backends, FactorySelection) {
    EXPECT_NE(dynamic_cast<InternalBackend*>(backend_from_spec("")().get()), nullptr);
    EXPECT_NE(dynamic_cast<InternalBackend*>(backend_from_spec("internal")().get()), nullptr);
    EXPECT_NE(dynamic_cast<ExternalBackend*>(backend_from_spec("/bin/false")().get()), nullptr);
}

} // namespace
} // namespace hopps::sat
