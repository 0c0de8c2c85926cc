#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/graph.hpp"
#include "core/rng.hpp"
#include "core/valuation.hpp"
#include "test_helpers.hpp"

using namespace qlab;

namespace {

Power diag_projector(int dim, int at, std::string label = {}) {
    Matrix m = Matrix::Zero(dim, dim);
    m(at, at) = 1.0;
    return Power(m, std::move(label));
}

Power identity_power(int dim) { return Power(identity(dim), "I"); }

}  // namespace

TEST_CASE("the identity always evaluates to 1") {
    Rng rng(2);
    for (int dim = 2; dim <= 8; ++dim)
        for (int trial = 0; trial < 20; ++trial) {
            auto purity = trial % 2 ? StatePurity::Pure : StatePurity::Mixed;
            IntensiveState state = random_state(dim, purity, rng.next());
            CHECK(std::abs(potentia(state, identity_power(dim)) - 1.0) <= 1e-12);
        }
}

TEST_CASE("singlet gives intensity one half to the up-down power") {
    IntensiveState singlet = qt::singlet_state();
    Matrix p = Matrix::Zero(4, 4);
    p(1, 1) = 1.0;  // |up down><up down|
    CHECK(std::abs(potentia(singlet, Power(p)) - 0.5) < 1e-12);
}

TEST_CASE("orthogonal support gives zero") {
    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = 1.0;
    IntensiveState state{rho};
    CHECK(potentia(state, diag_projector(2, 1)) == 0.0);
    CHECK_THROWS_AS(potentia(state, diag_projector(3, 1)), Error);
}

TEST_CASE("boundary clamping is limited to the tolerance") {
    // a legal state with one eigenvalue slightly below zero
    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = 1.0 + 5e-10;
    rho(1, 1) = -5e-10;
    IntensiveState state{rho};
    CHECK(potentia(state, diag_projector(2, 1)) == 0.0);  // clamped within tol
    CHECK(potentia(state, diag_projector(2, 0)) == 1.0);
    // with a tighter tolerance the same value is an invariant violation
    CHECK_THROWS_AS(potentia(state, diag_projector(2, 1), Tolerance(1e-12)), Error);
}

TEST_CASE("make_giv tabulates the Born intensities") {
    PowerGraph g = build_power_graph({diag_projector(2, 0), diag_projector(2, 1)});

    IntensiveState mixed{identity(2) / 2.0};
    GivTable t = make_giv(mixed, g);
    CHECK(std::abs(t.values[0] - 0.5) < 1e-15);
    CHECK(std::abs(t.values[1] - 0.5) < 1e-15);

    Matrix up = Matrix::Zero(2, 2);
    up(0, 0) = 1.0;
    GivTable t2 = make_giv(IntensiveState{up}, g);
    CHECK(t2.values[0] == 1.0);
    CHECK(t2.values[1] == 0.0);

    CHECK_THROWS_AS(make_giv(qt::singlet_state(), g), Error);
}

TEST_CASE("Born tables pass the axioms, hand-built violations fail") {
    PowerGraph g = build_power_graph({diag_projector(2, 0), diag_projector(2, 1)});
    auto contexts = enumerate_contexts(g);
    REQUIRE(contexts.size() == 1);

    IntensiveState state = random_state(2, StatePurity::Mixed, 77);
    IsaReport good = validate_isa(g, make_giv(state, g), contexts);
    CHECK(good.pass);
    CHECK(good.max_deviation <= 1e-12);

    IsaReport bad = validate_isa(g, GivTable{{0.7, 0.7}}, contexts);
    CHECK_FALSE(bad.pass);
    CHECK(std::abs(bad.context_checks[0].deviation - 0.4) < 1e-12);
}

TEST_CASE("additivity against a pool power is checked") {
    // pool carries I itself, so the family {P0, P1} must add up to it
    PowerGraph g = build_power_graph(
        {diag_projector(2, 0), diag_projector(2, 1), identity_power(2)});
    auto contexts = enumerate_contexts(g);
    REQUIRE(contexts.size() == 2);  // {0,1} and the singleton {2}

    IntensiveState state = random_state(2, StatePurity::Pure, 5);
    IsaReport report = validate_isa(g, make_giv(state, g), contexts);
    CHECK(report.pass);
    REQUIRE(report.additivity_checks.size() == 1);
    CHECK(report.additivity_checks[0].target == 2);
    CHECK(report.additivity_checks[0].deviation <= 1e-12);

    // breaking the identity value breaks both a context and the additivity
    IsaReport broken = validate_isa(g, GivTable{{0.3, 0.3, 1.0}}, contexts);
    CHECK_FALSE(broken.pass);
    CHECK(std::abs(broken.additivity_checks[0].deviation - 0.4) < 1e-12);
}

TEST_CASE("KS pool: every context of a Born table sums to one") {
    KsInstance inst = qt::load_ks_instance(qt::data_path("ks18.json"));
    std::vector<Power> pool;
    for (const Ket& v : inst.vectors) pool.push_back(make_projector(v));
    PowerGraph g = build_power_graph(pool);
    auto contexts = enumerate_contexts(g);
    REQUIRE(contexts.size() == 9);

    IntensiveState state = random_state(4, StatePurity::Pure, 12345);
    GivTable table = make_giv(state, g);
    REQUIRE(table.values.size() == 18);

    // direct summation oracle
    for (const Context& c : contexts) {
        double sum = 0.0;
        for (int m : c.members) sum += table.values[m];
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
    CHECK(validate_isa(g, table, contexts).pass);
}

TEST_CASE("random_state is deterministic and well-formed") {
    IntensiveState a = random_state(4, StatePurity::Mixed, 99);
    IntensiveState b = random_state(4, StatePurity::Mixed, 99);
    CHECK(qt::max_diff(a.rho(), b.rho()) == 0.0);
    IntensiveState c = random_state(4, StatePurity::Mixed, 100);
    CHECK(qt::max_diff(a.rho(), c.rho()) > 0.0);

    IntensiveState pure = random_state(2, StatePurity::Pure, 7);
    CHECK(std::abs(pure.rho().trace().real() - 1.0) <= 1e-12);
    CHECK(std::abs(pure.purity() - 1.0) <= 1e-12);  // rank one

    Eigen::SelfAdjointEigenSolver<Matrix> es(random_state(4, StatePurity::Mixed, 3).rho());
    CHECK(es.eigenvalues().minCoeff() >= 0.0);
    CHECK(std::abs(es.eigenvalues().sum() - 1.0) <= 1e-12);

    CHECK_THROWS_AS(random_state(1, StatePurity::Pure, 0), Error);
}

TEST_CASE("additivity over random orthogonal decompositions") {
    Rng rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        int dim = 2 + static_cast<int>(rng.next() % 7);
        IntensiveState state = random_state(
            dim, trial % 2 ? StatePurity::Pure : StatePurity::Mixed, rng.next());
        Matrix u = random_unitary(dim, rng);
        // group the columns into projectors of random ranks
        double total = 0.0;
        int at = 0;
        while (at < dim) {
            int take = 1 + static_cast<int>(rng.next() % (dim - at));
            Matrix p = Matrix::Zero(dim, dim);
            for (int j = at; j < at + take; ++j)
                p += u.col(j) * u.col(j).adjoint();
            p = ((p + p.adjoint()) / 2.0).eval();
            total += potentia(state, Power(p));
            at += take;
        }
        CHECK(std::abs(total - 1.0) <= 1e-10);
    }
}

TEST_CASE("coarse-graining: a sum of orthogonal powers adds intensities") {
    Rng rng(66);
    for (int trial = 0; trial < 20; ++trial) {
        int dim = 3 + static_cast<int>(rng.next() % 4);
        IntensiveState state = random_state(dim, StatePurity::Mixed, rng.next());
        Matrix u = random_unitary(dim, rng);
        Matrix p1 = u.col(0) * u.col(0).adjoint();
        Matrix p2 = u.col(1) * u.col(1).adjoint();
        Matrix q = ((p1 + p2 + (p1 + p2).adjoint()) / 2.0).eval();
        double lhs = potentia(state, Power(q));
        double rhs = potentia(state, Power(p1)) + potentia(state, Power(p2));
        CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
}

TEST_CASE("intensities stay inside the unit interval") {
    Rng rng(88);
    for (int trial = 0; trial < 50; ++trial) {
        int dim = 2 + static_cast<int>(rng.next() % 5);
        IntensiveState state = random_state(
            dim, trial % 2 ? StatePurity::Pure : StatePurity::Mixed, rng.next());
        Power p = make_projector(Ket(random_unit_vector(dim, rng)));
        double v = potentia(state, p);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("state validation rejects bad density operators") {
    Matrix not_trace_one = identity(2) * 0.45;
    CHECK_THROWS_AS(IntensiveState{not_trace_one}, Error);

    Matrix not_hermitian(2, 2);
    not_hermitian << 0.5, 0.3, -0.3, 0.5;
    CHECK_THROWS_AS(IntensiveState{not_hermitian}, Error);

    Matrix negative(2, 2);
    negative << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(IntensiveState{negative}, Error);
}
