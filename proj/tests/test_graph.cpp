#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "core/graph.hpp"
#include "core/rng.hpp"
#include "test_helpers.hpp"

using namespace qlab;

namespace {

Power diag_projector(int dim, int at, std::string label = {}) {
    Matrix m = Matrix::Zero(dim, dim);
    m(at, at) = 1.0;
    return Power(m, std::move(label));
}

Power plus_projector() {
    Matrix m(2, 2);
    m << 0.5, 0.5, 0.5, 0.5;
    return Power(m, "x+");
}

std::vector<Power> ks18_powers() {
    KsInstance inst = qt::load_ks_instance(qt::data_path("ks18.json"));
    std::vector<Power> pool;
    for (const Ket& v : inst.vectors) pool.push_back(make_projector(v));
    return pool;
}

// Exhaustive context oracle: every subset of the pool that is pairwise
// orthogonal, sums to I, and cannot be extended. Raw matrix arithmetic,
// independent of enumerate_contexts.
std::vector<std::vector<int>> brute_force_contexts(const std::vector<Power>& pool,
                                                   double eps) {
    int n = static_cast<int>(pool.size());
    int dim = pool[0].dim();
    std::vector<std::vector<int>> found;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) members.push_back(i);
        bool ok = true;
        for (std::size_t a = 0; a < members.size() && ok; ++a)
            for (std::size_t b = a + 1; b < members.size() && ok; ++b)
                if ((pool[members[a]].op() * pool[members[b]].op()).norm() > eps)
                    ok = false;
        if (!ok) continue;
        Matrix sum = Matrix::Zero(dim, dim);
        for (int i : members) sum += pool[i].op();
        if ((sum - Matrix::Identity(dim, dim)).norm() > eps) continue;
        bool extendable = false;
        for (int k = 0; k < n && !extendable; ++k) {
            if (mask & (1u << k)) continue;
            bool orth_all = true;
            for (int i : members)
                if ((pool[k].op() * pool[i].op()).norm() > eps) orth_all = false;
            extendable = orth_all;
        }
        if (!extendable) found.push_back(members);
    }
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace

TEST_CASE("graph over an orthogonal pair has one edge") {
    PowerGraph g = build_power_graph({diag_projector(2, 0), diag_projector(2, 1)});
    CHECK(g.powers.size() == 2);
    CHECK(g.edges.size() == 1);
    CHECK(g.adjacent(0, 1));
}

TEST_CASE("non-commuting pair yields no edge") {
    PowerGraph g = build_power_graph({diag_projector(2, 0), plus_projector()});
    CHECK(g.edges.empty());
    CHECK_FALSE(g.adjacent(0, 1));
}

TEST_CASE("mixed dimensions, duplicates and the pool cap are rejected") {
    CHECK_THROWS_AS(build_power_graph({diag_projector(2, 0), diag_projector(3, 0)}),
                    Error);
    try {
        build_power_graph(
            {diag_projector(2, 0), diag_projector(2, 1), diag_projector(2, 0)});
        FAIL("expected duplicate rejection");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DuplicatePower);
        CHECK(std::string(e.what()).find("(0,2)") != std::string::npos);
    }
    CHECK_THROWS_AS(
        build_power_graph({diag_projector(2, 0), diag_projector(2, 1)}, {}, 1),
        Error);
}

TEST_CASE("18-vector instance: edges match a brute-force pairwise check") {
    std::vector<Power> pool = ks18_powers();
    PowerGraph g = build_power_graph(pool);
    CHECK(g.powers.size() == 18);

    // oracle: raw commutator norms over all 153 pairs
    int expected_edges = 0;
    for (int i = 0; i < 18; ++i)
        for (int j = i + 1; j < 18; ++j) {
            Matrix c = pool[i].op() * pool[j].op() - pool[j].op() * pool[i].op();
            if (c.norm() <= 1e-9) ++expected_edges;
        }
    CHECK(static_cast<int>(g.edges.size()) == expected_edges);
    CHECK(expected_edges > 0);
}

TEST_CASE("contexts of a single resolution") {
    PowerGraph g = build_power_graph({diag_projector(2, 0), diag_projector(2, 1)});
    auto contexts = enumerate_contexts(g);
    REQUIRE(contexts.size() == 1);
    CHECK(contexts[0].members == std::vector<int>{0, 1});
}

TEST_CASE("two disjoint bases give two contexts") {
    Matrix minus(2, 2);
    minus << 0.5, -0.5, -0.5, 0.5;
    PowerGraph g = build_power_graph({diag_projector(2, 0), diag_projector(2, 1),
                                      plus_projector(), Power(minus, "x-")});
    auto contexts = enumerate_contexts(g);
    REQUIRE(contexts.size() == 2);
    CHECK(contexts[0].members == std::vector<int>{0, 1});
    CHECK(contexts[1].members == std::vector<int>{2, 3});
}

TEST_CASE("18-vector instance has exactly the 9 four-member contexts") {
    std::vector<Power> pool = ks18_powers();
    PowerGraph g = build_power_graph(pool);
    auto contexts = enumerate_contexts(g);
    REQUIRE(contexts.size() == 9);
    for (const Context& c : contexts) CHECK(c.members.size() == 4);

    // independent oracle: enumerate all 4-subsets directly
    std::vector<std::vector<int>> expected;
    for (int a = 0; a < 18; ++a)
        for (int b = a + 1; b < 18; ++b)
            for (int c = b + 1; c < 18; ++c)
                for (int d = c + 1; d < 18; ++d) {
                    std::vector<int> mem{a, b, c, d};
                    bool orth = true;
                    for (int i = 0; i < 4 && orth; ++i)
                        for (int j = i + 1; j < 4 && orth; ++j)
                            if ((pool[mem[i]].op() * pool[mem[j]].op()).norm() >
                                1e-9)
                                orth = false;
                    if (!orth) continue;
                    Matrix sum = pool[a].op() + pool[b].op() + pool[c].op() +
                                 pool[d].op();
                    if ((sum - Matrix::Identity(4, 4)).norm() <= 1e-9)
                        expected.push_back(mem);
                }
    REQUIRE(expected.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) CHECK(contexts[i].members == expected[i]);
}

TEST_CASE("context enumeration matches exhaustive subset search on small pools") {
    Rng rng(17);
    for (int trial = 0; trial < 6; ++trial) {
        // pool: two to three full bases of a small space plus a stray power
        int dim = 2 + static_cast<int>(rng.next() % 2);
        std::vector<Power> pool;
        int bases = 2 + static_cast<int>(rng.next() % 2);
        for (int b = 0; b < bases; ++b) {
            Matrix u = random_unitary(dim, rng);
            for (int j = 0; j < dim; ++j)
                pool.push_back(make_projector(Ket(CVector(u.col(j)))));
        }
        pool.push_back(make_projector(Ket(random_unit_vector(dim, rng))));

        PowerGraph g = build_power_graph(pool);
        auto contexts = enumerate_contexts(g);
        auto expected = brute_force_contexts(pool, 1e-9);
        REQUIRE(contexts.size() == expected.size());
        for (std::size_t i = 0; i < contexts.size(); ++i)
            CHECK(contexts[i].members == expected[i]);
    }
}

TEST_CASE("context enumeration is stable under pool permutation") {
    std::vector<Power> pool = ks18_powers();
    PowerGraph g = build_power_graph(pool);
    auto base = enumerate_contexts(g);

    std::vector<int> perm(pool.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    Rng rng(41);
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[rng.next() % i]);

    std::vector<Power> shuffled(pool.size(), pool[0]);
    for (std::size_t i = 0; i < pool.size(); ++i) shuffled[perm[i]] = pool[i];
    auto permuted = enumerate_contexts(build_power_graph(shuffled));

    // map back through the permutation and compare as sets
    std::set<std::vector<int>> base_set;
    for (const Context& c : base) base_set.insert(c.members);
    std::set<std::vector<int>> mapped;
    for (const Context& c : permuted) {
        std::vector<int> members;
        for (int m : c.members)
            members.push_back(static_cast<int>(
                std::find(perm.begin(), perm.end(), m) - perm.begin()));
        std::sort(members.begin(), members.end());
        mapped.insert(members);
    }
    CHECK(base_set == mapped);
}

TEST_CASE("DOT export carries one edge line per edge") {
    PowerGraph g = build_power_graph(
        {diag_projector(2, 0, "up"), diag_projector(2, 1, "down")});
    std::string dot = export_graph(g, GraphFormat::Dot);
    CHECK(dot.find("p0 [label=\"0: up\"]") != std::string::npos);
    std::size_t count = 0;
    for (std::size_t at = dot.find("--"); at != std::string::npos;
         at = dot.find("--", at + 1))
        ++count;
    CHECK(count == 1);

    PowerGraph lone = build_power_graph({diag_projector(2, 0), plus_projector()});
    std::string dot2 = export_graph(lone, GraphFormat::Dot);
    CHECK(dot2.find("--") == std::string::npos);
    CHECK(dot2.find("p1") != std::string::npos);
}

TEST_CASE("adjacency JSON round-trips vertices, edges and labels") {
    std::vector<Power> pool = ks18_powers();
    PowerGraph g = build_power_graph(pool);
    std::string text = export_graph(g, GraphFormat::AdjacencyJson);
    auto j = nlohmann::json::parse(text);
    CHECK(j["dim"] == 4);
    REQUIRE(j["vertices"].size() == 18);
    for (int i = 0; i < 18; ++i) {
        CHECK(j["vertices"][i]["index"] == i);
        CHECK(j["vertices"][i]["label"] == g.powers[i].label());
    }
    REQUIRE(j["edges"].size() == g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        CHECK(j["edges"][e][0] == g.edges[e].first);
        CHECK(j["edges"][e][1] == g.edges[e].second);
    }
    // byte-determinism
    CHECK(text == export_graph(g, GraphFormat::AdjacencyJson));
}
