#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "enumerate.hpp"
#include "kvis/graph.hpp"

using namespace kvis;

TEST_CASE("generators produce the advertised shapes") {
    Graph grid = make_grid(3);
    CHECK(grid.n == 9);
    CHECK(grid.edges.size() == 12);
    CHECK(grid.labels.has_value());

    Graph t = make_complete_qary_tree(2, 3);
    CHECK(t.n == 13);
    CHECK(is_tree(t));

    Graph sp = make_spider({2, 3, 4});
    CHECK(sp.n == 10);
    int deg3 = 0;
    for (int v = 0; v < sp.n; ++v)
        if (sp.degree(v) == 3) ++deg3;
    CHECK(deg3 == 1);

    CHECK_THROWS_AS(make_spider({1, 1}), ParameterError);
    CHECK_THROWS_AS(make_path(0), ParameterError);
    CHECK_THROWS_AS(make_grid(-2), ParameterError);
}

TEST_CASE("subdivision") {
    Graph p2 = make_path(2);
    SubdivisionPlan plan{p2, {{{0, 1}, 3}}};
    auto r = subdivide(plan);
    CHECK(r.graph.n == 5);
    CHECK(is_tree(r.graph));
    auto m = graph_metrics(r.graph);
    CHECK(m.max_degree == 2); // still a path

    Graph c3 = make_cycle(3);
    SubdivisionPlan plan2{c3, {{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, 1}}};
    auto r2 = subdivide(plan2);
    CHECK(r2.graph.n == 6);
    CHECK(graph_metrics(r2.graph).girth == 6);

    SubdivisionPlan noop{c3, {}};
    auto r3 = subdivide(noop);
    CHECK(r3.graph.n == 3);
    CHECK(r3.graph.edges == c3.edges);

    SubdivisionPlan bad{p2, {{{0, 2}, 1}}};
    CHECK_THROWS_AS(subdivide(bad), ParameterError);
}

TEST_CASE("distances") {
    Graph p5 = make_path(5);
    auto dm = all_pairs_distances(p5);
    CHECK(dm.at(0, 4) == 4);
    CHECK(dm.at(2, 2) == 0);

    auto c6 = make_cycle(6);
    auto dc = all_pairs_distances(c6);
    CHECK(dc.at(0, 3) == 3);

    Graph g3 = make_grid(3);
    auto dg = all_pairs_distances(g3);
    CHECK(dg.at(g3.grid_id(1, 1, 3), g3.grid_id(3, 3, 3)) == 4);

    Graph disconnected(2, {});
    CHECK_THROWS_AS(all_pairs_distances(disconnected), StructuralError);
}

TEST_CASE("metrics") {
    auto m5 = graph_metrics(make_path(5));
    CHECK(m5.radius == 2);
    CHECK(!m5.girth.has_value());
    CHECK(m5.max_degree == 2);
    CHECK(m5.center == std::vector<int>{2});

    auto mg = graph_metrics(make_grid(3));
    CHECK(mg.radius == 2);
    CHECK(mg.girth == 4);
    CHECK(mg.max_degree == 4);

    auto mc = graph_metrics(make_cycle(5));
    CHECK(mc.radius == 2);
    CHECK(mc.girth == 5);
}

TEST_CASE("balls") {
    Graph p5 = make_path(5);
    auto dm = all_pairs_distances(p5);
    CHECK(ball(dm, 2, 1).to_vector() == std::vector<int>{1, 2, 3});
    CHECK(ball(dm, 2, 0).to_vector() == std::vector<int>{2});

    Graph g5 = make_grid(5);
    int center = g5.grid_id(3, 3, 5);
    CHECK(ball(g5, center, 2).count() == 13);
}

TEST_CASE("interior grid balls have size 2k^2+2k+1") {
    for (int k = 1; k <= 3; ++k) {
        int n = 4 * k + 3;
        Graph g = make_grid(n);
        int v = g.grid_id(2 * k + 2, 2 * k + 2, n);
        CHECK(ball(g, v, k).count() == 2 * k * k + 2 * k + 1);
    }
}

TEST_CASE("triangle inequality holds exhaustively") {
    std::mt19937_64 rng(7);
    std::vector<Graph> pool{make_grid(4), make_cycle(9), make_spider({3, 2, 5})};
    for (int t = 0; t < 8; ++t) pool.push_back(testing::random_tree(8 + int(rng() % 40), rng()));
    for (const Graph& g : pool) {
        auto dm = all_pairs_distances(g);
        REQUIRE(g.n <= 50);
        for (int u = 0; u < g.n; ++u)
            for (int v = 0; v < g.n; ++v) {
                CHECK(dm.at(u, v) == dm.at(v, u));
                for (int w = 0; w < g.n; ++w)
                    CHECK(dm.at(u, w) <= dm.at(u, v) + dm.at(v, w));
            }
        for (auto [u, v] : g.edges) CHECK(dm.at(u, v) == 1);
    }
}

TEST_CASE("subdivide then contract recovers the edge count") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        Graph base = testing::random_tree(3 + int(rng() % 8), rng());
        SubdivisionPlan plan{base, {}};
        for (Edge e : base.edges) plan.counts[e] = int(rng() % 4);
        auto r = subdivide(plan);
        // contracting each chain back collapses to one edge per base edge
        int degree2_chain = 0;
        for (auto& [e, chain] : r.chains) degree2_chain += int(chain.size());
        CHECK(r.graph.n == base.n + degree2_chain);
        CHECK(r.graph.edges.size() == base.edges.size() + degree2_chain);
    }
}

TEST_CASE("json round trip is byte identical") {
    Graph g = make_grid(3);
    std::string s1 = graph_to_json(g);
    Graph g2 = graph_from_json(s1);
    CHECK(graph_to_json(g2) == s1);
    CHECK(g2.labels == g.labels);

    Graph p3 = make_path(3);
    CHECK(graph_to_edgelist(p3) == "0 1\n1 2\n");
    Graph p3b = graph_from_edgelist(graph_to_edgelist(p3));
    CHECK(p3b.edges == p3.edges);
}

TEST_CASE("enumeration counts match the literature") {
    CHECK(testing::connected_graphs(4).size() == 6);
    CHECK(testing::connected_graphs(5).size() == 21);
    CHECK(testing::connected_graphs(6).size() == 112);
    CHECK(testing::all_trees(7).size() == 11);
    CHECK(testing::all_trees(8).size() == 23);
    CHECK(testing::all_trees(9).size() == 47);
    CHECK(testing::all_trees(10).size() == 106);
}
