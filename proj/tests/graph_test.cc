// Copyright 2026 The vmgbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"
#include "oracles.h"
#include "vmgbs/errors.h"
#include "vmgbs/graph.h"
#include "vmgbs/json_io.h"

using namespace vmgbs;

namespace {

std::vector<std::pair<int, int>> E(std::initializer_list<std::pair<int, int>> e) { return e; }

}  // namespace

TEST_CASE("local complement toggles pairs inside the neighborhood") {
    Graph k3 = Graph::complete(3);
    Graph out = local_complement(k3, 0);
    CHECK(out == Graph::from_edges(3, E({{0, 1}, {0, 2}})));

    Graph g = Graph::from_edges(4, E({{0, 1}, {1, 2}}));
    CHECK(local_complement(g, 3) == g);  // isolated vertex

    CHECK_THROWS_AS(local_complement(k3, 3), InvalidArgument);
    CHECK_THROWS_AS(local_complement(k3, -1), InvalidArgument);
}

TEST_CASE("local complement is an involution and only touches N(v) x N(v)") {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 12));
        Graph g = random_graph(n, 0.5, rng);
        int v = static_cast<int>(uniform_below(rng, static_cast<uint64_t>(n)));
        Graph h = local_complement(g, v);
        CHECK(local_complement(h, v) == g);
        CHECK(h.size() == g.size());
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                bool inside = g.has_edge(v, a) && g.has_edge(v, b);
                CHECK((h.has_edge(a, b) != g.has_edge(a, b)) == inside);
            }
        }
    }
}

TEST_CASE("delete_vertex") {
    CHECK(delete_vertex(Graph::complete(3), 2) == Graph::complete(2));
    CHECK(delete_vertex(Graph(1), 0).size() == 0);
    Graph star = Graph::star(3);  // center 0
    Graph rest = delete_vertex(star, 0);
    CHECK(rest.size() == 3);
    CHECK(rest.edge_count() == 0);
    CHECK_THROWS_AS(delete_vertex(star, 4), InvalidArgument);

    Graph p = Graph::path(4);  // 0-1-2-3, delete 1 -> 0, 1-2 (old 2-3)
    CHECK(delete_vertex(p, 1) == Graph::from_edges(3, E({{1, 2}})));
}

TEST_CASE("deleting two vertices in either order gives isomorphic graphs") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = random_graph(8, 0.5, rng);
        int u = static_cast<int>(uniform_below(rng, 8));
        int v = static_cast<int>(uniform_below(rng, 7));
        if (v >= u) ++v;
        Graph first = delete_vertex(delete_vertex(g, u), v > u ? v - 1 : v);
        Graph second = delete_vertex(delete_vertex(g, v), u > v ? u - 1 : u);
        CHECK(are_isomorphic(first, second));
    }
}

TEST_CASE("laplacian spectrum examples") {
    auto s0 = laplacian_spectrum(Graph(4)).values;
    CHECK(s0 == std::vector<double>{0, 0, 0, 0});

    auto s2 = laplacian_spectrum(Graph::complete(2)).values;
    REQUIRE(s2.size() == 2);
    CHECK(s2[0] == doctest::Approx(0).epsilon(1e-12));
    CHECK(s2[1] == doctest::Approx(2).epsilon(1e-12));

    auto s3 = laplacian_spectrum(Graph::complete(3)).values;
    REQUIRE(s3.size() == 3);
    CHECK(std::abs(s3[0]) < 1e-12);
    CHECK(std::abs(s3[1] - 3) < 1e-12);
    CHECK(std::abs(s3[2] - 3) < 1e-12);

    CHECK(laplacian_spectrum(Graph()).values.empty());
}

TEST_CASE("laplacian spectrum matches a Jacobi reference and is relabeling invariant") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(uniform_below(rng, 11));
        Graph g = random_graph(n, 0.4, rng);
        Eigen::MatrixXd lap = -g.adjacency_matrix();
        for (int v = 0; v < n; ++v) lap(v, v) = g.degree(v);
        auto ref = oracle::jacobi_eigenvalues(lap);
        auto got = laplacian_spectrum(g).values;
        REQUIRE(got.size() == ref.size());
        double sum = 0;
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs(got[i] - ref[i]) < 1e-9);
            if (i > 0) CHECK(got[i] >= got[i - 1]);
            sum += got[i];
        }
        CHECK(std::abs(got[0]) < 1e-9);
        CHECK(std::abs(sum - 2.0 * g.edge_count()) < 1e-9);

        auto relabeled = laplacian_spectrum(random_relabel(g, rng)).values;
        for (int i = 0; i < n; ++i) CHECK(std::abs(relabeled[i] - got[i]) < 1e-9);
    }
}

TEST_CASE("isomorphism: permuted copies, different edge counts") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 12));
        Graph g = random_graph(n, 0.5, rng);
        CHECK(are_isomorphic(g, random_relabel(g, rng)));
        CHECK(canonical_form(g) == canonical_form(random_relabel(g, rng)));
    }
    CHECK_FALSE(are_isomorphic(Graph::complete(3), Graph::path(3)));
}

TEST_CASE("isomorphism agrees with exhaustive permutation search on equal degree sequences") {
    Rng rng(17);
    int compared = 0, isomorphic = 0;
    while (compared < 40) {
        Graph a = random_graph(8, 0.5, rng);
        // Degree-preserving double edge swaps give same-degree graphs that are often non-isomorphic.
        Graph b = random_relabel(a, rng);
        for (int swaps = 0; swaps < 3; ++swaps) {
            auto edges = b.edges();
            if (edges.size() < 2) break;
            auto [p, q] = edges[uniform_below(rng, edges.size())];
            auto [r, s] = edges[uniform_below(rng, edges.size())];
            if (p == r || p == s || q == r || q == s) continue;
            if (b.has_edge(p, r) || b.has_edge(q, s)) continue;
            b.set_edge(p, q, false);
            b.set_edge(r, s, false);
            b.set_edge(p, r, true);
            b.set_edge(q, s, true);
        }
        auto da = a.degrees(), db = b.degrees();
        std::sort(da.begin(), da.end());
        std::sort(db.begin(), db.end());
        REQUIRE(da == db);
        bool expected = oracle::isomorphic_by_permutation(a, b);
        CHECK(are_isomorphic(a, b) == expected);
        isomorphic += expected;
        ++compared;
    }
    CHECK(isomorphic > 0);
    CHECK(isomorphic < compared);
}

TEST_CASE("canonical form handles highly symmetric graphs") {
    for (int n : {0, 1, 5, 12, 16}) {
        CHECK(canonical_form(Graph(n)) == Graph(n));
        CHECK(canonical_form(Graph::complete(n)) == Graph::complete(n));
    }
    CHECK(are_isomorphic(Graph::cycle(12), Graph::cycle(12).relabeled(std::vector<int>{3, 1, 4, 0, 5, 9, 2, 6, 8, 7, 11, 10})));
    CHECK_FALSE(are_isomorphic(Graph::cycle(12), Graph::path(12)));
}

TEST_CASE("LC-equivalence examples") {
    Rng rng(8);
    Graph g = random_graph(7, 0.5, rng);
    for (int v = 0; v < 7; ++v) CHECK(are_lc_equivalent(g, local_complement(g, v)));
    CHECK(are_lc_equivalent(Graph::path(3), Graph::complete(3)));
    CHECK_FALSE(are_lc_equivalent(Graph(2), Graph::complete(2)));
    CHECK_THROWS_AS(are_lc_equivalent(Graph(2), Graph(3)), InvalidArgument);

    LcOptions gf2{LcBackend::kGf2};
    CHECK(are_lc_equivalent(Graph::path(3), Graph::complete(3), gf2));
    CHECK_FALSE(are_lc_equivalent(Graph(2), Graph::complete(2), gf2));
}

TEST_CASE("orbit search and GF(2) backends agree on small graphs") {
    Rng rng(99);
    LcOptions orbit{LcBackend::kOrbitSearch};
    LcOptions gf2{LcBackend::kGf2};
    int equivalent = 0;
    for (int trial = 0; trial < 400; ++trial) {
        int n = 2 + static_cast<int>(uniform_below(rng, 7));  // 2..8
        Graph a = random_graph(n, 0.5, rng);
        Graph b;
        switch (trial % 3) {
            case 0:
                b = random_lc_walk(a, 1 + static_cast<int>(uniform_below(rng, 6)), rng);
                break;
            case 1: {
                // Flip one edge of an LC-equivalent graph: usually leaves the orbit.
                b = random_lc_walk(a, 3, rng);
                int u = static_cast<int>(uniform_below(rng, static_cast<uint64_t>(n)));
                int v = (u + 1 + static_cast<int>(uniform_below(rng, static_cast<uint64_t>(n - 1)))) % n;
                b.toggle_edge(u, v);
                break;
            }
            default:
                b = random_graph(n, 0.5, rng);
        }
        bool x = are_lc_equivalent(a, b, orbit);
        CHECK(x == are_lc_equivalent(a, b, gf2));
        equivalent += x;
    }
    CHECK(equivalent > 100);
    CHECK(equivalent < 400);
}

TEST_CASE("LC-equivalence behaves as an equivalence relation on orbit samples") {
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        Graph a = random_graph(7, 0.5, rng);
        Graph b = random_lc_walk(a, 4, rng);
        Graph c = random_lc_walk(b, 4, rng);
        CHECK(are_lc_equivalent(a, a));
        CHECK(are_lc_equivalent(a, b) == are_lc_equivalent(b, a));
        CHECK(are_lc_equivalent(a, c));
        CHECK(are_lc_equivalent(c, a));
    }
}

TEST_CASE("orbit search reports budget exhaustion") {
    Rng rng(1);
    Graph a = random_graph(10, 0.5, rng);
    Graph b = Graph::complete(10);
    LcOptions tiny{LcBackend::kOrbitSearch, 5};
    bool threw = false;
    try {
        (void)are_lc_equivalent(a, b, tiny);
    } catch (const ResourceExhausted &) {
        threw = true;
    }
    CHECK(threw);
}

TEST_CASE("random graph extremes and LC walks stay in the orbit") {
    Rng rng(12);
    CHECK(random_graph(6, 0.0, rng).edge_count() == 0);
    CHECK(random_graph(6, 1.0, rng) == Graph::complete(6));
    CHECK_THROWS_AS(random_graph(6, 1.5, rng), InvalidArgument);

    Rng a(77), b(77);
    CHECK(random_graph(9, 0.5, a) == random_graph(9, 0.5, b));

    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(8, 0.5, rng);
        Graph w = random_lc_walk(g, 6, rng);
        CHECK(are_lc_equivalent(g, w, {LcBackend::kGf2}));
    }
}

TEST_CASE("graph text and JSON forms") {
    Graph g = parse_graph_text("4;0-1,1-2,2-3");
    CHECK(g == Graph::path(4));
    CHECK(format_graph_text(g) == "4;0-1,1-2,2-3");
    CHECK(parse_graph_text("3;") == Graph(3));
    CHECK_THROWS_AS(parse_graph_text("3;0-0"), InvalidArgument);
    CHECK_THROWS_AS(parse_graph_text("3;0-1,1-0"), InvalidArgument);
    CHECK_THROWS_AS(parse_graph_text("3;0-5"), InvalidArgument);
    CHECK_THROWS_AS(parse_graph_text("x;0-1"), InvalidArgument);

    nlohmann::json j = g;
    CHECK(j.dump() == R"({"edges":[[0,1],[1,2],[2,3]],"n":4})");
    CHECK(j.get<Graph>() == g);
    CHECK_THROWS_AS(nlohmann::json::parse(R"({"n":3,"edges":[[1,1]]})").get<Graph>(), InvalidArgument);
    CHECK_THROWS_AS(nlohmann::json::parse(R"({"n":3,"edges":[[0,1],[0,1]]})").get<Graph>(), InvalidArgument);
}
