#include "ggmlt/rigidity.hpp"

#include "doctest.h"
#include "test_util.hpp"

using namespace ggmlt;
using namespace testutil;

TEST_CASE("rigidity matrix entries follow the edge-difference pattern") {
    // single edge, one coordinate: [a-b, b-a]
    Graph e1 = graph_from_edges(2, {{1, 2}});
    DenseMatrix x(2, 1, {5.0, 3.0});
    DenseMatrix r = rigidity_matrix(e1, x);
    CHECK(r.rows == 1);
    CHECK(r.cols == 2);
    CHECK(r.at(0, 0) == 2.0);
    CHECK(r.at(0, 1) == -2.0);

    // empty edge set: 0 x (p*n)
    DenseMatrix r0 = rigidity_matrix(empty_graph(3), DenseMatrix(3, 2));
    CHECK(r0.rows == 0);
    CHECK(r0.cols == 6);

    // path 1-2-3 with X = [[0],[1],[3]]
    Graph path = path_graph(3);
    DenseMatrix xp(3, 1, {0.0, 1.0, 3.0});
    DenseMatrix rp = rigidity_matrix(path, xp);
    CHECK(rp.rows == 2);
    CHECK(rp.at(0, 0) == -1.0);
    CHECK(rp.at(0, 1) == 1.0);
    CHECK(rp.at(0, 2) == 0.0);
    CHECK(rp.at(1, 0) == 0.0);
    CHECK(rp.at(1, 1) == -2.0);
    CHECK(rp.at(1, 2) == 2.0);

    // field version wraps differences mod q
    PrimeFieldMatrix xf(2, 1);
    xf.at(0, 0) = 3;
    xf.at(1, 0) = 5;
    PrimeFieldMatrix rf = rigidity_matrix(e1, xf);
    CHECK(rf.at(0, 0) == kFieldPrime - 2);
    CHECK(rf.at(0, 1) == 2);

    CHECK_THROWS_AS(rigidity_matrix(e1, DenseMatrix(3, 1)), std::invalid_argument);
}

TEST_CASE("generic_rank on known graphs") {
    SeededRng rng(1);
    CHECK(generic_rank(complete_graph(3), 1, rng).rank == 2);
    CHECK(generic_rank(complete_graph(3), 2, rng).rank == 3);
    CHECK(generic_rank(complete_graph(5), 0, rng).rank == 0);
    CHECK(generic_rank(empty_graph(4), 2, rng).rank == 0);

    GenericRankReport rep = generic_rank(cycle_graph(4), 1, rng);
    CHECK(rep.rank == 3);
    CHECK(rep.trials == kGenericRankTrials);  // rank < |E| exhausts all samples
    rep = generic_rank(cycle_graph(4), 2, rng);
    CHECK(rep.rank == 4);
    CHECK(rep.trials == 1);  // |E| reached on the first sample

    CHECK_THROWS_AS(generic_rank(complete_graph(3), -1, rng), std::invalid_argument);
}

TEST_CASE("generic_rank agrees with the floating rank of a random real configuration") {
    SeededRng rng(23);
    for (int iter = 0; iter < 100; ++iter) {
        int p = 2 + int(rng.next_below(6));
        int dim = 1 + int(rng.next_below(3));
        Graph g = random_graph(rng, p);
        if (g.edge_count() == 0) continue;
        int exact = generic_rank(g, dim, rng).rank;
        DenseMatrix x = sample_standard_normal(rng, p, dim);
        CHECK(exact == float_rank(rigidity_matrix(g, x)));
    }
}

TEST_CASE("generic_rank monotone in dimension and edges, bounded by min(|E|, p*dim)") {
    SeededRng rng(31);
    for (int iter = 0; iter < 60; ++iter) {
        int p = 2 + int(rng.next_below(7));
        Graph g = random_graph(rng, p);
        int prev = 0;
        for (int d = 0; d <= p; ++d) {
            int r = generic_rank(g, d, rng).rank;
            CHECK(r >= prev);
            CHECK(r <= std::min(g.edge_count(), p * d));
            prev = r;
        }
        int all = Graph::pair_count(p);
        int missing = -1;
        for (int b = 0; b < all; ++b)
            if (!((g.edge_mask >> b) & 1)) {
                missing = b;
                break;
            }
        if (missing >= 0) {
            Graph h = g;
            h.edge_mask |= std::uint64_t(1) << missing;
            for (int d = 1; d <= 3; ++d)
                CHECK(generic_rank(h, d, rng).rank >= generic_rank(g, d, rng).rank);
        }
    }
}

TEST_CASE("full rank is reached at dimension p-1 (gcr termination)") {
    SeededRng rng(37);
    // exhaustive on small vertex counts
    for (int p = 2; p <= 5; ++p) {
        std::uint64_t masks = std::uint64_t(1) << Graph::pair_count(p);
        for (std::uint64_t m = 0; m < masks; ++m) {
            Graph g = graph_from_mask(p, m);
            REQUIRE(generic_rank(g, p - 1, rng).rank == g.edge_count());
        }
    }
    // randomized on larger ones
    for (int iter = 0; iter < 40; ++iter) {
        int p = 6 + int(rng.next_below(4));
        Graph g = random_graph(rng, p);
        CHECK(generic_rank(g, p - 1, rng).rank == g.edge_count());
    }
}

TEST_CASE("gcr on known graphs") {
    SeededRng rng(41);
    CHECK(gcr(empty_graph(5), rng) == 1);
    CHECK(gcr(graph_from_edges(2, {{1, 2}}), rng) == 2);
    CHECK(gcr(cycle_graph(4), rng) == 3);
    for (int p = 2; p <= 9; ++p) CHECK(gcr(complete_graph(p), rng) == p);
    for (int iter = 0; iter < 20; ++iter) {
        int p = 2 + int(rng.next_below(8));
        CHECK(gcr(random_tree(rng, p), rng) == 2);
    }
}

TEST_CASE("mlt equals gcr below ten vertices and refuses beyond") {
    SeededRng rng(43);
    for (int p = 2; p <= 9; ++p) CHECK(mlt(complete_graph(p), rng) == p);
    CHECK(mlt(cycle_graph(5), rng) == 3);
    CHECK(mlt(empty_graph(7), rng) == 1);
    CHECK_THROWS_AS(mlt(complete_graph(10), rng), std::invalid_argument);
    CHECK_THROWS_AS(mlt(empty_graph(11), rng), std::invalid_argument);
}

TEST_CASE("mlt sits between the clique number and the k-core bound") {
    SeededRng rng(47);
    // exhaustive for p <= 5; the acceptance suite covers p = 6 exhaustively
    for (int p = 1; p <= 5; ++p) {
        std::uint64_t masks = std::uint64_t(1) << Graph::pair_count(p);
        for (std::uint64_t m = 0; m < masks; ++m) {
            Graph g = graph_from_mask(p, m);
            int v = mlt(g, rng);
            REQUIRE(clique_number(g) <= v);
            REQUIRE(v <= k_core_bound(g));
            REQUIRE(v <= p);
        }
    }
    for (int iter = 0; iter < 60; ++iter) {
        int p = 7 + int(rng.next_below(3));
        Graph g = random_graph(rng, p);
        int v = mlt(g, rng);
        CHECK(clique_number(g) <= v);
        CHECK(v <= k_core_bound(g));
    }

    // structured 9-vertex case: the 3x3 rook's graph (4-regular)
    std::vector<std::pair<int, int>> rook_edges;
    for (int a = 1; a <= 9; ++a)
        for (int b = a + 1; b <= 9; ++b)
            if ((a - 1) / 3 == (b - 1) / 3 || (a - 1) % 3 == (b - 1) % 3)
                rook_edges.emplace_back(a, b);
    Graph rook = graph_from_edges(9, rook_edges);
    CHECK(clique_number(rook) == 3);
    CHECK(k_core_bound(rook) == 5);
    int rook_mlt = mlt(rook, rng);
    CHECK(rook_mlt >= 3);
    CHECK(rook_mlt <= 5);
}

TEST_CASE("mlt is stable across seeds") {
    SeededRng tree_rng(53);
    Graph graphs[] = {cycle_graph(6), complete_graph(7), random_tree(tree_rng, 9)};
    for (const Graph& g : graphs) {
        SeededRng first(0);
        int expected = mlt(g, first);
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            SeededRng rng(seed);
            CHECK(mlt(g, rng) == expected);
        }
    }
}
