#include <doctest.h>

#include <random>

#include "gkg/classical.hpp"
#include "gkg/prime_graph.hpp"

using namespace gkg;

TEST_CASE("gk graph from spectra") {
    // PSL(2,7): closure of {3,4,7}; no products of two distinct primes
    PrimeGraph g = gk(Spectrum::from_maximal({3, 4, 7}));
    CHECK(g.vertices() == std::vector<uint64_t>{2, 3, 7});
    CHECK(g.edges().empty());

    // closure of {4,5,6}: vertices {2,3,5}, single edge 2-3
    PrimeGraph h = gk(Spectrum::from_maximal({4, 5, 6}));
    CHECK(h.vertices() == std::vector<uint64_t>{2, 3, 5});
    CHECK(h.edges() == std::vector<std::pair<uint64_t, uint64_t>>{{2, 3}});
    CHECK(h.adjacent(2, 3));
    CHECK_FALSE(h.adjacent(2, 5));

    // omega = {1}: empty graph
    CHECK(gk(Spectrum::from_orders({1})).vertex_count() == 0);
}

TEST_CASE("dominating vertex") {
    PrimeGraph complete = gk(Spectrum::from_maximal({30})); // 2,3,5 all adjacent
    CHECK(complete.edges().size() == 3);
    CHECK(dominating_vertex(complete) == 2); // smallest wins
    PrimeGraph edgeless = gk(Spectrum::from_maximal({3, 4, 7}));
    CHECK_FALSE(dominating_vertex(edgeless).has_value());
    PrimeGraph partial = gk(Spectrum::from_maximal({6, 10})); // 2 dominates {2,3,5}
    CHECK(dominating_vertex(partial) == 2);
}

TEST_CASE("every vertex has a nonneighbor") {
    PrimeGraph edgeless = gk(Spectrum::from_maximal({3, 4, 7}));
    auto res = every_vertex_has_nonneighbor(edgeless);
    CHECK(res.every_vertex_has_one);
    PrimeGraph complete = gk(Spectrum::from_maximal({30}));
    auto bad = every_vertex_has_nonneighbor(complete);
    CHECK_FALSE(bad.every_vertex_has_one);
    CHECK(*bad.dominating == 2);
    // degenerate single-vertex graph
    CHECK_THROWS_AS(every_vertex_has_nonneighbor(gk(Spectrum::from_maximal({4}))),
                    std::invalid_argument);
    // duality with dominating_vertex on a brute-forced group
    ConcreteGroup psu = build_classical(MatrixFamily::SU, 3, 3, true);
    PrimeGraph g = gk(spectrum_bruteforce(psu));
    CHECK(every_vertex_has_nonneighbor(g).every_vertex_has_one ==
          !dominating_vertex(g).has_value());
}

TEST_CASE("gk is monotone under spectrum growth") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<uint64_t> val(2, 600);
    for (int trial = 0; trial < 60; ++trial) {
        std::set<uint64_t> small_orders{1};
        for (int i = 0; i < 6; ++i) small_orders.insert(val(rng));
        std::set<uint64_t> big_orders = small_orders;
        // grow by products of existing members so pi stays the same
        std::vector<uint64_t> base(small_orders.begin(), small_orders.end());
        for (int i = 0; i < 3; ++i) {
            uint64_t a = base[rng() % base.size()];
            uint64_t b = base[rng() % base.size()];
            big_orders.insert(a * b);
        }
        PrimeGraph gs = gk(Spectrum::from_orders(small_orders));
        PrimeGraph gb = gk(Spectrum::from_orders(big_orders));
        if (gs.vertices() != gb.vertices()) continue;
        for (const auto& [r, s] : gs.edges()) CHECK(gb.adjacent(r, s));
    }
}

TEST_CASE("dot export") {
    PrimeGraph h = gk(Spectrum::from_maximal({4, 5, 6}));
    CHECK(graph_to_dot(h) ==
          "graph GK {\n  \"2\";\n  \"3\";\n  \"5\";\n  \"2\" -- \"3\";\n}\n");
    PrimeGraph empty = gk(Spectrum::from_orders({1}));
    CHECK(graph_to_dot(empty) == "graph GK {\n}\n");
}

TEST_CASE("json export") {
    PrimeGraph h = gk(Spectrum::from_maximal({4, 5, 6}));
    CHECK(graph_to_json(h) == "{\"vertices\":[2,3,5],\"edges\":[[2,3]]}");
    PrimeGraph empty = gk(Spectrum::from_orders({1}));
    CHECK(graph_to_json(empty) == "{\"vertices\":[],\"edges\":[]}");
}
