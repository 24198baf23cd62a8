#include <doctest.h>

#include <random>

#include "gpfock/budget.hpp"
#include "gpfock/graph.hpp"

using namespace gpfock;

namespace {

SimpleGraph cycle(int n) {
    std::vector<std::string> v;
    std::vector<std::pair<std::string, std::string>> e;
    for (int i = 1; i <= n; ++i) v.push_back(std::to_string(i));
    for (int i = 1; i <= n; ++i)
        e.emplace_back(std::to_string(i), std::to_string(i % n + 1));
    return SimpleGraph(v, e);
}

SimpleGraph complete(int n) {
    std::vector<std::string> v;
    std::vector<std::pair<std::string, std::string>> e;
    for (int i = 0; i < n; ++i) v.push_back(std::string(1, static_cast<char>('a' + i)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(v[i], v[j]);
    return SimpleGraph(v, e);
}

SimpleGraph random_graph(int n, std::mt19937_64& rng) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back("v" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> e;
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) e.emplace_back(v[i], v[j]);
    return SimpleGraph(v, e);
}

}  // namespace

TEST_CASE("link basics") {
    const SimpleGraph k3 = complete(3);
    CHECK(link(k3, "a") == VertexSet{"b", "c"});

    const SimpleGraph edgeless({"a", "b"}, {});
    CHECK(link(edgeless, "a").empty());

    const SimpleGraph c5 = cycle(5);
    CHECK(link(c5, "1") == VertexSet{"2", "5"});

    CHECK_THROWS_AS(link(c5, "nope"), input_error);
}

TEST_CASE("link of a set") {
    const SimpleGraph c5 = cycle(5);
    CHECK(link_of_set(c5, {"2", "5"}) == VertexSet{"1"});
    CHECK(link_of_set(c5, {}) == c5.vertices());

    const SimpleGraph k3 = complete(3);
    CHECK(link_of_set(k3, {"b", "c"}) == VertexSet{"a"});
    CHECK_THROWS_AS(link_of_set(k3, {"z"}), input_error);
}

TEST_CASE("rigidity") {
    for (int n = 1; n <= 5; ++n) CHECK(is_rigid(complete(n)).rigid);

    const SimpleGraph path({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    const RigidityReport r = is_rigid(path);
    CHECK_FALSE(r.rigid);
    CHECK(r.witness == "a");
    CHECK(r.second_link == VertexSet{"a", "c"});

    CHECK(is_rigid(cycle(5)).rigid);
    CHECK(is_rigid(cycle(6)).rigid);
    CHECK_FALSE(is_rigid(cycle(4)).rigid);  // opposite vertices share their link
}

TEST_CASE("two vertices with identical links break rigidity") {
    std::mt19937_64 rng(7);
    int tested = 0;
    for (int trial = 0; trial < 500 && tested < 20; ++trial) {
        SimpleGraph g = random_graph(5, rng);
        for (int s = 0; s < g.vertex_count(); ++s)
            for (int t = s + 1; t < g.vertex_count(); ++t)
                if (link_indices(g, s) == link_indices(g, t) && g.degree(s) > 0) {
                    CHECK_FALSE(is_rigid(g).rigid);
                    ++tested;
                }
    }
    CHECK(tested >= 20);
}

TEST_CASE("link symmetry and self-exclusion") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const SimpleGraph g = random_graph(6, rng);
        for (const auto& s : g.vertices()) {
            const VertexSet ls = link(g, s);
            CHECK_FALSE(std::binary_search(ls.begin(), ls.end(), s));
            for (const auto& t : ls) {
                const VertexSet lt = link(g, t);
                CHECK(std::binary_search(lt.begin(), lt.end(), s));
            }
            // link(star s) stays inside link s
            const VertexSet closure = link_of_set(g, star(g, s));
            for (const auto& t : closure)
                CHECK(std::binary_search(ls.begin(), ls.end(), t));
        }
    }
}

TEST_CASE("induced subgraphs") {
    const SimpleGraph c5 = cycle(5);
    const SimpleGraph edge = induced_subgraph(c5, {"1", "2"});
    CHECK(edge.vertex_count() == 2);
    CHECK(edge.edge_count() == 1);

    CHECK(induced_subgraph(c5, {}).vertex_count() == 0);

    const SimpleGraph pair = induced_subgraph(c5, {"1", "3"});
    CHECK(pair.vertex_count() == 2);
    CHECK(pair.edge_count() == 0);

    CHECK(induced_subgraph(c5, c5.vertices()) == c5);
    CHECK_THROWS_AS(induced_subgraph(c5, {"7"}), input_error);
}

TEST_CASE("isomorphism search") {
    const SimpleGraph c5 = cycle(5);
    SimpleGraph relabeled({"p", "q", "r", "s", "t"},
                          {{"p", "q"}, {"q", "r"}, {"r", "s"}, {"s", "t"}, {"t", "p"}});
    const auto found = graphs_isomorphic(c5, relabeled);
    REQUIRE(found.has_value());
    for (const auto& [a, b] : c5.edges())
        CHECK(relabeled.adjacent(found->at(a), found->at(b)));

    const SimpleGraph p5({"1", "2", "3", "4", "5"},
                         {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "5"}});
    CHECK_FALSE(graphs_isomorphic(c5, p5).has_value());

    SimpleGraph k2k3({"a", "b", "x", "y", "z"},
                     {{"a", "b"}, {"x", "y"}, {"y", "z"}, {"x", "z"}});
    SimpleGraph k2k2({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
    CHECK_FALSE(graphs_isomorphic(k2k3, k2k2).has_value());
}

TEST_CASE("isomorphism respects labels") {
    const SimpleGraph k2 = complete(2);
    const VertexLabels xy{{"a", "x"}, {"b", "y"}};
    const VertexLabels yx{{"a", "y"}, {"b", "x"}};
    const auto swapped = graphs_isomorphic(k2, k2, &xy, &yx);
    REQUIRE(swapped.has_value());
    CHECK(swapped->at("a") == "b");

    const VertexLabels xx{{"a", "x"}, {"b", "x"}};
    CHECK_FALSE(graphs_isomorphic(k2, k2, &xy, &xx).has_value());
}

TEST_CASE("isomorphism is reflexive and symmetric") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const SimpleGraph g = random_graph(6, rng);
        const auto self = graphs_isomorphic(g, g);
        REQUIRE(self.has_value());

        const SimpleGraph h = random_graph(6, rng);
        const auto fwd = graphs_isomorphic(g, h);
        const auto bwd = graphs_isomorphic(h, g);
        CHECK(fwd.has_value() == bwd.has_value());
        if (fwd) {
            for (const auto& [a, b] : *fwd) CHECK(bwd->count(b) == 1);
            for (const auto& [a, b] : g.edges())
                CHECK(h.adjacent(fwd->at(a), fwd->at(b)));
        }
    }
}

TEST_CASE("isomorphism returns the least mapping") {
    const SimpleGraph c5 = cycle(5);
    const auto self = graphs_isomorphic(c5, c5);
    REQUIRE(self.has_value());
    for (const auto& [a, b] : *self) CHECK(a == b);  // identity is lexicographically least
}

TEST_CASE("isomorphism size guard") {
    std::vector<std::string> big;
    for (int i = 0; i < 13; ++i) big.push_back("v" + std::to_string(i));
    const SimpleGraph g(big, {});
    CHECK_THROWS_AS(graphs_isomorphic(g, g), input_error);
    CHECK_NOTHROW(graphs_isomorphic(g, g, nullptr, nullptr, 13));
}

TEST_CASE("graph construction rejects bad input") {
    CHECK_THROWS_AS(SimpleGraph({"a"}, {{"a", "a"}}), input_error);
    CHECK_THROWS_AS(SimpleGraph({"a", "b"}, {{"a", "b"}, {"b", "a"}}), input_error);
    CHECK_THROWS_AS(SimpleGraph({"a", "a"}, {}), input_error);
    CHECK_THROWS_AS(SimpleGraph({"a"}, {{"a", "z"}}), input_error);
}
