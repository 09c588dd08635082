#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracle_partition.hpp"
#include "textnet/errors.hpp"
#include "textnet/mesoscale.hpp"
#include "textnet/rng.hpp"

using namespace textnet;

namespace {

semantic_network make_net(size_t n, std::vector<std::tuple<node_id, node_id, double>> edges) {
    semantic_network net;
    net.node_count = n;
    for (auto& [u, v, w] : edges) net.add_edge(u, v, w);
    net.sort_edges();
    return net;
}

semantic_network random_net(rng& gen, size_t n, double p, double wmax) {
    semantic_network net;
    net.node_count = n;
    for (node_id u = 0; u < n; ++u)
        for (node_id v = u + 1; v < n; ++v)
            if (gen.uniform01() < p) net.add_edge(u, v, 1.0 + gen.uniform_below(uint64_t(wmax)));
    net.sort_edges();
    return net;
}

semantic_network two_cliques(size_t k) {
    semantic_network net;
    net.node_count = 2 * k;
    for (node_id u = 0; u < k; ++u)
        for (node_id v = u + 1; v < k; ++v) {
            net.add_edge(u, v, 1.0);
            net.add_edge(node_id(u + k), node_id(v + k), 1.0);
        }
    net.add_edge(0, node_id(k), 1.0);  // single bridge keeps it connected
    net.sort_edges();
    return net;
}

}  // namespace

TEST_CASE("mean pair weight counts absent edges") {
    auto net = make_net(4, {{0, 1, 3.0}, {2, 3, 1.0}});
    // 4 wins over 6 distinct pairs
    CHECK(mean_pair_weight(net) == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("core-ness matches the definition on a hand case") {
    // star: hub 0 with three leaves, hub-core is the textbook split
    auto net = make_net(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
    std::vector<uint8_t> mask = {1, 0, 0, 0};
    double expected = oracle::coreness(net, mask, 1.0);
    CHECK(eval_coreness(net, mask, 1.0) == doctest::Approx(expected).epsilon(1e-12));

    // single-node core counts no core pairs: only periphery pairs enter
    double wbar = 0.5;
    // pairs among {1,2,3}: all absent edges, each contributes -(0 - wbar)
    double bracket = 3 * wbar;
    double norm = 3 * wbar;
    CHECK(eval_coreness(net, mask, 1.0) == doctest::Approx(bracket / norm));
}

TEST_CASE("swapping labels negates the score exactly") {
    rng gen(2024);
    for (int trial = 0; trial < 50; ++trial) {
        auto net = random_net(gen, 8, 0.4, 5.0);
        std::vector<uint8_t> mask(8);
        for (auto& m : mask) m = uint8_t(gen.uniform_below(2));
        std::vector<uint8_t> flipped(8);
        for (size_t i = 0; i < 8; ++i) flipped[i] = uint8_t(1 - mask[i]);
        double a = eval_coreness(net, mask, 1.0);
        double b = eval_coreness(net, flipped, 1.0);
        CHECK(a == doctest::Approx(-b).epsilon(1e-12));
    }
}

TEST_CASE("uniform complete graph scores zero") {
    semantic_network net;
    net.node_count = 5;
    for (node_id u = 0; u < 5; ++u)
        for (node_id v = u + 1; v < 5; ++v) net.add_edge(u, v, 2.0);
    net.sort_edges();
    CHECK(eval_coreness(net, {1, 1, 0, 0, 0}, 1.0) == 0.0);
    auto part = optimize_coreness(net, 1.0, 7);
    CHECK(part.q_core == 0.0);
    CHECK(part.degenerate);
}

TEST_CASE("empty graph is rejected, empty edge set degenerates") {
    semantic_network empty;
    CHECK_THROWS_AS(eval_coreness(empty, {}, 1.0), validation_error);

    semantic_network edgeless;
    edgeless.node_count = 3;
    auto part = optimize_coreness(edgeless, 1.0, 5);
    CHECK(part.degenerate);
    CHECK(part.q_core == 0.0);
}

TEST_CASE("scoring agrees with the oracle on random masks") {
    rng gen(77);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto net = random_net(gen, 9, 0.35, 4.0);
        for (int m = 0; m < 30; ++m) {
            std::vector<uint8_t> mask(9);
            for (auto& x : mask) x = uint8_t(gen.uniform_below(2));
            double got = eval_coreness(net, mask, 1.0);
            double want = oracle::coreness(net, mask, 1.0);
            CHECK(got == doctest::Approx(want).epsilon(1e-11));
            ++checked;
        }
    }
    CHECK(checked == 1200);
}

TEST_CASE("optimizer finds the planted core on small graphs") {
    // K4 core with a pendant leaf per core node
    semantic_network net;
    net.node_count = 8;
    for (node_id u = 0; u < 4; ++u) {
        for (node_id v = u + 1; v < 4; ++v) net.add_edge(u, v, 3.0);
        net.add_edge(u, node_id(u + 4), 1.0);
    }
    net.sort_edges();

    auto best = oracle::brute_force_coreness(net, 1.0);
    auto part = optimize_coreness(net, 1.0, 11);
    CHECK(part.q_core == doctest::Approx(best.q).epsilon(1e-10));
    CHECK(std::vector<uint8_t>(part.is_core.begin(), part.is_core.end()) == best.core);
    for (node_id u = 0; u < 4; ++u) CHECK(part.is_core[u] == 1);
}

TEST_CASE("optimizer matches brute force on random graphs") {
    rng gen(4242);
    int hits = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        size_t n = 4 + gen.uniform_below(6);  // up to 9 nodes
        auto net = random_net(gen, n, 0.45, 4.0);
        if (net.edges.empty()) {
            ++hits;
            continue;
        }
        auto best = oracle::brute_force_coreness(net, 1.0);
        auto part = optimize_coreness(net, 1.0, derive_seed(9000, uint64_t(t)));
        CHECK(part.q_core <= best.q + 1e-9);
        if (part.q_core >= best.q - 1e-9) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("optimizer never loses to the uniform partitions") {
    rng gen(31);
    for (int t = 0; t < 30; ++t) {
        size_t n = 5 + gen.uniform_below(10);
        auto net = random_net(gen, n, 0.3, 6.0);
        auto part = optimize_coreness(net, 1.0, derive_seed(100, uint64_t(t)));
        std::vector<uint8_t> all_core(n, 1), all_periph(n, 0);
        CHECK(part.q_core >= eval_coreness(net, all_core, 1.0) - 1e-12);
        CHECK(part.q_core >= eval_coreness(net, all_periph, 1.0) - 1e-12);
    }
}

TEST_CASE("modularity matches the definition") {
    rng gen(555);
    for (int t = 0; t < 30; ++t) {
        size_t n = 8;
        auto net = random_net(gen, n, 0.4, 3.0);
        if (net.edges.empty()) continue;
        std::vector<uint32_t> assign(n);
        for (auto& a : assign) a = uint32_t(gen.uniform_below(3));
        double got = eval_modularity(net, assign, 1.0);
        double want = oracle::modularity(net, assign, 1.0);
        CHECK(got == doctest::Approx(want).epsilon(1e-11));
    }
}

TEST_CASE("single community of everything scores zero at unit gamma") {
    auto net = make_net(4, {{0, 1, 2.0}, {1, 2, 1.0}, {2, 3, 4.0}});
    CHECK(eval_modularity(net, {0, 0, 0, 0}, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("louvain matches exhaustive search on small graphs") {
    rng gen(808);
    int hits = 0;
    const int trials = 60;
    for (int t = 0; t < trials; ++t) {
        size_t n = 4 + gen.uniform_below(4);  // up to 7 nodes
        auto net = random_net(gen, n, 0.5, 3.0);
        if (net.edges.empty()) {
            ++hits;
            continue;
        }
        auto best = oracle::brute_force_modularity(net, 1.0);
        auto part = louvain_communities(net, 1.0, derive_seed(200, uint64_t(t)));
        CHECK(part.q_mod <= best.q + 1e-9);
        if (part.q_mod >= best.q - 1e-9) ++hits;
    }
    CHECK(hits >= trials * 9 / 10);
}

TEST_CASE("louvain separates two cliques") {
    int hits = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        auto net = two_cliques(5);
        auto part = louvain_communities(net, 1.0, s);
        bool split_ok = part.community_count == 2;
        if (split_ok) {
            for (node_id u = 1; u < 5 && split_ok; ++u)
                split_ok = part.assignment[u] == part.assignment[0];
            for (node_id u = 6; u < 10 && split_ok; ++u)
                split_ok = part.assignment[u] == part.assignment[5];
            if (split_ok) split_ok = part.assignment[0] != part.assignment[5];
        }
        if (split_ok) ++hits;
    }
    CHECK(hits >= 99);
}

TEST_CASE("community ids are contiguous and q_mod is reproducible") {
    rng gen(99);
    auto net = random_net(gen, 20, 0.2, 2.0);
    auto part = louvain_communities(net, 1.0, 17);
    REQUIRE(part.community_count >= 1);
    std::vector<bool> seen(part.community_count, false);
    for (uint32_t a : part.assignment) {
        REQUIRE(a < part.community_count);
        seen[a] = true;
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
    CHECK(part.q_mod ==
          doctest::Approx(eval_modularity(net, part.assignment, 1.0)).epsilon(1e-12));

    auto again = louvain_communities(net, 1.0, 17);
    CHECK(again.assignment == part.assignment);
}

TEST_CASE("induced subgraph renumbers in the order given") {
    auto net = make_net(5, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 3.0}, {3, 4, 4.0}, {1, 3, 5.0}});
    auto sub = induced_subgraph(net, {3, 1, 2});
    CHECK(sub.node_count == 3);
    // kept edges: (1,2)->(1,2 new ids 1,2... ) mapping: 3->0, 1->1, 2->2
    CHECK(sub.edge_weight(1, 2) == doctest::Approx(2.0));
    CHECK(sub.edge_weight(0, 2) == doctest::Approx(3.0));
    CHECK(sub.edge_weight(0, 1) == doctest::Approx(5.0));
    CHECK(sub.edges.size() == 3);
}

TEST_CASE("disconnected halves make a degenerate core candidate explicit") {
    // two disjoint edges: any single-edge core ties with its mirror image
    auto net = make_net(4, {{0, 1, 2.0}, {2, 3, 2.0}});
    auto part = optimize_coreness(net, 1.0, 3);
    auto best = oracle::brute_force_coreness(net, 1.0);
    CHECK(part.q_core == doctest::Approx(best.q).epsilon(1e-10));
}

TEST_CASE("gamma scales the null expectation") {
    auto net = make_net(3, {{0, 1, 4.0}, {1, 2, 1.0}});
    std::vector<uint8_t> mask = {1, 1, 0};
    for (double gamma : {0.0, 0.5, 1.0, 2.0}) {
        double want = oracle::coreness(net, mask, gamma);
        CHECK(eval_coreness(net, mask, gamma) == doctest::Approx(want).epsilon(1e-12));
    }
}
