#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "oracle_homology.hpp"
#include "textnet/errors.hpp"
#include "textnet/network_build.hpp"
#include "textnet/rng.hpp"
#include "textnet/topology.hpp"

using namespace textnet;

namespace {

unit_step_filtration steps_of(size_t n, std::vector<unit_step> steps) {
    unit_step_filtration f;
    f.node_count = n;
    f.steps = std::move(steps);
    return f;
}

unit_step node_step(node_id u) { return {false, u, 0}; }
unit_step edge_step(node_id u, node_id v) { return {true, u, v}; }

// random growth sequence: nodes get random priorities, every edge follows
// both endpoints
unit_step_filtration random_filtration(rng& gen, size_t n, double p) {
    std::vector<double> prio(n);
    for (auto& x : prio) x = gen.uniform01();
    struct item {
        double at;
        unit_step st;
    };
    std::vector<item> items;
    for (node_id u = 0; u < n; ++u) items.push_back({prio[u], node_step(u)});
    for (node_id u = 0; u < n; ++u)
        for (node_id v = u + 1; v < n; ++v)
            if (gen.uniform01() < p)
                items.push_back({std::max(prio[u], prio[v]) + gen.uniform01(), edge_step(u, v)});
    std::sort(items.begin(), items.end(), [](const item& a, const item& b) { return a.at < b.at; });
    std::vector<unit_step> steps;
    for (auto& it : items) steps.push_back(it.st);
    return steps_of(n, std::move(steps));
}

size_t total_simplices(const flag_filtration& f) {
    return f.simplices[0].size() + f.simplices[1].size() + f.simplices[2].size() +
           f.simplices[3].size();
}

}  // namespace

TEST_CASE("flag complex enters cliques at the maximum edge value") {
    // triangle with edge births 1, 2, 3 via sentence sets
    auto filt = filtration_from_sentence_sets({{0, 1}, {1, 2}, {0, 2}}, 3);
    auto flag = build_flag_filtration(filt);
    REQUIRE(flag.simplices[2].size() == 1);
    CHECK(flag.simplices[2][0].value == 3);
    CHECK(flag.simplices[2][0].key == pack3(0, 1, 2));
    CHECK(flag.max_value == 3);
}

TEST_CASE("a one-sentence clique spawns all faces at once") {
    auto filt = filtration_from_sentence_sets({{0, 1, 2, 3}}, 4);
    auto flag = build_flag_filtration(filt);
    CHECK(flag.simplices[0].size() == 4);
    CHECK(flag.simplices[1].size() == 6);
    CHECK(flag.simplices[2].size() == 4);
    CHECK(flag.simplices[3].size() == 1);
    for (size_t d = 0; d < 4; ++d)
        for (const auto& s : flag.simplices[d]) CHECK(s.value == 1);

    auto bc = persistence(flag);
    REQUIRE(bc.count(0) == 1);  // zero-length bars dropped, one survivor
    CHECK(bc.dims[0][0] == bar{1, INF_DEATH});
    CHECK(bc.count(1) == 0);
    CHECK(bc.count(2) == 0);
}

TEST_CASE("clique enumeration matches brute force on a random snapshot") {
    rng gen(321);
    for (int trial = 0; trial < 5; ++trial) {
        auto filt = random_filtration(gen, 20, 0.25);
        auto flag = build_flag_filtration(filt);
        auto oracle_simp = oracle::enumerate_simplices_of(filt);

        std::array<std::multiset<std::pair<uint64_t, uint32_t>>, 4> got, want;
        for (size_t d = 0; d < 4; ++d)
            for (const auto& s : flag.simplices[d]) got[d].insert({s.key, s.value});
        for (const auto& s : oracle_simp) {
            uint64_t key = 0;
            for (uint32_t v : s.verts) key = (key << 16) | v;
            want[s.verts.size() - 1].insert({key, s.value});
        }
        for (size_t d = 0; d < 4; ++d) CHECK(got[d] == want[d]);
    }
}

TEST_CASE("simplices are ordered by value then key within each dimension") {
    rng gen(8);
    auto filt = random_filtration(gen, 15, 0.3);
    auto flag = build_flag_filtration(filt);
    for (size_t d = 0; d < 4; ++d)
        for (size_t i = 1; i < flag.simplices[d].size(); ++i) {
            const auto& a = flag.simplices[d][i - 1];
            const auto& b = flag.simplices[d][i];
            bool ordered = a.value < b.value || (a.value == b.value && a.key < b.key);
            CHECK(ordered);
        }
}

TEST_CASE("elder rule on two components joined late") {
    auto f = steps_of(2, {node_step(0), node_step(1), edge_step(0, 1)});
    auto bc = persistence(build_flag_filtration(f));
    REQUIRE(bc.count(0) == 2);
    CHECK(bc.dims[0][0] == bar{1, INF_DEATH});
    CHECK(bc.dims[0][1] == bar{2, 3});
    CHECK(bc.count(1) == 0);
}

TEST_CASE("four-cycle gap closes at tessellation") {
    // cycle complete at sentence 4, chord plus both triangles at sentence 5
    auto filt = filtration_from_sentence_sets(
        {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}, 4);
    auto bc = persistence(build_flag_filtration(filt));
    REQUIRE(bc.count(1) == 1);
    CHECK(bc.dims[1][0] == bar{4, 5});
    CHECK(bc.count(2) == 0);
}

TEST_CASE("open four-cycle leaves an immortal gap") {
    auto filt = filtration_from_sentence_sets({{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 4);
    auto bc = persistence(build_flag_filtration(filt));
    REQUIRE(bc.count(1) == 1);
    CHECK(bc.dims[1][0] == bar{4, INF_DEATH});
}

TEST_CASE("octahedron closes a hollow sphere with the last edge") {
    // vertices 0..5, antipodal pairs (0,1), (2,3), (4,5) stay non-adjacent
    std::vector<unit_step> steps;
    for (node_id u = 0; u < 6; ++u) steps.push_back(node_step(u));
    std::vector<std::pair<node_id, node_id>> edges;
    for (node_id u = 0; u < 6; ++u)
        for (node_id v = u + 1; v < 6; ++v)
            if (!(u / 2 == v / 2)) edges.emplace_back(u, v);
    REQUIRE(edges.size() == 12);
    for (auto [u, v] : edges) steps.push_back(edge_step(u, v));

    auto f = steps_of(6, steps);
    auto bc = persistence(build_flag_filtration(f));
    REQUIRE(bc.count(2) == 1);
    CHECK(bc.dims[2][0] == bar{18, INF_DEATH});

    // filling one antipodal chord tessellates the solid and kills the void
    steps.push_back(edge_step(0, 1));
    auto filled = persistence(build_flag_filtration(steps_of(6, steps)));
    REQUIRE(filled.count(2) == 1);
    CHECK(filled.dims[2][0] == bar{18, 19});
}

TEST_CASE("trees carry no gaps in any dimension") {
    rng gen(2718);
    for (int trial = 0; trial < 20; ++trial) {
        size_t n = 2 + gen.uniform_below(30);
        std::vector<unit_step> steps;
        steps.push_back(node_step(0));
        for (node_id v = 1; v < n; ++v) {
            node_id parent = node_id(gen.uniform_below(v));
            steps.push_back(node_step(v));
            steps.push_back(edge_step(parent, v));
        }
        auto bc = persistence(build_flag_filtration(steps_of(n, steps)));
        CHECK(bc.count(1) == 0);
        CHECK(bc.count(2) == 0);
        REQUIRE(bc.count(0) >= 1);
        // every non-root component dies the moment its edge arrives
        size_t infinite = 0;
        for (const auto& b : bc.dims[0]) infinite += b.death == INF_DEATH;
        CHECK(infinite == 1);
    }
}

TEST_CASE("engine equals the naive reduction oracle on random growth") {
    rng gen(13571);
    for (int trial = 0; trial < 40; ++trial) {
        size_t n = 3 + gen.uniform_below(8);  // up to 10 nodes
        auto filt = random_filtration(gen, n, 0.25 + 0.5 * gen.uniform01());
        auto got = persistence(build_flag_filtration(filt));
        auto want = oracle::barcode_of(filt);
        CHECK(oracle::same_barcode(got, want));
    }
}

TEST_CASE("engine equals the oracle on sentence-valued filtrations with ties") {
    rng gen(97);
    for (int trial = 0; trial < 25; ++trial) {
        size_t n = 4 + gen.uniform_below(6);
        size_t n_sent = 3 + gen.uniform_below(4);
        std::vector<std::vector<node_id>> sets(n_sent);
        for (auto& s : sets) {
            size_t k = 1 + gen.uniform_below(4);
            for (size_t i = 0; i < k; ++i) s.push_back(node_id(gen.uniform_below(n)));
        }
        auto filt = filtration_from_sentence_sets(sets, n);
        auto got = persistence(build_flag_filtration(filt));
        auto want = oracle::barcode_of(filt);
        CHECK(oracle::same_barcode(got, want));
    }
}

TEST_CASE("euler characteristic balances the betti numbers without 4-cliques") {
    rng gen(6174);
    int used = 0;
    for (int trial = 0; trial < 30 && used < 12; ++trial) {
        size_t n = 5 + gen.uniform_below(6);
        auto filt = random_filtration(gen, n, 0.3);
        auto flag = build_flag_filtration(filt);
        if (!flag.simplices[3].empty()) continue;  // needs a 4-clique-free graph
        ++used;

        auto bc = persistence(flag);
        uint32_t horizon = flag.max_value;
        auto curves = betti_curves(bc, horizon);
        for (uint32_t t = 1; t <= horizon; ++t) {
            int64_t v = 0, e = 0, tri = 0;
            for (const auto& s : flag.simplices[0]) v += s.value <= t;
            for (const auto& s : flag.simplices[1]) e += s.value <= t;
            for (const auto& s : flag.simplices[2]) tri += s.value <= t;
            int64_t chi = v - e + tri;
            int64_t betti = int64_t(curves[t][0]) - int64_t(curves[t][1]) + int64_t(curves[t][2]);
            CHECK(chi == betti);
        }
    }
    CHECK(used >= 5);
}

TEST_CASE("betti curves count live bars") {
    barcode bc;
    CHECK(betti_curves(bc, 5) ==
          std::vector<std::array<uint32_t, 3>>(6, std::array<uint32_t, 3>{0, 0, 0}));

    bc.dims[0].push_back({1, INF_DEATH});
    auto c = betti_curves(bc, 10);
    REQUIRE(c.size() == 11);
    CHECK(c[0][0] == 0);
    for (uint32_t t = 1; t <= 10; ++t) CHECK(c[t][0] == 1);

    bc.dims[1].push_back({2, 5});
    c = betti_curves(bc, 6);
    CHECK(c[1][1] == 0);
    CHECK(c[2][1] == 1);
    CHECK(c[4][1] == 1);
    CHECK(c[5][1] == 0);  // right-open interval
}

TEST_CASE("lifetime normalization follows the replacement rule") {
    CHECK(nacl({bar{2, 5}}, 10) == doctest::Approx(0.3));
    CHECK(nacl({bar{4, INF_DEATH}}, 10) == doctest::Approx(0.7));
    CHECK(nacl({}, 10) == 0.0);
    CHECK(nacl({bar{2, 5}, bar{4, INF_DEATH}}, 10) == doctest::Approx(0.5 * (0.3 + 0.7)));
}

TEST_CASE("lifetime normalization stays within its bound") {
    rng gen(31415);
    for (int trial = 0; trial < 200; ++trial) {
        uint32_t n = 1 + uint32_t(gen.uniform_below(40));
        std::vector<bar> bars;
        size_t m = gen.uniform_below(6);
        for (size_t i = 0; i < m; ++i) {
            uint32_t b = 1 + uint32_t(gen.uniform_below(n));
            uint32_t d = gen.uniform01() < 0.3 ? INF_DEATH
                                               : b + uint32_t(gen.uniform_below(n + 1 - b)) + 1;
            if (d != INF_DEATH && d > n) d = n;
            if (d != INF_DEATH && d <= b) d = b + 1 > n ? INF_DEATH : b + 1;
            bars.push_back({b, d});
        }
        double d = nacl(bars, n);
        CHECK(d >= 0.0);
        CHECK(d <= double(n + 1) / double(n) + 1e-12);
    }
}

TEST_CASE("simplex cap raises a resource error with counts") {
    auto filt = filtration_from_sentence_sets({{0, 1, 2, 3, 4}}, 5);
    flag_limits tight;
    tight.max_simplices = 8;
    CHECK_THROWS_AS(build_flag_filtration(filt, tight), resource_error);
    try {
        build_flag_filtration(filt, tight);
    } catch (const resource_error& e) {
        CHECK(std::string(e.what()).find("8") != std::string::npos);
    }
}

TEST_CASE("vertex ids beyond 16 bits are rejected") {
    std::vector<uint32_t> node_values(70000, 0);
    node_values[69999] = 1;
    CHECK_THROWS_AS(
        build_flag_filtration(70000, node_values, {}, {}, 1, flag_limits{}),
        resource_error);
}

TEST_CASE("unborn nodes never appear in the complex") {
    std::vector<uint32_t> node_values = {1, 0, 2};
    auto flag = build_flag_filtration(3, node_values, {{0, 2, 1.0}}, {2}, 3, flag_limits{});
    CHECK(flag.simplices[0].size() == 2);
    CHECK(total_simplices(flag) == 3);
}
