#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "oracle_stats.hpp"
#include "textnet/analysis.hpp"
#include "textnet/errors.hpp"
#include "textnet/mathfn.hpp"
#include "textnet/network_build.hpp"
#include "textnet/rng.hpp"

using namespace textnet;

namespace {

step_curve make_curve(std::vector<double> t, std::vector<double> v, std::string group = "g") {
    step_curve c;
    c.t = std::move(t);
    c.v = std::move(v);
    c.group = std::move(group);
    return c;
}

// uniform staircase: jumps of 1/n at t = 1/n, 2/n, ..., 1
step_curve staircase(size_t n) {
    std::vector<double> t(n), v(n);
    for (size_t i = 0; i < n; ++i) {
        t[i] = double(i + 1) / double(n);
        v[i] = double(i + 1) / double(n);
    }
    return make_curve(std::move(t), std::move(v));
}

step_curve random_curve(rng& gen, size_t max_jumps) {
    size_t k = 1 + size_t(gen.uniform_below(max_jumps));
    std::vector<double> t, v;
    double x = 0.0;
    double y = 0.0;
    for (size_t i = 0; i < k; ++i) {
        x += gen.uniform01_open() * (1.0 - x) * 0.7;
        y += gen.uniform01() * (1.0 - y);
        if (!t.empty() && x <= t.back()) continue;
        t.push_back(x);
        v.push_back(y);
    }
    return make_curve(std::move(t), std::move(v));
}

const step_curve zero_curve = {};

double find_curve_area(const step_curve& c) { return curve_area_diff(c, zero_curve); }

}  // namespace

TEST_CASE("step curve evaluation semantics") {
    auto c = make_curve({0.2, 0.6}, {0.4, 1.0});
    CHECK(c.at(0.0) == 0.0);
    CHECK(c.at(0.19) == 0.0);
    CHECK(c.at(0.2) == 0.4);
    CHECK(c.at(0.5) == 0.4);
    CHECK(c.at(0.6) == 1.0);
    CHECK(c.at(1.0) == 1.0);
    CHECK(c.left_limit(0.2) == 0.0);
    CHECK(c.left_limit(0.6) == 0.4);
    CHECK(c.left_limit(1.0) == 1.0);
    CHECK(c.non_decreasing());
    CHECK_FALSE(make_curve({0.3, 0.7}, {0.9, 0.2}).non_decreasing());
}

TEST_CASE("introduction curve from births") {
    auto c = introduction_curve({1, 1, 2}, 2, "core");
    CHECK(c.group == "core");
    CHECK(c.t == std::vector<double>{0.5, 1.0});
    REQUIRE(c.v.size() == 2);
    CHECK(c.v[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(c.v[1] == 1.0);
    CHECK(c.non_decreasing());

    CHECK_THROWS_AS(introduction_curve({}, 2, "g"), validation_error);
    CHECK_THROWS_AS(introduction_curve({1}, 0, "g"), validation_error);
    CHECK_THROWS_AS(introduction_curve({0}, 2, "g"), validation_error);
    CHECK_THROWS_AS(introduction_curve({3}, 2, "g"), validation_error);
}

TEST_CASE("core nodes all in the first sentence jump at once") {
    auto filt = filtration_from_sentence_sets({{0, 1, 2}, {}, {}, {}, {}}, 3);
    REQUIRE(filt.n_sentences == 5);
    core_partition part;
    part.is_core = {1, 1, 1};

    std::vector<std::string> warnings;
    auto curves = introduction_curves(filt, part, &warnings);
    REQUIRE(curves.size() == 1);
    CHECK(curves[0].group == "core");
    CHECK(curves[0].t == std::vector<double>{0.2});
    CHECK(curves[0].v == std::vector<double>{1.0});
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("periphery") != std::string::npos);
}

TEST_CASE("uniform introduction tracks the diagonal within one step") {
    const uint32_t n = 20;
    std::vector<uint32_t> births(n);
    for (uint32_t i = 0; i < n; ++i) births[i] = i + 1;
    auto c = introduction_curve(births, n, "g");
    for (uint32_t k = 1; k <= n; ++k)
        CHECK(c.at(double(k) / n) == doctest::Approx(double(k) / n).epsilon(1e-15));
    CHECK(ks_to_diagonal(c) == doctest::Approx(1.0 / n).epsilon(1e-15));
}

TEST_CASE("three nodes over two sentences traced by hand") {
    auto filt = filtration_from_sentence_sets({{0, 1}, {2}}, 3);
    core_partition part;
    part.is_core = {1, 0, 0};

    auto curves = introduction_curves(filt, part);
    REQUIRE(curves.size() == 2);
    CHECK(curves[0].group == "core");
    CHECK(curves[0].t == std::vector<double>{0.5});
    CHECK(curves[0].v == std::vector<double>{1.0});
    CHECK(curves[1].group == "periphery");
    CHECK(curves[1].t == std::vector<double>{0.5, 1.0});
    CHECK(curves[1].v == std::vector<double>{0.5, 1.0});

    // core arrives earlier, so the signed area is positive
    CHECK(curve_area_diff(curves[0], curves[1]) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("area between step curves is exact") {
    auto always_one = make_curve({0.0}, {1.0});
    auto late_step = make_curve({0.5}, {1.0});
    CHECK(curve_area_diff(always_one, late_step) == doctest::Approx(0.5).epsilon(1e-15));

    // against a staircase the lag is half a step
    const size_t n = 10;
    auto stair = staircase(n);
    CHECK(curve_area_diff(always_one, stair) ==
          doctest::Approx((n + 1.0) / (2.0 * n)).epsilon(1e-15));

    // identical curves cancel exactly
    CHECK(curve_area_diff(late_step, late_step) == 0.0);
    CHECK(curve_area_diff(stair, stair) == 0.0);

    // antisymmetry holds exactly, not just approximately
    rng gen(404);
    for (int i = 0; i < 25; ++i) {
        auto a = random_curve(gen, 8);
        auto b = random_curve(gen, 8);
        CHECK(curve_area_diff(a, b) == -curve_area_diff(b, a));
    }
}

TEST_CASE("distance to the diagonal") {
    CHECK(ks_to_diagonal(zero_curve) == 0.0);
    CHECK(ks_to_diagonal(make_curve({0.5}, {1.0})) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ks_to_diagonal(staircase(10)) == doctest::Approx(0.1).epsilon(1e-15));
    // constant zero until 1.0 pins the far corner
    CHECK(ks_to_diagonal(make_curve({1.0}, {1.0})) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("diagonal distance agrees with a dense grid search") {
    rng gen(2718);
    const size_t grid = 200000;
    for (int trial = 0; trial < 30; ++trial) {
        auto c = random_curve(gen, 10);
        double brute = 0.0;
        for (size_t k = 0; k <= grid; ++k) {
            double x = double(k) / double(grid);
            brute = std::max(brute, std::fabs(c.at(x) - x));
        }
        // both sides of every jump, approached numerically
        for (double tj : c.t) {
            if (tj >= 0.0 && tj <= 1.0) {
                brute = std::max(brute, std::fabs(c.at(tj) - tj));
                double eps = 1e-13;
                if (tj - eps >= 0.0) brute = std::max(brute, std::fabs(c.at(tj - eps) - (tj - eps)));
            }
        }
        CHECK(ks_to_diagonal(c) == doctest::Approx(brute).epsilon(1e-9));
    }
}

TEST_CASE("edge groups partition the edge set") {
    // core {0,1}; periphery {2,3,4,5} in two communities {2,3} and {4,5}
    auto filt = filtration_from_sentence_sets({{0, 1, 2}, {2, 3}, {4, 5}, {3, 5}, {0, 1}}, 6);
    REQUIRE(filt.total.edges.size() == 6);
    core_partition part;
    part.is_core = {1, 1, 0, 0, 0, 0};
    community_partition comms;
    comms.assignment = {0, 0, 1, 1};
    comms.community_count = 2;
    std::vector<node_id> periphery_nodes = {2, 3, 4, 5};

    auto curves = edge_group_curves(filt, part, comms, periphery_nodes);
    REQUIRE(curves.size() == 5);
    CHECK(curves[0].group == "intra-core");
    CHECK(curves[0].t == std::vector<double>{0.2});
    CHECK(curves[0].v == std::vector<double>{1.0});
    CHECK(curves[1].group == "core-periphery");
    CHECK(curves[1].t == std::vector<double>{0.2});
    CHECK(curves[1].v == std::vector<double>{1.0});
    CHECK(curves[2].group == "inter-periphery");
    CHECK(curves[2].t == std::vector<double>{0.4, 0.6, 0.8});
    REQUIRE(curves[2].v.size() == 3);
    CHECK(curves[2].v[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(curves[2].v[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(curves[2].v[2] == 1.0);
    CHECK(curves[3].group == "intra-community:0");
    CHECK(curves[3].t == std::vector<double>{0.4});
    CHECK(curves[4].group == "intra-community:1");
    CHECK(curves[4].t == std::vector<double>{0.6});

    // the three top-level groups cover every edge exactly once
    size_t intra_core = 0, core_periph = 0, inter_periph = 0;
    for (const auto& e : filt.total.edges) {
        bool uc = part.is_core[e.u], vc = part.is_core[e.v];
        if (uc && vc)
            ++intra_core;
        else if (!uc && !vc)
            ++inter_periph;
        else
            ++core_periph;
    }
    CHECK(intra_core + core_periph + inter_periph == filt.total.edges.size());
    CHECK(intra_core == 1);
    CHECK(core_periph == 2);
    CHECK(inter_periph == 3);

    // blockwise introduction: the early community's curve runs above the
    // diagonal in area, the late one below
    CHECK(find_curve_area(curves[3]) > 0.5);
    CHECK(find_curve_area(curves[4]) < 0.5);

    // a graph with no core-core edge omits the intra-core curve
    core_partition lone;
    lone.is_core = {1, 0, 0, 0, 0, 0};
    auto lone_curves = edge_group_curves(filt, lone, comms, periphery_nodes);
    for (const auto& c : lone_curves) CHECK(c.group != "intra-core");
}

TEST_CASE("rank statistics on monotone data") {
    auto r1 = spearman({1, 2, 3}, {1, 4, 9});
    CHECK(r1.statistic == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r1.pvalue == doctest::Approx(0.0));
    CHECK(r1.n == 3);
    auto r2 = spearman({1, 2, 3}, {9, 4, 1});
    CHECK(r2.statistic == doctest::Approx(-1.0).epsilon(1e-15));

    // strictly monotone transforms leave the statistic untouched, exactly
    rng gen(99);
    for (int trial = 0; trial < 30; ++trial) {
        size_t n = 4 + size_t(gen.uniform_below(8));
        std::vector<double> x(n), y(n), gx(n), hy(n);
        for (size_t i = 0; i < n; ++i) {
            x[i] = double(gen.uniform_below(5));  // ties likely
            y[i] = gen.uniform01();
            gx[i] = std::exp(x[i]);
            hy[i] = 2.0 * y[i] + 3.0;
        }
        bool x_flat = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
        if (x_flat) continue;
        auto base = spearman(x, y);
        CHECK(spearman(gx, y).statistic == base.statistic);
        CHECK(spearman(x, hy).statistic == base.statistic);
        CHECK(spearman(gx, hy).statistic == base.statistic);
    }
}

TEST_CASE("tied ranks against frozen references") {
    std::vector<double> x = {1, 2, 2, 3, 5, 5, 5, 8};
    std::vector<double> y = {2, 1, 4, 4, 4, 7, 6, 9};

    CHECK(average_ranks(x) == std::vector<double>{1, 2.5, 2.5, 4, 6, 6, 6, 8});

    auto rs = spearman(x, y);
    CHECK(rs.statistic == doctest::Approx(0.8679416943609327).epsilon(1e-12));
    CHECK(rs.pvalue == doctest::Approx(0.005202355452373696).epsilon(1e-10));
    auto rp = pearson(x, y);
    CHECK(rp.statistic == doctest::Approx(0.8954804330641716).epsilon(1e-12));
    CHECK(rp.pvalue == doctest::Approx(0.0026354309872475977).epsilon(1e-10));
}

TEST_CASE("one sample t test") {
    std::vector<double> areas = {0.12, 0.2, 0.064, 0.15, 0.18, 0.09, 0.2};
    auto r = t_test_one_sample(areas, 0.0);
    CHECK(r.statistic == doctest::Approx(7.027798539329434).epsilon(1e-12));
    CHECK(r.pvalue == doctest::Approx(0.00041447073023416524).epsilon(1e-10));
    CHECK(r.n == 7);

    // symmetric two-point sample sits exactly at the null
    auto z = t_test_one_sample({1.0, -1.0}, 0.0);
    CHECK(z.statistic == 0.0);
    CHECK(z.pvalue == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(t_test_one_sample({1.0}, 0.0), validation_error);
    CHECK_THROWS_AS(t_test_one_sample({5.0, 5.0, 5.0}, 0.0), validation_error);
}

TEST_CASE("degenerate statistic inputs are rejected") {
    CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), validation_error);
    CHECK_THROWS_AS(pearson({1, 2, 3}, {4, 4, 4}), validation_error);
    CHECK_THROWS_AS(spearman({2, 2, 2}, {1, 2, 3}), validation_error);
    CHECK_THROWS_AS(pearson({1, 2}, {1, 2}), validation_error);
    CHECK_THROWS_AS(pearson({1, 2, 3}, {1, 2}), validation_error);
}

TEST_CASE("statistics agree with the counting oracle, ties included") {
    rng gen(5150);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        size_t n = 3 + size_t(gen.uniform_below(10));
        std::vector<double> x(n), y(n);
        bool lattice = (trial % 2 == 0);
        for (size_t i = 0; i < n; ++i) {
            if (lattice) {
                x[i] = double(gen.uniform_below(4));
                y[i] = double(gen.uniform_below(4));
            } else {
                x[i] = gen.normal();
                y[i] = gen.normal();
            }
        }
        auto flat = [](const std::vector<double>& v) {
            return std::all_of(v.begin(), v.end(), [&](double a) { return a == v[0]; });
        };
        if (flat(x) || flat(y)) continue;

        auto sp = spearman(x, y);
        CHECK(sp.statistic == doctest::Approx(oracle::spearman_rho(x, y)).epsilon(1e-9));
        CHECK(std::fabs(sp.statistic) <= 1.0 + 1e-15);
        auto pe = pearson(x, y);
        CHECK(pe.statistic == doctest::Approx(oracle::pearson_r(x, y)).epsilon(1e-9));

        double mu0 = gen.normal();
        auto tt = t_test_one_sample(x, mu0);
        CHECK(tt.statistic == doctest::Approx(oracle::t_statistic(x, mu0)).epsilon(1e-9));
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= double(n);
        if (mean != mu0) CHECK((tt.statistic > 0) == (mean > mu0));
        CHECK(tt.pvalue >= 0.0);
        CHECK(tt.pvalue <= 1.0);
        ++checked;
    }
    CHECK(checked >= 250);
}
