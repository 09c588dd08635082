#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textnet/mesoscale.hpp"
#include "textnet/semantic_network.hpp"

namespace textnet {

// Right-continuous step function on [0,1]: value(t) = v[i] for t in
// [t[i], t[i+1]), 0 before t[0], v.back() from t.back() on.
struct step_curve {
    std::vector<double> t;  // strictly increasing breakpoints
    std::vector<double> v;  // value from t[i] (inclusive)
    std::string group;

    double at(double x) const;
    double left_limit(double x) const;
    bool non_decreasing() const;
};

// Cumulative fraction of `births` (sentence indices, 1-based) introduced by
// normalized time t = k/N.
step_curve introduction_curve(const std::vector<uint32_t>& births, uint32_t n_steps,
                              std::string group);

// Core and periphery node introduction curves; a group with no nodes is
// omitted with a warning string appended.
std::vector<step_curve> introduction_curves(const expositional_filtration& filt,
                                            const core_partition& part,
                                            std::vector<std::string>* warnings = nullptr);

// Exact integral over [0,1] of (a - b).
double curve_area_diff(const step_curve& a, const step_curve& b);

// Edge development curves: intra-core, core-periphery, inter-periphery, and
// one intra-community:<id> curve per periphery community. The community
// assignment indexes the periphery subgraph via periphery_nodes order; empty
// groups are omitted.
std::vector<step_curve> edge_group_curves(const expositional_filtration& filt,
                                          const core_partition& part,
                                          const community_partition& communities,
                                          const std::vector<node_id>& periphery_nodes);

// Greatest vertical distance to y(t)=t over sample points and both sides of
// every jump.
double ks_to_diagonal(const step_curve& c);

struct stat_result {
    double statistic = 0.0;
    double pvalue = 1.0;
    size_t n = 0;
};

// average ranks, ties shared
std::vector<double> average_ranks(const std::vector<double>& x);

stat_result pearson(const std::vector<double>& x, const std::vector<double>& y);
stat_result spearman(const std::vector<double>& x, const std::vector<double>& y);
stat_result t_test_one_sample(const std::vector<double>& x, double mu0);

}  // namespace textnet
