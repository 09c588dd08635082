#pragma once

#include <string>
#include <vector>

#include "textnet/rng.hpp"
#include "textnet/semantic_network.hpp"

namespace textnet {

// Candidate families in fixed order; ties in the K-S statistic keep the
// earlier family. Note pareto and power_law parameterize the same CDF when
// the power-law lower bound is pinned to the sample minimum, so power_law
// never wins a tie against pareto.
enum class fit_family {
    pareto,
    log_normal,
    levy,
    burr,
    fisk,
    log_gamma,
    log_laplace,
    power_law,
    point_mass
};

const char* family_name(fit_family f);

struct family_fit {
    fit_family family = fit_family::point_mass;
    std::vector<double> params;
    double ks_d = 0.0;
    bool applicable = true;  // log_gamma needs all samples > 1
};

struct weight_fit {
    fit_family family = fit_family::point_mass;
    std::vector<double> params;
    double ks_d = 0.0;
    double ks_p = 1.0;
    bool degenerate = false;  // all samples equal
    std::vector<family_fit> candidates;
};

// Empirical normalized weights w_uv * d_uv / s_uv with d_uv = d_u*d_v/d_T and
// s_uv = s_u*s_v/s_T. The network must have at least one edge.
std::vector<double> normalized_weights(const semantic_network& net);

// MLE fit per family on positive samples, selection by smallest K-S D,
// asymptotic Kolmogorov p-value.
weight_fit fit_samples(const std::vector<double>& samples);
weight_fit fit_weights(const semantic_network& net);

// CDF of a fitted family at x (for the K-S statistic and tests).
double fit_cdf(const family_fit& fit, double x);

double ks_statistic(const std::vector<double>& samples, const family_fit& fit);

// Inverse-CDF sampler for the selected family (gamma families use the
// Marsaglia-Tsang sampler of the supplied generator).
double sample_fit(const weight_fit& fit, rng& gen);

// Continuous configuration model: each pair (u,v) gets an edge with
// probability min(1, d_u*d_v/d_T); accepted edges weigh (s_uv/d_uv) * xi with
// xi drawn from the fit. Isolated nodes keep zero connection probability.
semantic_network cont_config(const semantic_network& net, const weight_fit& fit, uint64_t seed);

// Unclamped-by-construction helper exposed for tests: min(1, d_u*d_v/d_T).
double pair_probability(const semantic_network& net, node_id u, node_id v);

}  // namespace textnet
