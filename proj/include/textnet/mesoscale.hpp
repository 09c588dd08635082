#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "textnet/semantic_network.hpp"

namespace textnet {

struct core_partition {
    std::vector<uint8_t> is_core;
    double q_core = 0.0;
    double gamma = 1.0;
    double norm_vc = 0.0;
    bool degenerate = false;  // uniform partition returned
};

struct community_partition {
    std::vector<uint32_t> assignment;  // community ids contiguous from 0
    double q_mod = 0.0;
    double gamma = 1.0;
    double norm_vm = 0.0;
    size_t community_count = 0;
};

// Mean weight over all distinct node pairs, zero-weight non-edges included.
double mean_pair_weight(const semantic_network& net);

// Bracketed core-ness sum and its normalization: B = sum over core pairs of
// (w - gamma*wbar) minus the same sum over periphery pairs; v = sum of
// |w - gamma*wbar| over those counted pairs.
std::pair<double, double> coreness_terms(const semantic_network& net,
                                         const std::vector<uint8_t>& is_core, double gamma);

// Q_C = B / v; v == 0 yields 0. Empty graph is an error.
double eval_coreness(const semantic_network& net, const std::vector<uint8_t>& is_core,
                     double gamma = 1.0);

// Seeded multi-restart greedy single-node flips with an annealing escape
// phase. The result never scores below all-core or all-periphery.
core_partition optimize_coreness(const semantic_network& net, double gamma, uint64_t seed,
                                 unsigned restarts = 16);

// Q_M with v_M = total weight (2m); zero-weight graphs yield 0.
double eval_modularity(const semantic_network& net, const std::vector<uint32_t>& assignment,
                       double gamma = 1.0);

// Local moves in seeded random sweep order plus aggregation, to a fixpoint.
// q_mod is re-evaluated from scratch on the input graph.
community_partition louvain_communities(const semantic_network& net, double gamma,
                                        uint64_t seed);

// Subgraph induced by keep (original ids, any order); kept nodes are
// renumbered 0..keep.size()-1 in the order given.
semantic_network induced_subgraph(const semantic_network& net, const std::vector<node_id>& keep);

}  // namespace textnet
