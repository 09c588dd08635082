#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace textnet {

using node_id = uint32_t;

struct weighted_edge {
    node_id u = 0;  // u < v always
    node_id v = 0;
    double w = 0.0;
};

// Undirected weighted graph on nodes 0..node_count-1, no self-loops.
// Edges are unique and sorted by (u, v); labels are optional.
struct semantic_network {
    size_t node_count = 0;
    std::vector<weighted_edge> edges;
    std::vector<std::string> labels;

    void add_edge(node_id u, node_id v, double w);
    void sort_edges();
    double total_weight() const;                 // sum of edge weights
    std::vector<double> strengths() const;       // per-node summed weight
    std::vector<uint32_t> degrees() const;       // per-node edge count
    double density() const;
    bool has_edge(node_id u, node_id v) const;   // edges must be sorted
    double edge_weight(node_id u, node_id v) const;  // 0 when absent
};

struct expositional_filtration {
    semantic_network total;
    std::vector<uint32_t> node_birth;  // per node, sentence index 1..N
    std::vector<uint32_t> edge_birth;  // parallel to total.edges
    uint32_t n_sentences = 0;
    std::vector<std::string> warnings;
};

struct unit_step {
    bool is_edge = false;
    node_id u = 0;
    node_id v = 0;  // unused for node steps
};

// Atomic-addition filtration; step i has filtration value i+1.
struct unit_step_filtration {
    std::vector<unit_step> steps;
    size_t node_count = 0;
};

}  // namespace textnet
