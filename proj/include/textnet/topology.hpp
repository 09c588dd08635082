#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "textnet/semantic_network.hpp"

namespace textnet {

constexpr uint32_t INF_DEATH = UINT32_MAX;

struct bar {
    uint32_t birth = 0;
    uint32_t death = INF_DEATH;

    bool operator==(const bar&) const = default;
};

struct barcode {
    std::array<std::vector<bar>, 3> dims;  // dims 0,1,2; bars sorted (birth, death)

    size_t count(size_t dim) const { return dims[dim].size(); }
};

struct simplex_entry {
    uint64_t key = 0;  // vertices packed 16 bits each, ascending
    uint32_t value = 0;
};

// Clique complex up to 3-simplices. Per-dimension arrays sorted by
// (value, key); vertex ids must fit 16 bits.
struct flag_filtration {
    std::array<std::vector<simplex_entry>, 4> simplices;
    size_t node_count = 0;
    uint32_t max_value = 0;  // filtration horizon (N sentences or L steps)
};

struct flag_limits {
    size_t max_simplices = 20'000'000;
};

uint64_t pack2(node_id u, node_id v);
uint64_t pack3(node_id u, node_id v, node_id w);
uint64_t pack4(node_id u, node_id v, node_id w, node_id z);

// Core builder: nodes 0..n-1 with birth values (0 = absent), edges with
// values. Every clique of size <= 4 enters at the max value over its edges.
flag_filtration build_flag_filtration(size_t node_count,
                                      const std::vector<uint32_t>& node_values,
                                      const std::vector<weighted_edge>& edges,
                                      const std::vector<uint32_t>& edge_values,
                                      uint32_t max_value, const flag_limits& limits = {});

flag_filtration build_flag_filtration(const expositional_filtration& filt,
                                      const flag_limits& limits = {});

flag_filtration build_flag_filtration(const unit_step_filtration& filt,
                                      const flag_limits& limits = {});

// Persistent homology over Z/2 in dimensions 0-2: union-find with the elder
// rule for dimension 0, boundary-matrix reduction with clearing for 1 and 2.
// Zero-length bars (birth == death at reporting granularity) are dropped.
barcode persistence(const flag_filtration& flag);

// Betti numbers sampled at t = 0..horizon: beta_k(t) = #intervals with
// birth <= t < death.
std::vector<std::array<uint32_t, 3>> betti_curves(const barcode& bc, uint32_t horizon);

// Normalized average cycle lifetime: (1/(m*N)) * sum(d_i - b_i), infinite
// deaths replaced by N+1; zero bars -> 0.
double nacl(const std::vector<bar>& bars, uint32_t n_steps);

}  // namespace textnet
