#include "textnet/semantic_network.hpp"

#include <algorithm>

#include "textnet/errors.hpp"

namespace textnet {

void semantic_network::add_edge(node_id u, node_id v, double w) {
    if (u == v) throw invariant_error("semantic_network: self-loop rejected");
    if (u > v) std::swap(u, v);
    if (v >= node_count) throw invariant_error("semantic_network: endpoint out of range");
    edges.push_back({u, v, w});
}

void semantic_network::sort_edges() {
    std::sort(edges.begin(), edges.end(), [](const weighted_edge& a, const weighted_edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
}

double semantic_network::total_weight() const {
    double t = 0.0;
    for (const auto& e : edges) t += e.w;
    return t;
}

std::vector<double> semantic_network::strengths() const {
    std::vector<double> s(node_count, 0.0);
    for (const auto& e : edges) {
        s[e.u] += e.w;
        s[e.v] += e.w;
    }
    return s;
}

std::vector<uint32_t> semantic_network::degrees() const {
    std::vector<uint32_t> d(node_count, 0);
    for (const auto& e : edges) {
        ++d[e.u];
        ++d[e.v];
    }
    return d;
}

double semantic_network::density() const {
    if (node_count < 2) return 0.0;
    double pairs = 0.5 * static_cast<double>(node_count) * static_cast<double>(node_count - 1);
    return static_cast<double>(edges.size()) / pairs;
}

bool semantic_network::has_edge(node_id u, node_id v) const {
    if (u > v) std::swap(u, v);
    weighted_edge probe{u, v, 0.0};
    auto it = std::lower_bound(edges.begin(), edges.end(), probe,
                               [](const weighted_edge& a, const weighted_edge& b) {
                                   return a.u != b.u ? a.u < b.u : a.v < b.v;
                               });
    return it != edges.end() && it->u == u && it->v == v;
}

double semantic_network::edge_weight(node_id u, node_id v) const {
    if (u > v) std::swap(u, v);
    weighted_edge probe{u, v, 0.0};
    auto it = std::lower_bound(edges.begin(), edges.end(), probe,
                               [](const weighted_edge& a, const weighted_edge& b) {
                                   return a.u != b.u ? a.u < b.u : a.v < b.v;
                               });
    if (it != edges.end() && it->u == u && it->v == v) return it->w;
    return 0.0;
}

}  // namespace textnet
