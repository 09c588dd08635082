#pragma once

// Ground-truth persistent homology by the textbook algorithm: enumerate every
// clique of size <= 4 by brute force, order simplices globally, reduce the
// full boundary matrix with set-based column arithmetic. No clearing, no
// twist, no packing. Slow on purpose; only run on small inputs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "textnet/semantic_network.hpp"
#include "textnet/topology.hpp"

namespace oracle {

struct simplex {
    std::vector<uint32_t> verts;  // ascending
    uint32_t value = 0;
};

inline std::vector<simplex> enumerate_simplices(size_t n,
                                                const std::vector<uint32_t>& node_values,
                                                const std::vector<textnet::weighted_edge>& edges,
                                                const std::vector<uint32_t>& edge_values) {
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> ev;
    for (size_t e = 0; e < edges.size(); ++e)
        ev[{edges[e].u, edges[e].v}] = edge_values[e];
    auto value_of = [&](uint32_t a, uint32_t b) -> const uint32_t* {
        if (a > b) std::swap(a, b);
        auto it = ev.find({a, b});
        return it == ev.end() ? nullptr : &it->second;
    };

    std::vector<simplex> out;
    for (uint32_t v = 0; v < n; ++v)
        if (node_values[v] > 0) out.push_back({{v}, node_values[v]});
    for (size_t e = 0; e < edges.size(); ++e)
        out.push_back({{edges[e].u, edges[e].v}, edge_values[e]});
    for (uint32_t u = 0; u < n; ++u) {
        for (uint32_t v = u + 1; v < n; ++v) {
            const uint32_t* uv = value_of(u, v);
            if (!uv) continue;
            for (uint32_t w = v + 1; w < n; ++w) {
                const uint32_t* uw = value_of(u, w);
                const uint32_t* vw = value_of(v, w);
                if (!uw || !vw) continue;
                out.push_back({{u, v, w}, std::max({*uv, *uw, *vw})});
                for (uint32_t z = w + 1; z < n; ++z) {
                    const uint32_t* uz = value_of(u, z);
                    const uint32_t* vz = value_of(v, z);
                    const uint32_t* wz = value_of(w, z);
                    if (!uz || !vz || !wz) continue;
                    out.push_back({{u, v, w, z},
                                   std::max({*uv, *uw, *vw, *uz, *vz, *wz})});
                }
            }
        }
    }
    return out;
}

inline textnet::barcode reduce_barcode(std::vector<simplex> simplices) {
    std::sort(simplices.begin(), simplices.end(), [](const simplex& a, const simplex& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.verts.size() != b.verts.size()) return a.verts.size() < b.verts.size();
        return a.verts < b.verts;
    });

    std::map<std::vector<uint32_t>, size_t> index_of;
    for (size_t i = 0; i < simplices.size(); ++i) index_of[simplices[i].verts] = i;

    std::vector<std::set<size_t>> cols(simplices.size());
    for (size_t i = 0; i < simplices.size(); ++i) {
        const auto& vs = simplices[i].verts;
        if (vs.size() < 2) continue;
        for (size_t drop = 0; drop < vs.size(); ++drop) {
            std::vector<uint32_t> facet;
            for (size_t k = 0; k < vs.size(); ++k)
                if (k != drop) facet.push_back(vs[k]);
            cols[i].insert(index_of.at(facet));
        }
    }

    std::vector<long long> killer(simplices.size(), -1);
    std::map<size_t, size_t> pivot_owner;  // pivot row -> reduced column
    std::vector<char> positive(simplices.size(), 0);
    for (size_t j = 0; j < simplices.size(); ++j) {
        while (!cols[j].empty()) {
            size_t piv = *cols[j].rbegin();
            auto it = pivot_owner.find(piv);
            if (it == pivot_owner.end()) break;
            for (size_t r : cols[it->second]) {
                auto ins = cols[j].insert(r);
                if (!ins.second) cols[j].erase(ins.first);
            }
        }
        if (cols[j].empty()) {
            positive[j] = 1;
        } else {
            size_t piv = *cols[j].rbegin();
            pivot_owner[piv] = j;
            killer[piv] = (long long)j;
        }
    }

    textnet::barcode bc;
    for (size_t i = 0; i < simplices.size(); ++i) {
        if (!positive[i]) continue;
        size_t dim = simplices[i].verts.size() - 1;
        if (dim > 2) continue;
        uint32_t birth = simplices[i].value;
        if (killer[i] >= 0) {
            uint32_t death = simplices[size_t(killer[i])].value;
            if (birth < death) bc.dims[dim].push_back({birth, death});
        } else {
            bc.dims[dim].push_back({birth, textnet::INF_DEATH});
        }
    }
    for (auto& v : bc.dims)
        std::sort(v.begin(), v.end(), [](const textnet::bar& a, const textnet::bar& b) {
            if (a.birth != b.birth) return a.birth < b.birth;
            return a.death < b.death;
        });
    return bc;
}

inline textnet::barcode barcode_of(const textnet::expositional_filtration& filt) {
    return reduce_barcode(enumerate_simplices(filt.total.node_count, filt.node_birth,
                                              filt.total.edges, filt.edge_birth));
}

inline std::vector<simplex> enumerate_simplices_of(const textnet::unit_step_filtration& filt) {
    std::vector<uint32_t> node_values(filt.node_count, 0);
    std::vector<textnet::weighted_edge> edges;
    std::vector<uint32_t> edge_values;
    for (size_t i = 0; i < filt.steps.size(); ++i) {
        const auto& s = filt.steps[i];
        uint32_t value = uint32_t(i + 1);
        if (s.is_edge) {
            edges.push_back({std::min(s.u, s.v), std::max(s.u, s.v), 1.0});
            edge_values.push_back(value);
        } else {
            node_values[s.u] = value;
        }
    }
    return enumerate_simplices(filt.node_count, node_values, edges, edge_values);
}

inline textnet::barcode barcode_of(const textnet::unit_step_filtration& filt) {
    return reduce_barcode(enumerate_simplices_of(filt));
}

inline bool same_barcode(const textnet::barcode& a, const textnet::barcode& b) {
    for (size_t d = 0; d < 3; ++d)
        if (a.dims[d] != b.dims[d]) return false;
    return true;
}

}  // namespace oracle
