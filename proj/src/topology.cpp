#include "textnet/topology.hpp"

#include <algorithm>
#include <unordered_map>

#include "textnet/errors.hpp"

namespace textnet {

uint64_t pack2(node_id u, node_id v) { return (uint64_t(u) << 16) | v; }
uint64_t pack3(node_id u, node_id v, node_id w) {
    return (uint64_t(u) << 32) | (uint64_t(v) << 16) | w;
}
uint64_t pack4(node_id u, node_id v, node_id w, node_id z) {
    return (uint64_t(u) << 48) | (uint64_t(v) << 32) | (uint64_t(w) << 16) | z;
}

namespace {

bool entry_less(const simplex_entry& a, const simplex_entry& b) {
    return a.value != b.value ? a.value < b.value : a.key < b.key;
}

struct neighbor {
    node_id id;
    uint32_t value;
};

}  // namespace

flag_filtration build_flag_filtration(size_t node_count,
                                      const std::vector<uint32_t>& node_values,
                                      const std::vector<weighted_edge>& edges,
                                      const std::vector<uint32_t>& edge_values,
                                      uint32_t max_value, const flag_limits& limits) {
    if (node_count >= 65536)
        throw resource_error("flag filtration: node count " + std::to_string(node_count) +
                             " exceeds 16-bit packing limit");
    if (edges.size() != edge_values.size())
        throw invariant_error("flag filtration: edge/value length mismatch");

    flag_filtration flag;
    flag.node_count = node_count;
    flag.max_value = max_value;

    size_t budget = limits.max_simplices;
    auto spend = [&](size_t n, const char* what) {
        if (n > budget)
            throw resource_error(std::string("flag filtration exceeds simplex cap while adding ") +
                                 what + " (cap " + std::to_string(limits.max_simplices) + ")");
        budget -= n;
    };

    auto& verts = flag.simplices[0];
    for (node_id v = 0; v < node_count; ++v) {
        if (node_values[v] == 0) continue;  // never introduced
        verts.push_back({uint64_t(v), node_values[v]});
    }
    spend(verts.size(), "vertices");

    spend(edges.size(), "edges");
    auto& edge_arr = flag.simplices[1];
    edge_arr.reserve(edges.size());
    std::vector<std::vector<neighbor>> adj(node_count);
    for (size_t e = 0; e < edges.size(); ++e) {
        node_id u = edges[e].u, v = edges[e].v;
        uint32_t val = edge_values[e];
        edge_arr.push_back({pack2(u, v), val});
        adj[u].push_back({v, val});
        adj[v].push_back({u, val});
    }
    for (auto& nb : adj)
        std::sort(nb.begin(), nb.end(), [](const neighbor& a, const neighbor& b) {
            return a.id < b.id;
        });

    // triangles: common neighbors above v for each edge u<v
    auto& tris = flag.simplices[2];
    for (size_t e = 0; e < edges.size(); ++e) {
        node_id u = edges[e].u, v = edges[e].v;
        uint32_t uv = edge_values[e];
        const auto& nu = adj[u];
        const auto& nv = adj[v];
        size_t a = 0, b = 0;
        while (a < nu.size() && b < nv.size()) {
            if (nu[a].id < nv[b].id) {
                ++a;
            } else if (nu[a].id > nv[b].id) {
                ++b;
            } else {
                node_id w = nu[a].id;
                if (w > v) {
                    spend(1, "triangles");
                    uint32_t val = std::max({uv, nu[a].value, nv[b].value});
                    tris.push_back({pack3(u, v, w), val});
                }
                ++a;
                ++b;
            }
        }
    }

    // tetrahedra: common neighbors above w for each triangle u<v<w
    auto& tets = flag.simplices[3];
    for (const simplex_entry& t : tris) {
        node_id u = node_id(t.key >> 32);
        node_id v = node_id((t.key >> 16) & 0xffff);
        node_id w = node_id(t.key & 0xffff);
        const auto& nu = adj[u];
        const auto& nv = adj[v];
        const auto& nw = adj[w];
        size_t a = 0, b = 0, c = 0;
        while (a < nu.size() && b < nv.size() && c < nw.size()) {
            node_id m = std::max({nu[a].id, nv[b].id, nw[c].id});
            if (nu[a].id < m) {
                ++a;
            } else if (nv[b].id < m) {
                ++b;
            } else if (nw[c].id < m) {
                ++c;
            } else {
                if (m > w) {
                    spend(1, "tetrahedra");
                    uint32_t val = std::max({t.value, nu[a].value, nv[b].value, nw[c].value});
                    tets.push_back({pack4(u, v, w, m), val});
                }
                ++a;
                ++b;
                ++c;
            }
        }
    }

    for (auto& arr : flag.simplices) std::sort(arr.begin(), arr.end(), entry_less);
    return flag;
}

flag_filtration build_flag_filtration(const expositional_filtration& filt,
                                      const flag_limits& limits) {
    return build_flag_filtration(filt.total.node_count, filt.node_birth, filt.total.edges,
                                 filt.edge_birth, filt.n_sentences, limits);
}

flag_filtration build_flag_filtration(const unit_step_filtration& filt,
                                      const flag_limits& limits) {
    std::vector<uint32_t> node_values(filt.node_count, 0);
    std::vector<weighted_edge> edges;
    std::vector<uint32_t> edge_values;
    for (size_t i = 0; i < filt.steps.size(); ++i) {
        const unit_step& s = filt.steps[i];
        uint32_t val = static_cast<uint32_t>(i + 1);
        if (s.is_edge) {
            node_id u = s.u, v = s.v;
            if (u > v) std::swap(u, v);
            if (node_values[u] == 0 || node_values[v] == 0)
                throw invariant_error("unit step filtration: edge precedes an endpoint");
            edges.push_back({u, v, 1.0});
            edge_values.push_back(val);
        } else {
            if (node_values[s.u] != 0)
                throw invariant_error("unit step filtration: node added twice");
            node_values[s.u] = val;
        }
    }
    return build_flag_filtration(filt.node_count, node_values, edges, edge_values,
                                 static_cast<uint32_t>(filt.steps.size()), limits);
}

namespace {

// union-find for dimension 0, elder rule keyed by (birth value, vertex id)
class dim0_forest {
public:
    explicit dim0_forest(size_t n) : parent_(n), birth_(n, 0) {
        for (size_t i = 0; i < n; ++i) parent_[i] = node_id(i);
    }

    void set_birth(node_id v, uint32_t value) { birth_[v] = value; }

    node_id find(node_id v) {
        node_id root = v;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[v] != root) {
            node_id next = parent_[v];
            parent_[v] = root;
            v = next;
        }
        return root;
    }

    // returns false if already connected (positive edge); otherwise merges and
    // appends the younger component's death bar
    bool link(node_id u, node_id v, uint32_t value, std::vector<bar>& bars) {
        node_id ru = find(u), rv = find(v);
        if (ru == rv) return false;
        node_id elder = ru, younger = rv;
        if (std::pair(birth_[rv], rv) < std::pair(birth_[ru], ru)) std::swap(elder, younger);
        parent_[younger] = elder;
        if (birth_[younger] < value) bars.push_back({birth_[younger], value});
        return true;
    }

    uint32_t birth_of_root(node_id v) { return birth_[find(v)]; }

private:
    std::vector<node_id> parent_;
    std::vector<uint32_t> birth_;
};

std::vector<uint32_t> symdiff(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (a[i] > b[j])
            out.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

}  // namespace

barcode persistence(const flag_filtration& flag) {
    const auto& verts = flag.simplices[0];
    const auto& edges = flag.simplices[1];
    const auto& tris = flag.simplices[2];
    const auto& tets = flag.simplices[3];

    barcode bc;

    // --- dimension 0 ---
    dim0_forest forest(flag.node_count);
    std::vector<bool> present(flag.node_count, false);
    for (const auto& v : verts) {
        forest.set_birth(node_id(v.key), v.value);
        present[v.key] = true;
    }
    std::vector<bool> edge_positive(edges.size(), false);
    for (size_t e = 0; e < edges.size(); ++e) {
        node_id u = node_id(edges[e].key >> 16);
        node_id v = node_id(edges[e].key & 0xffff);
        if (!forest.link(u, v, edges[e].value, bc.dims[0])) edge_positive[e] = true;
    }
    {
        std::vector<bool> root_done(flag.node_count, false);
        for (const auto& v : verts) {
            node_id r = forest.find(node_id(v.key));
            if (!root_done[r]) {
                root_done[r] = true;
                bc.dims[0].push_back({forest.birth_of_root(r), INF_DEATH});
            }
        }
    }

    // index lookups for boundary columns
    std::unordered_map<uint64_t, uint32_t> edge_index;
    edge_index.reserve(edges.size() * 2);
    for (uint32_t i = 0; i < edges.size(); ++i) edge_index.emplace(edges[i].key, i);
    std::unordered_map<uint64_t, uint32_t> tri_index;
    tri_index.reserve(tris.size() * 2);
    for (uint32_t i = 0; i < tris.size(); ++i) tri_index.emplace(tris[i].key, i);

    // --- dimension 2: reduce tetrahedron columns over triangle rows ---
    std::vector<bool> tri_cleared(tris.size(), false);
    {
        std::vector<std::vector<uint32_t>> stored;
        std::unordered_map<uint32_t, uint32_t> pivot_col;  // triangle row -> stored col
        for (const auto& tet : tets) {
            node_id a = node_id(tet.key >> 48);
            node_id b = node_id((tet.key >> 32) & 0xffff);
            node_id c = node_id((tet.key >> 16) & 0xffff);
            node_id d = node_id(tet.key & 0xffff);
            std::vector<uint32_t> col = {
                tri_index.at(pack3(a, b, c)), tri_index.at(pack3(a, b, d)),
                tri_index.at(pack3(a, c, d)), tri_index.at(pack3(b, c, d))};
            std::sort(col.begin(), col.end());
            for (;;) {
                if (col.empty()) break;  // positive tetrahedron; H3 untracked
                uint32_t p = col.back();
                auto it = pivot_col.find(p);
                if (it == pivot_col.end()) {
                    tri_cleared[p] = true;
                    if (tris[p].value < tet.value) bc.dims[2].push_back({tris[p].value, tet.value});
                    pivot_col.emplace(p, uint32_t(stored.size()));
                    stored.push_back(std::move(col));
                    break;
                }
                col = symdiff(col, stored[it->second]);
            }
        }
    }

    // --- dimension 1: reduce triangle columns over edge rows, skipping
    // triangles cleared above (they are positive; their class died via a tet)
    std::vector<bool> edge_paired(edges.size(), false);
    {
        std::vector<std::vector<uint32_t>> stored;
        std::unordered_map<uint32_t, uint32_t> pivot_col;
        for (size_t t = 0; t < tris.size(); ++t) {
            if (tri_cleared[t]) continue;
            node_id a = node_id(tris[t].key >> 32);
            node_id b = node_id((tris[t].key >> 16) & 0xffff);
            node_id c = node_id(tris[t].key & 0xffff);
            std::vector<uint32_t> col = {edge_index.at(pack2(a, b)), edge_index.at(pack2(a, c)),
                                         edge_index.at(pack2(b, c))};
            std::sort(col.begin(), col.end());
            bool reduced_to_zero = false;
            for (;;) {
                if (col.empty()) {
                    reduced_to_zero = true;
                    break;
                }
                uint32_t p = col.back();
                auto it = pivot_col.find(p);
                if (it == pivot_col.end()) {
                    edge_paired[p] = true;
                    if (edges[p].value < tris[t].value)
                        bc.dims[1].push_back({edges[p].value, tris[t].value});
                    pivot_col.emplace(p, uint32_t(stored.size()));
                    stored.push_back(std::move(col));
                    break;
                }
                col = symdiff(col, stored[it->second]);
            }
            // zero-reduced, never-cleared triangle creates an immortal 2-class
            if (reduced_to_zero) bc.dims[2].push_back({tris[t].value, INF_DEATH});
        }
    }

    // positive edges never killed by a triangle carry immortal 1-classes
    for (size_t e = 0; e < edges.size(); ++e)
        if (edge_positive[e] && !edge_paired[e]) bc.dims[1].push_back({edges[e].value, INF_DEATH});

    for (auto& bars : bc.dims)
        std::sort(bars.begin(), bars.end(), [](const bar& a, const bar& b) {
            return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
        });
    return bc;
}

std::vector<std::array<uint32_t, 3>> betti_curves(const barcode& bc, uint32_t horizon) {
    std::vector<std::array<uint32_t, 3>> out(size_t(horizon) + 1, {0, 0, 0});
    for (size_t dim = 0; dim < 3; ++dim) {
        // difference array over [0, horizon]
        std::vector<int64_t> diff(size_t(horizon) + 2, 0);
        for (const bar& b : bc.dims[dim]) {
            if (b.birth > horizon) continue;
            diff[b.birth] += 1;
            uint64_t end = (b.death == INF_DEATH) ? uint64_t(horizon) + 1
                                                  : std::min<uint64_t>(b.death, horizon + 1);
            diff[end] -= 1;
        }
        int64_t running = 0;
        for (uint32_t t = 0; t <= horizon; ++t) {
            running += diff[t];
            out[t][dim] = static_cast<uint32_t>(running);
        }
    }
    return out;
}

double nacl(const std::vector<bar>& bars, uint32_t n_steps) {
    if (n_steps < 1) throw validation_error("nacl: filtration length must be >= 1");
    if (bars.empty()) return 0.0;
    double sum = 0.0;
    for (const bar& b : bars) {
        double death = (b.death == INF_DEATH) ? double(n_steps) + 1.0 : double(b.death);
        sum += death - double(b.birth);
    }
    return sum / (double(bars.size()) * double(n_steps));
}

}  // namespace textnet
