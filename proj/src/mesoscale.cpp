#include "textnet/mesoscale.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "textnet/errors.hpp"
#include "textnet/rng.hpp"

namespace textnet {

double mean_pair_weight(const semantic_network& net) {
    if (net.node_count < 2) return 0.0;
    double pairs = 0.5 * double(net.node_count) * double(net.node_count - 1);
    return net.total_weight() / pairs;
}

std::pair<double, double> coreness_terms(const semantic_network& net,
                                         const std::vector<uint8_t>& is_core, double gamma) {
    if (net.node_count == 0) throw validation_error("coreness: empty graph");
    if (is_core.size() != net.node_count)
        throw validation_error("coreness: partition size mismatch");
    double wbar = mean_pair_weight(net);
    double gw = gamma * wbar;

    size_t n_core = 0;
    for (uint8_t c : is_core) n_core += c ? 1 : 0;
    size_t n_per = net.node_count - n_core;
    double cc_pairs = 0.5 * double(n_core) * double(n_core ? n_core - 1 : 0);
    double pp_pairs = 0.5 * double(n_per) * double(n_per ? n_per - 1 : 0);

    // start from the all-non-edge baseline, then correct for actual edges
    double bracket = -gw * cc_pairs + gw * pp_pairs;
    double v = gw * (cc_pairs + pp_pairs);
    for (const auto& e : net.edges) {
        bool uc = is_core[e.u], vc = is_core[e.v];
        if (uc && vc) {
            bracket += e.w;  // (w - gw) replaces (0 - gw): adds w
            v += std::fabs(e.w - gw) - gw;
        } else if (!uc && !vc) {
            bracket -= e.w;
            v += std::fabs(e.w - gw) - gw;
        }
    }
    return {bracket, v};
}

double eval_coreness(const semantic_network& net, const std::vector<uint8_t>& is_core,
                     double gamma) {
    auto [bracket, v] = coreness_terms(net, is_core, gamma);
    if (v <= 0.0) return 0.0;
    return bracket / v;
}

namespace {

struct adj_entry {
    node_id id;
    double w;
};

struct flip_state {
    const std::vector<std::vector<adj_entry>>& adj;
    std::vector<uint8_t>& labels;
    double gw;
    size_t n;
    size_t n_core;
    double bracket;
    double v;

    double q() const { return v > 0.0 ? bracket / v : 0.0; }

    // bracket and v deltas for flipping node x, in O(deg x)
    std::pair<double, double> flip_deltas(node_id x) const {
        size_t others_core = n_core - (labels[x] ? 1 : 0);
        size_t others_per = (n - 1) - others_core;
        double a_c = -gw * double(others_core);
        double a_p = -gw * double(others_per);
        double v_c = gw * double(others_core);
        double v_p = gw * double(others_per);
        for (const adj_entry& nb : adj[x]) {
            double term = std::fabs(nb.w - gw) - gw;
            if (labels[nb.id]) {
                a_c += nb.w;
                v_c += term;
            } else {
                a_p += nb.w;
                v_p += term;
            }
        }
        if (labels[x])  // core -> periphery
            return {-(a_c + a_p), v_p - v_c};
        return {a_c + a_p, v_c - v_p};
    }

    void apply_flip(node_id x, const std::pair<double, double>& deltas) {
        bracket += deltas.first;
        v += deltas.second;
        if (labels[x]) {
            labels[x] = 0;
            --n_core;
        } else {
            labels[x] = 1;
            ++n_core;
        }
    }
};

}  // namespace

core_partition optimize_coreness(const semantic_network& net, double gamma, uint64_t seed,
                                 unsigned restarts) {
    if (net.node_count == 0) throw validation_error("optimize_coreness: empty graph");
    size_t n = net.node_count;

    core_partition best;
    best.gamma = gamma;
    best.is_core.assign(n, 0);

    if (net.edges.empty() || n == 1) {
        best.degenerate = true;
        auto [b, v] = coreness_terms(net, best.is_core, gamma);
        best.q_core = v > 0.0 ? b / v : 0.0;
        best.norm_vc = v;
        return best;
    }

    std::vector<std::vector<adj_entry>> adj(n);
    for (const auto& e : net.edges) {
        adj[e.u].push_back({e.v, e.w});
        adj[e.v].push_back({e.u, e.w});
    }
    double gw = gamma * mean_pair_weight(net);

    double best_q = -2.0;
    std::vector<uint8_t> best_labels;

    auto consider = [&](const std::vector<uint8_t>& labels) {
        auto [b, v] = coreness_terms(net, labels, gamma);
        double q = v > 0.0 ? b / v : 0.0;
        if (q > best_q) {
            best_q = q;
            best_labels = labels;
        }
    };

    consider(std::vector<uint8_t>(n, 1));
    consider(std::vector<uint8_t>(n, 0));

    std::vector<node_id> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = node_id(i);

    for (unsigned r = 0; r < restarts; ++r) {
        rng gen(derive_seed(seed, r));
        std::vector<uint8_t> labels(n);
        if (r == 0) {
            // strength-threshold start: top half by strength in the core
            auto s = net.strengths();
            std::vector<node_id> by_strength = order;
            std::sort(by_strength.begin(), by_strength.end(), [&](node_id a, node_id b) {
                return s[a] != s[b] ? s[a] > s[b] : a < b;
            });
            for (size_t i = 0; i < n / 2 + 1 && i < n; ++i) labels[by_strength[i]] = 1;
        } else {
            for (size_t i = 0; i < n; ++i) labels[i] = gen.uniform01() < 0.5 ? 1 : 0;
        }

        auto [b0, v0] = coreness_terms(net, labels, gamma);
        size_t n_core = 0;
        for (uint8_t c : labels) n_core += c ? 1 : 0;
        flip_state st{adj, labels, gw, n, n_core, b0, v0};

        auto greedy = [&]() {
            bool moved = true;
            while (moved) {
                moved = false;
                gen.shuffle(order);
                for (node_id x : order) {
                    auto deltas = st.flip_deltas(x);
                    double nb = st.bracket + deltas.first;
                    double nv = st.v + deltas.second;
                    double nq = nv > 0.0 ? nb / nv : 0.0;
                    if (nq > st.q() + 1e-13) {
                        st.apply_flip(x, deltas);
                        moved = true;
                    }
                }
                // refresh against drift from incremental updates
                auto [rb, rv] = coreness_terms(net, labels, gamma);
                st.bracket = rb;
                st.v = rv;
            }
        };

        greedy();
        consider(labels);

        // annealing escape, then polish
        double temp = 0.05;
        size_t sa_steps = 30 * n;
        for (size_t step = 0; step < sa_steps; ++step) {
            node_id x = node_id(gen.uniform_below(n));
            auto deltas = st.flip_deltas(x);
            double nb = st.bracket + deltas.first;
            double nv = st.v + deltas.second;
            double nq = nv > 0.0 ? nb / nv : 0.0;
            double dq = nq - st.q();
            if (dq > 0.0 || gen.uniform01() < std::exp(dq / temp)) st.apply_flip(x, deltas);
            temp *= 0.9995;
        }
        {
            auto [rb, rv] = coreness_terms(net, labels, gamma);
            st.bracket = rb;
            st.v = rv;
        }
        greedy();
        consider(labels);
    }

    best.is_core = std::move(best_labels);
    auto [b, v] = coreness_terms(net, best.is_core, gamma);
    best.q_core = v > 0.0 ? b / v : 0.0;
    best.norm_vc = v;
    size_t n_core = 0;
    for (uint8_t c : best.is_core) n_core += c ? 1 : 0;
    best.degenerate = (n_core == 0 || n_core == n);
    return best;
}

double eval_modularity(const semantic_network& net, const std::vector<uint32_t>& assignment,
                       double gamma) {
    if (assignment.size() != net.node_count)
        throw validation_error("modularity: partition size mismatch");
    double m2 = 2.0 * net.total_weight();
    if (m2 <= 0.0) return 0.0;
    auto strengths = net.strengths();

    uint32_t n_comm = 0;
    for (uint32_t c : assignment) n_comm = std::max(n_comm, c + 1);
    std::vector<double> w_in(n_comm, 0.0);   // 2x internal edge weight
    std::vector<double> s_tot(n_comm, 0.0);
    for (const auto& e : net.edges)
        if (assignment[e.u] == assignment[e.v]) w_in[assignment[e.u]] += 2.0 * e.w;
    for (node_id i = 0; i < net.node_count; ++i) s_tot[assignment[i]] += strengths[i];

    double q = 0.0;
    for (uint32_t c = 0; c < n_comm; ++c)
        q += w_in[c] / m2 - gamma * (s_tot[c] / m2) * (s_tot[c] / m2);
    return q;
}

namespace {

struct level_graph {
    size_t n = 0;
    std::vector<std::vector<adj_entry>> adj;  // no self entries
    std::vector<double> self_loop;            // 2x collapsed internal weight
    std::vector<double> strength;             // adj sum + self_loop
    double m2 = 0.0;
};

level_graph from_network(const semantic_network& net) {
    level_graph g;
    g.n = net.node_count;
    g.adj.resize(g.n);
    g.self_loop.assign(g.n, 0.0);
    for (const auto& e : net.edges) {
        g.adj[e.u].push_back({e.v, e.w});
        g.adj[e.v].push_back({e.u, e.w});
    }
    g.strength.assign(g.n, 0.0);
    for (size_t i = 0; i < g.n; ++i)
        for (const auto& nb : g.adj[i]) g.strength[i] += nb.w;
    g.m2 = 0.0;
    for (double s : g.strength) g.m2 += s;
    return g;
}

// one pass of local moves; returns true if any node changed community
bool local_moves(const level_graph& g, std::vector<uint32_t>& comm, double gamma, rng& gen) {
    std::vector<double> s_tot(g.n, 0.0);
    for (size_t i = 0; i < g.n; ++i) s_tot[comm[i]] += g.strength[i];

    std::vector<node_id> order(g.n);
    for (size_t i = 0; i < g.n; ++i) order[i] = node_id(i);

    bool any_move = false;
    bool moved = true;
    while (moved) {
        moved = false;
        gen.shuffle(order);
        for (node_id x : order) {
            uint32_t old_c = comm[x];
            s_tot[old_c] -= g.strength[x];

            // weight from x into each adjacent community
            std::unordered_map<uint32_t, double> k_in;
            k_in[old_c] += 0.0;
            for (const auto& nb : g.adj[x]) k_in[comm[nb.id]] += nb.w;
            std::vector<std::pair<uint32_t, double>> cands(k_in.begin(), k_in.end());
            std::sort(cands.begin(), cands.end());

            uint32_t best_c = old_c;
            double best_gain = k_in[old_c] - gamma * g.strength[x] * s_tot[old_c] / g.m2;
            for (const auto& [c, k] : cands) {
                if (c == old_c) continue;
                double gain = k - gamma * g.strength[x] * s_tot[c] / g.m2;
                if (gain > best_gain + 1e-13) {
                    best_gain = gain;
                    best_c = c;
                }
            }
            s_tot[best_c] += g.strength[x];
            comm[x] = best_c;
            if (best_c != old_c) {
                moved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

void renumber(std::vector<uint32_t>& comm) {
    std::unordered_map<uint32_t, uint32_t> remap;
    uint32_t next = 0;
    for (uint32_t& c : comm) {
        auto [it, inserted] = remap.emplace(c, next);
        if (inserted) ++next;
        c = it->second;
    }
}

level_graph aggregate(const level_graph& g, const std::vector<uint32_t>& comm, size_t n_comm) {
    level_graph out;
    out.n = n_comm;
    out.adj.resize(n_comm);
    out.self_loop.assign(n_comm, 0.0);
    std::vector<std::unordered_map<uint32_t, double>> acc(n_comm);
    for (size_t u = 0; u < g.n; ++u) {
        out.self_loop[comm[u]] += g.self_loop[u];
        for (const auto& nb : g.adj[u]) {
            if (nb.id < u) continue;  // each undirected pair once
            uint32_t cu = comm[u], cv = comm[nb.id];
            if (cu == cv)
                out.self_loop[cu] += 2.0 * nb.w;
            else
                acc[cu][cv] += nb.w;
        }
    }
    for (uint32_t u = 0; u < n_comm; ++u) {
        for (const auto& [v, w] : acc[u]) {
            out.adj[u].push_back({v, w});
            out.adj[v].push_back({node_id(u), w});
        }
    }
    out.strength.assign(n_comm, 0.0);
    for (size_t i = 0; i < n_comm; ++i) {
        for (const auto& nb : out.adj[i]) out.strength[i] += nb.w;
        out.strength[i] += out.self_loop[i];
    }
    out.m2 = 0.0;
    for (double s : out.strength) out.m2 += s;
    return out;
}

}  // namespace

community_partition louvain_communities(const semantic_network& net, double gamma,
                                        uint64_t seed) {
    community_partition result;
    result.gamma = gamma;
    result.assignment.assign(net.node_count, 0);
    if (net.node_count == 0) return result;

    double m2 = 2.0 * net.total_weight();
    result.norm_vm = m2;
    if (m2 <= 0.0) {
        // no edges: every node its own community
        for (node_id i = 0; i < net.node_count; ++i) result.assignment[i] = i;
        result.community_count = net.node_count;
        result.q_mod = 0.0;
        return result;
    }

    rng gen(seed);
    level_graph g = from_network(net);
    // membership[i] = community of original node i at the current level
    std::vector<uint32_t> membership(net.node_count);
    for (node_id i = 0; i < net.node_count; ++i) membership[i] = i;

    for (;;) {
        std::vector<uint32_t> comm(g.n);
        for (size_t i = 0; i < g.n; ++i) comm[i] = uint32_t(i);
        bool any = local_moves(g, comm, gamma, gen);
        renumber(comm);
        size_t n_comm = 0;
        for (uint32_t c : comm) n_comm = std::max<size_t>(n_comm, c + 1);
        if (!any || n_comm == g.n) break;
        for (uint32_t& m : membership) m = comm[m];
        g = aggregate(g, comm, n_comm);
    }

    renumber(membership);
    result.assignment = membership;
    size_t n_comm = 0;
    for (uint32_t c : membership) n_comm = std::max<size_t>(n_comm, c + 1);
    result.community_count = n_comm;
    result.q_mod = eval_modularity(net, membership, gamma);
    return result;
}

semantic_network induced_subgraph(const semantic_network& net, const std::vector<node_id>& keep) {
    std::unordered_map<node_id, node_id> remap;
    remap.reserve(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= net.node_count)
            throw validation_error("induced_subgraph: node out of range");
        if (!remap.emplace(keep[i], node_id(i)).second)
            throw validation_error("induced_subgraph: duplicate node in keep list");
    }
    semantic_network sub;
    sub.node_count = keep.size();
    if (!net.labels.empty()) {
        sub.labels.reserve(keep.size());
        for (node_id k : keep) sub.labels.push_back(net.labels[k]);
    }
    for (const auto& e : net.edges) {
        auto iu = remap.find(e.u);
        auto iv = remap.find(e.v);
        if (iu != remap.end() && iv != remap.end()) sub.add_edge(iu->second, iv->second, e.w);
    }
    sub.sort_edges();
    return sub;
}

}  // namespace textnet
