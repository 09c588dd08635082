#include "textnet/null_models.hpp"

#include <algorithm>
#include <set>

#include "textnet/errors.hpp"
#include "textnet/rng.hpp"

namespace textnet {

std::vector<std::string> random_index_pool(const tokenized_document& doc,
                                           const stop_list& stops) {
    std::set<std::string> pool;
    for (const sentence& s : doc.sentences)
        for (const std::string& t : s)
            if (!stops.contains(t) && !is_placeholder_token(t)) pool.insert(t);
    return {pool.begin(), pool.end()};
}

expositional_filtration random_index(const tokenized_document& doc, const stop_list& stops,
                                     size_t size, uint64_t seed) {
    auto pool = random_index_pool(doc, stops);
    if (pool.size() < size)
        throw validation_error("random_index: pool of " + std::to_string(pool.size()) +
                               " eligible words is smaller than requested size " +
                               std::to_string(size));
    rng gen(seed);
    auto picks = gen.sample_without_replacement(pool.size(), size);
    std::vector<std::string> words;
    words.reserve(size);
    for (size_t i : picks) words.push_back(pool[i]);
    return build_filtration(doc, words);
}

expositional_filtration random_sentence_order(const tokenized_document& doc,
                                              const std::vector<std::string>& index_phrases,
                                              const std::vector<uint32_t>& permutation) {
    if (permutation.size() != doc.sentences.size())
        throw validation_error("random_sentence_order: permutation length mismatch");
    std::vector<bool> seen(permutation.size(), false);
    tokenized_document shuffled;
    shuffled.doc_id = doc.doc_id;
    shuffled.sentences.reserve(doc.sentences.size());
    for (uint32_t idx : permutation) {
        if (idx >= permutation.size() || seen[idx])
            throw validation_error("random_sentence_order: not a permutation");
        seen[idx] = true;
        shuffled.sentences.push_back(doc.sentences[idx]);
    }
    return build_filtration(shuffled, index_phrases);
}

expositional_filtration random_sentence_order(const tokenized_document& doc,
                                              const std::vector<std::string>& index_phrases,
                                              uint64_t seed) {
    std::vector<uint32_t> perm(doc.sentences.size());
    for (uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
    rng gen(seed);
    gen.shuffle(perm);
    return random_sentence_order(doc, index_phrases, perm);
}

unit_step_filtration random_edge(const expositional_filtration& filt, uint64_t seed) {
    rng gen(seed);
    std::vector<size_t> order(filt.total.edges.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    gen.shuffle(order);

    unit_step_filtration out;
    out.node_count = filt.total.node_count;
    out.steps.reserve(filt.total.node_count + order.size());
    std::vector<bool> placed(filt.total.node_count, false);
    for (size_t e : order) {
        const auto& edge = filt.total.edges[e];
        if (!placed[edge.u]) {
            placed[edge.u] = true;
            out.steps.push_back({false, edge.u, 0});
        }
        if (!placed[edge.v]) {
            placed[edge.v] = true;
            out.steps.push_back({false, edge.v, 0});
        }
        out.steps.push_back({true, edge.u, edge.v});
    }
    // isolated-but-born nodes go at the end so the final graph matches
    for (node_id n = 0; n < filt.total.node_count; ++n)
        if (!placed[n] && filt.node_birth[n] != 0) out.steps.push_back({false, n, 0});
    return out;
}

unit_step_filtration node_ordered(const expositional_filtration& filt, uint64_t seed) {
    rng gen(seed);
    size_t n = filt.total.node_count;

    // birth order with seeded tie shuffling: shuffle first, stable-sort by birth
    std::vector<node_id> order;
    order.reserve(n);
    for (node_id i = 0; i < n; ++i)
        if (filt.node_birth[i] != 0) order.push_back(i);
    gen.shuffle(order);
    std::stable_sort(order.begin(), order.end(), [&](node_id a, node_id b) {
        return filt.node_birth[a] < filt.node_birth[b];
    });

    std::vector<std::vector<node_id>> adj(n);
    for (const auto& e : filt.total.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }

    unit_step_filtration out;
    out.node_count = n;
    out.steps.reserve(order.size() + filt.total.edges.size());
    std::vector<bool> placed(n, false);
    for (node_id x : order) {
        placed[x] = true;
        out.steps.push_back({false, x, 0});
        std::vector<node_id> back_edges;
        for (node_id nb : adj[x])
            if (placed[nb] && nb != x) back_edges.push_back(nb);
        gen.shuffle(back_edges);
        for (node_id nb : back_edges) out.steps.push_back({true, x, nb});
    }
    return out;
}

}  // namespace textnet
