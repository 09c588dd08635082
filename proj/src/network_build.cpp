#include "textnet/network_build.hpp"

#include <algorithm>
#include <map>

#include "textnet/errors.hpp"
#include "textnet/util.hpp"

namespace textnet {

std::vector<std::vector<node_id>> match_sentences(const tokenized_document& doc,
                                                  const std::vector<std::string>& index_phrases,
                                                  std::vector<std::string>* matched_phrases,
                                                  std::vector<std::string>* warnings) {
    if (index_phrases.empty()) throw validation_error("match_sentences: empty index");

    std::vector<std::vector<std::string>> phrase_tokens;
    phrase_tokens.reserve(index_phrases.size());
    for (const std::string& p : index_phrases) phrase_tokens.push_back(split_ws(p));

    auto matches_at = [](const sentence& s, size_t pos, const std::vector<std::string>& pt) {
        if (pos + pt.size() > s.size()) return false;
        for (size_t k = 0; k < pt.size(); ++k)
            if (s[pos + k] != pt[k]) return false;
        return true;
    };

    // raw_hits[i] = phrase indices present in sentence i (set semantics)
    std::vector<std::vector<size_t>> raw_hits(doc.sentences.size());
    std::vector<bool> seen(index_phrases.size(), false);
    for (size_t si = 0; si < doc.sentences.size(); ++si) {
        const sentence& s = doc.sentences[si];
        for (size_t pi = 0; pi < index_phrases.size(); ++pi) {
            const auto& pt = phrase_tokens[pi];
            if (pt.empty()) continue;
            for (size_t pos = 0; pos + pt.size() <= s.size(); ++pos) {
                if (matches_at(s, pos, pt)) {
                    raw_hits[si].push_back(pi);
                    seen[pi] = true;
                    break;
                }
            }
        }
    }

    // compact ids to matched phrases only, preserving index order
    std::vector<node_id> remap(index_phrases.size(), 0);
    node_id next = 0;
    for (size_t pi = 0; pi < index_phrases.size(); ++pi) {
        if (seen[pi]) {
            remap[pi] = next++;
            if (matched_phrases) matched_phrases->push_back(index_phrases[pi]);
        } else if (warnings) {
            warnings->push_back("index phrase never matched, excluded: " + index_phrases[pi]);
        }
    }

    std::vector<std::vector<node_id>> out(doc.sentences.size());
    for (size_t si = 0; si < doc.sentences.size(); ++si) {
        for (size_t pi : raw_hits[si]) out[si].push_back(remap[pi]);
        std::sort(out[si].begin(), out[si].end());
    }
    return out;
}

expositional_filtration filtration_from_sentence_sets(
    const std::vector<std::vector<node_id>>& sentence_nodes, size_t node_count,
    std::vector<std::string> labels) {
    expositional_filtration filt;
    filt.n_sentences = static_cast<uint32_t>(sentence_nodes.size());
    filt.total.node_count = node_count;
    filt.total.labels = std::move(labels);
    filt.node_birth.assign(node_count, 0);

    std::map<std::pair<node_id, node_id>, std::pair<double, uint32_t>> acc;  // weight, birth
    for (size_t si = 0; si < sentence_nodes.size(); ++si) {
        uint32_t s = static_cast<uint32_t>(si + 1);
        std::vector<node_id> nodes = sentence_nodes[si];
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        for (node_id n : nodes) {
            if (n >= node_count)
                throw invariant_error("filtration_from_sentence_sets: node out of range");
            if (filt.node_birth[n] == 0) filt.node_birth[n] = s;
        }
        for (size_t a = 0; a < nodes.size(); ++a) {
            for (size_t b = a + 1; b < nodes.size(); ++b) {
                node_id u = nodes[a], v = nodes[b];
                if (u == v) continue;
                auto key = std::minmax(u, v);
                auto [it, inserted] = acc.try_emplace({key.first, key.second},
                                                      std::pair<double, uint32_t>{0.0, s});
                it->second.first += 1.0;
            }
        }
    }

    for (const auto& [key, wb] : acc) {
        filt.total.edges.push_back({key.first, key.second, wb.first});
        filt.edge_birth.push_back(wb.second);
    }
    return filt;
}

expositional_filtration build_filtration(const tokenized_document& doc,
                                         const std::vector<std::string>& index_phrases) {
    std::vector<std::string> matched;
    std::vector<std::string> warnings;
    auto sets = match_sentences(doc, index_phrases, &matched, &warnings);
    auto filt = filtration_from_sentence_sets(sets, matched.size(), matched);
    filt.warnings = std::move(warnings);
    return filt;
}

binary_snapshot snapshot(const expositional_filtration& filt, uint32_t k) {
    if (k < 1 || k > filt.n_sentences)
        throw validation_error("snapshot: sentence index out of range: " + std::to_string(k));
    binary_snapshot snap;
    for (node_id n = 0; n < filt.total.node_count; ++n)
        if (filt.node_birth[n] != 0 && filt.node_birth[n] <= k) snap.nodes.push_back(n);
    for (size_t e = 0; e < filt.total.edges.size(); ++e)
        if (filt.edge_birth[e] <= k)
            snap.edges.emplace_back(filt.total.edges[e].u, filt.total.edges[e].v);
    return snap;
}

unit_step_filtration oaat_unfurl(const expositional_filtration& filt, uint64_t seed) {
    rng gen(seed);
    unit_step_filtration out;
    out.node_count = filt.total.node_count;
    out.steps.reserve(filt.total.node_count + filt.total.edges.size());
    for (uint32_t s = 1; s <= filt.n_sentences; ++s) {
        std::vector<node_id> new_nodes;
        for (node_id n = 0; n < filt.total.node_count; ++n)
            if (filt.node_birth[n] == s) new_nodes.push_back(n);
        gen.shuffle(new_nodes);
        for (node_id n : new_nodes) out.steps.push_back({false, n, 0});

        std::vector<size_t> new_edges;
        for (size_t e = 0; e < filt.total.edges.size(); ++e)
            if (filt.edge_birth[e] == s) new_edges.push_back(e);
        gen.shuffle(new_edges);
        for (size_t e : new_edges)
            out.steps.push_back({true, filt.total.edges[e].u, filt.total.edges[e].v});
    }
    return out;
}

}  // namespace textnet
