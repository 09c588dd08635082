#pragma once

#include "textnet/concept_extraction.hpp"
#include "textnet/rng.hpp"
#include "textnet/semantic_network.hpp"
#include "textnet/text_pipeline.hpp"

namespace textnet {

// Matches index phrases against sentences at token boundaries (overlapping
// and nested matches all count; a phrase counts once per sentence). Node
// birth is the first sentence containing the phrase; edge weight is the
// number of sentences containing both endpoints; edge birth is the first.
// Index phrases that never match are dropped with a warning.
expositional_filtration build_filtration(const tokenized_document& doc,
                                         const std::vector<std::string>& index_phrases);

// Per-sentence sets of matched node ids (ids follow index order restricted to
// matched phrases), exposed for null models that rebuild from sentence sets.
std::vector<std::vector<node_id>> match_sentences(const tokenized_document& doc,
                                                  const std::vector<std::string>& index_phrases,
                                                  std::vector<std::string>* matched_phrases,
                                                  std::vector<std::string>* warnings);

// Builds the filtration from already-matched per-sentence node sets over
// node_count nodes (ids 0..node_count-1).
expositional_filtration filtration_from_sentence_sets(
    const std::vector<std::vector<node_id>>& sentence_nodes, size_t node_count,
    std::vector<std::string> labels = {});

// Binarized snapshot at sentence k (1-based): nodes and edges with birth <= k.
struct binary_snapshot {
    std::vector<node_id> nodes;
    std::vector<std::pair<node_id, node_id>> edges;
};
binary_snapshot snapshot(const expositional_filtration& filt, uint32_t k);

// Unfurls the sentence filtration into unit steps: per sentence, the new
// nodes one at a time in seeded random order, then the new edges likewise.
unit_step_filtration oaat_unfurl(const expositional_filtration& filt, uint64_t seed);

}  // namespace textnet
