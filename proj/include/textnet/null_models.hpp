#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textnet/network_build.hpp"
#include "textnet/semantic_network.hpp"
#include "textnet/text_pipeline.hpp"

namespace textnet {

// Pseudo-index of `size` distinct document words sampled outside the stop
// list, then the standard filtration construction. Errors when the pool of
// eligible words is smaller than `size`.
expositional_filtration random_index(const tokenized_document& doc, const stop_list& stops,
                                     size_t size, uint64_t seed);

// Rebuild after permuting sentences; the total weighted network is invariant.
expositional_filtration random_sentence_order(const tokenized_document& doc,
                                              const std::vector<std::string>& index_phrases,
                                              const std::vector<uint32_t>& permutation);
expositional_filtration random_sentence_order(const tokenized_document& doc,
                                              const std::vector<std::string>& index_phrases,
                                              uint64_t seed);

// Uniformly permuted total-network edges, each node inserted immediately
// before its first incident edge.
unit_step_filtration random_edge(const expositional_filtration& filt, uint64_t seed);

// Nodes by introduction order (ties shuffled), each followed by its
// total-network edges to already-present nodes in shuffled order.
unit_step_filtration node_ordered(const expositional_filtration& filt, uint64_t seed);

// Distinct eligible words, sorted, for the random_index pool (exposed for
// pool-size checks).
std::vector<std::string> random_index_pool(const tokenized_document& doc, const stop_list& stops);

}  // namespace textnet
