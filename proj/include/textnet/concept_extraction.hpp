#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "textnet/text_pipeline.hpp"

namespace textnet {

struct candidate_phrase {
    std::vector<std::string> tokens;
    uint32_t occurrences = 0;
    double rake_score = 0.0;
    double final_score = 0.0;

    std::string joined() const;
};

// Keyword statistics over the accepted candidate multiset. deg(w) sums the
// length of every candidate occurrence containing w (so a word co-occurs with
// itself); freq(w) counts those occurrences.
class keyword_graph {
public:
    void add_occurrence(const std::vector<std::string>& phrase_tokens);
    double deg(const std::string& w) const;
    uint32_t freq(const std::string& w) const;
    bool has(const std::string& w) const { return freq_.count(w) > 0; }
    size_t size() const { return freq_.size(); }

private:
    std::unordered_map<std::string, double> deg_;
    std::unordered_map<std::string, uint32_t> freq_;
};

class corpus_frequency_table {
public:
    // TSV: phrase <TAB> count. Lookup of an absent phrase is 0.
    static corpus_frequency_table load(const std::string& path);
    static corpus_frequency_table from_pairs(
        const std::vector<std::pair<std::string, uint64_t>>& pairs);

    uint64_t count(const std::string& phrase) const;

private:
    std::unordered_map<std::string, uint64_t> counts_;
};

struct index_entry {
    std::string phrase;
    double rake_score = 0.0;
    double final_score = 0.0;
};

struct index_list {
    std::vector<index_entry> entries;

    size_t size() const { return entries.size(); }
    std::vector<std::string> phrases() const;
};

struct extraction_config {
    size_t max_phrase_words = 4;
    size_t min_keyword_chars = 3;
    size_t min_keyword_freq = 5;
    double index_fraction = 0.5;
};

struct extraction_result {
    std::vector<candidate_phrase> candidates;  // unique phrases, occurrence counts set
    keyword_graph graph;
};

// Candidates are maximal runs of non-stopword tokens within a sentence,
// kept when: run length <= max_phrase_words, every word has at least
// min_keyword_chars characters and occurs at least min_keyword_freq times in
// the whole document. Scores are left at zero.
extraction_result extract_candidates(const tokenized_document& doc, const stop_list& stops,
                                     const extraction_config& cfg = {});

double score_rake(const candidate_phrase& c, const keyword_graph& g);

double score_final(double rake_score, const std::string& phrase,
                   const corpus_frequency_table& table);

// Fills rake_score/final_score on every candidate in place.
void score_candidates(std::vector<candidate_phrase>& candidates, const keyword_graph& g,
                      const corpus_frequency_table& table);

// Placeholder tokens are stripped, duplicates merged keeping the highest
// score, and the top ceil(n * fraction) phrases kept, ordered by final score
// descending with lexicographic ascending tie-break.
index_list select_index(const std::vector<candidate_phrase>& scored, double fraction = 0.5);

}  // namespace textnet
