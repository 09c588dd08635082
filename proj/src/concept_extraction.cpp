#include "textnet/concept_extraction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "textnet/errors.hpp"
#include "textnet/util.hpp"

namespace textnet {

std::string candidate_phrase::joined() const { return join(tokens, " "); }

void keyword_graph::add_occurrence(const std::vector<std::string>& phrase_tokens) {
    for (const std::string& w : phrase_tokens) {
        deg_[w] += static_cast<double>(phrase_tokens.size());
        freq_[w] += 1;
    }
}

double keyword_graph::deg(const std::string& w) const {
    auto it = deg_.find(w);
    if (it == deg_.end()) throw invariant_error("keyword_graph: unknown keyword " + w);
    return it->second;
}

uint32_t keyword_graph::freq(const std::string& w) const {
    auto it = freq_.find(w);
    if (it == freq_.end()) throw invariant_error("keyword_graph: unknown keyword " + w);
    return it->second;
}

corpus_frequency_table corpus_frequency_table::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ingestion_error("cannot open frequency table: " + path);
    corpus_frequency_table t;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ingestion_error("frequency table " + path + " line " + std::to_string(lineno) +
                                  ": expected phrase<TAB>count");
        std::string phrase = trim(line.substr(0, tab));
        uint64_t count = std::stoull(trim(line.substr(tab + 1)));
        t.counts_[phrase] += count;
    }
    return t;
}

corpus_frequency_table corpus_frequency_table::from_pairs(
    const std::vector<std::pair<std::string, uint64_t>>& pairs) {
    corpus_frequency_table t;
    for (const auto& [phrase, count] : pairs) t.counts_[phrase] += count;
    return t;
}

uint64_t corpus_frequency_table::count(const std::string& phrase) const {
    auto it = counts_.find(phrase);
    return it == counts_.end() ? 0 : it->second;
}

std::vector<std::string> index_list::phrases() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.phrase);
    return out;
}

extraction_result extract_candidates(const tokenized_document& doc, const stop_list& stops,
                                     const extraction_config& cfg) {
    std::unordered_map<std::string, uint32_t> text_freq;
    for (const sentence& s : doc.sentences)
        for (const std::string& t : s) text_freq[t] += 1;

    auto keyword_ok = [&](const std::string& w) {
        return w.size() >= cfg.min_keyword_chars && text_freq[w] >= cfg.min_keyword_freq;
    };

    // map keeps candidate order deterministic (lexicographic by token list)
    std::map<std::vector<std::string>, uint32_t> counts;
    extraction_result result;
    for (const sentence& s : doc.sentences) {
        size_t i = 0;
        while (i < s.size()) {
            while (i < s.size() && stops.contains(s[i])) ++i;
            size_t j = i;
            while (j < s.size() && !stops.contains(s[j])) ++j;
            if (j > i) {
                size_t len = j - i;
                bool ok = len <= cfg.max_phrase_words;
                for (size_t k = i; ok && k < j; ++k) ok = keyword_ok(s[k]);
                if (ok) {
                    std::vector<std::string> phrase(s.begin() + i, s.begin() + j);
                    result.graph.add_occurrence(phrase);
                    counts[std::move(phrase)] += 1;
                }
            }
            i = j;
        }
    }
    result.candidates.reserve(counts.size());
    for (auto& [tokens, n] : counts) {
        candidate_phrase c;
        c.tokens = tokens;
        c.occurrences = n;
        result.candidates.push_back(std::move(c));
    }
    return result;
}

double score_rake(const candidate_phrase& c, const keyword_graph& g) {
    double score = 0.0;
    for (const std::string& w : c.tokens)
        score += g.deg(w) / static_cast<double>(g.freq(w));
    return score;
}

double score_final(double rake_score, const std::string& phrase,
                   const corpus_frequency_table& table) {
    return rake_score / (1.0 + static_cast<double>(table.count(phrase)));
}

void score_candidates(std::vector<candidate_phrase>& candidates, const keyword_graph& g,
                      const corpus_frequency_table& table) {
    for (candidate_phrase& c : candidates) {
        c.rake_score = score_rake(c, g);
        c.final_score = score_final(c.rake_score, c.joined(), table);
    }
}

index_list select_index(const std::vector<candidate_phrase>& scored, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw validation_error("select_index: fraction must be in (0,1]");

    std::map<std::string, index_entry> best;
    for (const candidate_phrase& c : scored) {
        std::vector<std::string> kept;
        for (const std::string& t : c.tokens)
            if (!is_placeholder_token(t)) kept.push_back(t);
        if (kept.empty()) continue;
        std::string phrase = join(kept, " ");
        auto it = best.find(phrase);
        if (it == best.end() || c.final_score > it->second.final_score)
            best[phrase] = index_entry{phrase, c.rake_score, c.final_score};
    }

    std::vector<index_entry> entries;
    entries.reserve(best.size());
    for (auto& [phrase, e] : best) entries.push_back(e);
    std::sort(entries.begin(), entries.end(), [](const index_entry& a, const index_entry& b) {
        if (a.final_score != b.final_score) return a.final_score > b.final_score;
        return a.phrase < b.phrase;
    });

    size_t keep = static_cast<size_t>(
        std::ceil(static_cast<double>(entries.size()) * fraction));
    if (keep > entries.size()) keep = entries.size();
    entries.resize(keep);

    index_list out;
    out.entries = std::move(entries);
    return out;
}

}  // namespace textnet
