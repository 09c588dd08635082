#pragma once

#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

namespace textnet {

struct raw_document {
    std::string doc_id;
    std::string text;
};

using sentence = std::vector<std::string>;

struct tokenized_document {
    std::string doc_id;
    std::vector<sentence> sentences;

    size_t sentence_count() const { return sentences.size(); }
};

// Per-word lemmatizer handle. Default is identity; a real engine can be
// plugged in by the caller. Receives the word as it appears (pre-lowercase).
using lemmatizer_fn = std::function<std::string(const std::string&)>;

inline lemmatizer_fn identity_lemmatizer() {
    return [](const std::string& w) { return w; };
}

class stop_list {
public:
    stop_list() = default;

    // File format: one word per line, '#'-prefixed comment lines ignored.
    // The loader enforces the required shape regardless of file content:
    // placeholders and the math-exposition additions injected, single-letter
    // entries dropped, "value" dropped.
    static stop_list load(const std::string& path);
    static stop_list from_words(const std::vector<std::string>& words);

    bool contains(const std::string& w) const { return words_.count(w) > 0; }
    size_t size() const { return words_.size(); }
    const std::unordered_set<std::string>& words() const { return words_; }

private:
    void add(const std::string& w);
    void finalize();
    std::unordered_set<std::string> words_;
};

class dictionary {
public:
    dictionary() = default;

    // One word per line. Lookup is lowercase exact match.
    static dictionary load(const std::string& path);
    static dictionary from_words(const std::vector<std::string>& words);

    bool contains(const std::string& w) const { return words_.count(w) > 0; }
    size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

struct splitter_config {
    // Words that keep a following '.' from ending a sentence ("eq", "fig", ...).
    std::unordered_set<std::string> abbreviations;

    static splitter_config load(const std::string& path);
};

// Compatibility normalization (KD form) over the ranges that matter for
// English math text: Latin diacritic stripping, ligatures, fullwidth forms,
// superscript/subscript digits, dash/space/quote variants, combining marks.
// Input must be valid UTF-8; malformed bytes raise an ingestion error that
// names the byte offset.
std::string kd_normalize(const std::string& text);

// KD-normalize, replace hyphens with spaces, lemmatize each word run via the
// handle, lowercase. Empty input is an error.
std::string normalize(const raw_document& raw, const lemmatizer_fn& lemmatizer);

// Sentence-split normalized text, tokenize, and mask: digit-bearing tokens
// become "#", tokens not made of letters are dropped ("-pron-" excepted),
// then in order: vowelless -> "VAR"; length <= 2 off the stoplist -> "VAR";
// length 3-4 missing from the dictionary -> "VAR".
tokenized_document tokenize_and_mask(const std::string& normalized_text,
                                     const std::string& doc_id, const stop_list& stops,
                                     const dictionary& dict, const splitter_config& splitter);

// Convenience composition of normalize + tokenize_and_mask.
tokenized_document preprocess(const raw_document& raw, const lemmatizer_fn& lemmatizer,
                              const stop_list& stops, const dictionary& dict,
                              const splitter_config& splitter);

bool is_placeholder_token(const std::string& token);

}  // namespace textnet
