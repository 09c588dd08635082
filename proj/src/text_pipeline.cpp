#include "textnet/text_pipeline.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "textnet/errors.hpp"
#include "textnet/util.hpp"

namespace textnet {

namespace {

// Decodes one UTF-8 codepoint at byte offset i; throws on malformed input.
uint32_t decode_cp(const std::string& s, size_t& i) {
    unsigned char c0 = s[i];
    if (c0 < 0x80) {
        ++i;
        return c0;
    }
    auto cont = [&](size_t k) -> uint32_t {
        if (i + k >= s.size())
            throw ingestion_error("invalid UTF-8: truncated sequence at byte " + std::to_string(i));
        unsigned char c = s[i + k];
        if ((c & 0xc0) != 0x80)
            throw ingestion_error("invalid UTF-8: bad continuation at byte " +
                                  std::to_string(i + k));
        return c & 0x3f;
    };
    uint32_t cp;
    size_t len;
    if ((c0 & 0xe0) == 0xc0) {
        cp = (c0 & 0x1fu) << 6 | cont(1);
        len = 2;
        if (cp < 0x80)
            throw ingestion_error("invalid UTF-8: overlong sequence at byte " + std::to_string(i));
    } else if ((c0 & 0xf0) == 0xe0) {
        cp = (c0 & 0x0fu) << 12 | cont(1) << 6 | cont(2);
        len = 3;
        if (cp < 0x800)
            throw ingestion_error("invalid UTF-8: overlong sequence at byte " + std::to_string(i));
    } else if ((c0 & 0xf8) == 0xf0) {
        cp = (c0 & 0x07u) << 18 | cont(1) << 12 | cont(2) << 6 | cont(3);
        len = 4;
        if (cp < 0x10000 || cp > 0x10ffff)
            throw ingestion_error("invalid UTF-8: out-of-range codepoint at byte " +
                                  std::to_string(i));
    } else {
        throw ingestion_error("invalid UTF-8: stray byte at offset " + std::to_string(i));
    }
    if (cp >= 0xd800 && cp <= 0xdfff)
        throw ingestion_error("invalid UTF-8: surrogate at byte " + std::to_string(i));
    i += len;
    return cp;
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

// Compatibility mappings for the Latin/typographic ranges PDF text produces.
const std::unordered_map<uint32_t, const char*>& kd_table() {
    static const std::unordered_map<uint32_t, const char*> table = {
        // Latin-1 letters to base letters
        {0xc0, "A"}, {0xc1, "A"}, {0xc2, "A"}, {0xc3, "A"}, {0xc4, "A"}, {0xc5, "A"},
        {0xc6, "AE"}, {0xc7, "C"}, {0xc8, "E"}, {0xc9, "E"}, {0xca, "E"}, {0xcb, "E"},
        {0xcc, "I"}, {0xcd, "I"}, {0xce, "I"}, {0xcf, "I"}, {0xd1, "N"}, {0xd2, "O"},
        {0xd3, "O"}, {0xd4, "O"}, {0xd5, "O"}, {0xd6, "O"}, {0xd8, "O"}, {0xd9, "U"},
        {0xda, "U"}, {0xdb, "U"}, {0xdc, "U"}, {0xdd, "Y"}, {0xdf, "ss"},
        {0xe0, "a"}, {0xe1, "a"}, {0xe2, "a"}, {0xe3, "a"}, {0xe4, "a"}, {0xe5, "a"},
        {0xe6, "ae"}, {0xe7, "c"}, {0xe8, "e"}, {0xe9, "e"}, {0xea, "e"}, {0xeb, "e"},
        {0xec, "i"}, {0xed, "i"}, {0xee, "i"}, {0xef, "i"}, {0xf1, "n"}, {0xf2, "o"},
        {0xf3, "o"}, {0xf4, "o"}, {0xf5, "o"}, {0xf6, "o"}, {0xf8, "o"}, {0xf9, "u"},
        {0xfa, "u"}, {0xfb, "u"}, {0xfc, "u"}, {0xfd, "y"}, {0xff, "y"},
        {0x152, "OE"}, {0x153, "oe"},
        // ligatures
        {0xfb00, "ff"}, {0xfb01, "fi"}, {0xfb02, "fl"}, {0xfb03, "ffi"}, {0xfb04, "ffl"},
        {0xfb05, "ft"}, {0xfb06, "st"},
        // superscript and subscript digits
        {0xb9, "1"}, {0xb2, "2"}, {0xb3, "3"}, {0x2070, "0"}, {0x2074, "4"}, {0x2075, "5"},
        {0x2076, "6"}, {0x2077, "7"}, {0x2078, "8"}, {0x2079, "9"}, {0x2080, "0"},
        {0x2081, "1"}, {0x2082, "2"}, {0x2083, "3"}, {0x2084, "4"}, {0x2085, "5"},
        {0x2086, "6"}, {0x2087, "7"}, {0x2088, "8"}, {0x2089, "9"},
        // dashes and hyphens
        {0x2010, "-"}, {0x2011, "-"}, {0x2012, "-"}, {0x2013, "-"}, {0x2014, "-"},
        {0x2015, "-"}, {0x2212, "-"},
        // quotes and primes
        {0x2018, "'"}, {0x2019, "'"}, {0x201a, "'"}, {0x201b, "'"}, {0x201c, "\""},
        {0x201d, "\""}, {0x201e, "\""}, {0x201f, "\""}, {0x2032, "'"}, {0x2033, "\""},
        // punctuation and operators that act as separators
        {0x2026, "..."}, {0xd7, " "}, {0xf7, " "}, {0xb7, " "}, {0x2022, " "},
        // spaces
        {0xa0, " "}, {0x2000, " "}, {0x2001, " "}, {0x2002, " "}, {0x2003, " "},
        {0x2004, " "}, {0x2005, " "}, {0x2006, " "}, {0x2007, " "}, {0x2008, " "},
        {0x2009, " "}, {0x200a, " "}, {0x202f, " "}, {0x205f, " "}, {0x3000, " "},
        // zero-width and soft hyphen: deleted
        {0xad, ""}, {0x200b, ""}, {0x200c, ""}, {0x200d, ""}, {0xfeff, ""},
    };
    return table;
}

bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_token_char(unsigned char c) {
    return is_ascii_letter(static_cast<char>(c)) || (c >= '0' && c <= '9') || c == '#' ||
           c == '-' || c >= 0x80;
}

bool has_vowel(const std::string& w) {
    for (char c : w) {
        char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (l == 'a' || l == 'e' || l == 'i' || l == 'o' || l == 'u') return true;
    }
    return false;
}

bool letters_only(const std::string& w) {
    if (w.empty()) return false;
    for (char c : w)
        if (!is_ascii_letter(c)) return false;
    return true;
}

bool has_digit(const std::string& w) {
    for (char c : w)
        if (c >= '0' && c <= '9') return true;
    return false;
}

std::vector<std::string> read_word_lines(const std::string& path, bool allow_comments) {
    std::ifstream in(path);
    if (!in) throw ingestion_error("cannot open word list: " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string w = trim(line);
        if (w.empty()) continue;
        if (allow_comments && w[0] == '#') continue;
        out.push_back(to_lower_ascii(w));
    }
    return out;
}

}  // namespace

std::string kd_normalize(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    const auto& table = kd_table();
    size_t i = 0;
    while (i < text.size()) {
        uint32_t cp = decode_cp(text, i);
        // fullwidth ASCII block
        if (cp >= 0xff01 && cp <= 0xff5e) {
            out.push_back(static_cast<char>(cp - 0xff01 + 0x21));
            continue;
        }
        // combining diacritical marks
        if (cp >= 0x300 && cp <= 0x36f) continue;
        auto it = table.find(cp);
        if (it != table.end()) {
            out += it->second;
            continue;
        }
        append_utf8(out, cp);
    }
    return out;
}

std::string normalize(const raw_document& raw, const lemmatizer_fn& lemmatizer) {
    if (raw.text.empty()) throw ingestion_error("empty document: " + raw.doc_id);
    std::string text = kd_normalize(raw.text);
    for (char& c : text)
        if (c == '-') c = ' ';

    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        if (is_ascii_letter(text[i])) {
            size_t j = i;
            while (j < text.size() && is_ascii_letter(text[j])) ++j;
            out += lemmatizer(text.substr(i, j - i));
            i = j;
        } else {
            out.push_back(text[i]);
            ++i;
        }
    }
    return to_lower_ascii(out);
}

namespace {

// Sentence boundaries: runs of [.?!] followed by whitespace or end of text,
// unless the preceding chunk (trailing punctuation stripped) is a listed
// abbreviation.
std::vector<std::string> split_sentences(const std::string& text, const splitter_config& cfg) {
    std::vector<std::string> sentences;
    std::string current;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '.' || c == '?' || c == '!') {
            size_t j = i;
            while (j < text.size() && (text[j] == '.' || text[j] == '?' || text[j] == '!')) ++j;
            bool at_boundary =
                j >= text.size() || std::isspace(static_cast<unsigned char>(text[j]));
            bool abbrev = false;
            if (at_boundary && text[i] == '.') {
                size_t e = current.size();
                while (e > 0 && !std::isspace(static_cast<unsigned char>(current[e - 1]))) --e;
                std::string chunk = current.substr(e);
                while (!chunk.empty() &&
                       (chunk.back() == '.' || chunk.back() == '?' || chunk.back() == '!'))
                    chunk.pop_back();
                abbrev = !chunk.empty() && cfg.abbreviations.count(to_lower_ascii(chunk)) > 0;
            }
            current.append(text, i, j - i);
            i = j;
            if (at_boundary && !abbrev) {
                sentences.push_back(current);
                current.clear();
            }
        } else {
            current.push_back(c);
            ++i;
        }
    }
    if (!trim(current).empty()) sentences.push_back(current);
    return sentences;
}

std::vector<std::string> raw_tokens(const std::string& sentence_text) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : sentence_text) {
        if (is_token_char(c)) {
            cur.push_back(static_cast<char>(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

}  // namespace

tokenized_document tokenize_and_mask(const std::string& normalized_text,
                                     const std::string& doc_id, const stop_list& stops,
                                     const dictionary& dict, const splitter_config& splitter) {
    tokenized_document doc;
    doc.doc_id = doc_id;
    for (const std::string& sent_text : split_sentences(normalized_text, splitter)) {
        sentence toks;
        for (std::string& t : raw_tokens(sent_text)) {
            if (t == "#" || t == "VAR" || t == "-pron-") {
                toks.push_back(std::move(t));
                continue;
            }
            if (has_digit(t)) {
                toks.emplace_back("#");
                continue;
            }
            std::string w = to_lower_ascii(t);
            if (!letters_only(w)) {
                // residue such as Greek symbols or '#'-bearing fragments is
                // variable-like; bare punctuation never reaches here
                if (w == "-pron-")
                    toks.push_back(std::move(w));
                else
                    toks.emplace_back("VAR");
                continue;
            }
            if (!has_vowel(w)) {
                toks.emplace_back("VAR");
            } else if (w.size() <= 2 && !stops.contains(w)) {
                toks.emplace_back("VAR");
            } else if ((w.size() == 3 || w.size() == 4) && !dict.contains(w)) {
                toks.emplace_back("VAR");
            } else {
                toks.push_back(std::move(w));
            }
        }
        if (!toks.empty()) doc.sentences.push_back(std::move(toks));
    }
    if (doc.sentences.empty())
        throw ingestion_error("document produced no sentences: " + doc_id);
    return doc;
}

tokenized_document preprocess(const raw_document& raw, const lemmatizer_fn& lemmatizer,
                              const stop_list& stops, const dictionary& dict,
                              const splitter_config& splitter) {
    return tokenize_and_mask(normalize(raw, lemmatizer), raw.doc_id, stops, dict, splitter);
}

bool is_placeholder_token(const std::string& token) {
    return token == "#" || token == "VAR" || token == "-pron-";
}

void stop_list::add(const std::string& w) {
    if (w.empty()) return;
    words_.insert(to_lower_ascii(w));
}

void stop_list::finalize() {
    for (auto it = words_.begin(); it != words_.end();) {
        if (it->size() == 1 && *it != "#")
            it = words_.erase(it);
        else
            ++it;
    }
    words_.erase("value");
    words_.insert("#");
    words_.insert("-pron-");
    words_.insert("VAR");
    static const char* exposition_words[] = {"examples",      "counterexample", "text",
                                             "texts",         "undergraduate",  "chapter",
                                             "definition",    "notation",       "proof",
                                             "exercise",      "result"};
    for (const char* w : exposition_words) words_.insert(w);
}

stop_list stop_list::load(const std::string& path) {
    stop_list s;
    for (const std::string& w : read_word_lines(path, true)) s.add(w);
    s.finalize();
    return s;
}

stop_list stop_list::from_words(const std::vector<std::string>& words) {
    stop_list s;
    for (const std::string& w : words) s.add(w);
    s.finalize();
    return s;
}

dictionary dictionary::load(const std::string& path) {
    dictionary d;
    for (const std::string& w : read_word_lines(path, false)) d.words_.insert(w);
    return d;
}

dictionary dictionary::from_words(const std::vector<std::string>& words) {
    dictionary d;
    for (const std::string& w : words) d.words_.insert(to_lower_ascii(w));
    return d;
}

splitter_config splitter_config::load(const std::string& path) {
    splitter_config cfg;
    for (const std::string& w : read_word_lines(path, true)) cfg.abbreviations.insert(w);
    return cfg;
}

}  // namespace textnet
