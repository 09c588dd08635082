#include "textnet/config.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "textnet/errors.hpp"
#include "textnet/util.hpp"

namespace textnet {

namespace fs = std::filesystem;

namespace {

double to_double(const std::string& v, const std::string& key) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw validation_error("config: " + key + " expects a number, got '" + v + "'");
    return out;
}

uint64_t to_u64(const std::string& v, const std::string& key) {
    uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw validation_error("config: " + key + " expects an unsigned integer, got '" + v + "'");
    return out;
}

std::vector<std::string> expand_corpus_entry(const std::string& entry) {
    fs::path p(entry);
    if (fs::is_directory(p)) {
        std::vector<std::string> files;
        for (const auto& de : fs::directory_iterator(p))
            if (de.is_regular_file() && de.path().extension() == ".txt")
                files.push_back(de.path().string());
        std::sort(files.begin(), files.end());
        return files;
    }
    return {entry};
}

}  // namespace

run_config parse_run_config(const std::string& content) {
    run_config cfg;
    std::set<std::string> seen;
    std::vector<std::string> corpus_entries;
    size_t lineno = 0;
    for (const auto& raw_line : split(content, '\n')) {
        ++lineno;
        std::string line = trim(raw_line);
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw validation_error("config line " + std::to_string(lineno) +
                                   ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw validation_error("config line " + std::to_string(lineno) +
                                                ": empty key");
        if (key != "corpus" && !seen.insert(key).second)
            throw validation_error("config: duplicate key '" + key + "'");

        if (key == "corpus") {
            for (auto& part : split(value, ','))
                if (std::string t = trim(part); !t.empty()) corpus_entries.push_back(t);
        } else if (key == "stoplist") {
            cfg.stoplist_path = value;
        } else if (key == "dictionary") {
            cfg.dictionary_path = value;
        } else if (key == "frequency_table") {
            cfg.frequency_table_path = value;
        } else if (key == "ratings") {
            cfg.ratings_path = value;
        } else if (key == "abbreviations") {
            cfg.abbreviations_path = value;
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else if (key == "index_fraction") {
            cfg.index_fraction = to_double(value, key);
        } else if (key == "min_keyword_freq") {
            cfg.min_keyword_freq = uint32_t(to_u64(value, key));
        } else if (key == "max_phrase_words") {
            cfg.max_phrase_words = uint32_t(to_u64(value, key));
        } else if (key == "min_keyword_chars") {
            cfg.min_keyword_chars = uint32_t(to_u64(value, key));
        } else if (key == "gamma_core") {
            cfg.gamma_core = to_double(value, key);
        } else if (key == "gamma_mod") {
            cfg.gamma_mod = to_double(value, key);
        } else if (key == "ensemble_size") {
            cfg.ensemble_size = uint32_t(to_u64(value, key));
        } else if (key == "oaat_samples") {
            cfg.oaat_samples = uint32_t(to_u64(value, key));
        } else if (key == "master_seed") {
            cfg.master_seed = to_u64(value, key);
        } else {
            throw validation_error("config: unknown key '" + key + "'");
        }
    }
    for (const auto& entry : corpus_entries)
        for (auto& f : expand_corpus_entry(entry)) cfg.corpus_paths.push_back(f);
    return cfg;
}

run_config load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

void validate_run_config(const run_config& cfg) {
    if (cfg.corpus_paths.empty()) throw validation_error("config: corpus is required");
    if (cfg.stoplist_path.empty()) throw validation_error("config: stoplist is required");
    if (cfg.dictionary_path.empty()) throw validation_error("config: dictionary is required");
    if (cfg.frequency_table_path.empty())
        throw validation_error("config: frequency_table is required");
    if (cfg.output_dir.empty()) throw validation_error("config: output_dir is required");
    if (!(cfg.index_fraction > 0.0 && cfg.index_fraction <= 1.0))
        throw validation_error("config: index_fraction must be in (0,1]");
    if (cfg.ensemble_size < 1) throw validation_error("config: ensemble_size must be >= 1");
    if (cfg.oaat_samples < 1) throw validation_error("config: oaat_samples must be >= 1");
    if (cfg.max_phrase_words < 1)
        throw validation_error("config: max_phrase_words must be >= 1");
    if (cfg.gamma_core < 0.0 || cfg.gamma_mod < 0.0)
        throw validation_error("config: gammas must be non-negative");

    auto must_exist = [](const std::string& path, const char* what) {
        if (!path.empty() && !fs::exists(path))
            throw validation_error(std::string("config: ") + what + " not found: " + path);
    };
    for (const auto& p : cfg.corpus_paths) must_exist(p, "corpus file");
    must_exist(cfg.stoplist_path, "stoplist");
    must_exist(cfg.dictionary_path, "dictionary");
    must_exist(cfg.frequency_table_path, "frequency_table");
    must_exist(cfg.ratings_path, "ratings");
    must_exist(cfg.abbreviations_path, "abbreviations");
}

uint64_t config_fingerprint(const run_config& cfg) {
    std::string canon;
    canon += "corpus=";
    for (const auto& p : cfg.corpus_paths) canon += p + ";";
    canon += "\nstoplist=" + cfg.stoplist_path;
    canon += "\ndictionary=" + cfg.dictionary_path;
    canon += "\nfrequency_table=" + cfg.frequency_table_path;
    canon += "\nratings=" + cfg.ratings_path;
    canon += "\nabbreviations=" + cfg.abbreviations_path;
    canon += "\noutput_dir=" + cfg.output_dir;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "\nindex_fraction=%.17g\nmin_keyword_freq=%u\nmax_phrase_words=%u"
                  "\nmin_keyword_chars=%u\ngamma_core=%.17g\ngamma_mod=%.17g"
                  "\nensemble_size=%u\noaat_samples=%u\nmaster_seed=%llu",
                  cfg.index_fraction, cfg.min_keyword_freq, cfg.max_phrase_words,
                  cfg.min_keyword_chars, cfg.gamma_core, cfg.gamma_mod, cfg.ensemble_size,
                  cfg.oaat_samples, static_cast<unsigned long long>(cfg.master_seed));
    canon += buf;
    return fnv1a64(canon);
}

std::string fingerprint_hex(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace textnet
