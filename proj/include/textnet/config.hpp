#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace textnet {

// Flat key=value run configuration; '#' comment lines. Unknown keys are
// rejected so typos fail loudly.
struct run_config {
    std::vector<std::string> corpus_paths;  // expanded: directories -> *.txt sorted
    std::string stoplist_path;
    std::string dictionary_path;
    std::string frequency_table_path;
    std::string ratings_path;        // optional
    std::string abbreviations_path;  // optional
    std::string output_dir;

    double index_fraction = 0.5;
    uint32_t min_keyword_freq = 5;
    uint32_t max_phrase_words = 4;
    uint32_t min_keyword_chars = 3;
    double gamma_core = 1.0;
    double gamma_mod = 1.0;
    uint32_t ensemble_size = 100;
    uint32_t oaat_samples = 10;
    uint64_t master_seed = 0;

    uint32_t jobs = 1;  // CLI-side; excluded from the fingerprint
};

run_config parse_run_config(const std::string& content);
run_config load_run_config(const std::string& path);

// Range checks plus existence of every referenced input file.
void validate_run_config(const run_config& cfg);

// FNV-1a over a canonical serialization (jobs excluded); keys cache validity.
uint64_t config_fingerprint(const run_config& cfg);
std::string fingerprint_hex(uint64_t h);

}  // namespace textnet
