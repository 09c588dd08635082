#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textnet/config.hpp"

namespace textnet {

enum class pipeline_stage : int {
    ingest = 0,
    extract = 1,
    build = 2,
    mesoscale = 3,
    nulls = 4,
    topology = 5,
    analysis = 6,
};

pipeline_stage stage_from_name(const std::string& name);
const char* stage_name(pipeline_stage s);

struct stage_timing {
    std::string stage;
    double seconds = 0.0;
};

struct run_manifest {
    std::string config_hash;
    uint64_t master_seed = 0;
    std::vector<std::string> text_ids;
    std::vector<std::string> artifact_paths;
    std::vector<stage_timing> timings;
    std::vector<std::string> failures;  // "<text>/<stage>: message" markers
    bool complete = false;
};

// Executes ingest -> extract -> build -> mesoscale -> nulls -> topology ->
// analysis, stopping after `through`. Per-text and per-(model, member seed)
// results are cached under the output directory keyed by the config
// fingerprint; corrupted or stale cache entries are regenerated. A text that
// fails is recorded in `failures` and the run continues with the rest.
run_manifest run_pipeline(const run_config& cfg, pipeline_stage through = pipeline_stage::analysis);

// Re-emits summary JSONs, the cross-text statistics record, and the
// correlation matrix from cached artifacts alone (no recompute). Errors if a
// text has no cached metrics for the current config.
run_manifest export_report(const run_config& cfg);

// Basename without extension; the per-text artifact directory name.
std::string text_id_from_path(const std::string& path);

}  // namespace textnet
