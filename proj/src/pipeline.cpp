#include "textnet/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <thread>

#include <json.hpp>

#include "textnet/analysis.hpp"
#include "textnet/concept_extraction.hpp"
#include "textnet/errors.hpp"
#include "textnet/io_formats.hpp"
#include "textnet/mesoscale.hpp"
#include "textnet/network_build.hpp"
#include "textnet/null_models.hpp"
#include "textnet/rng.hpp"
#include "textnet/text_pipeline.hpp"
#include "textnet/topology.hpp"
#include "textnet/weight_fit.hpp"

namespace textnet {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

const char* stage_name(pipeline_stage s) {
    switch (s) {
        case pipeline_stage::ingest: return "ingest";
        case pipeline_stage::extract: return "extract";
        case pipeline_stage::build: return "build";
        case pipeline_stage::mesoscale: return "mesoscale";
        case pipeline_stage::nulls: return "nulls";
        case pipeline_stage::topology: return "topology";
        case pipeline_stage::analysis: return "analysis";
    }
    return "?";
}

pipeline_stage stage_from_name(const std::string& name) {
    for (int i = 0; i <= int(pipeline_stage::analysis); ++i)
        if (name == stage_name(pipeline_stage(i))) return pipeline_stage(i);
    throw validation_error("unknown stage '" + name +
                           "' (expected ingest|extract|build|mesoscale|nulls|topology|analysis)");
}

std::string text_id_from_path(const std::string& path) {
    return fs::path(path).stem().string();
}

namespace {

constexpr const char* kNullModels[] = {"random_index", "random_sentence", "cont_config",
                                       "random_edge", "node_ordered"};

// Seed derivation indices off a text seed; fixed so cached artifacts stay
// valid across code motion.
enum : uint64_t {
    SEED_CORE = 1,
    SEED_COMMUNITIES = 2,
    SEED_OAAT_BASE = 3,
    SEED_NULL_BASE = 16,  // + model index
};

// per-member derivations
enum : uint64_t {
    MSEED_CORE = 1,
    MSEED_COMMUNITIES = 2,
    MSEED_OAAT = 3,
};

const std::vector<std::string>& model_metric_schema(const std::string& model) {
    static const std::vector<std::string> full = {
        "edge_density",        "q_core",           "q_mod",
        "area",                "nacl_sentence_dim0", "nacl_sentence_dim1",
        "nacl_sentence_dim2",  "nacl_oaat_dim0",   "nacl_oaat_dim1",
        "nacl_oaat_dim2"};
    static const std::vector<std::string> sentence_only = {
        "edge_density",       "area",           "nacl_sentence_dim0",
        "nacl_sentence_dim1", "nacl_sentence_dim2", "nacl_oaat_dim0",
        "nacl_oaat_dim1",     "nacl_oaat_dim2"};
    static const std::vector<std::string> network_only = {"edge_density", "q_core", "q_mod"};
    static const std::vector<std::string> oaat_only = {"nacl_oaat_dim0", "nacl_oaat_dim1",
                                                       "nacl_oaat_dim2"};
    if (model == "random_index") return full;
    if (model == "random_sentence") return sentence_only;
    if (model == "cont_config") return network_only;
    if (model == "random_edge" || model == "node_ordered") return oaat_only;
    throw invariant_error("unknown null model '" + model + "'");
}

using metric_map = std::map<std::string, double>;

struct text_state {
    std::string id;
    std::string path;
    tokenized_document doc;
    index_list index;
    expositional_filtration filt;
    core_partition core;
    std::vector<node_id> periphery_nodes;
    community_partition comm;
    weight_fit fit;
    barcode bc_sentence;
    metric_map metrics;
    std::vector<std::string> warnings;
    uint64_t text_seed = 0;
    size_t oaat_length = 0;
    pipeline_stage reached = pipeline_stage::ingest;
};

struct shared_inputs {
    stop_list stops;
    dictionary dict;
    splitter_config splitter;
    corpus_frequency_table freq;
    extraction_config ext;
};

fs::path text_dir(const run_config& cfg, const std::string& id) {
    return fs::path(cfg.output_dir) / id;
}

void put_metric(metric_map& m, const std::string& key, double v) { m[key] = v; }

double get_metric(const metric_map& m, const std::string& key) {
    auto it = m.find(key);
    return it == m.end() ? std::nan("") : it->second;
}

// ---- per-member null-model metric computation ----

metric_map member_metrics_random_index(const text_state& st, const shared_inputs& in,
                                       const run_config& cfg, uint64_t seed) {
    metric_map m;
    expositional_filtration fm = random_index(st.doc, in.stops, st.index.size(), seed);
    put_metric(m, "edge_density", fm.total.density());
    core_partition core = optimize_coreness(fm.total, cfg.gamma_core, derive_seed(seed, MSEED_CORE));
    put_metric(m, "q_core", core.q_core);
    std::vector<node_id> periph;
    for (node_id i = 0; i < fm.total.node_count; ++i)
        if (!core.is_core[i]) periph.push_back(i);
    semantic_network sub = induced_subgraph(fm.total, periph);
    community_partition comm =
        louvain_communities(sub, cfg.gamma_mod, derive_seed(seed, MSEED_COMMUNITIES));
    put_metric(m, "q_mod", comm.q_mod);

    auto curves = introduction_curves(fm, core);
    if (curves.size() == 2)
        put_metric(m, "area", curve_area_diff(curves[0], curves[1]));
    else
        put_metric(m, "area", std::nan(""));

    barcode bc = persistence(build_flag_filtration(fm));
    for (size_t d = 0; d < 3; ++d)
        put_metric(m, "nacl_sentence_dim" + std::to_string(d), nacl(bc.dims[d], fm.n_sentences));

    unit_step_filtration usf = oaat_unfurl(fm, derive_seed(seed, MSEED_OAAT));
    barcode bo = persistence(build_flag_filtration(usf));
    uint32_t L = uint32_t(usf.steps.size());
    for (size_t d = 0; d < 3; ++d)
        put_metric(m, "nacl_oaat_dim" + std::to_string(d), nacl(bo.dims[d], L));
    return m;
}

metric_map member_metrics_random_sentence(const text_state& st, uint64_t seed) {
    metric_map m;
    expositional_filtration fm = random_sentence_order(st.doc, st.index.phrases(), seed);
    put_metric(m, "edge_density", fm.total.density());

    auto curves = introduction_curves(fm, st.core);
    if (curves.size() == 2)
        put_metric(m, "area", curve_area_diff(curves[0], curves[1]));
    else
        put_metric(m, "area", std::nan(""));

    barcode bc = persistence(build_flag_filtration(fm));
    for (size_t d = 0; d < 3; ++d)
        put_metric(m, "nacl_sentence_dim" + std::to_string(d), nacl(bc.dims[d], fm.n_sentences));

    unit_step_filtration usf = oaat_unfurl(fm, derive_seed(seed, MSEED_OAAT));
    barcode bo = persistence(build_flag_filtration(usf));
    uint32_t L = uint32_t(usf.steps.size());
    for (size_t d = 0; d < 3; ++d)
        put_metric(m, "nacl_oaat_dim" + std::to_string(d), nacl(bo.dims[d], L));
    return m;
}

metric_map member_metrics_cont_config(const text_state& st, const run_config& cfg,
                                      uint64_t seed) {
    metric_map m;
    semantic_network net = cont_config(st.filt.total, st.fit, seed);
    put_metric(m, "edge_density", net.density());
    core_partition core = optimize_coreness(net, cfg.gamma_core, derive_seed(seed, MSEED_CORE));
    put_metric(m, "q_core", core.q_core);
    std::vector<node_id> periph;
    for (node_id i = 0; i < net.node_count; ++i)
        if (!core.is_core[i]) periph.push_back(i);
    semantic_network sub = induced_subgraph(net, periph);
    community_partition comm =
        louvain_communities(sub, cfg.gamma_mod, derive_seed(seed, MSEED_COMMUNITIES));
    put_metric(m, "q_mod", comm.q_mod);
    return m;
}

metric_map member_metrics_unit_null(const text_state& st, const std::string& model,
                                    uint64_t seed) {
    unit_step_filtration usf =
        model == "random_edge" ? random_edge(st.filt, seed) : node_ordered(st.filt, seed);
    barcode bc = persistence(build_flag_filtration(usf));
    uint32_t L = uint32_t(usf.steps.size());
    metric_map m;
    for (size_t d = 0; d < 3; ++d)
        put_metric(m, "nacl_oaat_dim" + std::to_string(d), nacl(bc.dims[d], L));
    return m;
}

metric_map compute_member(const std::string& model, const text_state& st,
                          const shared_inputs& in, const run_config& cfg, uint64_t seed) {
    if (model == "random_index") return member_metrics_random_index(st, in, cfg, seed);
    if (model == "random_sentence") return member_metrics_random_sentence(st, seed);
    if (model == "cont_config") return member_metrics_cont_config(st, cfg, seed);
    return member_metrics_unit_null(st, model, seed);
}

// ---- member cache ----

json metrics_to_json(const metric_map& m) {
    json j = json::object();
    for (const auto& [k, v] : m) {
        if (std::isnan(v))
            j[k] = nullptr;
        else
            j[k] = v;
    }
    return j;
}

metric_map metrics_from_json(const json& j) {
    metric_map m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_number())
            m[it.key()] = it.value().get<double>();
        else
            m[it.key()] = std::nan("");
    }
    return m;
}

fs::path member_cache_path(const run_config& cfg, const std::string& id,
                           const std::string& model, size_t idx) {
    char name[32];
    std::snprintf(name, sizeof(name), "member_%04zu.json", idx);
    return text_dir(cfg, id) / "nulls" / model / name;
}

bool load_member_cache(const fs::path& path, const std::string& hash, const std::string& model,
                       uint64_t seed, metric_map& out) {
    if (!fs::exists(path)) return false;
    try {
        json j = json::parse(read_text_file(path.string()));
        if (j.at("config_hash").get<std::string>() != hash) return false;
        if (j.at("model").get<std::string>() != model) return false;
        if (j.at("seed").get<uint64_t>() != seed) return false;
        out = metrics_from_json(j.at("metrics"));
        return true;
    } catch (const std::exception&) {
        return false;  // corrupted cache regenerates
    }
}

void write_member_cache(const fs::path& path, const std::string& hash, const std::string& model,
                        uint64_t seed, const metric_map& m) {
    json j;
    j["config_hash"] = hash;
    j["model"] = model;
    j["seed"] = seed;
    j["metrics"] = metrics_to_json(m);
    write_text_file(path.string(), j.dump(2) + "\n");
}

std::vector<uint64_t> member_seeds(uint64_t model_master, size_t size) {
    std::vector<uint64_t> seeds;
    seeds.reserve(size);
    std::set<uint64_t> seen;
    uint64_t salt = 0;
    for (size_t i = 0; i < size; ++i) {
        uint64_t s = derive_seed(model_master, i);
        while (!seen.insert(s).second) s = derive_seed(model_master, size + (salt++));
        seeds.push_back(s);
    }
    return seeds;
}

// ---- stage implementations ----

void stage_ingest(text_state& st, const shared_inputs& in) {
    raw_document raw{st.id, read_text_file(st.path)};
    st.doc = preprocess(raw, identity_lemmatizer(), in.stops, in.dict, in.splitter);
}

void stage_extract(text_state& st, const shared_inputs& in, const run_config& cfg,
                   run_manifest& man) {
    extraction_result ext = extract_candidates(st.doc, in.stops, in.ext);
    if (ext.candidates.empty())
        st.warnings.push_back("no candidate phrases extracted; index is empty");
    score_candidates(ext.candidates, ext.graph, in.freq);
    st.index = select_index(ext.candidates, cfg.index_fraction);
    fs::path p = text_dir(cfg, st.id) / "index.tsv";
    write_text_file(p.string(), index_to_tsv(st.index));
    man.artifact_paths.push_back(p.string());
}

void stage_build(text_state& st, const run_config& cfg, run_manifest& man) {
    if (st.index.size() == 0) throw validation_error("empty index; nothing to build");
    st.filt = build_filtration(st.doc, st.index.phrases());
    for (const auto& w : st.filt.warnings) st.warnings.push_back(w);
    put_metric(st.metrics, "node_count", double(st.filt.total.node_count));
    put_metric(st.metrics, "edge_density", st.filt.total.density());

    fs::path d = text_dir(cfg, st.id);
    write_text_file((d / "filtration.csv").string(), filtration_to_csv(st.filt));
    write_text_file((d / "labels.tsv").string(), labels_to_tsv(st.filt.total.labels));
    write_text_file((d / "network.csv").string(), network_to_csv(st.filt.total));
    man.artifact_paths.push_back((d / "filtration.csv").string());
    man.artifact_paths.push_back((d / "labels.tsv").string());
    man.artifact_paths.push_back((d / "network.csv").string());
}

void stage_mesoscale(text_state& st, const run_config& cfg, run_manifest& man) {
    st.core = optimize_coreness(st.filt.total, cfg.gamma_core,
                                derive_seed(st.text_seed, SEED_CORE));
    if (st.core.degenerate)
        st.warnings.push_back("core-periphery optimum is a uniform partition");
    st.periphery_nodes.clear();
    for (node_id i = 0; i < st.filt.total.node_count; ++i)
        if (!st.core.is_core[i]) st.periphery_nodes.push_back(i);
    semantic_network sub = induced_subgraph(st.filt.total, st.periphery_nodes);
    st.comm = louvain_communities(sub, cfg.gamma_mod,
                                  derive_seed(st.text_seed, SEED_COMMUNITIES));
    put_metric(st.metrics, "q_core", st.core.q_core);
    put_metric(st.metrics, "q_mod", st.comm.q_mod);

    fs::path d = text_dir(cfg, st.id);
    write_text_file((d / "partition.csv").string(),
                    partition_to_csv(st.core, st.comm, st.periphery_nodes));
    write_text_file((d / "partition.json").string(),
                    partition_to_json(st.core, st.comm, derive_seed(st.text_seed, SEED_CORE),
                                      derive_seed(st.text_seed, SEED_COMMUNITIES)));
    man.artifact_paths.push_back((d / "partition.csv").string());
    man.artifact_paths.push_back((d / "partition.json").string());
}

void stage_nulls(text_state& st, const shared_inputs& in, const run_config& cfg,
                 const std::string& hash, run_manifest& man) {
    if (st.filt.total.edges.empty())
        throw validation_error("total network has no edges; null ensembles undefined");
    st.fit = fit_weights(st.filt.total);
    fs::path d = text_dir(cfg, st.id);
    write_text_file((d / "weight_fit.json").string(), fit_to_json(st.fit));
    man.artifact_paths.push_back((d / "weight_fit.json").string());

    for (size_t mi = 0; mi < 5; ++mi) {
        const std::string model = kNullModels[mi];
        uint64_t model_master = derive_seed(st.text_seed, SEED_NULL_BASE + mi);
        std::vector<uint64_t> seeds = member_seeds(model_master, cfg.ensemble_size);

        fs::create_directories(d / "nulls" / model);
        std::vector<metric_map> results(seeds.size());
        std::vector<uint8_t> have(seeds.size(), 0);
        for (size_t i = 0; i < seeds.size(); ++i)
            have[i] = load_member_cache(member_cache_path(cfg, st.id, model, i), hash, model,
                                        seeds[i], results[i])
                          ? 1
                          : 0;

        std::vector<std::string> errors(seeds.size());
        unsigned jobs = std::max(1u, cfg.jobs);
        if (jobs <= 1) {
            for (size_t i = 0; i < seeds.size(); ++i) {
                if (have[i]) continue;
                try {
                    results[i] = compute_member(model, st, in, cfg, seeds[i]);
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        } else {
            std::atomic<size_t> next{0};
            auto worker = [&]() {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= seeds.size()) return;
                    if (have[i]) continue;
                    try {
                        results[i] = compute_member(model, st, in, cfg, seeds[i]);
                    } catch (const std::exception& e) {
                        errors[i] = e.what();
                    }
                }
            };
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
        for (size_t i = 0; i < seeds.size(); ++i)
            if (!errors[i].empty())
                throw validation_error(model + " member " + std::to_string(i) + ": " + errors[i]);

        ensemble_manifest em;
        em.model = model;
        em.master_seed = model_master;
        em.member_seeds = seeds;
        for (size_t i = 0; i < seeds.size(); ++i) {
            fs::path p = member_cache_path(cfg, st.id, model, i);
            if (!have[i]) write_member_cache(p, hash, model, seeds[i], results[i]);
            em.artifact_paths.push_back(p.string());
        }
        fs::path mp = d / "nulls" / model / "manifest.json";
        write_text_file(mp.string(), manifest_to_json(em));
        man.artifact_paths.push_back(mp.string());
    }
}

void stage_topology(text_state& st, const run_config& cfg, run_manifest& man) {
    st.bc_sentence = persistence(build_flag_filtration(st.filt));
    for (size_t d = 0; d < 3; ++d)
        put_metric(st.metrics, "nacl_sentence_dim" + std::to_string(d),
                   nacl(st.bc_sentence.dims[d], st.filt.n_sentences));

    uint64_t oaat_base = derive_seed(st.text_seed, SEED_OAAT_BASE);
    double sums[3] = {0.0, 0.0, 0.0};
    for (uint32_t s = 0; s < cfg.oaat_samples; ++s) {
        unit_step_filtration usf = oaat_unfurl(st.filt, derive_seed(oaat_base, s));
        st.oaat_length = usf.steps.size();
        barcode bo = persistence(build_flag_filtration(usf));
        for (size_t d = 0; d < 3; ++d) sums[d] += nacl(bo.dims[d], uint32_t(usf.steps.size()));
    }
    for (size_t d = 0; d < 3; ++d)
        put_metric(st.metrics, "nacl_oaat_dim" + std::to_string(d),
                   sums[d] / double(cfg.oaat_samples));

    fs::path dir = text_dir(cfg, st.id);
    write_text_file((dir / "barcode_sentence.csv").string(), barcode_to_csv(st.bc_sentence));
    write_text_file((dir / "betti_sentence.csv").string(),
                    betti_to_csv(betti_curves(st.bc_sentence, st.filt.n_sentences)));
    man.artifact_paths.push_back((dir / "barcode_sentence.csv").string());
    man.artifact_paths.push_back((dir / "betti_sentence.csv").string());
}

void stage_analysis(text_state& st, const run_config& cfg, const std::string& hash,
                    run_manifest& man) {
    st.reached = pipeline_stage::analysis;
    std::vector<step_curve> all_curves = introduction_curves(st.filt, st.core, &st.warnings);
    const step_curve* core_curve = nullptr;
    const step_curve* periph_curve = nullptr;
    for (const auto& c : all_curves) {
        if (c.group == "core") core_curve = &c;
        if (c.group == "periphery") periph_curve = &c;
    }
    if (core_curve && periph_curve) {
        put_metric(st.metrics, "area", curve_area_diff(*core_curve, *periph_curve));
        put_metric(st.metrics, "ks_core", ks_to_diagonal(*core_curve));
        put_metric(st.metrics, "ks_periphery", ks_to_diagonal(*periph_curve));
    } else {
        put_metric(st.metrics, "area", std::nan(""));
        put_metric(st.metrics, "ks_core", std::nan(""));
        put_metric(st.metrics, "ks_periphery", std::nan(""));
    }

    auto group_curves = edge_group_curves(st.filt, st.core, st.comm, st.periphery_nodes);
    for (auto& c : group_curves) all_curves.push_back(std::move(c));

    fs::path d = text_dir(cfg, st.id);
    write_text_file((d / "curves.csv").string(), curves_to_csv(all_curves));
    man.artifact_paths.push_back((d / "curves.csv").string());

    json j;
    j["config_hash"] = hash;
    j["text_id"] = st.id;
    j["stage"] = stage_name(st.reached);
    j["n_sentences"] = st.filt.n_sentences;
    j["oaat_length"] = st.oaat_length;
    j["metrics"] = metrics_to_json(st.metrics);
    j["warnings"] = st.warnings;
    write_text_file((d / "empirical.json").string(), j.dump(2) + "\n");
    man.artifact_paths.push_back((d / "empirical.json").string());
}

// empirical.json also backs partial runs: whatever stage was reached last
// writes it so report can see how far the data goes.
void write_partial_empirical(const text_state& st, const run_config& cfg,
                             const std::string& hash) {
    json j;
    j["config_hash"] = hash;
    j["text_id"] = st.id;
    j["stage"] = stage_name(st.reached);
    j["n_sentences"] = st.doc.sentences.empty() ? 0 : uint32_t(st.doc.sentence_count());
    j["oaat_length"] = st.oaat_length;
    j["metrics"] = metrics_to_json(st.metrics);
    j["warnings"] = st.warnings;
    fs::path d = text_dir(cfg, st.id);
    fs::create_directories(d);
    write_text_file((d / "empirical.json").string(), j.dump(2) + "\n");
}

// ---- summary/report emission (reads persisted caches only) ----

double percentile_of(double emp, const std::vector<double>& members) {
    size_t less = 0, equal = 0, valid = 0;
    for (double v : members) {
        if (std::isnan(v)) continue;
        ++valid;
        if (v < emp) ++less;
        else if (v == emp) ++equal;
    }
    if (valid == 0 || std::isnan(emp)) return std::nan("");
    return (double(less) + 0.5 * double(equal)) / double(valid);
}

struct cached_text {
    std::string id;
    json empirical;
    std::map<std::string, std::vector<metric_map>> members;  // model -> valid members
    std::map<std::string, size_t> member_expected;
};

cached_text load_cached_text(const run_config& cfg, const std::string& id,
                             const std::string& hash) {
    cached_text ct;
    ct.id = id;
    fs::path ep = text_dir(cfg, id) / "empirical.json";
    if (!fs::exists(ep))
        throw validation_error("no cached results for text '" + id + "'; run the pipeline first");
    ct.empirical = json::parse(read_text_file(ep.string()));
    if (ct.empirical.at("config_hash").get<std::string>() != hash)
        throw validation_error("cached results for text '" + id +
                               "' were produced by a different configuration; rerun");
    for (const char* model : kNullModels) {
        ct.member_expected[model] = cfg.ensemble_size;
        fs::path mdir = text_dir(cfg, id) / "nulls" / model;
        fs::path manifest = mdir / "manifest.json";
        if (!fs::exists(manifest)) continue;
        ensemble_manifest em;
        try {
            em = manifest_from_json(read_text_file(manifest.string()));
        } catch (const std::exception&) {
            continue;
        }
        std::vector<metric_map> valid;
        for (size_t i = 0; i < em.member_seeds.size(); ++i) {
            metric_map m;
            if (load_member_cache(member_cache_path(cfg, id, model, i), hash, model,
                                  em.member_seeds[i], m))
                valid.push_back(std::move(m));
        }
        ct.members[model] = std::move(valid);
    }
    return ct;
}

json build_summary(const cached_text& ct) {
    const json& e = ct.empirical;
    const json& met = e.at("metrics");
    auto num = [&](const char* key) -> json {
        if (met.contains(key) && met[key].is_number()) return met[key];
        return nullptr;
    };

    json s;
    s["text_id"] = ct.id;
    s["stage"] = e.value("stage", "?");
    s["n_sentences"] = e.value("n_sentences", 0u);
    s["node_count"] =
        met.contains("node_count") && met["node_count"].is_number()
            ? json(uint64_t(met["node_count"].get<double>()))
            : json(nullptr);
    s["edge_density"] = num("edge_density");
    s["q_core"] = num("q_core");
    s["q_mod"] = num("q_mod");
    s["area"] = num("area");
    json nacl_s, nacl_o;
    for (int d = 0; d < 3; ++d) {
        nacl_s["dim" + std::to_string(d)] = num(("nacl_sentence_dim" + std::to_string(d)).c_str());
        nacl_o["dim" + std::to_string(d)] = num(("nacl_oaat_dim" + std::to_string(d)).c_str());
    }
    s["nacl_sentence"] = nacl_s;
    s["nacl_oaat"] = nacl_o;
    json ks;
    ks["core"] = num("ks_core");
    ks["periphery"] = num("ks_periphery");
    s["ks_to_diagonal"] = ks;

    metric_map emp = metrics_from_json(met);
    json blocks;
    std::vector<std::string> notes;
    if (e.contains("warnings"))
        for (const auto& w : e["warnings"]) notes.push_back(w.get<std::string>());
    for (const char* model : kNullModels) {
        json block;
        auto it = ct.members.find(model);
        size_t n_valid = it == ct.members.end() ? 0 : it->second.size();
        size_t expected = ct.member_expected.count(model) ? ct.member_expected.at(model) : 0;
        if (n_valid < expected)
            notes.push_back(std::string(model) + ": " + std::to_string(n_valid) + "/" +
                            std::to_string(expected) + " cached members available");
        block["members"] = n_valid;
        json pct;
        for (const auto& key : model_metric_schema(model)) {
            std::vector<double> vals;
            if (it != ct.members.end())
                for (const auto& m : it->second) vals.push_back(get_metric(m, key));
            double p = percentile_of(get_metric(emp, key), vals);
            pct[key] = std::isnan(p) ? json(nullptr) : json(p);
        }
        block["percentile"] = pct;
        blocks[model] = block;
    }
    s["null_percentiles"] = blocks;
    s["warnings"] = notes;
    return s;
}

void emit_report(const run_config& cfg, const std::vector<cached_text>& texts,
                 const std::string& hash, run_manifest& man) {
    fs::path rdir = fs::path(cfg.output_dir) / "report";
    fs::create_directories(rdir);

    // features per text for the correlation matrix
    static const std::vector<std::string> base_features = {
        "node_count", "edge_density", "q_core",  "q_mod",       "area",
        "nacl_sentence_dim1", "nacl_oaat_dim1", "ks_core", "ks_periphery"};

    std::vector<rating_row> ratings;
    std::string ratings_note;
    if (!cfg.ratings_path.empty()) {
        ratings = load_ratings_csv(cfg.ratings_path);
        if (ratings.empty()) ratings_note = "ratings table has no rows with >= 5 ratings";
    } else {
        ratings_note = "no ratings table configured; rating correlations omitted";
    }

    std::map<std::string, double> rating_of;
    for (const auto& r : ratings) rating_of[r.text_id] = r.avg_rating;

    bool use_ratings = !ratings.empty();
    std::vector<std::string> features = base_features;
    if (use_ratings) features.push_back("avg_rating");

    std::vector<std::vector<double>> rows;  // texts x features
    std::vector<double> areas;
    for (const auto& ct : texts) {
        metric_map m = metrics_from_json(ct.empirical.at("metrics"));
        double a = get_metric(m, "area");
        if (!std::isnan(a)) areas.push_back(a);
        if (use_ratings && !rating_of.count(ct.id)) continue;
        std::vector<double> row;
        bool ok = true;
        for (const auto& f : base_features) {
            double v = get_metric(m, f);
            if (std::isnan(v)) ok = false;
            row.push_back(v);
        }
        if (use_ratings) row.push_back(rating_of[ct.id]);
        if (ok) rows.push_back(std::move(row));
    }

    json stats;
    stats["config_hash"] = hash;
    json tids = json::array();
    for (const auto& ct : texts) tids.push_back(ct.id);
    stats["texts"] = tids;

    if (areas.size() >= 2) {
        try {
            stat_result tr = t_test_one_sample(areas, 0.0);
            json tj;
            tj["statistic"] = tr.statistic;
            tj["pvalue"] = tr.pvalue;
            tj["n"] = tr.n;
            stats["area_t_test"] = tj;
        } catch (const std::exception& e) {
            stats["area_t_test"] = json{{"note", e.what()}};
        }
    } else {
        stats["area_t_test"] =
            json{{"note", "fewer than 2 texts with a defined area; t-test skipped"}};
    }
    if (!ratings_note.empty()) stats["ratings_note"] = ratings_note;

    std::string corr_path;
    if (rows.size() >= 3) {
        correlation_matrix cm;
        cm.features = features;
        size_t nf = features.size();
        cm.rho.assign(nf, std::vector<double>(nf, std::nan("")));
        cm.p.assign(nf, std::vector<double>(nf, std::nan("")));
        for (size_t a = 0; a < nf; ++a) {
            for (size_t b = 0; b < nf; ++b) {
                std::vector<double> xa, xb;
                for (const auto& row : rows) {
                    xa.push_back(row[a]);
                    xb.push_back(row[b]);
                }
                try {
                    stat_result r = spearman(xa, xb);
                    cm.rho[a][b] = r.statistic;
                    cm.p[a][b] = r.pvalue;
                } catch (const std::exception&) {
                    // zero-variance feature; leave nan
                }
            }
        }
        corr_path = (rdir / "correlation.csv").string();
        write_text_file(corr_path, correlation_to_csv(cm));
        man.artifact_paths.push_back(corr_path);
        stats["correlation_csv"] = corr_path;
        stats["correlation_texts"] = rows.size();
    } else {
        stats["correlation_csv"] = nullptr;
        stats["correlation_note"] =
            use_ratings ? "fewer than 3 rated texts with complete metrics; matrix skipped"
                        : "fewer than 3 texts with complete metrics; matrix skipped";
    }

    fs::path sp = rdir / "statistics.json";
    write_text_file(sp.string(), stats.dump(2) + "\n");
    man.artifact_paths.push_back(sp.string());
}

void emit_summaries(const run_config& cfg, const std::vector<std::string>& ids,
                    const std::string& hash, run_manifest& man) {
    std::vector<cached_text> texts;
    for (const auto& id : ids) texts.push_back(load_cached_text(cfg, id, hash));
    for (const auto& ct : texts) {
        fs::path p = text_dir(cfg, ct.id) / "summary.json";
        write_text_file(p.string(), build_summary(ct).dump(2) + "\n");
        man.artifact_paths.push_back(p.string());
    }
    emit_report(cfg, texts, hash, man);
}

void write_run_manifest(const run_config& cfg, const run_manifest& man) {
    json j;
    j["config_hash"] = man.config_hash;
    j["master_seed"] = man.master_seed;
    j["complete"] = man.complete;
    j["texts"] = man.text_ids;
    j["artifacts"] = man.artifact_paths;
    json timings = json::array();
    for (const auto& t : man.timings) {
        json tj;
        tj["stage"] = t.stage;
        tj["seconds"] = t.seconds;
        timings.push_back(tj);
    }
    j["stage_timings"] = timings;
    j["failures"] = man.failures;
    write_text_file((fs::path(cfg.output_dir) / "manifest.json").string(), j.dump(2) + "\n");
}

}  // namespace

run_manifest run_pipeline(const run_config& cfg, pipeline_stage through) {
    validate_run_config(cfg);
    const std::string hash = fingerprint_hex(config_fingerprint(cfg));

    shared_inputs in;
    in.stops = stop_list::load(cfg.stoplist_path);
    in.dict = dictionary::load(cfg.dictionary_path);
    if (!cfg.abbreviations_path.empty())
        in.splitter = splitter_config::load(cfg.abbreviations_path);
    in.freq = corpus_frequency_table::load(cfg.frequency_table_path);
    in.ext.max_phrase_words = cfg.max_phrase_words;
    in.ext.min_keyword_chars = cfg.min_keyword_chars;
    in.ext.min_keyword_freq = cfg.min_keyword_freq;
    in.ext.index_fraction = cfg.index_fraction;

    run_manifest man;
    man.config_hash = hash;
    man.master_seed = cfg.master_seed;

    fs::create_directories(cfg.output_dir);

    std::map<std::string, double> stage_seconds;
    std::vector<std::string> completed_ids;
    std::set<std::string> seen_ids;

    for (size_t ti = 0; ti < cfg.corpus_paths.size(); ++ti) {
        text_state st;
        st.path = cfg.corpus_paths[ti];
        st.id = text_id_from_path(st.path);
        if (!seen_ids.insert(st.id).second)
            throw validation_error("duplicate text id '" + st.id + "' in corpus list");
        st.text_seed = derive_seed(cfg.master_seed, ti);
        man.text_ids.push_back(st.id);
        fs::create_directories(text_dir(cfg, st.id));

        bool failed = false;
        for (int si = 0; si <= int(through) && !failed; ++si) {
            pipeline_stage s = pipeline_stage(si);
            auto t0 = std::chrono::steady_clock::now();
            try {
                switch (s) {
                    case pipeline_stage::ingest: stage_ingest(st, in); break;
                    case pipeline_stage::extract: stage_extract(st, in, cfg, man); break;
                    case pipeline_stage::build: stage_build(st, cfg, man); break;
                    case pipeline_stage::mesoscale: stage_mesoscale(st, cfg, man); break;
                    case pipeline_stage::nulls: stage_nulls(st, in, cfg, hash, man); break;
                    case pipeline_stage::topology: stage_topology(st, cfg, man); break;
                    case pipeline_stage::analysis: stage_analysis(st, cfg, hash, man); break;
                }
                st.reached = s;
            } catch (const std::exception& e) {
                man.failures.push_back(st.id + "/" + stage_name(s) + ": " + e.what());
                failed = true;
            }
            auto t1 = std::chrono::steady_clock::now();
            stage_seconds[stage_name(s)] +=
                std::chrono::duration<double>(t1 - t0).count();
        }
        if (failed) {
            write_partial_empirical(st, cfg, hash);
            continue;
        }
        if (through != pipeline_stage::analysis && st.reached >= pipeline_stage::build)
            write_partial_empirical(st, cfg, hash);
        completed_ids.push_back(st.id);
    }

    for (int si = 0; si <= int(through); ++si) {
        const char* name = stage_name(pipeline_stage(si));
        man.timings.push_back({name, stage_seconds[name]});
    }

    if (through == pipeline_stage::analysis && !completed_ids.empty())
        emit_summaries(cfg, completed_ids, hash, man);

    man.complete = man.failures.empty() && through == pipeline_stage::analysis &&
                   completed_ids.size() == cfg.corpus_paths.size();
    write_run_manifest(cfg, man);
    if (!man.failures.empty()) {
        std::string msg = "pipeline finished with failures:";
        for (const auto& f : man.failures) msg += "\n  " + f;
        throw validation_error(msg);
    }
    return man;
}

run_manifest export_report(const run_config& cfg) {
    validate_run_config(cfg);
    const std::string hash = fingerprint_hex(config_fingerprint(cfg));
    run_manifest man;
    man.config_hash = hash;
    man.master_seed = cfg.master_seed;
    std::vector<std::string> ids;
    for (const auto& p : cfg.corpus_paths) {
        man.text_ids.push_back(text_id_from_path(p));
        ids.push_back(text_id_from_path(p));
    }
    emit_summaries(cfg, ids, hash, man);
    man.complete = true;
    return man;
}

}  // namespace textnet
