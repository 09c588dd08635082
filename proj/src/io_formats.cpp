#include "textnet/io_formats.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "textnet/errors.hpp"
#include "textnet/util.hpp"

namespace textnet {

using json = nlohmann::ordered_json;

std::string format_double(double x) {
    std::array<char, 64> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc()) throw invariant_error("format_double: conversion failed");
    return std::string(buf.data(), ptr);
}

namespace {

double parse_double(const std::string& s, const char* what) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ingestion_error(std::string(what) + ": bad number '" + s + "'");
    return out;
}

uint64_t parse_u64(const std::string& s, const char* what) {
    uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ingestion_error(std::string(what) + ": bad integer '" + s + "'");
    return out;
}

std::vector<std::string> data_lines(const std::string& content) {
    std::vector<std::string> out;
    for (auto& line : split(content, '\n')) {
        std::string t = trim(line);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ingestion_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ingestion_error("cannot write " + path);
    out << content;
    if (!out) throw ingestion_error("write failed for " + path);
}

std::string index_to_tsv(const index_list& idx) {
    std::string out = "rank\tphrase\trake_score\tfinal_score\n";
    for (size_t i = 0; i < idx.entries.size(); ++i) {
        const auto& e = idx.entries[i];
        out += std::to_string(i + 1);
        out += '\t';
        out += e.phrase;
        out += '\t';
        out += format_double(e.rake_score);
        out += '\t';
        out += format_double(e.final_score);
        out += '\n';
    }
    return out;
}

index_list index_from_tsv(const std::string& content) {
    index_list idx;
    auto lines = data_lines(content);
    for (size_t i = 0; i < lines.size(); ++i) {
        if (i == 0 && lines[i].rfind("rank\t", 0) == 0) continue;
        auto cols = split(lines[i], '\t');
        if (cols.size() != 4) throw ingestion_error("index tsv: expected 4 columns");
        index_entry e;
        e.phrase = cols[1];
        e.rake_score = parse_double(cols[2], "index tsv rake_score");
        e.final_score = parse_double(cols[3], "index tsv final_score");
        idx.entries.push_back(std::move(e));
    }
    return idx;
}

std::string filtration_to_csv(const expositional_filtration& filt) {
    std::string out = "kind,id,birth_sentence\n";
    // header row for context: n_sentences and node_count ride along as a
    // pseudo-row so the CSV round-trips without a sidecar
    out += "meta," + std::to_string(filt.total.node_count) + ":" +
           std::to_string(filt.n_sentences) + ",0\n";
    for (node_id i = 0; i < filt.total.node_count; ++i) {
        if (filt.node_birth[i] == 0) continue;
        out += "node," + std::to_string(i) + "," + std::to_string(filt.node_birth[i]) + "\n";
    }
    for (size_t e = 0; e < filt.total.edges.size(); ++e) {
        const auto& edge = filt.total.edges[e];
        out += "edge," + std::to_string(edge.u) + ":" + std::to_string(edge.v) + "," +
               std::to_string(filt.edge_birth[e]) + "\n";
    }
    return out;
}

expositional_filtration filtration_from_csv(const std::string& content) {
    expositional_filtration filt;
    bool meta_seen = false;
    std::vector<std::pair<weighted_edge, uint32_t>> edges;
    for (const auto& line : data_lines(content)) {
        if (line.rfind("kind,", 0) == 0) continue;
        auto cols = split(line, ',');
        if (cols.size() != 3) throw ingestion_error("filtration csv: expected 3 columns");
        if (cols[0] == "meta") {
            auto parts = split(cols[1], ':');
            if (parts.size() != 2) throw ingestion_error("filtration csv: bad meta row");
            filt.total.node_count = size_t(parse_u64(parts[0], "filtration meta nodes"));
            filt.n_sentences = uint32_t(parse_u64(parts[1], "filtration meta sentences"));
            filt.node_birth.assign(filt.total.node_count, 0);
            meta_seen = true;
        } else if (cols[0] == "node") {
            if (!meta_seen) throw ingestion_error("filtration csv: meta row must come first");
            node_id id = node_id(parse_u64(cols[1], "filtration node id"));
            if (id >= filt.total.node_count)
                throw ingestion_error("filtration csv: node id out of range");
            filt.node_birth[id] = uint32_t(parse_u64(cols[2], "filtration node birth"));
        } else if (cols[0] == "edge") {
            if (!meta_seen) throw ingestion_error("filtration csv: meta row must come first");
            auto parts = split(cols[1], ':');
            if (parts.size() != 2) throw ingestion_error("filtration csv: bad edge id");
            weighted_edge e;
            e.u = node_id(parse_u64(parts[0], "filtration edge u"));
            e.v = node_id(parse_u64(parts[1], "filtration edge v"));
            e.w = 0.0;
            edges.emplace_back(e, uint32_t(parse_u64(cols[2], "filtration edge birth")));
        } else {
            throw ingestion_error("filtration csv: unknown kind '" + cols[0] + "'");
        }
    }
    if (!meta_seen) throw ingestion_error("filtration csv: missing meta row");
    for (auto& [e, birth] : edges) {
        filt.total.add_edge(e.u, e.v, 1.0);
        filt.edge_birth.push_back(birth);
    }
    return filt;
}

std::string labels_to_tsv(const std::vector<std::string>& labels) {
    std::string out;
    for (size_t i = 0; i < labels.size(); ++i)
        out += std::to_string(i) + "\t" + labels[i] + "\n";
    return out;
}

std::vector<std::string> labels_from_tsv(const std::string& content) {
    std::vector<std::string> labels;
    for (const auto& line : data_lines(content)) {
        auto cols = split(line, '\t');
        if (cols.size() != 2) throw ingestion_error("labels tsv: expected 2 columns");
        size_t id = size_t(parse_u64(cols[0], "labels tsv id"));
        if (labels.size() <= id) labels.resize(id + 1);
        labels[id] = cols[1];
    }
    return labels;
}

std::string network_to_csv(const semantic_network& net) {
    std::string out = "u,v,weight\n";
    for (const auto& e : net.edges)
        out += std::to_string(e.u) + "," + std::to_string(e.v) + "," + format_double(e.w) + "\n";
    return out;
}

semantic_network network_from_csv(const std::string& content, uint32_t node_count) {
    semantic_network net;
    net.node_count = node_count;
    for (const auto& line : data_lines(content)) {
        if (line.rfind("u,", 0) == 0) continue;
        auto cols = split(line, ',');
        if (cols.size() != 3) throw ingestion_error("network csv: expected 3 columns");
        net.add_edge(node_id(parse_u64(cols[0], "network u")),
                     node_id(parse_u64(cols[1], "network v")),
                     parse_double(cols[2], "network weight"));
    }
    net.sort_edges();
    return net;
}

std::string partition_to_csv(const core_partition& part, const community_partition& comm,
                             const std::vector<node_id>& periphery_nodes) {
    std::vector<int64_t> comm_of(part.is_core.size(), -1);
    for (size_t i = 0; i < periphery_nodes.size() && i < comm.assignment.size(); ++i)
        comm_of[periphery_nodes[i]] = comm.assignment[i];
    std::string out = "node,role,community_id\n";
    for (size_t i = 0; i < part.is_core.size(); ++i) {
        out += std::to_string(i) + ",";
        out += part.is_core[i] ? "core" : "periphery";
        out += "," + std::to_string(comm_of[i]) + "\n";
    }
    return out;
}

std::string partition_to_json(const core_partition& part, const community_partition& comm,
                              uint64_t core_seed, uint64_t comm_seed) {
    json j;
    j["q_core"] = part.q_core;
    j["q_mod"] = comm.q_mod;
    j["gamma_core"] = part.gamma;
    j["gamma_mod"] = comm.gamma;
    j["core_seed"] = core_seed;
    j["community_seed"] = comm_seed;
    j["core_size"] = size_t(std::count(part.is_core.begin(), part.is_core.end(), uint8_t(1)));
    j["community_count"] = comm.community_count;
    j["degenerate_core"] = part.degenerate;
    return j.dump(2) + "\n";
}

std::string barcode_to_csv(const barcode& bc) {
    std::string out = "dim,birth,death\n";
    for (size_t d = 0; d < 3; ++d) {
        for (const auto& b : bc.dims[d]) {
            out += std::to_string(d) + "," + std::to_string(b.birth) + ",";
            out += (b.death == INF_DEATH) ? "inf" : std::to_string(b.death);
            out += "\n";
        }
    }
    return out;
}

barcode barcode_from_csv(const std::string& content) {
    barcode bc;
    for (const auto& line : data_lines(content)) {
        if (line.rfind("dim,", 0) == 0) continue;
        auto cols = split(line, ',');
        if (cols.size() != 3) throw ingestion_error("barcode csv: expected 3 columns");
        size_t dim = size_t(parse_u64(cols[0], "barcode dim"));
        if (dim > 2) throw ingestion_error("barcode csv: dim out of range");
        bar b;
        b.birth = uint32_t(parse_u64(cols[1], "barcode birth"));
        b.death = (cols[2] == "inf") ? INF_DEATH : uint32_t(parse_u64(cols[2], "barcode death"));
        bc.dims[dim].push_back(b);
    }
    return bc;
}

std::string betti_to_csv(const std::vector<std::array<uint32_t, 3>>& curves) {
    std::string out = "t,beta0,beta1,beta2\n";
    for (size_t t = 0; t < curves.size(); ++t)
        out += std::to_string(t) + "," + std::to_string(curves[t][0]) + "," +
               std::to_string(curves[t][1]) + "," + std::to_string(curves[t][2]) + "\n";
    return out;
}

std::string curves_to_csv(const std::vector<step_curve>& curves) {
    std::string out = "t,value,group\n";
    for (const auto& c : curves)
        for (size_t i = 0; i < c.t.size(); ++i)
            out += format_double(c.t[i]) + "," + format_double(c.v[i]) + "," + c.group + "\n";
    return out;
}

std::string fit_to_json(const weight_fit& fit) {
    json j;
    j["family"] = family_name(fit.family);
    j["params"] = fit.params;
    j["D"] = fit.ks_d;
    j["p"] = fit.ks_p;
    j["degenerate"] = fit.degenerate;
    json cands = json::array();
    for (const auto& c : fit.candidates) {
        json cj;
        cj["family"] = family_name(c.family);
        cj["params"] = c.params;
        cj["D"] = c.ks_d;
        cj["applicable"] = c.applicable;
        cands.push_back(std::move(cj));
    }
    j["candidates"] = std::move(cands);
    return j.dump(2) + "\n";
}

namespace {

fit_family family_from_name(const std::string& name) {
    static const std::pair<const char*, fit_family> table[] = {
        {"pareto", fit_family::pareto},       {"log_normal", fit_family::log_normal},
        {"levy", fit_family::levy},           {"burr", fit_family::burr},
        {"fisk", fit_family::fisk},           {"log_gamma", fit_family::log_gamma},
        {"log_laplace", fit_family::log_laplace}, {"power_law", fit_family::power_law},
        {"point_mass", fit_family::point_mass},
    };
    for (const auto& [n, f] : table)
        if (name == n) return f;
    throw ingestion_error("unknown fit family '" + name + "'");
}

}  // namespace

weight_fit fit_from_json(const std::string& content) {
    json j = json::parse(content, nullptr, true);
    weight_fit fit;
    fit.family = family_from_name(j.at("family").get<std::string>());
    fit.params = j.at("params").get<std::vector<double>>();
    fit.ks_d = j.at("D").get<double>();
    fit.ks_p = j.at("p").get<double>();
    fit.degenerate = j.value("degenerate", false);
    if (j.contains("candidates")) {
        for (const auto& cj : j["candidates"]) {
            family_fit c;
            c.family = family_from_name(cj.at("family").get<std::string>());
            c.params = cj.at("params").get<std::vector<double>>();
            // D serializes as null when a family was inapplicable (JSON has no inf)
            c.ks_d = cj.at("D").is_number() ? cj.at("D").get<double>()
                                            : std::numeric_limits<double>::infinity();
            c.applicable = cj.value("applicable", true);
            fit.candidates.push_back(std::move(c));
        }
    }
    return fit;
}

std::string manifest_to_json(const ensemble_manifest& m) {
    json j;
    j["model"] = m.model;
    j["master_seed"] = m.master_seed;
    j["member_seeds"] = m.member_seeds;
    j["artifact_paths"] = m.artifact_paths;
    return j.dump(2) + "\n";
}

ensemble_manifest manifest_from_json(const std::string& content) {
    json j = json::parse(content, nullptr, true);
    ensemble_manifest m;
    m.model = j.at("model").get<std::string>();
    m.master_seed = j.at("master_seed").get<uint64_t>();
    m.member_seeds = j.at("member_seeds").get<std::vector<uint64_t>>();
    m.artifact_paths = j.at("artifact_paths").get<std::vector<std::string>>();
    return m;
}

std::string correlation_to_csv(const correlation_matrix& m) {
    size_t n = m.features.size();
    if (m.rho.size() != n || m.p.size() != n)
        throw validation_error("correlation matrix: dimension mismatch");
    std::string out;
    auto block = [&](const char* tag, const std::vector<std::vector<double>>& grid) {
        out += tag;
        for (const auto& f : m.features) out += "," + f;
        out += "\n";
        for (size_t i = 0; i < n; ++i) {
            if (grid[i].size() != n)
                throw validation_error("correlation matrix: ragged row");
            out += m.features[i];
            for (size_t jx = 0; jx < n; ++jx) out += "," + format_double(grid[i][jx]);
            out += "\n";
        }
    };
    block("rho", m.rho);
    block("p", m.p);
    return out;
}

std::vector<rating_row> load_ratings_csv(const std::string& path, uint32_t min_ratings) {
    std::string content = read_text_file(path);
    std::vector<rating_row> rows;
    bool first = true;
    for (const auto& line : data_lines(content)) {
        if (first && line.rfind("text_id,", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        auto cols = split(line, ',');
        if (cols.size() != 3) throw ingestion_error("ratings csv: expected 3 columns");
        rating_row r;
        r.text_id = cols[0];
        r.avg_rating = parse_double(cols[1], "ratings avg_rating");
        r.n_ratings = uint32_t(parse_u64(cols[2], "ratings n_ratings"));
        if (r.n_ratings >= min_ratings) rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace textnet
