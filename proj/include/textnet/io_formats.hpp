#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textnet/analysis.hpp"
#include "textnet/concept_extraction.hpp"
#include "textnet/mesoscale.hpp"
#include "textnet/semantic_network.hpp"
#include "textnet/topology.hpp"
#include "textnet/weight_fit.hpp"

namespace textnet {

// Numeric formatting shared by all emitters: shortest round-trip decimal via
// std::to_chars, so identical doubles always serialize identically.
std::string format_double(double x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// index list <-> TSV (rank, phrase, rake_score, final_score)
std::string index_to_tsv(const index_list& idx);
index_list index_from_tsv(const std::string& content);

// filtration <-> CSV (kind,id(s),birth_sentence); node rows "node,<id>,<birth>",
// edge rows "edge,<u>:<v>,<birth>". Labels carried in a companion TSV.
std::string filtration_to_csv(const expositional_filtration& filt);
expositional_filtration filtration_from_csv(const std::string& content);

std::string labels_to_tsv(const std::vector<std::string>& labels);
std::vector<std::string> labels_from_tsv(const std::string& content);

// total network <-> weighted edge list CSV (u,v,weight)
std::string network_to_csv(const semantic_network& net);
semantic_network network_from_csv(const std::string& content, uint32_t node_count);

// partition CSV (node,role,community_id; -1 for core nodes)
std::string partition_to_csv(const core_partition& part, const community_partition& comm,
                             const std::vector<node_id>& periphery_nodes);

// partition JSON record (q_core, q_mod, gammas, seeds)
std::string partition_to_json(const core_partition& part, const community_partition& comm,
                              uint64_t core_seed, uint64_t comm_seed);

// barcode <-> CSV (dim,birth,death with literal "inf")
std::string barcode_to_csv(const barcode& bc);
barcode barcode_from_csv(const std::string& content);

// Betti curves CSV (t,beta0,beta1,beta2)
std::string betti_to_csv(const std::vector<std::array<uint32_t, 3>>& curves);

// development curves CSV (t,value,group)
std::string curves_to_csv(const std::vector<step_curve>& curves);

// weight fit <-> JSON (family, params, D, p)
std::string fit_to_json(const weight_fit& fit);
weight_fit fit_from_json(const std::string& content);

// ensemble manifest JSON (model, master_seed, member seeds, artifact paths)
struct ensemble_manifest {
    std::string model;
    uint64_t master_seed = 0;
    std::vector<uint64_t> member_seeds;
    std::vector<std::string> artifact_paths;
};
std::string manifest_to_json(const ensemble_manifest& m);
ensemble_manifest manifest_from_json(const std::string& content);

// correlation matrix CSV: feature x feature rho and p, one block after the
// other (rho header row, then p header row)
struct correlation_matrix {
    std::vector<std::string> features;
    std::vector<std::vector<double>> rho;  // features x features
    std::vector<std::vector<double>> p;
};
std::string correlation_to_csv(const correlation_matrix& m);

// ratings CSV (text_id,avg_rating,n_ratings); rows with fewer than min_ratings
// are dropped at load
struct rating_row {
    std::string text_id;
    double avg_rating = 0.0;
    uint32_t n_ratings = 0;
};
std::vector<rating_row> load_ratings_csv(const std::string& path, uint32_t min_ratings = 5);

}  // namespace textnet
