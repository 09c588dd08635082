#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "textnet/config.hpp"
#include "textnet/pipeline.hpp"

namespace {

struct cli_options {
    std::string config_path;
    uint64_t seed = 0;
    bool seed_set = false;
    unsigned jobs = 1;
    std::string only_stage;
};

textnet::run_config load_options(const cli_options& opt) {
    textnet::run_config cfg = textnet::load_run_config(opt.config_path);
    if (opt.seed_set) cfg.master_seed = opt.seed;
    cfg.jobs = opt.jobs;
    return cfg;
}

void add_common(CLI::App* cmd, cli_options& opt) {
    cmd->add_option("--config", opt.config_path, "run configuration file (key = value lines)")
        ->required();
    cmd->add_option("--seed", opt.seed, "master seed override")
        ->each([&opt](const std::string&) { opt.seed_set = true; });
    cmd->add_option("--jobs", opt.jobs, "worker threads for ensemble members")
        ->check(CLI::Range(1u, 256u));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"growing semantic network analysis pipeline"};
    app.require_subcommand(1);

    cli_options opt;

    CLI::App* validate = app.add_subcommand("validate", "check a configuration and exit");
    add_common(validate, opt);

    CLI::App* run = app.add_subcommand("run", "execute the pipeline");
    add_common(run, opt);
    run->add_option("--only", opt.only_stage,
                    "run the stages up to and including STAGE "
                    "(ingest|extract|build|mesoscale|nulls|topology|analysis)");

    CLI::App* report = app.add_subcommand("report", "re-emit summaries from cached artifacts");
    add_common(report, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            textnet::run_config cfg = load_options(opt);
            textnet::validate_run_config(cfg);
            std::printf("config ok: %zu text(s), ensemble size %u, master seed %llu\n",
                        cfg.corpus_paths.size(), cfg.ensemble_size,
                        static_cast<unsigned long long>(cfg.master_seed));
            std::printf("fingerprint %s\n",
                        textnet::fingerprint_hex(textnet::config_fingerprint(cfg)).c_str());
            return 0;
        }
        if (run->parsed()) {
            textnet::run_config cfg = load_options(opt);
            textnet::pipeline_stage through = textnet::pipeline_stage::analysis;
            if (!opt.only_stage.empty()) through = textnet::stage_from_name(opt.only_stage);
            textnet::run_manifest man = textnet::run_pipeline(cfg, through);
            std::printf("run %s: %zu text(s), %zu artifact(s)\n",
                        man.complete ? "complete" : "partial", man.text_ids.size(),
                        man.artifact_paths.size());
            for (const auto& t : man.timings)
                std::printf("  %-10s %.3fs\n", t.stage.c_str(), t.seconds);
            return 0;
        }
        if (report->parsed()) {
            textnet::run_config cfg = load_options(opt);
            textnet::run_manifest man = textnet::export_report(cfg);
            std::printf("report: %zu text(s), %zu artifact(s)\n", man.text_ids.size(),
                        man.artifact_paths.size());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
