#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "diar/config.hpp"
#include "diar/error.hpp"
#include "diar/metrics.hpp"
#include "diar/pipeline.hpp"
#include "diar/rttm.hpp"
#include "diar/textio.hpp"
#include "diar/version.hpp"

namespace {

void emit_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& warning : warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
}

void emit_report(const std::string& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report;
    } else {
        diar::write_text_file(report, out_path);
    }
}

int run(int argc, char** argv) {
    CLI::App app{"speaker diarization toolkit"};
    app.set_version_flag("--version", diar::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int jobs = 1;
    CLI::App* diarize = app.add_subcommand("diarize", "run the diarization pipeline");
    diarize->add_option("--config", config_path, "pipeline config file")->required();
    diarize->add_option("--out", out_dir, "output directory")->required();
    diarize->add_option("--jobs", jobs, "worker threads")->default_val(1);

    CLI::App* fuse = app.add_subcommand("fuse", "fuse hypotheses from several systems");
    fuse->add_option("--config", config_path, "fusion config file")->required();
    fuse->add_option("--out", out_dir, "output directory")->required();

    std::string ref_path;
    std::string hyp_path;
    std::string out_file;
    std::int64_t collar_ms = 250;
    bool no_overlap_scoring = false;
    std::string score_config_path;
    CLI::App* score = app.add_subcommand("score", "score a hypothesis against a reference");
    score->add_option("REF", ref_path, "reference RTTM")->required();
    score->add_option("HYP", hyp_path, "hypothesis RTTM")->required();
    CLI::Option* collar_opt = score->add_option("--collar", collar_ms, "collar in ms");
    CLI::Option* no_overlap_opt =
        score->add_flag("--no-overlap-scoring", no_overlap_scoring, "exclude overlapped speech");
    score->add_option("--config", score_config_path,
                      "pipeline config supplying [scoring] defaults");
    score->add_option("--out", out_file, "report file (default: stdout)");

    diar::SimulateOptions sim;
    CLI::App* simulate = app.add_subcommand("simulate", "generate a synthetic corpus");
    simulate->add_option("--out", out_dir, "output directory")->required();
    simulate->add_option("--recordings", sim.recordings, "number of recordings");
    simulate->add_option("--speakers", sim.base.num_speakers, "speakers per recording");
    simulate->add_option("--duration-ms", sim.base.duration_ms, "recording length in ms");
    simulate->add_option("--dim", sim.base.dim, "embedding dimension");
    simulate->add_option("--noise-sigma", sim.base.noise_sigma, "embedding noise sigma");
    simulate->add_option("--overlap", sim.base.overlap_ratio_target,
                         "target overlap fraction of speech time");
    simulate->add_option("--mean-turn-ms", sim.base.mean_turn_ms, "mean turn length in ms");
    simulate->add_option("--min-angle", sim.base.min_centroid_angle_deg,
                         "minimum pairwise centroid angle in degrees");
    simulate->add_option("--leakage", sim.base.leakage_ratio, "leakage turn fraction");
    simulate->add_option("--seed", sim.base.seed, "base random seed");
    simulate->add_option("--prefix", sim.prefix, "recording id prefix");

    CLI::App* stats = app.add_subcommand("stats", "summarize a reference RTTM");
    stats->add_option("REF", ref_path, "reference RTTM")->required();
    stats->add_option("--out", out_file, "report file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (*diarize) {
        const diar::PipelineConfig cfg = diar::load_pipeline_config(config_path);
        const diar::PipelineRun run = diar::execute_pipeline(cfg, jobs);
        for (const diar::RecordingRun& rec : run.recordings) {
            emit_warnings(rec.warnings);
        }
        diar::write_run_outputs(run, out_dir, diar::read_text_file(config_path));
    } else if (*fuse) {
        const diar::FusionRun run = diar::run_fusion_file(config_path);
        emit_warnings(run.warnings);
        diar::write_fusion_outputs(run, out_dir, diar::read_text_file(config_path));
    } else if (*score) {
        diar::ScoringConfig cfg;
        if (!score_config_path.empty()) {
            cfg = diar::load_pipeline_config(score_config_path).scoring;
        }
        if (collar_opt->count() > 0) {
            cfg.collar_ms = collar_ms;
        }
        if (no_overlap_opt->count() > 0) {
            cfg.score_overlap = false;
        }
        if (cfg.collar_ms < 0) {
            throw diar::ConfigError("collar must be nonnegative");
        }
        emit_report(diar::run_score(ref_path, hyp_path, cfg), out_file);
    } else if (*simulate) {
        diar::run_simulate(sim, out_dir);
    } else if (*stats) {
        emit_report(diar::format_corpus_stats(diar::corpus_stats(diar::parse_rttm_file(ref_path))),
                    out_file);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const diar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
