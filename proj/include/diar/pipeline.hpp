#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "diar/clustering.hpp"
#include "diar/config.hpp"
#include "diar/fusion.hpp"
#include "diar/metrics.hpp"
#include "diar/segmentation.hpp"
#include "diar/synthetic.hpp"

namespace diar {

struct RecordingInputs {
    std::string recording_id;
    std::string uem_path;
    std::array<std::optional<std::string>, 2> channel_paths;
};

struct LeakageOptions {
    double filter_threshold = 0.2;
    std::string reference_config_path;
    bool channel1_only = false;
};

// Declarative description of a diarization run. Sections:
//   [recordings]    <id>.channel0 / <id>.channel1 / <id>.uem = path
//   [segmentation]  merge_threshold
//   [clustering]    ahc_stop_threshold, min_speaker_duration_ms, sv_threshold
//   [leakage]       filter_threshold, reference_config, channel1_only
//   [scoring]       collar_ms, score_overlap
// Relative paths resolve against the config file's directory. Unknown keys
// are errors. When [leakage] is present, the run described by
// reference_config is executed in memory per recording and its speaker
// centroids drive the segment filter; that reference run may not itself
// request leakage filtering.
struct PipelineConfig {
    std::vector<RecordingInputs> recordings;   // sorted by recording_id
    SegmentationConfig segmentation;
    ClusteringConfig clustering;
    std::optional<LeakageOptions> leakage;
    ScoringConfig scoring;
};

PipelineConfig parse_pipeline_config(ConfigFile file);
PipelineConfig load_pipeline_config(const std::string& path);

struct RecordingRun {
    std::string recording_id;
    DiarizationResult result;
    std::vector<std::string> warnings;
};

struct PipelineRun {
    std::vector<RecordingRun> recordings;   // same order as the config
};

// Segments, filters, and clusters every recording. Recordings are
// independent work units; `jobs` bounds the worker threads and has no
// effect on the result.
PipelineRun execute_pipeline(const PipelineConfig& cfg, int jobs = 1);

// Writes <id>.rttm per recording, a combined all.rttm, and manifest.json
// (version, verbatim config text, per-recording outputs and warnings).
void write_run_outputs(const PipelineRun& run, const std::string& out_dir,
                       const std::string& config_text);

// Hypothesis fusion across systems, driven by a [fusion] section:
//   root = <system id>
//   vote_threshold = <real>            (default 1.0)
//   input.<id>.rttm = path             (declaration order = voting order)
//   input.<id>.weight = <real>
// Recordings present in the root but missing from a voter get no vote mass
// from it; recordings absent from the root are skipped with a warning.
struct FusionRun {
    std::vector<Hypothesis> fused;
    std::vector<std::string> warnings;
};

FusionRun run_fusion_config(ConfigFile file);
FusionRun run_fusion_file(const std::string& config_path);
void write_fusion_outputs(const FusionRun& run, const std::string& out_dir,
                          const std::string& config_text);

// Scores hypothesis RTTM against reference RTTM; hypothesis recordings must
// be a subset of the reference's. Returns the tab-separated report.
std::string run_score(const std::string& reference_rttm_path,
                      const std::string& hypothesis_rttm_path, const ScoringConfig& cfg);

// Synthesizes `recordings` conversations (seeds base.seed, base.seed+1, ...)
// and writes, per recording: <id>.ch0.embs, <id>.ch1.embs, <id>.mixed.embs,
// <id>.uem, <id>.ref.rttm. Corpus-level files: ref.rttm, regions.uem,
// leakage.rttm (when planted), ready-to-run css.ini and mixed.ini, and
// manifest.json.
struct SimulateOptions {
    SyntheticConfig base;
    int recordings = 1;
    std::string prefix = "rec";
};

void run_simulate(const SimulateOptions& opts, const std::string& out_dir);

}  // namespace diar
