#include "diar/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "diar/embs_io.hpp"
#include "diar/error.hpp"
#include "diar/rttm.hpp"
#include "diar/textio.hpp"
#include "diar/version.hpp"

namespace diar {

namespace {

std::string resolve_path(const std::string& directory, const std::string& value) {
    const std::filesystem::path p(value);
    if (directory.empty() || p.is_absolute()) {
        return value;
    }
    return (std::filesystem::path(directory) / p).string();
}

void check_recording_id(const std::string& id, int line) {
    if (id.empty() || id.find('/') != std::string::npos) {
        throw ConfigError("line " + std::to_string(line) + ": recording id '" + id +
                          "' must be nonempty and free of '/'");
    }
}

Timeline load_regions(const std::string& uem_path, const std::string& recording_id) {
    for (const SpeechRegions& regions : parse_uem_file(uem_path)) {
        if (regions.recording_id == recording_id) {
            return regions.regions;
        }
    }
    throw Error("recording '" + recording_id + "' not found in UEM file: " + uem_path);
}

std::vector<EmbeddedSegment> segment_recording(const PipelineConfig& cfg,
                                               const RecordingInputs& rec,
                                               const Timeline& regions) {
    std::vector<EmbeddedSegment> segments;
    std::optional<std::size_t> dim;
    for (int channel = 0; channel < 2; ++channel) {
        const auto& path = rec.channel_paths[static_cast<std::size_t>(channel)];
        if (!path) {
            continue;
        }
        EmbeddingStream stream = load_embeddings_file(*path);
        stream.recording_id = rec.recording_id;
        stream.channel = channel;
        if (dim && stream.dim != *dim) {
            throw Error("recording '" + rec.recording_id +
                        "': channel embedding dimensions differ (" + std::to_string(*dim) +
                        " vs " + std::to_string(stream.dim) + ")");
        }
        dim = stream.dim;
        std::vector<EmbeddedSegment> channel_segments =
            segment_stream(stream, regions, cfg.segmentation);
        segments.insert(segments.end(), std::make_move_iterator(channel_segments.begin()),
                        std::make_move_iterator(channel_segments.end()));
    }
    return segments;
}

RecordingRun run_recording(const PipelineConfig& cfg, const RecordingInputs& rec,
                           const PipelineConfig* reference_cfg) {
    RecordingRun run;
    run.recording_id = rec.recording_id;
    const Timeline regions = load_regions(rec.uem_path, rec.recording_id);
    std::vector<EmbeddedSegment> segments = segment_recording(cfg, rec, regions);

    if (cfg.leakage) {
        const auto ref_rec = std::find_if(
            reference_cfg->recordings.begin(), reference_cfg->recordings.end(),
            [&](const RecordingInputs& r) { return r.recording_id == rec.recording_id; });
        if (ref_rec == reference_cfg->recordings.end()) {
            throw ConfigError("leakage reference config lacks recording '" + rec.recording_id +
                              "'");
        }
        const RecordingRun reference_run = run_recording(*reference_cfg, *ref_rec, nullptr);
        std::vector<EmbeddingVector> centroids;
        for (const SpeakerCluster& cluster : reference_run.result.speaker_clusters) {
            centroids.push_back(cluster.centroid);
        }
        if (centroids.empty()) {
            run.warnings.push_back("leakage filtering skipped: reference run produced no "
                                   "speaker clusters");
        } else if (cfg.leakage->channel1_only) {
            std::vector<EmbeddedSegment> channel1;
            std::erase_if(segments, [&](const EmbeddedSegment& seg) {
                if (seg.channel == 1) {
                    channel1.push_back(seg);
                    return true;
                }
                return false;
            });
            channel1 = leakage_filter(std::move(channel1), centroids,
                                      cfg.leakage->filter_threshold);
            segments.insert(segments.end(), std::make_move_iterator(channel1.begin()),
                            std::make_move_iterator(channel1.end()));
        } else {
            segments = leakage_filter(std::move(segments), centroids,
                                      cfg.leakage->filter_threshold);
        }
    }

    run.result = cluster_segments(std::move(segments), cfg.clustering, rec.recording_id);
    return run;
}

std::string two_digit(int value) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d", value);
    return buf;
}

}  // namespace

PipelineConfig parse_pipeline_config(ConfigFile file) {
    PipelineConfig cfg;
    std::map<std::string, RecordingInputs> recordings;
    for (const ConfigEntry& entry : file.take_section("recordings")) {
        const auto dot = entry.key.rfind('.');
        if (dot == std::string::npos) {
            throw ConfigError("line " + std::to_string(entry.line) +
                              ": expected '<recording>.<attribute>', got '" + entry.key + "'");
        }
        const std::string id = entry.key.substr(0, dot);
        const std::string attr = entry.key.substr(dot + 1);
        check_recording_id(id, entry.line);
        RecordingInputs& rec = recordings[id];
        rec.recording_id = id;
        const std::string path = resolve_path(file.directory(), entry.value);
        if (attr == "channel0") {
            rec.channel_paths[0] = path;
        } else if (attr == "channel1") {
            rec.channel_paths[1] = path;
        } else if (attr == "uem") {
            rec.uem_path = path;
        } else {
            throw ConfigError("line " + std::to_string(entry.line) +
                              ": unknown recording attribute '" + attr + "'");
        }
    }
    for (auto& [id, rec] : recordings) {
        if (rec.uem_path.empty()) {
            throw ConfigError("recording '" + id + "' has no uem entry");
        }
        if (!rec.channel_paths[0] && !rec.channel_paths[1]) {
            throw ConfigError("recording '" + id + "' has no channel entries");
        }
        cfg.recordings.push_back(std::move(rec));
    }

    if (const auto v = file.get_real("segmentation", "merge_threshold")) {
        if (*v < -1.0 || *v > 1.0) {
            throw ConfigError("merge_threshold must lie in [-1, 1]");
        }
        cfg.segmentation.merge_threshold = *v;
    }
    if (const auto v = file.get_real("clustering", "ahc_stop_threshold")) {
        cfg.clustering.ahc_stop_threshold = *v;
    }
    if (const auto v = file.get_int("clustering", "min_speaker_duration_ms")) {
        if (*v <= 0) {
            throw ConfigError("min_speaker_duration_ms must be positive");
        }
        cfg.clustering.min_speaker_duration_ms = *v;
    }
    if (const auto v = file.get_real("clustering", "sv_threshold")) {
        cfg.clustering.sv_threshold = *v;
    }
    if (file.has_section("leakage")) {
        LeakageOptions leakage;
        leakage.reference_config_path =
            resolve_path(file.directory(), file.require("leakage", "reference_config"));
        if (const auto v = file.get_real("leakage", "filter_threshold")) {
            leakage.filter_threshold = *v;
        }
        if (const auto v = file.get_bool("leakage", "channel1_only")) {
            leakage.channel1_only = *v;
        }
        cfg.leakage = std::move(leakage);
    }
    if (const auto v = file.get_int("scoring", "collar_ms")) {
        if (*v < 0) {
            throw ConfigError("collar_ms must be nonnegative");
        }
        cfg.scoring.collar_ms = *v;
    }
    if (const auto v = file.get_bool("scoring", "score_overlap")) {
        cfg.scoring.score_overlap = *v;
    }
    file.reject_unconsumed();
    return cfg;
}

PipelineConfig load_pipeline_config(const std::string& path) {
    return parse_pipeline_config(ConfigFile::parse_file(path));
}

PipelineRun execute_pipeline(const PipelineConfig& cfg, int jobs) {
    if (jobs < 1) {
        throw ConfigError("jobs must be at least 1");
    }
    if (cfg.recordings.empty()) {
        throw ConfigError("config lists no recordings");
    }
    std::optional<PipelineConfig> reference_cfg;
    if (cfg.leakage) {
        reference_cfg = load_pipeline_config(cfg.leakage->reference_config_path);
        if (reference_cfg->leakage) {
            throw ConfigError("leakage reference config must not itself use leakage filtering: " +
                              cfg.leakage->reference_config_path);
        }
    }

    const std::size_t n = cfg.recordings.size();
    std::vector<RecordingRun> results(n);
    std::vector<std::exception_ptr> failures(n);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                results[i] = run_recording(cfg, cfg.recordings[i],
                                           reference_cfg ? &*reference_cfg : nullptr);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const std::size_t thread_count = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(thread_count);
        for (std::size_t t = 0; t < thread_count; ++t) {
            threads.emplace_back(worker);
        }
        for (std::thread& thread : threads) {
            thread.join();
        }
    }
    for (const std::exception_ptr& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    PipelineRun run;
    run.recordings = std::move(results);
    return run;
}

void write_run_outputs(const PipelineRun& run, const std::string& out_dir,
                       const std::string& config_text) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path out(out_dir);
    nlohmann::json manifest;
    manifest["version"] = kVersion;
    manifest["config"] = config_text;
    manifest["recordings"] = nlohmann::json::array();
    std::vector<Hypothesis> all;
    for (const RecordingRun& rec : run.recordings) {
        const std::string rttm_name = rec.recording_id + ".rttm";
        write_rttm_file({rec.result.hypothesis}, (out / rttm_name).string());
        all.push_back(rec.result.hypothesis);
        nlohmann::json entry;
        entry["recording_id"] = rec.recording_id;
        entry["rttm"] = rttm_name;
        entry["speakers"] = rec.result.speaker_clusters.size();
        entry["unassigned"] = rec.result.unassigned_label.has_value();
        entry["warnings"] = rec.warnings;
        manifest["recordings"].push_back(std::move(entry));
    }
    write_rttm_file(all, (out / "all.rttm").string());
    write_text_file(manifest.dump(2) + "\n", (out / "manifest.json").string());
}

FusionRun run_fusion_config(ConfigFile file) {
    struct InputSpec {
        std::string id;
        std::string rttm_path;
        std::optional<double> weight;
        int line = 0;
    };
    std::string root_id;
    double vote_threshold = 1.0;
    std::vector<InputSpec> inputs;
    const auto find_input = [&inputs](const std::string& id) -> InputSpec& {
        for (InputSpec& input : inputs) {
            if (input.id == id) {
                return input;
            }
        }
        inputs.push_back({id, "", std::nullopt, 0});
        return inputs.back();
    };
    const auto entries = file.take_section("fusion");
    if (entries.empty()) {
        throw ConfigError("missing [fusion] section");
    }
    for (const ConfigEntry& entry : entries) {
        if (entry.key == "root") {
            root_id = entry.value;
        } else if (entry.key == "vote_threshold") {
            vote_threshold = parse_config_real(entry);
        } else if (entry.key.starts_with("input.")) {
            const std::string rest = entry.key.substr(6);
            const auto dot = rest.rfind('.');
            if (dot == std::string::npos || dot == 0) {
                throw ConfigError("line " + std::to_string(entry.line) +
                                  ": expected 'input.<id>.rttm' or 'input.<id>.weight'");
            }
            const std::string id = rest.substr(0, dot);
            const std::string attr = rest.substr(dot + 1);
            InputSpec& input = find_input(id);
            input.line = entry.line;
            if (attr == "rttm") {
                input.rttm_path = resolve_path(file.directory(), entry.value);
            } else if (attr == "weight") {
                input.weight = parse_config_real(entry);
            } else {
                throw ConfigError("line " + std::to_string(entry.line) +
                                  ": unknown input attribute '" + attr + "'");
            }
        } else {
            throw ConfigError("line " + std::to_string(entry.line) + ": unknown key '" +
                              entry.key + "' in section [fusion]");
        }
    }
    file.reject_unconsumed();
    if (root_id.empty()) {
        throw ConfigError("[fusion] requires a root system id");
    }
    if (inputs.empty()) {
        throw ConfigError("[fusion] lists no inputs");
    }
    bool root_found = false;
    for (const InputSpec& input : inputs) {
        if (input.rttm_path.empty()) {
            throw ConfigError("fusion input '" + input.id + "' has no rttm entry");
        }
        if (!input.weight) {
            throw ConfigError("fusion input '" + input.id + "' has no weight entry");
        }
        root_found = root_found || input.id == root_id;
    }
    if (!root_found) {
        throw ConfigError("fusion root '" + root_id + "' is not among the inputs");
    }

    std::vector<std::pair<std::string, std::map<std::string, Hypothesis>>> systems;
    for (const InputSpec& input : inputs) {
        std::map<std::string, Hypothesis> by_recording;
        for (Hypothesis& hyp : parse_rttm_file(input.rttm_path)) {
            by_recording[hyp.recording_id] = std::move(hyp);
        }
        systems.emplace_back(input.id, std::move(by_recording));
    }
    const std::map<std::string, Hypothesis>* root_system = nullptr;
    for (const auto& [id, by_recording] : systems) {
        if (id == root_id) {
            root_system = &by_recording;
        }
    }

    FusionRun run;
    for (std::size_t s = 0; s < systems.size(); ++s) {
        for (const auto& [recording_id, hyp] : systems[s].second) {
            if (!root_system->count(recording_id)) {
                run.warnings.push_back("skipped recording '" + recording_id + "' from system '" +
                                       systems[s].first + "': not present in the root hypothesis");
            }
        }
    }
    for (const auto& [recording_id, root_hyp] : *root_system) {
        std::map<std::string, Hypothesis> present;
        FusionConfig cfg;
        cfg.root_id = root_id;
        cfg.vote_threshold = vote_threshold;
        for (std::size_t s = 0; s < systems.size(); ++s) {
            const auto it = systems[s].second.find(recording_id);
            if (it == systems[s].second.end()) {
                continue;
            }
            present[systems[s].first] = it->second;
            cfg.weights.emplace_back(systems[s].first, *inputs[s].weight);
        }
        run.fused.push_back(fuse(present, cfg));
    }
    return run;
}

FusionRun run_fusion_file(const std::string& config_path) {
    return run_fusion_config(ConfigFile::parse_file(config_path));
}

void write_fusion_outputs(const FusionRun& run, const std::string& out_dir,
                          const std::string& config_text) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path out(out_dir);
    write_rttm_file(run.fused, (out / "fused.rttm").string());
    nlohmann::json manifest;
    manifest["version"] = kVersion;
    manifest["config"] = config_text;
    manifest["output"] = "fused.rttm";
    manifest["warnings"] = run.warnings;
    write_text_file(manifest.dump(2) + "\n", (out / "manifest.json").string());
}

std::string run_score(const std::string& reference_rttm_path,
                      const std::string& hypothesis_rttm_path, const ScoringConfig& cfg) {
    const std::vector<Hypothesis> references = parse_rttm_file(reference_rttm_path);
    const std::vector<Hypothesis> hypotheses = parse_rttm_file(hypothesis_rttm_path);
    std::set<std::string> reference_ids;
    for (const Hypothesis& ref : references) {
        reference_ids.insert(ref.recording_id);
    }
    std::string unmatched;
    for (const Hypothesis& hyp : hypotheses) {
        if (!reference_ids.count(hyp.recording_id)) {
            unmatched += unmatched.empty() ? "" : ", ";
            unmatched += hyp.recording_id;
        }
    }
    if (!unmatched.empty()) {
        throw Error("hypothesis contains recordings missing from the reference: " + unmatched);
    }
    return format_score_report(score_recordings(references, hypotheses, cfg));
}

void run_simulate(const SimulateOptions& opts, const std::string& out_dir) {
    if (opts.recordings < 1) {
        throw ConfigError("recordings must be at least 1");
    }
    check_recording_id(opts.prefix, 0);
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path out(out_dir);

    std::vector<Hypothesis> references;
    std::vector<SpeechRegions> all_regions;
    std::vector<Hypothesis> leakage_truth;
    std::ostringstream css_recordings;
    std::ostringstream mixed_recordings;
    nlohmann::json manifest_recordings = nlohmann::json::array();
    for (int i = 0; i < opts.recordings; ++i) {
        SyntheticConfig cfg = opts.base;
        cfg.seed = opts.base.seed + static_cast<std::uint64_t>(i);
        const std::string id = opts.prefix + two_digit(i + 1);
        const SyntheticConversation conv = synthesize_conversation(cfg, id);

        const std::string ch0_name = id + ".ch0.embs";
        const std::string ch1_name = id + ".ch1.embs";
        const std::string mixed_name = id + ".mixed.embs";
        save_embeddings_file(conv.css_streams[0], (out / ch0_name).string());
        save_embeddings_file(conv.css_streams[1], (out / ch1_name).string());
        save_embeddings_file(conv.mixed_stream, (out / mixed_name).string());
        write_uem_file(conv.regions, (out / (id + ".uem")).string());
        write_rttm_file({conv.reference}, (out / (id + ".ref.rttm")).string());

        css_recordings << id << ".channel0 = " << ch0_name << "\n"
                       << id << ".channel1 = " << ch1_name << "\n"
                       << id << ".uem = " << id << ".uem\n";
        mixed_recordings << id << ".channel0 = " << mixed_name << "\n"
                         << id << ".uem = " << id << ".uem\n";

        references.push_back(conv.reference);
        all_regions.push_back(conv.regions);
        if (!conv.leakage.empty()) {
            Hypothesis leak;
            leak.recording_id = id;
            leak.add_track("LEAKAGE", conv.leakage);
            leakage_truth.push_back(std::move(leak));
        }
        nlohmann::json entry;
        entry["recording_id"] = id;
        entry["seed"] = cfg.seed;
        entry["speakers"] = conv.reference.num_speakers();
        manifest_recordings.push_back(std::move(entry));
    }

    write_rttm_file(references, (out / "ref.rttm").string());
    write_uem_file(all_regions, (out / "regions.uem").string());
    if (!leakage_truth.empty()) {
        write_rttm_file(leakage_truth, (out / "leakage.rttm").string());
    }

    std::ostringstream algo;
    algo << "\n[segmentation]\nmerge_threshold = 0.55\n"
         << "\n[clustering]\nahc_stop_threshold = 0.55\nmin_speaker_duration_ms = 2500\n"
         << "sv_threshold = 0.0\n";
    write_text_file("[recordings]\n" + css_recordings.str() + algo.str(),
                    (out / "css.ini").string());
    write_text_file("[recordings]\n" + mixed_recordings.str() + algo.str(),
                    (out / "mixed.ini").string());

    nlohmann::json manifest;
    manifest["version"] = kVersion;
    manifest["recordings"] = std::move(manifest_recordings);
    nlohmann::json generator;
    generator["num_speakers"] = opts.base.num_speakers;
    generator["duration_ms"] = opts.base.duration_ms;
    generator["dim"] = opts.base.dim;
    generator["noise_sigma"] = opts.base.noise_sigma;
    generator["overlap_ratio_target"] = opts.base.overlap_ratio_target;
    generator["mean_turn_ms"] = opts.base.mean_turn_ms;
    generator["min_centroid_angle_deg"] = opts.base.min_centroid_angle_deg;
    generator["seed"] = opts.base.seed;
    generator["leakage_ratio"] = opts.base.leakage_ratio;
    generator["recordings"] = opts.recordings;
    generator["prefix"] = opts.prefix;
    manifest["generator"] = std::move(generator);
    write_text_file(manifest.dump(2) + "\n", (out / "manifest.json").string());
}

}  // namespace diar
