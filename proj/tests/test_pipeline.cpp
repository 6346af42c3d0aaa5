#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "diar/embs_io.hpp"
#include "diar/error.hpp"
#include "diar/pipeline.hpp"
#include "diar/rttm.hpp"
#include "diar/textio.hpp"

using diar::ConfigError;
using diar::ConfigFile;
using diar::PipelineConfig;

namespace {

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static std::atomic<int> counter{0};
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        path = std::filesystem::temp_directory_path() /
               ("diar_pipeline_" + std::to_string(stamp) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

PipelineConfig parse_text(const std::string& text) {
    return parse_pipeline_config(ConfigFile::parse_text(text));
}

diar::SimulateOptions small_corpus(int recordings) {
    diar::SimulateOptions opts;
    opts.base.num_speakers = 3;
    opts.base.duration_ms = 60000;
    opts.base.dim = 16;
    opts.base.noise_sigma = 0.05;
    opts.base.overlap_ratio_target = 0.0;
    opts.base.leakage_ratio = 0.0;
    opts.base.seed = 424242;
    opts.recordings = recordings;
    return opts;
}

}  // namespace

TEST_CASE("run configs parse recordings, sections, and paths") {
    const PipelineConfig cfg = parse_text(
        "[recordings]\n"
        "b.channel1 = b1.embs\n"
        "a.channel0 = a0.embs\n"
        "a.uem = a.uem\n"
        "b.uem = b.uem\n"
        "b.channel0 = b0.embs\n"
        "\n"
        "[segmentation]\n"
        "merge_threshold = 0.6\n"
        "\n"
        "[clustering]\n"
        "ahc_stop_threshold = 0.6\n"
        "min_speaker_duration_ms = 4000\n"
        "sv_threshold = 0.1\n"
        "\n"
        "[scoring]\n"
        "collar_ms = 0\n"
        "score_overlap = false\n");
    REQUIRE(cfg.recordings.size() == 2);
    CHECK(cfg.recordings[0].recording_id == "a");
    CHECK(cfg.recordings[0].channel_paths[0] == "a0.embs");
    CHECK(!cfg.recordings[0].channel_paths[1]);
    CHECK(cfg.recordings[1].recording_id == "b");
    CHECK(cfg.recordings[1].channel_paths[1] == "b1.embs");
    CHECK(cfg.recordings[1].uem_path == "b.uem");
    CHECK(cfg.segmentation.merge_threshold == 0.6);
    CHECK(cfg.clustering.ahc_stop_threshold == 0.6);
    CHECK(cfg.clustering.min_speaker_duration_ms == 4000);
    CHECK(cfg.clustering.sv_threshold == 0.1);
    CHECK(!cfg.leakage);
    CHECK(cfg.scoring.collar_ms == 0);
    CHECK(!cfg.scoring.score_overlap);

    SUBCASE("recording ids may contain dots; the attribute is the last part") {
        const PipelineConfig dotted = parse_text(
            "[recordings]\n"
            "my.rec.channel0 = x.embs\n"
            "my.rec.uem = x.uem\n");
        REQUIRE(dotted.recordings.size() == 1);
        CHECK(dotted.recordings[0].recording_id == "my.rec");
    }
    SUBCASE("leakage section requires a reference config") {
        const PipelineConfig leak = parse_text(
            "[recordings]\n"
            "a.channel0 = a0.embs\n"
            "a.uem = a.uem\n"
            "\n"
            "[leakage]\n"
            "reference_config = ref.ini\n"
            "filter_threshold = 0.3\n"
            "channel1_only = true\n");
        REQUIRE(leak.leakage);
        CHECK(leak.leakage->reference_config_path == "ref.ini");
        CHECK(leak.leakage->filter_threshold == 0.3);
        CHECK(leak.leakage->channel1_only);
        CHECK_THROWS_WITH_AS(
            parse_text("[recordings]\na.channel0 = x\na.uem = u\n\n[leakage]\nfilter_threshold "
                       "= 0.3\n"),
            doctest::Contains("reference_config"), ConfigError);
    }
    SUBCASE("relative paths resolve against the config directory") {
        TempDir tmp;
        diar::write_text_file(
            "[recordings]\n"
            "rec.channel0 = sub/rec.embs\n"
            "rec.uem = rec.uem\n"
            "\n"
            "[leakage]\n"
            "reference_config = ref.ini\n",
            tmp.file("run.ini"));
        const PipelineConfig loaded = diar::load_pipeline_config(tmp.file("run.ini"));
        CHECK(loaded.recordings[0].channel_paths[0] == (tmp.path / "sub/rec.embs").string());
        CHECK(loaded.recordings[0].uem_path == tmp.file("rec.uem"));
        CHECK(loaded.leakage->reference_config_path == tmp.file("ref.ini"));
    }
    SUBCASE("absolute paths pass through") {
        TempDir tmp;
        diar::write_text_file(
            "[recordings]\n"
            "rec.channel0 = /abs/rec.embs\n"
            "rec.uem = /abs/rec.uem\n",
            tmp.file("run.ini"));
        const PipelineConfig loaded = diar::load_pipeline_config(tmp.file("run.ini"));
        CHECK(loaded.recordings[0].channel_paths[0] == "/abs/rec.embs");
    }
}

TEST_CASE("run configs reject malformed declarations") {
    CHECK_THROWS_WITH_AS(parse_text("[recordings]\nrec = x\n"),
                         doctest::Contains("<recording>.<attribute>"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[recordings]\nrec.widener = x\n"),
                         doctest::Contains("unknown recording attribute"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[recordings]\n.channel0 = x\n"),
                         doctest::Contains("nonempty"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[recordings]\na/b.channel0 = x\n"),
                         doctest::Contains("free of '/'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[recordings]\nrec.channel0 = x\n"),
                         doctest::Contains("no uem entry"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[recordings]\nrec.uem = x\n"),
                         doctest::Contains("no channel entries"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[segmentation]\nmerge_threshold = 1.5\n"),
                         doctest::Contains("[-1, 1]"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[clustering]\nmin_speaker_duration_ms = 0\n"),
                         doctest::Contains("positive"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[scoring]\ncollar_ms = -5\n"),
                         doctest::Contains("nonnegative"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[clustering]\nahc_stop = 0.5\n"),
                         doctest::Contains("ahc_stop"), ConfigError);
}

TEST_CASE("a simulated corpus diarizes end to end with thread-count-independent output") {
    TempDir corpus;
    diar::run_simulate(small_corpus(2), corpus.path.string());

    const PipelineConfig cfg = diar::load_pipeline_config(corpus.file("css.ini"));
    REQUIRE(cfg.recordings.size() == 2);
    const diar::PipelineRun serial = diar::execute_pipeline(cfg, 1);
    const diar::PipelineRun threaded = diar::execute_pipeline(cfg, 4);
    REQUIRE(serial.recordings.size() == 2);
    CHECK(serial.recordings[0].recording_id == "rec01");
    CHECK(serial.recordings[1].recording_id == "rec02");

    TempDir out_serial;
    TempDir out_threaded;
    const std::string config_text = slurp(corpus.file("css.ini"));
    diar::write_run_outputs(serial, out_serial.path.string(), config_text);
    diar::write_run_outputs(threaded, out_threaded.path.string(), config_text);
    for (const std::string name : {"rec01.rttm", "rec02.rttm", "all.rttm", "manifest.json"}) {
        CHECK(slurp(out_serial.file(name)) == slurp(out_threaded.file(name)));
    }

    SUBCASE("the combined RTTM concatenates per-recording files in id order") {
        CHECK(slurp(out_serial.file("all.rttm")) ==
              slurp(out_serial.file("rec01.rttm")) + slurp(out_serial.file("rec02.rttm")));
    }
    SUBCASE("the manifest records the run without the thread count") {
        const nlohmann::json manifest = nlohmann::json::parse(slurp(out_serial.file("manifest.json")));
        CHECK(manifest.contains("version"));
        CHECK(manifest["config"] == config_text);
        CHECK(!manifest.contains("jobs"));
        REQUIRE(manifest["recordings"].size() == 2);
        const auto& entry = manifest["recordings"][0];
        CHECK(entry["recording_id"] == "rec01");
        CHECK(entry["rttm"] == "rec01.rttm");
        CHECK(entry["speakers"].get<int>() >= 1);
        CHECK(entry["warnings"].is_array());
    }
    SUBCASE("the diarization output scores cleanly against the generator reference") {
        diar::ScoringConfig scoring;
        scoring.collar_ms = 250;
        const std::string report =
            diar::run_score(corpus.file("ref.rttm"), out_serial.file("all.rttm"), scoring);
        CHECK(report.find("rec01\t") != std::string::npos);
        CHECK(report.find("rec02\t") != std::string::npos);
        CHECK(report.find("TOTAL\t0.000") != std::string::npos);
    }
}

TEST_CASE("pipeline execution validates its inputs") {
    CHECK_THROWS_WITH_AS(diar::execute_pipeline(PipelineConfig{}, 1),
                         doctest::Contains("no recordings"), ConfigError);
    PipelineConfig one;
    one.recordings.push_back({"rec", "missing.uem", {std::string("missing.embs"), {}}});
    CHECK_THROWS_WITH_AS(diar::execute_pipeline(one, 0), doctest::Contains("jobs"), ConfigError);

    SUBCASE("a recording absent from its UEM is an error") {
        TempDir corpus;
        diar::run_simulate(small_corpus(1), corpus.path.string());
        diar::write_text_file("[recordings]\n"
                              "other.channel0 = rec01.ch0.embs\n"
                              "other.uem = rec01.uem\n",
                              corpus.file("bad.ini"));
        const PipelineConfig cfg = diar::load_pipeline_config(corpus.file("bad.ini"));
        CHECK_THROWS_WITH_AS(diar::execute_pipeline(cfg, 1),
                             doctest::Contains("not found in UEM"), diar::Error);
    }
    SUBCASE("channels with different embedding dimensions are an error") {
        TempDir corpus;
        diar::run_simulate(small_corpus(1), corpus.path.string());
        diar::EmbeddingStream narrow;
        narrow.recording_id = "rec01";
        narrow.channel = 1;
        narrow.dim = 4;
        narrow.frames.assign(10, diar::EmbeddingVector{0.5, 0.5, 0.5, 0.5});
        diar::save_embeddings_file(narrow, corpus.file("narrow.embs"));
        diar::write_text_file("[recordings]\n"
                              "rec01.channel0 = rec01.ch0.embs\n"
                              "rec01.channel1 = narrow.embs\n"
                              "rec01.uem = rec01.uem\n",
                              corpus.file("bad.ini"));
        const PipelineConfig cfg = diar::load_pipeline_config(corpus.file("bad.ini"));
        CHECK_THROWS_WITH_AS(diar::execute_pipeline(cfg, 1),
                             doctest::Contains("dimensions differ"), diar::Error);
    }
}

TEST_CASE("leakage filtering follows the reference run") {
    TempDir corpus;
    auto opts = small_corpus(1);
    opts.base.leakage_ratio = 0.2;
    diar::run_simulate(opts, corpus.path.string());

    SUBCASE("the reference config may not itself request leakage filtering") {
        diar::write_text_file("[recordings]\n"
                              "rec01.channel0 = rec01.mixed.embs\n"
                              "rec01.uem = rec01.uem\n"
                              "\n[leakage]\nreference_config = nested.ini\n",
                              corpus.file("nested.ini"));
        diar::write_text_file("[recordings]\n"
                              "rec01.channel0 = rec01.ch0.embs\n"
                              "rec01.uem = rec01.uem\n"
                              "\n[leakage]\nreference_config = nested.ini\n",
                              corpus.file("main.ini"));
        const PipelineConfig cfg = diar::load_pipeline_config(corpus.file("main.ini"));
        CHECK_THROWS_WITH_AS(diar::execute_pipeline(cfg, 1),
                             doctest::Contains("must not itself"), ConfigError);
    }
    SUBCASE("every recording must appear in the reference config") {
        diar::write_text_file("[recordings]\n"
                              "zzz.channel0 = rec01.mixed.embs\n"
                              "zzz.uem = rec01.uem\n",
                              corpus.file("ref.ini"));
        diar::write_text_file("[recordings]\n"
                              "rec01.channel0 = rec01.ch0.embs\n"
                              "rec01.uem = rec01.uem\n"
                              "\n[leakage]\nreference_config = ref.ini\n",
                              corpus.file("main.ini"));
        const PipelineConfig cfg = diar::load_pipeline_config(corpus.file("main.ini"));
        CHECK_THROWS_WITH_AS(diar::execute_pipeline(cfg, 1),
                             doctest::Contains("lacks recording 'rec01'"), ConfigError);
    }
    SUBCASE("a reference run with no speakers skips filtering with a warning") {
        diar::write_text_file("[recordings]\n"
                              "rec01.channel0 = rec01.mixed.embs\n"
                              "rec01.uem = rec01.uem\n"
                              "\n[clustering]\nmin_speaker_duration_ms = 100000000\n",
                              corpus.file("ref.ini"));
        diar::write_text_file("[recordings]\n"
                              "rec01.channel0 = rec01.ch0.embs\n"
                              "rec01.channel1 = rec01.ch1.embs\n"
                              "rec01.uem = rec01.uem\n"
                              "\n[leakage]\nreference_config = ref.ini\n",
                              corpus.file("main.ini"));
        const PipelineConfig cfg = diar::load_pipeline_config(corpus.file("main.ini"));
        const diar::PipelineRun run = diar::execute_pipeline(cfg, 1);
        REQUIRE(run.recordings[0].warnings.size() == 1);
        CHECK(run.recordings[0].warnings[0].find("leakage filtering skipped") !=
              std::string::npos);
    }
    SUBCASE("a filtered channel-split run completes without warnings") {
        diar::write_text_file("[recordings]\n"
                              "rec01.channel0 = rec01.mixed.embs\n"
                              "rec01.uem = rec01.uem\n",
                              corpus.file("ref.ini"));
        diar::write_text_file("[recordings]\n"
                              "rec01.channel0 = rec01.ch0.embs\n"
                              "rec01.channel1 = rec01.ch1.embs\n"
                              "rec01.uem = rec01.uem\n"
                              "\n[leakage]\nreference_config = ref.ini\n"
                              "filter_threshold = 0.2\nchannel1_only = true\n",
                              corpus.file("main.ini"));
        const PipelineConfig cfg = diar::load_pipeline_config(corpus.file("main.ini"));
        const diar::PipelineRun run = diar::execute_pipeline(cfg, 1);
        CHECK(run.recordings[0].warnings.empty());
        CHECK(!run.recordings[0].result.hypothesis.tracks.empty());
    }
}

TEST_CASE("fusion configs drive multi-system voting") {
    TempDir tmp;
    diar::Hypothesis a1;
    a1.recording_id = "rec1";
    a1.add_track("spkA", diar::Timeline{{{0, 1000}}});
    diar::Hypothesis a2;
    a2.recording_id = "rec2";
    a2.add_track("solo", diar::Timeline{{{2000, 4000}}});
    diar::write_rttm_file({a1, a2}, tmp.file("sysA.rttm"));

    diar::Hypothesis b1;
    b1.recording_id = "rec1";
    b1.add_track("spk1", diar::Timeline{{{0, 1000}}});
    diar::write_rttm_file({b1}, tmp.file("sysB.rttm"));

    diar::Hypothesis c1;
    c1.recording_id = "rec1";
    c1.add_track("q", diar::Timeline{{{500, 1500}}});
    diar::Hypothesis c3;
    c3.recording_id = "rec3";
    c3.add_track("x", diar::Timeline{{{0, 1000}}});
    diar::write_rttm_file({c1, c3}, tmp.file("sysC.rttm"));

    diar::write_text_file("[fusion]\n"
                          "root = A\n"
                          "vote_threshold = 1.0\n"
                          "input.A.rttm = sysA.rttm\n"
                          "input.A.weight = 1.0\n"
                          "input.B.rttm = sysB.rttm\n"
                          "input.B.weight = 0.5\n"
                          "input.C.rttm = sysC.rttm\n"
                          "input.C.weight = 0.5\n",
                          tmp.file("fusion.ini"));
    const diar::FusionRun run = diar::run_fusion_file(tmp.file("fusion.ini"));
    REQUIRE(run.fused.size() == 2);
    CHECK(run.fused[0].recording_id == "rec1");
    REQUIRE(run.fused[0].tracks.count("spkA") == 1);
    CHECK((run.fused[0].tracks.at("spkA") == diar::Timeline{{{0, 1000}}}));
    CHECK(run.fused[1].recording_id == "rec2");
    CHECK((run.fused[1].tracks.at("solo") == diar::Timeline{{{2000, 4000}}}));
    REQUIRE(run.warnings.size() == 1);
    CHECK(run.warnings[0].find("rec3") != std::string::npos);
    CHECK(run.warnings[0].find("system 'C'") != std::string::npos);

    SUBCASE("outputs land in fused.rttm plus a manifest") {
        TempDir out;
        diar::write_fusion_outputs(run, out.path.string(), "cfg-text");
        const std::vector<diar::Hypothesis> reread =
            diar::parse_rttm_file(out.file("fused.rttm"));
        REQUIRE(reread.size() == 2);
        CHECK(reread[0].recording_id == "rec1");
        const nlohmann::json manifest = nlohmann::json::parse(slurp(out.file("manifest.json")));
        CHECK(manifest["output"] == "fused.rttm");
        CHECK(manifest["config"] == "cfg-text");
        REQUIRE(manifest["warnings"].size() == 1);
    }
}

TEST_CASE("fusion configs reject incomplete declarations") {
    const auto run_text = [](const std::string& text) {
        return diar::run_fusion_config(ConfigFile::parse_text(text));
    };
    CHECK_THROWS_WITH_AS(run_text("[scoring]\ncollar_ms = 5\n"),
                         doctest::Contains("missing [fusion]"), ConfigError);
    CHECK_THROWS_WITH_AS(run_text("[fusion]\ninput.A.rttm = a.rttm\ninput.A.weight = 1\n"),
                         doctest::Contains("root"), ConfigError);
    CHECK_THROWS_WITH_AS(run_text("[fusion]\nroot = A\ninput.A.rttm = a.rttm\n"),
                         doctest::Contains("no weight"), ConfigError);
    CHECK_THROWS_WITH_AS(run_text("[fusion]\nroot = A\ninput.A.weight = 1\n"),
                         doctest::Contains("no rttm"), ConfigError);
    CHECK_THROWS_WITH_AS(
        run_text("[fusion]\nroot = Z\ninput.A.rttm = a.rttm\ninput.A.weight = 1\n"),
        doctest::Contains("not among the inputs"), ConfigError);
    CHECK_THROWS_WITH_AS(run_text("[fusion]\nroot = A\ninput.A = 5\n"),
                         doctest::Contains("input.<id>"), ConfigError);
    CHECK_THROWS_WITH_AS(run_text("[fusion]\nroot = A\ninput.A.scale = 5\n"),
                         doctest::Contains("unknown input attribute"), ConfigError);
    CHECK_THROWS_WITH_AS(run_text("[fusion]\nroot = A\nbanana = 5\n"),
                         doctest::Contains("unknown key"), ConfigError);
}

TEST_CASE("scoring runs compare RTTM files by recording") {
    TempDir tmp;
    diar::Hypothesis ref;
    ref.recording_id = "rec1";
    ref.add_track("A", diar::Timeline{{{0, 2000}}});
    diar::write_rttm_file({ref}, tmp.file("ref.rttm"));
    diar::Hypothesis hyp;
    hyp.recording_id = "rec1";
    hyp.add_track("X", diar::Timeline{{{0, 2000}}});
    diar::write_rttm_file({hyp}, tmp.file("hyp.rttm"));

    diar::ScoringConfig cfg;
    cfg.collar_ms = 0;
    CHECK(diar::run_score(tmp.file("ref.rttm"), tmp.file("hyp.rttm"), cfg) ==
          "recording\tder_pct\tmiss_pct\tfa_pct\tspkerr_pct\tjer_pct\n"
          "rec1\t0.000\t0.000\t0.000\t0.000\t0.000\n"
          "TOTAL\t0.000\t0.000\t0.000\t0.000\t0.000\n");

    SUBCASE("hypothesis recordings must be a subset of the reference") {
        diar::Hypothesis extra;
        extra.recording_id = "rec9";
        extra.add_track("X", diar::Timeline{{{0, 1000}}});
        diar::write_rttm_file({hyp, extra}, tmp.file("extra.rttm"));
        CHECK_THROWS_WITH_AS(diar::run_score(tmp.file("ref.rttm"), tmp.file("extra.rttm"), cfg),
                             doctest::Contains("rec9"), diar::Error);
    }
}

TEST_CASE("simulation writes a ready-to-run corpus") {
    TempDir out;
    auto opts = small_corpus(2);
    opts.base.leakage_ratio = 0.2;
    diar::run_simulate(opts, out.path.string());

    for (const std::string name :
         {"rec01.ch0.embs", "rec01.ch1.embs", "rec01.mixed.embs", "rec01.uem", "rec01.ref.rttm",
          "rec02.ch0.embs", "rec02.uem", "ref.rttm", "regions.uem", "leakage.rttm", "css.ini",
          "mixed.ini", "manifest.json"}) {
        CAPTURE(name);
        CHECK(std::filesystem::exists(out.path / name));
    }

    SUBCASE("the generated configs load and point at the corpus") {
        const PipelineConfig css = diar::load_pipeline_config(out.file("css.ini"));
        REQUIRE(css.recordings.size() == 2);
        CHECK(css.recordings[0].recording_id == "rec01");
        CHECK(css.recordings[0].channel_paths[0] == out.file("rec01.ch0.embs"));
        CHECK(css.recordings[0].channel_paths[1] == out.file("rec01.ch1.embs"));
        const PipelineConfig mixed = diar::load_pipeline_config(out.file("mixed.ini"));
        CHECK(mixed.recordings[0].channel_paths[0] == out.file("rec01.mixed.embs"));
        CHECK(!mixed.recordings[0].channel_paths[1]);
    }
    SUBCASE("the manifest records seeds and generator settings") {
        const nlohmann::json manifest = nlohmann::json::parse(slurp(out.file("manifest.json")));
        REQUIRE(manifest["recordings"].size() == 2);
        CHECK(manifest["recordings"][0]["recording_id"] == "rec01");
        CHECK(manifest["recordings"][0]["seed"] == 424242);
        CHECK(manifest["recordings"][1]["seed"] == 424243);
        CHECK(manifest["generator"]["leakage_ratio"] == 0.2);
        CHECK(manifest["generator"]["prefix"] == "rec");
        CHECK(manifest["generator"]["recordings"] == 2);
    }
    SUBCASE("reference and region files cover every recording") {
        const auto refs = diar::parse_rttm_file(out.file("ref.rttm"));
        REQUIRE(refs.size() == 2);
        CHECK(refs[0].recording_id == "rec01");
        CHECK(refs[1].recording_id == "rec02");
        const auto regions = diar::parse_uem_file(out.file("regions.uem"));
        REQUIRE(regions.size() == 2);
        const auto leaks = diar::parse_rttm_file(out.file("leakage.rttm"));
        REQUIRE(!leaks.empty());
        CHECK(leaks[0].tracks.count("LEAKAGE") == 1);
    }
    SUBCASE("a leakage-free corpus omits the leakage truth file") {
        TempDir clean;
        diar::run_simulate(small_corpus(1), clean.path.string());
        CHECK(!std::filesystem::exists(clean.path / "leakage.rttm"));
    }
    SUBCASE("option validation") {
        TempDir sink;
        auto bad = small_corpus(0);
        CHECK_THROWS_WITH_AS(diar::run_simulate(bad, sink.path.string()),
                             doctest::Contains("at least 1"), ConfigError);
        auto slash = small_corpus(1);
        slash.prefix = "a/b";
        CHECK_THROWS_WITH_AS(diar::run_simulate(slash, sink.path.string()),
                             doctest::Contains("free of '/'"), ConfigError);
    }
}
