#include "diar/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "diar/error.hpp"
#include "diar/rng.hpp"

namespace diar {

namespace {

constexpr std::int64_t kFramePeriodMs = 80;
constexpr std::int64_t kHalfFrameMs = kFramePeriodMs / 2;
constexpr std::int64_t kMinTurnMs = 400;
constexpr std::int64_t kMinOverlapMs = 160;
constexpr std::int64_t kMinGapMs = 100;
constexpr double kMeanGapMs = 300.0;

struct Turn {
    std::int64_t start_ms;
    std::int64_t end_ms;
    int speaker;   // -1 for leakage

    std::int64_t duration_ms() const { return end_ms - start_ms; }
};

double f32(double v) { return static_cast<double>(static_cast<float>(v)); }

void quantize(EmbeddingVector& v) {
    for (double& x : v) {
        x = f32(x);
    }
}

std::string speaker_label(int index) {
    std::ostringstream out;
    out << "spk" << std::setw(2) << std::setfill('0') << index;
    return out.str();
}

void validate(const SyntheticConfig& cfg) {
    if (cfg.num_speakers < 1) {
        throw GenerationError("num_speakers must be at least 1");
    }
    if (cfg.duration_ms <= 0) {
        throw GenerationError("duration_ms must be positive");
    }
    if (cfg.dim == 0) {
        throw GenerationError("dim must be positive");
    }
    if (cfg.noise_sigma < 0.0) {
        throw GenerationError("noise_sigma must be nonnegative");
    }
    if (cfg.overlap_ratio_target < 0.0 || cfg.overlap_ratio_target >= 1.0) {
        throw GenerationError("overlap_ratio_target must lie in [0, 1)");
    }
    if (cfg.mean_turn_ms <= 0) {
        throw GenerationError("mean_turn_ms must be positive");
    }
    if (cfg.leakage_ratio < 0.0 || cfg.leakage_ratio >= 1.0) {
        throw GenerationError("leakage_ratio must lie in [0, 1)");
    }
    if (cfg.num_speakers == 1 && cfg.overlap_ratio_target > 0.0) {
        throw GenerationError("overlap requires at least 2 speakers");
    }
}

std::vector<EmbeddingVector> sample_centroids(Rng& rng, const SyntheticConfig& cfg) {
    const double max_cos = std::cos(cfg.min_centroid_angle_deg * 3.141592653589793 / 180.0);
    std::vector<EmbeddingVector> centroids;
    centroids.reserve(cfg.num_speakers);
    for (int k = 0; k < cfg.num_speakers; ++k) {
        bool placed = false;
        for (int attempt = 0; attempt < 2000; ++attempt) {
            EmbeddingVector candidate = rng.unit_vector(cfg.dim);
            bool ok = true;
            for (const EmbeddingVector& other : centroids) {
                if (cosine_similarity(candidate, other) > max_cos) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                quantize(candidate);
                centroids.push_back(std::move(candidate));
                placed = true;
                break;
            }
        }
        if (!placed) {
            throw GenerationError("cannot place " + std::to_string(cfg.num_speakers) +
                                  " centroids with minimum angle " +
                                  std::to_string(cfg.min_centroid_angle_deg) + " degrees in " +
                                  std::to_string(cfg.dim) + " dimensions");
        }
    }
    return centroids;
}

std::int64_t draw_turn_length(Rng& rng, std::int64_t mean_ms) {
    const auto raw = static_cast<std::int64_t>(std::llround(rng.exponential(static_cast<double>(mean_ms))));
    return std::clamp(raw, kMinTurnMs, 4 * mean_ms);
}

std::vector<Turn> build_main_schedule(Rng& rng, const SyntheticConfig& cfg) {
    std::vector<Turn> turns;
    std::int64_t t = 0;
    int previous = -1;
    while (t < cfg.duration_ms) {
        std::int64_t length = std::min(draw_turn_length(rng, cfg.mean_turn_ms), cfg.duration_ms - t);
        if (length < kMinTurnMs && !turns.empty()) {
            break;
        }
        int speaker = 0;
        if (cfg.num_speakers > 1 && previous < 0) {
            speaker = static_cast<int>(rng.uniform_int(0, cfg.num_speakers - 1));
        } else if (cfg.num_speakers > 1) {
            speaker = static_cast<int>(rng.uniform_int(0, cfg.num_speakers - 2));
            if (speaker >= previous) {
                ++speaker;
            }
        }
        turns.push_back({t, t + length, speaker});
        previous = speaker;
        t += length + std::max<std::int64_t>(
                          kMinGapMs, static_cast<std::int64_t>(std::llround(rng.exponential(kMeanGapMs))));
    }
    if (turns.empty()) {
        turns.push_back({0, cfg.duration_ms, 0});
    }
    return turns;
}

// Injects at most one overlapped turn inside each main turn, a different
// speaker each time, until the overlapped fraction of speech time reaches
// the target within the schedule's resolution.
std::vector<Turn> inject_overlap(Rng& rng, const SyntheticConfig& cfg,
                                 const std::vector<Turn>& main_turns) {
    std::vector<Turn> injected;
    if (cfg.overlap_ratio_target <= 0.0) {
        return injected;
    }
    std::int64_t total_speech = 0;
    for (const Turn& turn : main_turns) {
        total_speech += turn.duration_ms();
    }
    std::set<std::size_t> used;
    std::int64_t overlap_ms = 0;
    while (true) {
        const std::int64_t needed =
            static_cast<std::int64_t>(std::llround(cfg.overlap_ratio_target * total_speech)) -
            overlap_ms;
        if (needed < kMinOverlapMs) {
            break;
        }
        std::vector<std::size_t> eligible;
        for (std::size_t i = 0; i < main_turns.size(); ++i) {
            if (!used.count(i) && main_turns[i].duration_ms() >= kMinTurnMs) {
                eligible.push_back(i);
            }
        }
        if (eligible.empty()) {
            throw GenerationError("overlap target unreachable with this schedule");
        }
        const std::size_t pick =
            eligible[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(eligible.size()) - 1))];
        const Turn& host = main_turns[pick];
        std::int64_t length = std::clamp(draw_turn_length(rng, cfg.mean_turn_ms), kMinOverlapMs,
                                         host.duration_ms());
        length = std::min(length, needed);
        const std::int64_t start =
            host.start_ms + rng.uniform_int(0, host.duration_ms() - length);
        int speaker = static_cast<int>(rng.uniform_int(0, cfg.num_speakers - 2));
        if (speaker >= host.speaker) {
            ++speaker;
        }
        injected.push_back({start, start + length, speaker});
        used.insert(pick);
        overlap_ms += length;
    }
    return injected;
}

// Plants leakage turns wherever channel 1 is idle.
std::vector<Turn> plant_leakage(Rng& rng, const SyntheticConfig& cfg, std::size_t true_turns,
                                const std::vector<Turn>& channel1_turns) {
    std::vector<Turn> leakage;
    if (cfg.leakage_ratio <= 0.0) {
        return leakage;
    }
    const auto count = static_cast<std::size_t>(std::llround(
        cfg.leakage_ratio / (1.0 - cfg.leakage_ratio) * static_cast<double>(true_turns)));
    std::vector<Segment> busy;
    for (const Turn& turn : channel1_turns) {
        busy.emplace_back(turn.start_ms, turn.end_ms);
    }
    for (std::size_t n = 0; n < count; ++n) {
        std::int64_t length = std::min(draw_turn_length(rng, cfg.mean_turn_ms), cfg.duration_ms);
        bool placed = false;
        for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
            if (attempt > 0 && attempt % 200 == 0 && length > kMinTurnMs) {
                length = std::max(kMinTurnMs, length / 2);
            }
            const std::int64_t start = rng.uniform_int(0, cfg.duration_ms - length);
            const Timeline candidate{{Segment(start, start + length)}};
            if (total_duration(timeline_intersection(Timeline(busy), candidate)) == 0) {
                busy.emplace_back(start, start + length);
                leakage.push_back({start, start + length, -1});
                placed = true;
            }
        }
        if (!placed) {
            throw GenerationError("no idle room left on channel 1 for leakage");
        }
    }
    return leakage;
}

std::int64_t first_center_frame(std::int64_t start_ms) {
    if (start_ms <= kHalfFrameMs) {
        return 0;
    }
    return (start_ms - kHalfFrameMs + kFramePeriodMs - 1) / kFramePeriodMs;
}

std::int64_t last_center_frame(std::int64_t end_ms) {
    if (end_ms <= kHalfFrameMs) {
        return -1;
    }
    return (end_ms - kHalfFrameMs - 1) / kFramePeriodMs;
}

void render_turn(Rng& rng, const Turn& turn, const EmbeddingVector& center, double sigma,
                 std::vector<EmbeddingVector>& buffer) {
    const auto frame_count = static_cast<std::int64_t>(buffer.size());
    const std::int64_t first = first_center_frame(turn.start_ms);
    const std::int64_t last = std::min(last_center_frame(turn.end_ms), frame_count - 1);
    for (std::int64_t i = first; i <= last; ++i) {
        if (sigma == 0.0) {
            buffer[static_cast<std::size_t>(i)] = center;
            continue;
        }
        EmbeddingVector frame = center;
        for (double& x : frame) {
            x += sigma * rng.normal();
        }
        const double norm = l2_norm(frame);
        if (norm == 0.0) {
            frame = center;
        } else {
            for (double& x : frame) {
                x /= norm;
            }
        }
        quantize(frame);
        buffer[static_cast<std::size_t>(i)] = std::move(frame);
    }
}

bool any_active(const std::vector<EmbeddingVector>& buffer) {
    return std::any_of(buffer.begin(), buffer.end(),
                       [](const EmbeddingVector& v) { return !v.empty(); });
}

EmbeddingStream to_stream(const std::string& recording_id, int channel, std::size_t dim,
                          const std::vector<EmbeddingVector>& buffer) {
    EmbeddingStream stream;
    stream.recording_id = recording_id;
    stream.channel = channel;
    stream.dim = dim;
    stream.frame_period_ms = kFramePeriodMs;
    stream.start_offset_ms = 0;
    if (!any_active(buffer)) {
        return stream;
    }
    stream.frames.reserve(buffer.size());
    for (const EmbeddingVector& v : buffer) {
        stream.frames.push_back(v.empty() ? EmbeddingVector(dim, 0.0) : v);
    }
    return stream;
}

}  // namespace

SyntheticConversation synthesize_conversation(const SyntheticConfig& cfg,
                                              const std::string& recording_id) {
    validate(cfg);
    Rng rng(cfg.seed);

    const std::vector<EmbeddingVector> centroids = sample_centroids(rng, cfg);
    const std::vector<Turn> main_turns = build_main_schedule(rng, cfg);
    const std::vector<Turn> overlap_turns = inject_overlap(rng, cfg, main_turns);
    const std::vector<Turn> leakage_turns =
        plant_leakage(rng, cfg, main_turns.size() + overlap_turns.size(), overlap_turns);

    const std::int64_t frame_count =
        (cfg.duration_ms + kFramePeriodMs - 1) / kFramePeriodMs;
    std::vector<EmbeddingVector> ch0(static_cast<std::size_t>(frame_count));
    std::vector<EmbeddingVector> ch1_speech(static_cast<std::size_t>(frame_count));
    std::vector<EmbeddingVector> ch1_full(static_cast<std::size_t>(frame_count));

    for (const Turn& turn : main_turns) {
        render_turn(rng, turn, centroids[static_cast<std::size_t>(turn.speaker)],
                    cfg.noise_sigma, ch0);
    }
    for (const Turn& turn : overlap_turns) {
        render_turn(rng, turn, centroids[static_cast<std::size_t>(turn.speaker)],
                    cfg.noise_sigma, ch1_speech);
    }
    ch1_full = ch1_speech;
    for (const Turn& turn : leakage_turns) {
        EmbeddingVector direction = rng.unit_vector(cfg.dim);
        quantize(direction);
        render_turn(rng, turn, direction, cfg.noise_sigma, ch1_full);
    }

    SyntheticConversation out;
    out.speaker_centroids = centroids;
    out.css_streams.push_back(to_stream(recording_id, 0, cfg.dim, ch0));
    out.css_streams.push_back(to_stream(recording_id, 1, cfg.dim, ch1_full));

    std::vector<EmbeddingVector> mixed(static_cast<std::size_t>(frame_count));
    for (std::size_t i = 0; i < mixed.size(); ++i) {
        if (ch0[i].empty() && ch1_speech[i].empty()) {
            continue;
        }
        EmbeddingVector sum(cfg.dim, 0.0);
        if (!ch0[i].empty()) {
            add_in_place(sum, ch0[i]);
        }
        if (!ch1_speech[i].empty()) {
            add_in_place(sum, ch1_speech[i]);
        }
        const double norm = l2_norm(sum);
        if (norm == 0.0) {
            continue;
        }
        for (double& x : sum) {
            x /= norm;
        }
        quantize(sum);
        mixed[i] = std::move(sum);
    }
    out.mixed_stream = to_stream(recording_id, 0, cfg.dim, mixed);

    out.reference.recording_id = recording_id;
    std::vector<std::vector<Segment>> per_speaker(static_cast<std::size_t>(cfg.num_speakers));
    std::vector<Segment> all_turns;
    for (const std::vector<Turn>* group : {&main_turns, &overlap_turns}) {
        for (const Turn& turn : *group) {
            per_speaker[static_cast<std::size_t>(turn.speaker)].emplace_back(turn.start_ms,
                                                                             turn.end_ms);
            all_turns.emplace_back(turn.start_ms, turn.end_ms);
        }
    }
    for (int k = 0; k < cfg.num_speakers; ++k) {
        Timeline track{std::move(per_speaker[static_cast<std::size_t>(k)])};
        if (!track.empty()) {
            out.reference.add_track(speaker_label(k), track);
        }
    }

    std::vector<Segment> leakage_segments;
    for (const Turn& turn : leakage_turns) {
        leakage_segments.emplace_back(turn.start_ms, turn.end_ms);
        all_turns.emplace_back(turn.start_ms, turn.end_ms);
    }
    out.leakage = Timeline{std::move(leakage_segments)};
    out.regions.recording_id = recording_id;
    out.regions.regions = Timeline{std::move(all_turns)};
    return out;
}

EmbeddingStream mix_streams(const std::vector<EmbeddingStream>& streams) {
    if (streams.empty()) {
        throw std::invalid_argument("mix_streams: no input streams");
    }
    EmbeddingStream out;
    out.recording_id = streams.front().recording_id;
    out.channel = 0;
    out.dim = streams.front().dim;
    out.frame_period_ms = streams.front().frame_period_ms;
    out.start_offset_ms = streams.front().start_offset_ms;
    std::size_t frame_count = 0;
    for (const EmbeddingStream& stream : streams) {
        if (stream.dim != out.dim || stream.frame_period_ms != out.frame_period_ms ||
            stream.start_offset_ms != out.start_offset_ms) {
            throw std::invalid_argument("mix_streams: streams disagree on dim, period, or offset");
        }
        frame_count = std::max(frame_count, stream.frames.size());
    }
    out.frames.assign(frame_count, EmbeddingVector(out.dim, 0.0));
    for (const EmbeddingStream& stream : streams) {
        for (std::size_t i = 0; i < stream.frames.size(); ++i) {
            add_in_place(out.frames[i], stream.frames[i]);
        }
    }
    for (EmbeddingVector& frame : out.frames) {
        const double norm = l2_norm(frame);
        if (norm == 0.0) {
            continue;
        }
        for (double& x : frame) {
            x /= norm;
        }
        quantize(frame);
    }
    return out;
}

}  // namespace diar
