#include "diar/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "diar/assignment.hpp"

namespace diar {

namespace {

void require_same_recording(const Hypothesis& reference, const Hypothesis& hypothesis) {
    if (reference.recording_id != hypothesis.recording_id) {
        throw std::invalid_argument("scoring: recordings differ: " + reference.recording_id +
                                    " vs " + hypothesis.recording_id);
    }
}

// Regions where at least `min_count` of the given timelines are active.
Timeline active_at_least(const std::vector<const Timeline*>& tracks, int min_count) {
    std::vector<std::pair<std::int64_t, int>> events;
    for (const Timeline* track : tracks) {
        for (const Segment& seg : track->segments()) {
            events.emplace_back(seg.start_ms, 1);
            events.emplace_back(seg.end_ms, -1);
        }
    }
    std::sort(events.begin(), events.end());
    std::vector<Segment> out;
    int count = 0;
    for (std::size_t i = 0; i < events.size();) {
        const std::int64_t t = events[i].first;
        while (i < events.size() && events[i].first == t) {
            count += events[i].second;
            ++i;
        }
        if (i < events.size() && count >= min_count) {
            out.emplace_back(t, events[i].first);
        }
    }
    return Timeline{std::move(out)};
}

std::string format_pct(std::optional<double> value) {
    if (!value) {
        return "-";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", *value);
    return buf;
}

}  // namespace

std::optional<double> DerBreakdown::der() const {
    if (scored_speaker_ms == 0) {
        return std::nullopt;
    }
    return static_cast<double>(missed_ms + false_alarm_ms + speaker_error_ms) /
           static_cast<double>(scored_speaker_ms);
}

std::optional<double> JerBreakdown::jer() const {
    if (speaker_count == 0) {
        return std::nullopt;
    }
    return 100.0 * error_sum / speaker_count;
}

std::map<std::string, std::string> optimal_speaker_map(const Hypothesis& reference,
                                                       const Hypothesis& hypothesis) {
    require_same_recording(reference, hypothesis);
    std::vector<std::string> hyp_labels;
    for (const auto& [label, track] : hypothesis.tracks) {
        hyp_labels.push_back(label);
    }
    std::vector<std::string> ref_labels;
    for (const auto& [label, track] : reference.tracks) {
        ref_labels.push_back(label);
    }
    std::vector<std::vector<std::int64_t>> weights(
        hyp_labels.size(), std::vector<std::int64_t>(ref_labels.size(), 0));
    for (std::size_t r = 0; r < hyp_labels.size(); ++r) {
        for (std::size_t c = 0; c < ref_labels.size(); ++c) {
            weights[r][c] = total_duration(timeline_intersection(
                hypothesis.tracks.at(hyp_labels[r]), reference.tracks.at(ref_labels[c])));
        }
    }
    std::map<std::string, std::string> mapping;
    for (const auto& [row, col] : max_weight_matching(weights)) {
        mapping[hyp_labels[row]] = ref_labels[col];
    }
    return mapping;
}

DerBreakdown compute_der(const Hypothesis& reference, const Hypothesis& hypothesis,
                         const ScoringConfig& cfg) {
    require_same_recording(reference, hypothesis);
    if (cfg.collar_ms < 0) {
        throw std::invalid_argument("collar_ms must be nonnegative");
    }
    const std::map<std::string, std::string> mapping =
        optimal_speaker_map(reference, hypothesis);

    std::vector<Segment> excluded_segments;
    for (const auto& [label, track] : reference.tracks) {
        for (const Segment& seg : track.segments()) {
            for (const std::int64_t boundary : {seg.start_ms, seg.end_ms}) {
                const std::int64_t lo = std::max<std::int64_t>(0, boundary - cfg.collar_ms);
                const std::int64_t hi = boundary + cfg.collar_ms;
                if (lo < hi) {
                    excluded_segments.emplace_back(lo, hi);
                }
            }
        }
    }
    if (!cfg.score_overlap) {
        std::vector<const Timeline*> ref_tracks;
        for (const auto& [label, track] : reference.tracks) {
            ref_tracks.push_back(&track);
        }
        const Timeline overlapped = active_at_least(ref_tracks, 2);
        for (const Segment& seg : overlapped.segments()) {
            excluded_segments.push_back(seg);
        }
    }
    const Timeline excluded{std::move(excluded_segments)};

    std::set<std::int64_t> boundary_set;
    for (const Hypothesis* hyp : {&reference, &hypothesis}) {
        for (const auto& [label, track] : hyp->tracks) {
            for (const Segment& seg : track.segments()) {
                boundary_set.insert(seg.start_ms);
                boundary_set.insert(seg.end_ms);
            }
        }
    }
    for (const Segment& seg : excluded.segments()) {
        boundary_set.insert(seg.start_ms);
        boundary_set.insert(seg.end_ms);
    }
    const std::vector<std::int64_t> boundaries(boundary_set.begin(), boundary_set.end());

    DerBreakdown breakdown;
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
        const std::int64_t a = boundaries[i];
        const std::int64_t dt = boundaries[i + 1] - a;
        if (excluded.covers(a)) {
            continue;
        }
        int ref_active = 0;
        for (const auto& [label, track] : reference.tracks) {
            if (track.covers(a)) {
                ++ref_active;
            }
        }
        int hyp_active = 0;
        int matched = 0;
        for (const auto& [label, track] : hypothesis.tracks) {
            if (!track.covers(a)) {
                continue;
            }
            ++hyp_active;
            const auto it = mapping.find(label);
            if (it != mapping.end() && reference.tracks.at(it->second).covers(a)) {
                ++matched;
            }
        }
        if (ref_active == 0 && hyp_active == 0) {
            continue;
        }
        breakdown.missed_ms += std::max(0, ref_active - hyp_active) * dt;
        breakdown.false_alarm_ms += std::max(0, hyp_active - ref_active) * dt;
        breakdown.speaker_error_ms += (std::min(ref_active, hyp_active) - matched) * dt;
        breakdown.scored_speaker_ms += ref_active * dt;
    }
    return breakdown;
}

JerBreakdown compute_jer(const Hypothesis& reference, const Hypothesis& hypothesis) {
    require_same_recording(reference, hypothesis);
    const std::map<std::string, std::string> mapping =
        optimal_speaker_map(reference, hypothesis);
    std::map<std::string, std::string> inverse;
    for (const auto& [hyp_label, ref_label] : mapping) {
        inverse[ref_label] = hyp_label;
    }
    JerBreakdown breakdown;
    for (const auto& [ref_label, ref_track] : reference.tracks) {
        ++breakdown.speaker_count;
        const auto it = inverse.find(ref_label);
        if (it == inverse.end()) {
            breakdown.error_sum += 1.0;
            continue;
        }
        const Timeline& hyp_track = hypothesis.tracks.at(it->second);
        const std::int64_t inter = total_duration(timeline_intersection(ref_track, hyp_track));
        const std::int64_t uni = total_duration(timeline_union(ref_track, hyp_track));
        breakdown.error_sum += 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
    }
    return breakdown;
}

std::optional<double> overlap_ratio(const Hypothesis& reference) {
    std::vector<const Timeline*> tracks;
    for (const auto& [label, track] : reference.tracks) {
        tracks.push_back(&track);
    }
    const std::int64_t speech = total_duration(active_at_least(tracks, 1));
    if (speech == 0) {
        return std::nullopt;
    }
    const std::int64_t overlapped = total_duration(active_at_least(tracks, 2));
    return 100.0 * static_cast<double>(overlapped) / static_cast<double>(speech);
}

CorpusStats corpus_stats(const std::vector<Hypothesis>& references,
                         const std::vector<double>& overlap_bin_edges) {
    if (overlap_bin_edges.size() < 2 ||
        !std::is_sorted(overlap_bin_edges.begin(), overlap_bin_edges.end())) {
        throw std::invalid_argument("overlap_bin_edges must be sorted with at least 2 entries");
    }
    CorpusStats stats;
    stats.overlap_bin_edges = overlap_bin_edges;
    stats.overlap_bin_counts.assign(overlap_bin_edges.size() - 1, 0);
    for (const Hypothesis& reference : references) {
        RecordingStats row;
        row.recording_id = reference.recording_id;
        row.num_speakers = static_cast<int>(reference.num_speakers());
        row.overlap_ratio_pct = overlap_ratio(reference);
        ++stats.speaker_count_histogram[row.num_speakers];
        if (row.overlap_ratio_pct) {
            std::size_t bin = stats.overlap_bin_counts.size() - 1;
            for (std::size_t b = 0; b + 1 < overlap_bin_edges.size(); ++b) {
                if (*row.overlap_ratio_pct < overlap_bin_edges[b + 1]) {
                    bin = b;
                    break;
                }
            }
            ++stats.overlap_bin_counts[bin];
        }
        stats.recordings.push_back(std::move(row));
    }
    return stats;
}

std::vector<ScoreRow> score_recordings(const std::vector<Hypothesis>& references,
                                       const std::vector<Hypothesis>& hypotheses,
                                       const ScoringConfig& cfg) {
    std::map<std::string, const Hypothesis*> by_id;
    for (const Hypothesis& hyp : hypotheses) {
        by_id[hyp.recording_id] = &hyp;
    }
    std::vector<ScoreRow> rows;
    rows.reserve(references.size());
    for (const Hypothesis& reference : references) {
        ScoreRow row;
        row.recording_id = reference.recording_id;
        Hypothesis empty;
        empty.recording_id = reference.recording_id;
        const auto it = by_id.find(reference.recording_id);
        const Hypothesis& hyp = it == by_id.end() ? empty : *it->second;
        row.der = compute_der(reference, hyp, cfg);
        row.jer = compute_jer(reference, hyp);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_score_report(const std::vector<ScoreRow>& rows) {
    std::ostringstream out;
    out << "recording\tder_pct\tmiss_pct\tfa_pct\tspkerr_pct\tjer_pct\n";
    DerBreakdown total;
    JerBreakdown total_jer;
    const auto emit = [&out](const std::string& id, const DerBreakdown& der,
                             const JerBreakdown& jer) {
        const auto pct = [&der](std::int64_t part) -> std::optional<double> {
            if (der.scored_speaker_ms == 0) {
                return std::nullopt;
            }
            return 100.0 * static_cast<double>(part) / static_cast<double>(der.scored_speaker_ms);
        };
        std::optional<double> der_pct = der.der();
        if (der_pct) {
            der_pct = *der_pct * 100.0;
        }
        out << id << '\t' << format_pct(der_pct) << '\t' << format_pct(pct(der.missed_ms))
            << '\t' << format_pct(pct(der.false_alarm_ms)) << '\t'
            << format_pct(pct(der.speaker_error_ms)) << '\t' << format_pct(jer.jer()) << '\n';
    };
    for (const ScoreRow& row : rows) {
        emit(row.recording_id, row.der, row.jer);
        total.missed_ms += row.der.missed_ms;
        total.false_alarm_ms += row.der.false_alarm_ms;
        total.speaker_error_ms += row.der.speaker_error_ms;
        total.scored_speaker_ms += row.der.scored_speaker_ms;
        total_jer.error_sum += row.jer.error_sum;
        total_jer.speaker_count += row.jer.speaker_count;
    }
    emit("TOTAL", total, total_jer);
    return out.str();
}

std::string format_corpus_stats(const CorpusStats& stats) {
    std::ostringstream out;
    out << "recording\tspeakers\toverlap_pct\n";
    for (const RecordingStats& rec : stats.recordings) {
        out << rec.recording_id << '\t' << rec.num_speakers << '\t'
            << format_pct(rec.overlap_ratio_pct) << '\n';
    }
    out << "\nspeakers\trecordings\n";
    for (const auto& [speakers, count] : stats.speaker_count_histogram) {
        out << speakers << '\t' << count << '\n';
    }
    out << "\noverlap_bin\trecordings\n";
    for (std::size_t i = 0; i < stats.overlap_bin_counts.size(); ++i) {
        out << '[' << stats.overlap_bin_edges[i] << ", " << stats.overlap_bin_edges[i + 1]
            << ")\t" << stats.overlap_bin_counts[i] << '\n';
    }
    return out.str();
}

}  // namespace diar
