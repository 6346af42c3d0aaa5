#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diar/timeline.hpp"

namespace diar {

struct ScoringConfig {
    std::int64_t collar_ms = 250;
    bool score_overlap = true;
};

// Diarization error components in milliseconds of speaker time.
// der() is empty when no reference speaker time was scored.
struct DerBreakdown {
    std::int64_t missed_ms = 0;
    std::int64_t false_alarm_ms = 0;
    std::int64_t speaker_error_ms = 0;
    std::int64_t scored_speaker_ms = 0;

    std::optional<double> der() const;
};

// Per-speaker Jaccard error terms; jer() is their mean as a percentage,
// empty when the reference has no speakers.
struct JerBreakdown {
    double error_sum = 0.0;
    int speaker_count = 0;

    std::optional<double> jer() const;
};

// Injective partial map hypothesis speaker -> reference speaker maximizing
// the total duration of mapped track intersections. Deterministic:
// alternative optima resolve lexicographically by (reference label,
// hypothesis label), and zero-overlap speakers stay unmapped.
std::map<std::string, std::string> optimal_speaker_map(const Hypothesis& reference,
                                                       const Hypothesis& hypothesis);

// Interval-exact DER. Instants within collar_ms of a reference segment
// boundary are excluded; with score_overlap false, instants where the
// reference has 2+ active speakers are excluded entirely. At each scored
// instant with R reference speakers, S hypothesis speakers, and M matches
// under the optimal map: miss += max(0, R-S), false alarm += max(0, S-R),
// speaker error += min(R, S) - M; the denominator is total scored
// reference speaker time.
DerBreakdown compute_der(const Hypothesis& reference, const Hypothesis& hypothesis,
                         const ScoringConfig& cfg);

// Jaccard error rate over the optimal speaker map, no collar. Reference
// speakers without a mapped hypothesis speaker score 1.
JerBreakdown compute_jer(const Hypothesis& reference, const Hypothesis& hypothesis);

// Percentage of speech time during which 2+ reference speakers are active,
// relative to the time during which at least one is. Empty when the
// reference has no speech.
std::optional<double> overlap_ratio(const Hypothesis& reference);

struct RecordingStats {
    std::string recording_id;
    std::optional<double> overlap_ratio_pct;
    int num_speakers = 0;
};

struct CorpusStats {
    std::vector<RecordingStats> recordings;
    std::map<int, std::int64_t> speaker_count_histogram;
    std::vector<double> overlap_bin_edges;
    std::vector<std::int64_t> overlap_bin_counts;   // bin i covers [edge i, edge i+1)
};

// Per-recording overlap ratio and speaker count plus corpus histograms.
// Recordings without speech are excluded from the overlap histogram.
CorpusStats corpus_stats(const std::vector<Hypothesis>& references,
                         const std::vector<double>& overlap_bin_edges = {0, 10, 20, 30, 40, 50,
                                                                         60, 70, 80, 90, 100});

struct ScoreRow {
    std::string recording_id;
    DerBreakdown der;
    JerBreakdown jer;
};

// Scores each reference recording against the hypothesis with the same
// recording_id (an absent hypothesis counts as empty).
std::vector<ScoreRow> score_recordings(const std::vector<Hypothesis>& references,
                                       const std::vector<Hypothesis>& hypotheses,
                                       const ScoringConfig& cfg);

// Tab-separated report: one row per recording plus a TOTAL row whose time
// components are summed before the final division. Percentages carry 3
// decimals; unscorable cells print "-".
std::string format_score_report(const std::vector<ScoreRow>& rows);

// Human-readable corpus summary: per-recording table, speaker-count
// histogram, and overlap-ratio histogram.
std::string format_corpus_stats(const CorpusStats& stats);

}  // namespace diar
