#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace diar {

// Half-open time interval [start_ms, end_ms) in integer milliseconds.
// All times in this toolkit are integer milliseconds; seconds appear only
// at file boundaries.
struct Segment {
    std::int64_t start_ms;
    std::int64_t end_ms;

    Segment(std::int64_t start, std::int64_t end);

    std::int64_t duration_ms() const { return end_ms - start_ms; }
    bool operator==(const Segment&) const = default;
};

// A set of time instants in maximal disjoint normal form: segments sorted by
// start, none overlapping or touching. Two timelines covering the same
// instants compare equal.
class Timeline {
public:
    Timeline() = default;
    explicit Timeline(std::vector<Segment> segments);

    const std::vector<Segment>& segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }
    std::size_t size() const { return segments_.size(); }

    bool covers(std::int64_t instant_ms) const;

    bool operator==(const Timeline&) const = default;

private:
    std::vector<Segment> segments_;
};

std::int64_t total_duration(const Timeline& t);
Timeline timeline_union(const Timeline& a, const Timeline& b);
Timeline timeline_intersection(const Timeline& a, const Timeline& b);

// A candidate diarization for one recording: speaker label -> activity.
// Tracks of different speakers may overlap (overlapped speech). Tracks are
// keyed by label, so labels are unique; empty tracks are not stored.
struct Hypothesis {
    std::string recording_id;
    std::map<std::string, Timeline> tracks;

    // Inserts a track, rejecting duplicate labels and dropping empty timelines.
    void add_track(const std::string& label, Timeline timeline);

    std::size_t num_speakers() const { return tracks.size(); }

    bool operator==(const Hypothesis&) const = default;
};

// Speech regions of one recording (the VAD output this toolkit consumes).
struct SpeechRegions {
    std::string recording_id;
    Timeline regions;

    bool operator==(const SpeechRegions&) const = default;
};

}  // namespace diar
