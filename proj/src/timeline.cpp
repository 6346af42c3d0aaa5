#include "diar/timeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "diar/error.hpp"

namespace diar {

Segment::Segment(std::int64_t start, std::int64_t end) : start_ms(start), end_ms(end) {
    if (start < 0) {
        throw std::invalid_argument("segment start must be >= 0, got " + std::to_string(start));
    }
    if (end <= start) {
        throw std::invalid_argument("segment must have positive length, got [" +
                                    std::to_string(start) + ", " + std::to_string(end) + ")");
    }
}

Timeline::Timeline(std::vector<Segment> segments) {
    std::sort(segments.begin(), segments.end(), [](const Segment& a, const Segment& b) {
        return a.start_ms != b.start_ms ? a.start_ms < b.start_ms : a.end_ms < b.end_ms;
    });
    segments_.reserve(segments.size());
    for (const Segment& seg : segments) {
        // Touching segments (end == next start) merge as well.
        if (!segments_.empty() && seg.start_ms <= segments_.back().end_ms) {
            segments_.back().end_ms = std::max(segments_.back().end_ms, seg.end_ms);
        } else {
            segments_.push_back(seg);
        }
    }
}

bool Timeline::covers(std::int64_t instant_ms) const {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), instant_ms,
                               [](std::int64_t t, const Segment& s) { return t < s.end_ms; });
    return it != segments_.end() && it->start_ms <= instant_ms;
}

std::int64_t total_duration(const Timeline& t) {
    std::int64_t total = 0;
    for (const Segment& seg : t.segments()) {
        total += seg.duration_ms();
    }
    return total;
}

Timeline timeline_union(const Timeline& a, const Timeline& b) {
    std::vector<Segment> merged = a.segments();
    merged.insert(merged.end(), b.segments().begin(), b.segments().end());
    return Timeline(std::move(merged));
}

Timeline timeline_intersection(const Timeline& a, const Timeline& b) {
    std::vector<Segment> out;
    std::size_t i = 0;
    std::size_t j = 0;
    const auto& as = a.segments();
    const auto& bs = b.segments();
    while (i < as.size() && j < bs.size()) {
        const std::int64_t lo = std::max(as[i].start_ms, bs[j].start_ms);
        const std::int64_t hi = std::min(as[i].end_ms, bs[j].end_ms);
        if (lo < hi) {
            out.emplace_back(lo, hi);
        }
        if (as[i].end_ms < bs[j].end_ms) {
            ++i;
        } else {
            ++j;
        }
    }
    return Timeline(std::move(out));
}

void Hypothesis::add_track(const std::string& label, Timeline timeline) {
    if (timeline.empty()) {
        return;
    }
    auto [it, inserted] = tracks.emplace(label, std::move(timeline));
    if (!inserted) {
        throw std::invalid_argument("duplicate speaker label '" + label + "' in hypothesis");
    }
}

}  // namespace diar
