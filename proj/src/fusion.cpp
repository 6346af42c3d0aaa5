#include "diar/fusion.hpp"

#include <algorithm>
#include <stdexcept>

#include "diar/assignment.hpp"
#include "diar/error.hpp"

namespace diar {

namespace {

constexpr double kVoteEpsilon = 1e-9;

std::vector<std::string> track_labels(const Hypothesis& hyp) {
    std::vector<std::string> labels;
    labels.reserve(hyp.tracks.size());
    for (const auto& [label, track] : hyp.tracks) {
        labels.push_back(label);
    }
    return labels;
}

}  // namespace

SpeakerAlignment align_to_root(const Hypothesis& root, const Hypothesis& hyp) {
    if (root.recording_id != hyp.recording_id) {
        throw std::invalid_argument("align_to_root: recordings differ: " + root.recording_id +
                                    " vs " + hyp.recording_id);
    }
    const std::vector<std::string> hyp_labels = track_labels(hyp);
    const std::vector<std::string> root_labels = track_labels(root);
    std::vector<std::vector<std::int64_t>> weights(
        hyp_labels.size(), std::vector<std::int64_t>(root_labels.size(), 0));
    for (std::size_t r = 0; r < hyp_labels.size(); ++r) {
        for (std::size_t c = 0; c < root_labels.size(); ++c) {
            weights[r][c] = total_duration(timeline_intersection(
                hyp.tracks.at(hyp_labels[r]), root.tracks.at(root_labels[c])));
        }
    }
    SpeakerAlignment alignment;
    for (const auto& [row, col] : max_weight_matching(weights)) {
        alignment.mapping[hyp_labels[row]] = root_labels[col];
    }
    for (const std::string& label : hyp_labels) {
        if (!alignment.mapping.count(label)) {
            alignment.discarded.insert(label);
        }
    }
    return alignment;
}

Hypothesis vote(const Hypothesis& root, const std::vector<AlignedVoter>& voters,
                double vote_threshold) {
    Hypothesis merged;
    merged.recording_id = root.recording_id;
    for (const auto& [root_label, root_track] : root.tracks) {
        std::vector<std::pair<std::int64_t, double>> events;
        for (const AlignedVoter& voter : voters) {
            if (voter.hypothesis.recording_id != root.recording_id) {
                throw std::invalid_argument("vote: recordings differ: " + root.recording_id +
                                            " vs " + voter.hypothesis.recording_id);
            }
            for (const auto& [hyp_label, mapped_label] : voter.alignment.mapping) {
                if (mapped_label != root_label) {
                    continue;
                }
                const auto it = voter.hypothesis.tracks.find(hyp_label);
                if (it == voter.hypothesis.tracks.end()) {
                    continue;
                }
                for (const Segment& seg : it->second.segments()) {
                    events.emplace_back(seg.start_ms, voter.weight);
                    events.emplace_back(seg.end_ms, -voter.weight);
                }
            }
        }
        std::sort(events.begin(), events.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Segment> passing;
        double mass = 0.0;
        for (std::size_t i = 0; i < events.size();) {
            const std::int64_t t = events[i].first;
            while (i < events.size() && events[i].first == t) {
                mass += events[i].second;
                ++i;
            }
            if (i == events.size()) {
                break;
            }
            if (mass >= vote_threshold - kVoteEpsilon) {
                passing.emplace_back(t, events[i].first);
            }
        }
        Timeline track{std::move(passing)};
        if (!track.empty()) {
            merged.add_track(root_label, track);
        }
    }
    return merged;
}

Hypothesis fuse(const std::map<std::string, Hypothesis>& systems, const FusionConfig& cfg) {
    const auto root_it = systems.find(cfg.root_id);
    if (root_it == systems.end()) {
        throw ConfigError("fusion root '" + cfg.root_id + "' is not among the hypotheses");
    }
    const Hypothesis& root = root_it->second;
    std::vector<AlignedVoter> voters;
    voters.reserve(cfg.weights.size());
    for (const auto& [id, weight] : cfg.weights) {
        if (weight <= 0.0) {
            throw ConfigError("voting weight for '" + id + "' must be positive");
        }
        const auto it = systems.find(id);
        if (it == systems.end()) {
            throw ConfigError("fusion weight names unknown hypothesis '" + id + "'");
        }
        AlignedVoter voter;
        voter.hypothesis = it->second;
        voter.alignment = align_to_root(root, voter.hypothesis);
        voter.weight = weight;
        voters.push_back(std::move(voter));
    }
    return vote(root, voters, cfg.vote_threshold);
}

}  // namespace diar
