#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diar/timeline.hpp"

namespace diar {

// Weighted hypothesis fusion anchored on a root hypothesis: every other
// hypothesis is aligned to the root's speakers by maximum-overlap matching,
// then each root speaker's merged track is the set of instants whose total
// voting weight reaches vote_threshold.
struct FusionConfig {
    std::vector<std::pair<std::string, double>> weights;   // (system id, weight), in voting order
    std::string root_id;
    double vote_threshold = 1.0;
};

// Injective partial map from hypothesis speakers to root speakers.
// Hypothesis speakers without a positive-overlap partner are discarded.
struct SpeakerAlignment {
    std::map<std::string, std::string> mapping;
    std::set<std::string> discarded;
};

// Solves the maximum-weight bipartite matching where the weight of
// (hypothesis speaker, root speaker) is the duration of their tracks'
// intersection. Ties and alternative optima resolve lexicographically by
// (root label, hypothesis label).
SpeakerAlignment align_to_root(const Hypothesis& root, const Hypothesis& hyp);

struct AlignedVoter {
    Hypothesis hypothesis;
    SpeakerAlignment alignment;
    double weight = 0.0;
};

// Per-speaker weighted voting over exact interval boundaries. A tiny
// tolerance (1e-9) absorbs floating-point error in summed weights, so
// masses that mathematically reach the threshold always pass. Speakers
// whose merged track is empty are dropped.
Hypothesis vote(const Hypothesis& root, const std::vector<AlignedVoter>& voters,
                double vote_threshold);

// align_to_root + vote over the systems named in cfg.weights. The root
// must be present in `systems`; it participates in voting only when listed
// in cfg.weights. Output speakers are a subset of the root's.
Hypothesis fuse(const std::map<std::string, Hypothesis>& systems, const FusionConfig& cfg);

}  // namespace diar
