#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diar/embedding.hpp"
#include "diar/timeline.hpp"

namespace diar {

// Parameters for the synthetic conversation generator.
//
// The generator produces a randomized speaker schedule (alternating turns
// with exponential-like durations), renders each active frame as the
// speaker's centroid plus isotropic Gaussian noise renormalized to the unit
// sphere, and emits two separated channels: overlapping turns are placed on
// channel 1, everything else on channel 0.
struct SyntheticConfig {
    int num_speakers = 2;
    std::int64_t duration_ms = 60000;
    std::size_t dim = 128;
    double noise_sigma = 0.1;
    double overlap_ratio_target = 0.0;   // fraction of speech time, in [0,1)
    std::int64_t mean_turn_ms = 2000;
    double min_centroid_angle_deg = 75.0;
    std::uint64_t seed = 1;
    double leakage_ratio = 0.0;   // fraction of emitted turns that are leakage, in [0,1)
};

// A generated conversation.
//
// `css_streams` holds channels 0 and 1 as an ideal separation front-end
// would emit them; channel 1 carries the overlapped turns plus any planted
// leakage. `mixed_stream` is the single-channel variant of the same
// conversation (frame-wise sum of the speech content, renormalized); it
// never contains leakage, since leakage is an artifact of separation.
// `regions` is the detected-speech truth (speech plus leakage, since a VAD
// cannot tell them apart), `reference` is the true speaker schedule, and
// `leakage` marks where leakage turns were planted.
//
// All frame values are quantized to 32-bit float precision, so streams
// survive a save/load cycle bit-exactly.
struct SyntheticConversation {
    std::vector<EmbeddingStream> css_streams;
    EmbeddingStream mixed_stream;
    Hypothesis reference;
    SpeechRegions regions;
    Timeline leakage;
    std::vector<EmbeddingVector> speaker_centroids;
};

// Generates a conversation. Deterministic for a fixed config.
// Throws GenerationError when the config is infeasible (minimum centroid
// angle unattainable, overlap target unreachable, no room for leakage).
SyntheticConversation synthesize_conversation(const SyntheticConfig& cfg,
                                              const std::string& recording_id);

// Collapses multiple channels into one by frame-wise summation followed by
// renormalization. Frames summing to zero stay zero (silence). All streams
// must share dim, frame period, and start offset.
EmbeddingStream mix_streams(const std::vector<EmbeddingStream>& streams);

}  // namespace diar
