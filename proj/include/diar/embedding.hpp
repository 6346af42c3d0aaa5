#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diar/timeline.hpp"

namespace diar {

using EmbeddingVector = std::vector<double>;

double l2_norm(const EmbeddingVector& v);

// v / ||v||. Throws std::invalid_argument on a zero-norm input.
EmbeddingVector normalized(const EmbeddingVector& v);

void add_in_place(EmbeddingVector& acc, const EmbeddingVector& v);

// dot(a,b) / (||a|| * ||b||), clamped to [-1, 1] against rounding.
// Throws std::invalid_argument on dimension mismatch or zero-norm input.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

// Arithmetic mean, L2-normalized to unit length. Throws std::invalid_argument
// on empty input, mixed dimensions, or a zero-norm mean.
EmbeddingVector centroid(const std::vector<EmbeddingVector>& vectors);

// Fixed-rate sequence of speaker-embedding vectors for one channel of one
// recording. Frame i covers [start_offset_ms + i*period, + (i+1)*period).
// An all-zero frame means the channel carries no speech there.
struct EmbeddingStream {
    std::string recording_id;
    int channel = 0;
    std::size_t dim = 0;
    std::int64_t frame_period_ms = 80;
    std::int64_t start_offset_ms = 0;
    std::vector<EmbeddingVector> frames;

    std::int64_t frame_start_ms(std::size_t i) const {
        return start_offset_ms + static_cast<std::int64_t>(i) * frame_period_ms;
    }
    std::int64_t frame_end_ms(std::size_t i) const { return frame_start_ms(i + 1); }
    std::int64_t frame_center_ms(std::size_t i) const {
        return frame_start_ms(i) + frame_period_ms / 2;
    }
};

}  // namespace diar
