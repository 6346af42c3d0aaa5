#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diar/embedding.hpp"

namespace diar {

// EMBS binary container for embedding streams, little-endian throughout:
//   magic "EMBS" | u32 version (=1) | u32 dim | u32 frame_period_ms |
//   u32 start_offset_ms | u32 channel | u64 count |
//   count * dim IEEE-754 32-bit floats, frame-major.
// The recording id is not stored; by convention it is the file stem.

inline constexpr std::uint32_t kEmbsVersion = 1;

std::vector<std::uint8_t> save_embeddings(const EmbeddingStream& stream);

// recording_id is left empty; callers name the stream.
EmbeddingStream load_embeddings(const std::uint8_t* data, std::size_t size);
EmbeddingStream load_embeddings(const std::vector<std::uint8_t>& bytes);

void save_embeddings_file(const EmbeddingStream& stream, const std::string& path);

// Sets recording_id to the file stem.
EmbeddingStream load_embeddings_file(const std::string& path);

}  // namespace diar
