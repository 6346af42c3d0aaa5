#include "diar/embs_io.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "diar/error.hpp"

namespace diar {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t value) {
    out.push_back(static_cast<std::uint8_t>(value & 0xff));
    out.push_back(static_cast<std::uint8_t>((value >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((value >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((value >> 24) & 0xff));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t value) {
    put_u32(out, static_cast<std::uint32_t>(value & 0xffffffffULL));
    put_u32(out, static_cast<std::uint32_t>(value >> 32));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint64_t get_u64(const std::uint8_t* p) {
    return static_cast<std::uint64_t>(get_u32(p)) |
           (static_cast<std::uint64_t>(get_u32(p + 4)) << 32);
}

std::uint32_t checked_u32(std::int64_t value, const char* what) {
    if (value < 0 || value > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument(std::string(what) + " does not fit the EMBS header: " +
                                    std::to_string(value));
    }
    return static_cast<std::uint32_t>(value);
}

constexpr std::size_t kHeaderSize = 32;

}  // namespace

std::vector<std::uint8_t> save_embeddings(const EmbeddingStream& stream) {
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + stream.frames.size() * stream.dim * 4);
    for (char c : {'E', 'M', 'B', 'S'}) {
        out.push_back(static_cast<std::uint8_t>(c));
    }
    put_u32(out, kEmbsVersion);
    put_u32(out, checked_u32(static_cast<std::int64_t>(stream.dim), "dim"));
    put_u32(out, checked_u32(stream.frame_period_ms, "frame_period_ms"));
    put_u32(out, checked_u32(stream.start_offset_ms, "start_offset_ms"));
    put_u32(out, checked_u32(stream.channel, "channel"));
    put_u64(out, stream.frames.size());
    for (const EmbeddingVector& frame : stream.frames) {
        if (frame.size() != stream.dim) {
            throw std::invalid_argument("frame dimension " + std::to_string(frame.size()) +
                                        " does not match stream dim " + std::to_string(stream.dim));
        }
        for (double value : frame) {
            const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(value));
            put_u32(out, bits);
        }
    }
    return out;
}

EmbeddingStream load_embeddings(const std::uint8_t* data, std::size_t size) {
    if (size < kHeaderSize) {
        throw ParseError("EMBS data truncated: " + std::to_string(size) + " bytes", 0);
    }
    if (std::memcmp(data, "EMBS", 4) != 0) {
        throw ParseError("bad EMBS magic", 0);
    }
    const std::uint32_t version = get_u32(data + 4);
    if (version != kEmbsVersion) {
        throw ParseError("unsupported EMBS version " + std::to_string(version), 0);
    }
    EmbeddingStream stream;
    stream.dim = get_u32(data + 8);
    stream.frame_period_ms = get_u32(data + 12);
    stream.start_offset_ms = get_u32(data + 16);
    stream.channel = static_cast<int>(get_u32(data + 20));
    const std::uint64_t count = get_u64(data + 24);
    if (stream.dim == 0) {
        throw ParseError("EMBS dim must be positive", 0);
    }
    if (stream.frame_period_ms == 0) {
        throw ParseError("EMBS frame period must be positive", 0);
    }
    const std::uint64_t payload = size - kHeaderSize;
    if (payload / 4 / stream.dim < count || payload != count * stream.dim * 4) {
        throw ParseError("EMBS payload is " + std::to_string(payload) + " bytes, expected " +
                             std::to_string(count) + " frames of dim " +
                             std::to_string(stream.dim),
                         0);
    }
    stream.frames.resize(count);
    const std::uint8_t* p = data + kHeaderSize;
    for (std::uint64_t i = 0; i < count; ++i) {
        EmbeddingVector& frame = stream.frames[i];
        frame.resize(stream.dim);
        for (std::size_t d = 0; d < stream.dim; ++d, p += 4) {
            frame[d] = static_cast<double>(std::bit_cast<float>(get_u32(p)));
        }
    }
    return stream;
}

EmbeddingStream load_embeddings(const std::vector<std::uint8_t>& bytes) {
    return load_embeddings(bytes.data(), bytes.size());
}

void save_embeddings_file(const EmbeddingStream& stream, const std::string& path) {
    const std::vector<std::uint8_t> bytes = save_embeddings(stream);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write file: " + path);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

EmbeddingStream load_embeddings_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        EmbeddingStream stream = load_embeddings(bytes);
        stream.recording_id = std::filesystem::path(path).stem().string();
        return stream;
    } catch (const ParseError& e) {
        throw IoError(path + ": " + e.what());
    }
}

}  // namespace diar
