#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <vector>

#include "diar/embs_io.hpp"
#include "diar/error.hpp"
#include "diar/rng.hpp"

using diar::EmbeddingStream;

namespace {

EmbeddingStream sample_stream() {
    EmbeddingStream stream;
    stream.channel = 1;
    stream.dim = 2;
    stream.frame_period_ms = 80;
    stream.start_offset_ms = 0;
    stream.frames = {{1.0f, 0.0f}, {0.0f, -1.0f}, {0.5f, 0.5f}};
    return stream;
}

float quantized(double x) { return static_cast<float>(x); }

}  // namespace

TEST_CASE("the encoded header lays out magic, version, and geometry") {
    const std::vector<std::uint8_t> bytes = diar::save_embeddings(sample_stream());
    REQUIRE(bytes.size() == 32 + 3 * 2 * 4);
    CHECK(bytes[0] == 'E');
    CHECK(bytes[1] == 'M');
    CHECK(bytes[2] == 'B');
    CHECK(bytes[3] == 'S');
    CHECK(bytes[4] == 1);
    CHECK(bytes[8] == 2);
    CHECK(bytes[12] == 80);
    CHECK(bytes[16] == 0);
    CHECK(bytes[20] == 1);
    CHECK(bytes[24] == 3);
    for (const std::size_t i : {5, 9, 13, 17, 21, 25}) {
        CHECK(bytes[i] == 0);
    }
}

TEST_CASE("encode and decode round-trip exactly") {
    const EmbeddingStream stream = sample_stream();
    const EmbeddingStream loaded = diar::load_embeddings(diar::save_embeddings(stream));
    CHECK(loaded.dim == stream.dim);
    CHECK(loaded.channel == stream.channel);
    CHECK(loaded.frame_period_ms == stream.frame_period_ms);
    CHECK(loaded.start_offset_ms == stream.start_offset_ms);
    CHECK(loaded.frames == stream.frames);
    CHECK(loaded.recording_id.empty());
}

TEST_CASE("fuzzed float32 streams round-trip bit-exactly") {
    diar::Rng rng(31337);
    for (int trial = 0; trial < 300; ++trial) {
        EmbeddingStream stream;
        stream.dim = static_cast<std::size_t>(rng.uniform_int(1, 32));
        stream.channel = static_cast<int>(rng.uniform_int(0, 1));
        stream.frame_period_ms = rng.uniform_int(1, 200);
        stream.start_offset_ms = rng.uniform_int(0, 1000);
        const int frames = static_cast<int>(rng.uniform_int(0, 40));
        for (int i = 0; i < frames; ++i) {
            diar::EmbeddingVector frame(stream.dim);
            for (double& x : frame) {
                x = quantized(rng.normal() * 10.0);
            }
            stream.frames.push_back(std::move(frame));
        }
        const EmbeddingStream loaded = diar::load_embeddings(diar::save_embeddings(stream));
        CHECK(loaded.frames == stream.frames);
        CHECK(diar::save_embeddings(loaded) == diar::save_embeddings(stream));
    }
}

TEST_CASE("corrupt containers are rejected") {
    std::vector<std::uint8_t> bytes = diar::save_embeddings(sample_stream());

    SUBCASE("truncated header") {
        bytes.resize(16);
        CHECK_THROWS_AS(diar::load_embeddings(bytes), diar::ParseError);
    }
    SUBCASE("bad magic") {
        bytes[0] = 'X';
        CHECK_THROWS_AS(diar::load_embeddings(bytes), diar::ParseError);
    }
    SUBCASE("unsupported version") {
        bytes[4] = 9;
        CHECK_THROWS_AS(diar::load_embeddings(bytes), diar::ParseError);
    }
    SUBCASE("zero dim") {
        bytes[8] = 0;
        CHECK_THROWS_AS(diar::load_embeddings(bytes), diar::ParseError);
    }
    SUBCASE("truncated payload") {
        bytes.pop_back();
        CHECK_THROWS_AS(diar::load_embeddings(bytes), diar::ParseError);
    }
    SUBCASE("count overflowing the payload") {
        bytes[24] = 0xff;
        bytes[28] = 0xff;
        CHECK_THROWS_AS(diar::load_embeddings(bytes), diar::ParseError);
    }
}

TEST_CASE("saving validates frame dimensions") {
    EmbeddingStream stream = sample_stream();
    stream.frames[1] = {1.0};
    CHECK_THROWS_AS(diar::save_embeddings(stream), std::invalid_argument);
    stream = sample_stream();
    stream.channel = -1;
    CHECK_THROWS_AS(diar::save_embeddings(stream), std::invalid_argument);
}

TEST_CASE("file round-trip names the stream after the file stem") {
    const auto dir = std::filesystem::temp_directory_path() / "diar_embs_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "session7.ch0.embs").string();
    const EmbeddingStream stream = sample_stream();
    diar::save_embeddings_file(stream, path);
    const EmbeddingStream loaded = diar::load_embeddings_file(path);
    CHECK(loaded.recording_id == "session7.ch0");
    CHECK(loaded.frames == stream.frames);
    CHECK_THROWS_AS(diar::load_embeddings_file((dir / "missing.embs").string()), diar::IoError);
    std::filesystem::remove_all(dir);
}
