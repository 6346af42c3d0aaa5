#pragma once

#include <string>

namespace diar {

// Reads a whole file; throws IoError on failure.
std::string read_text_file(const std::string& path);

// Writes text byte-for-byte (no newline translation); throws IoError.
void write_text_file(const std::string& text, const std::string& path);

}  // namespace diar
