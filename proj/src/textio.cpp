#include "diar/textio.hpp"

#include <fstream>
#include <sstream>

#include "diar/error.hpp"

namespace diar {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write file: " + path);
    }
    out << text;
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

}  // namespace diar
