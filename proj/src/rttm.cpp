#include "diar/rttm.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "diar/error.hpp"
#include "diar/textio.hpp"

namespace diar {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream ss(line);
    std::string field;
    while (ss >> field) {
        fields.push_back(field);
    }
    return fields;
}

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == '#') {
            return true;
        }
        if (!std::isspace(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

std::ifstream open_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    return in;
}

}  // namespace

std::int64_t seconds_text_to_ms(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    const std::size_t int_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
    const std::string_view int_part = text.substr(int_begin, pos - int_begin);
    std::string_view frac_part;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t frac_begin = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        frac_part = text.substr(frac_begin, pos - frac_begin);
    }
    if (pos != text.size() || int_part.empty()) {
        throw std::invalid_argument("not a plain decimal number: '" + std::string(text) + "'");
    }
    if (int_part.size() > 12) {
        throw std::invalid_argument("seconds value out of range: '" + std::string(text) + "'");
    }

    std::int64_t whole = 0;
    for (char c : int_part) {
        whole = whole * 10 + (c - '0');
    }
    std::int64_t frac_ms = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        frac_ms = frac_ms * 10 + (i < frac_part.size() ? frac_part[i] - '0' : 0);
    }
    // Digits past the millisecond grid round half away from zero.
    if (frac_part.size() > 3 && frac_part[3] >= '5') {
        ++frac_ms;
    }
    const std::int64_t ms = whole * 1000 + frac_ms;
    return negative ? -ms : ms;
}

std::string ms_to_seconds_text(std::int64_t ms) {
    const bool negative = ms < 0;
    const std::int64_t abs_ms = negative ? -ms : ms;
    std::string frac = std::to_string(abs_ms % 1000);
    frac.insert(0, 3 - frac.size(), '0');
    return (negative ? "-" : "") + std::to_string(abs_ms / 1000) + "." + frac;
}

std::vector<Hypothesis> parse_rttm(std::istream& in) {
    std::map<std::string, std::map<std::string, std::vector<Segment>>> by_recording;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (is_comment_or_blank(line)) {
            continue;
        }
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() < 9) {
            throw ParseError("RTTM line has " + std::to_string(fields.size()) +
                                 " fields, expected at least 9",
                             line_number);
        }
        if (fields[0] != "SPEAKER") {
            throw ParseError("unsupported RTTM record type '" + fields[0] + "'", line_number);
        }
        std::int64_t onset_ms = 0;
        std::int64_t duration_ms = 0;
        try {
            onset_ms = seconds_text_to_ms(fields[3]);
            duration_ms = seconds_text_to_ms(fields[4]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_number);
        }
        if (onset_ms < 0) {
            throw ParseError("negative onset", line_number);
        }
        if (duration_ms <= 0) {
            throw ParseError("non-positive duration", line_number);
        }
        by_recording[fields[1]][fields[7]].emplace_back(onset_ms, onset_ms + duration_ms);
    }

    std::vector<Hypothesis> result;
    result.reserve(by_recording.size());
    for (auto& [recording_id, speakers] : by_recording) {
        Hypothesis h;
        h.recording_id = recording_id;
        for (auto& [label, segments] : speakers) {
            h.add_track(label, Timeline(std::move(segments)));
        }
        result.push_back(std::move(h));
    }
    return result;
}

std::vector<Hypothesis> parse_rttm_text(const std::string& text) {
    std::istringstream in(text);
    return parse_rttm(in);
}

std::vector<Hypothesis> parse_rttm_file(const std::string& path) {
    std::ifstream in = open_input_file(path);
    try {
        return parse_rttm(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line_number());
    }
}

std::string write_rttm(const Hypothesis& h) {
    struct Row {
        std::int64_t onset_ms;
        std::int64_t duration_ms;
        const std::string* label;
    };
    std::vector<Row> rows;
    for (const auto& [label, timeline] : h.tracks) {
        for (const Segment& seg : timeline.segments()) {
            rows.push_back({seg.start_ms, seg.duration_ms(), &label});
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.onset_ms != b.onset_ms ? a.onset_ms < b.onset_ms : *a.label < *b.label;
    });

    std::string out;
    for (const Row& row : rows) {
        out += "SPEAKER " + h.recording_id + " 1 " + ms_to_seconds_text(row.onset_ms) + " " +
               ms_to_seconds_text(row.duration_ms) + " <NA> <NA> " + *row.label + " <NA> <NA>\n";
    }
    return out;
}

std::string write_rttm(const std::vector<Hypothesis>& hypotheses) {
    std::vector<const Hypothesis*> sorted;
    sorted.reserve(hypotheses.size());
    for (const Hypothesis& h : hypotheses) {
        sorted.push_back(&h);
    }
    std::sort(sorted.begin(), sorted.end(), [](const Hypothesis* a, const Hypothesis* b) {
        return a->recording_id < b->recording_id;
    });
    std::string out;
    for (const Hypothesis* h : sorted) {
        out += write_rttm(*h);
    }
    return out;
}

void write_rttm_file(const std::vector<Hypothesis>& hypotheses, const std::string& path) {
    write_text_file(write_rttm(hypotheses), path);
}

std::vector<SpeechRegions> parse_uem(std::istream& in) {
    std::map<std::string, std::vector<Segment>> by_recording;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (is_comment_or_blank(line)) {
            continue;
        }
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 4) {
            throw ParseError("UEM line has " + std::to_string(fields.size()) +
                                 " fields, expected 4",
                             line_number);
        }
        std::int64_t start_ms = 0;
        std::int64_t end_ms = 0;
        try {
            start_ms = seconds_text_to_ms(fields[2]);
            end_ms = seconds_text_to_ms(fields[3]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_number);
        }
        if (start_ms < 0) {
            throw ParseError("negative region start", line_number);
        }
        if (end_ms <= start_ms) {
            throw ParseError("region end must be greater than start", line_number);
        }
        by_recording[fields[0]].emplace_back(start_ms, end_ms);
    }

    std::vector<SpeechRegions> result;
    result.reserve(by_recording.size());
    for (auto& [recording_id, segments] : by_recording) {
        result.push_back({recording_id, Timeline(std::move(segments))});
    }
    return result;
}

std::vector<SpeechRegions> parse_uem_text(const std::string& text) {
    std::istringstream in(text);
    return parse_uem(in);
}

std::vector<SpeechRegions> parse_uem_file(const std::string& path) {
    std::ifstream in = open_input_file(path);
    try {
        return parse_uem(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line_number());
    }
}

std::string write_uem(const SpeechRegions& regions) {
    std::string out;
    for (const Segment& seg : regions.regions.segments()) {
        out += regions.recording_id + " 1 " + ms_to_seconds_text(seg.start_ms) + " " +
               ms_to_seconds_text(seg.end_ms) + "\n";
    }
    return out;
}

void write_uem_file(const SpeechRegions& regions, const std::string& path) {
    write_text_file(write_uem(regions), path);
}

std::string write_uem(const std::vector<SpeechRegions>& regions) {
    std::vector<const SpeechRegions*> sorted;
    sorted.reserve(regions.size());
    for (const SpeechRegions& r : regions) {
        sorted.push_back(&r);
    }
    std::sort(sorted.begin(), sorted.end(), [](const SpeechRegions* a, const SpeechRegions* b) {
        return a->recording_id < b->recording_id;
    });
    std::string out;
    for (const SpeechRegions* r : sorted) {
        out += write_uem(*r);
    }
    return out;
}

void write_uem_file(const std::vector<SpeechRegions>& regions, const std::string& path) {
    write_text_file(write_uem(regions), path);
}

}  // namespace diar
