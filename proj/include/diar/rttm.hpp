#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "diar/timeline.hpp"

namespace diar {

// RTTM (SPEAKER records only) and UEM readers/writers. Both formats are
// UTF-8, "\n" line endings, "#"-prefixed comment lines ignored. Times are
// seconds in the files and integer milliseconds in memory; printing uses
// exactly 3 decimal places, so every millisecond round-trips bit-exactly.

// Parses a plain decimal seconds value ("12", "0.50", "1.0015") to integer
// milliseconds, rounding half away from zero on the millisecond grid.
std::int64_t seconds_text_to_ms(std::string_view text);

// Renders milliseconds as seconds with exactly 3 decimal places.
std::string ms_to_seconds_text(std::int64_t ms);

// One Hypothesis per recording_id, ordered by recording_id. Per-speaker
// segments are merged into normal form.
std::vector<Hypothesis> parse_rttm(std::istream& in);
std::vector<Hypothesis> parse_rttm_text(const std::string& text);
std::vector<Hypothesis> parse_rttm_file(const std::string& path);

// One "SPEAKER <rec> 1 <onset> <dur> <NA> <NA> <label> <NA> <NA>" line per
// segment, sorted by (onset, speaker label).
std::string write_rttm(const Hypothesis& h);
std::string write_rttm(const std::vector<Hypothesis>& hypotheses);
void write_rttm_file(const std::vector<Hypothesis>& hypotheses, const std::string& path);

// UEM lines are "recording_id channel start_sec end_sec".
std::vector<SpeechRegions> parse_uem(std::istream& in);
std::vector<SpeechRegions> parse_uem_text(const std::string& text);
std::vector<SpeechRegions> parse_uem_file(const std::string& path);

std::string write_uem(const SpeechRegions& regions);
void write_uem_file(const SpeechRegions& regions, const std::string& path);
std::string write_uem(const std::vector<SpeechRegions>& regions);
void write_uem_file(const std::vector<SpeechRegions>& regions, const std::string& path);

}  // namespace diar
