#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace d2t {

// Which segment stands in for the second part when the separator shows up
// more than once. Repeating the first segment is the shipped default;
// kSecondSegment is the alternative reading.
enum class ManySepSecond { kFirstSegment, kSecondSegment };

struct SplitOutput {
  std::string first;
  std::string second;
  // Separator occurrences found in the raw text (left to right,
  // non-overlapping).
  std::size_t sep_count = 0;
};

// Split a raw model output around a literal separator:
//   0 occurrences:  first = second = the whole output
//   1 occurrence:   first = segment 1, second = segment 2
//   2+ occurrences: first = segment 1, second = segment 1
//                   (or segment 2 under ManySepSecond::kSecondSegment)
// Parts are whitespace-trimmed. Total on every input; the separator must be
// non-empty.
SplitOutput split_output(std::string_view text, std::string_view sep,
                         ManySepSecond many_sep_second = ManySepSecond::kFirstSegment);

}  // namespace d2t
