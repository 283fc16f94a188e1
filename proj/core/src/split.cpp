#include "d2t/split.hpp"

#include <vector>

#include "d2t/errors.hpp"
#include "d2t/text.hpp"

namespace d2t {

SplitOutput split_output(std::string_view text, std::string_view sep,
                         ManySepSecond many_sep_second) {
  if (sep.empty()) throw ValidationError("separator must not be empty");

  std::vector<std::string_view> segments;
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = text.find(sep, pos);
    if (hit == std::string_view::npos) {
      segments.push_back(text.substr(pos));
      break;
    }
    segments.push_back(text.substr(pos, hit - pos));
    pos = hit + sep.size();
  }

  const auto part = [&segments](std::size_t index) {
    return std::string(trim_whitespace(segments[index]));
  };

  SplitOutput result;
  result.sep_count = segments.size() - 1;
  result.first = part(0);
  if (result.sep_count == 0) {
    result.second = result.first;
  } else if (result.sep_count == 1) {
    result.second = part(1);
  } else {
    result.second =
        many_sep_second == ManySepSecond::kSecondSegment ? part(1) : result.first;
  }
  return result;
}

}  // namespace d2t
