#ifndef TRA_RESPONSE_PARSER_HPP_
#define TRA_RESPONSE_PARSER_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace tra {

// A completion parsed under the strict think/range/answer grammar. The
// numeric fields are meaningful only when well_formed is true.
struct StructuredResponse {
  std::string think;
  int64_t range_low = 0;
  int64_t range_up = 0;
  int64_t answer = 0;
  bool well_formed = false;
};

// Parses raw completion text. A response is well formed iff it consists of
//   <think>...</think> <range>[LOW, UP]</range> <answer>N</answer>
// in that order, with nothing but whitespace between and around the blocks,
// where LOW, UP and N are non-negative decimal integers (whitespace inside
// tags/brackets is allowed). Each of the six tag literals must appear exactly
// once in the whole input. Malformed input is a valid result, not an error.
StructuredResponse parse_response(std::string_view raw);

// 1 for a well-formed response, 0 otherwise. Purely syntactic: an inverted
// interval (range_low > range_up) still earns the format reward.
double format_reward(const StructuredResponse& resp);

// Renders fields back into the grammar. Re-parsing the result of a
// well-formed response yields identical fields, provided the think text does
// not itself contain any of the tag literals.
std::string to_canonical_text(const StructuredResponse& resp);
std::string to_canonical_text(std::string_view think, int64_t range_low, int64_t range_up,
                              int64_t answer);

}  // namespace tra

#endif  // TRA_RESPONSE_PARSER_HPP_
