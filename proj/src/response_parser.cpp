#include "response_parser.hpp"

#include <array>
#include <optional>

namespace tra {
namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kRangeOpen = "<range>";
constexpr std::string_view kRangeClose = "</range>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

void skip_ws(std::string_view s, size_t& pos) {
  while (pos < s.size() && is_ws(s[pos])) ++pos;
}

bool expect(std::string_view s, size_t& pos, std::string_view lit) {
  if (s.compare(pos, lit.size(), lit) != 0) return false;
  pos += lit.size();
  return true;
}

size_t count_occurrences(std::string_view s, std::string_view lit) {
  size_t n = 0;
  for (size_t pos = s.find(lit); pos != std::string_view::npos; pos = s.find(lit, pos + 1)) ++n;
  return n;
}

// Non-negative decimal integer, optionally surrounded by whitespace. Leading
// zeros are accepted ("007" -> 7); signs, floats and values that do not fit
// int64 are not.
std::optional<int64_t> parse_count(std::string_view body) {
  size_t pos = 0;
  skip_ws(body, pos);
  size_t start = pos;
  int64_t value = 0;
  while (pos < body.size() && body[pos] >= '0' && body[pos] <= '9') {
    int digit = body[pos] - '0';
    if (value > (INT64_MAX - digit) / 10) return std::nullopt;
    value = value * 10 + digit;
    ++pos;
  }
  if (pos == start) return std::nullopt;
  skip_ws(body, pos);
  if (pos != body.size()) return std::nullopt;
  return value;
}

// "[LOW, UP]" with optional whitespace around each token.
std::optional<std::pair<int64_t, int64_t>> parse_interval(std::string_view body) {
  size_t pos = 0;
  skip_ws(body, pos);
  if (pos >= body.size() || body[pos] != '[') return std::nullopt;
  ++pos;
  size_t comma = body.find(',', pos);
  if (comma == std::string_view::npos) return std::nullopt;
  auto low = parse_count(body.substr(pos, comma - pos));
  if (!low) return std::nullopt;
  pos = comma + 1;
  size_t bracket = body.find(']', pos);
  if (bracket == std::string_view::npos) return std::nullopt;
  auto up = parse_count(body.substr(pos, bracket - pos));
  if (!up) return std::nullopt;
  pos = bracket + 1;
  skip_ws(body, pos);
  if (pos != body.size()) return std::nullopt;
  return std::make_pair(*low, *up);
}

}  // namespace

StructuredResponse parse_response(std::string_view raw) {
  StructuredResponse out;

  // "Exactly one block" of each kind: every tag literal appears exactly once,
  // including inside the free-text think body.
  constexpr std::array<std::string_view, 6> kTags = {kThinkOpen,  kThinkClose, kRangeOpen,
                                                     kRangeClose, kAnswerOpen, kAnswerClose};
  for (std::string_view tag : kTags) {
    if (count_occurrences(raw, tag) != 1) return out;
  }

  size_t pos = 0;
  skip_ws(raw, pos);
  if (!expect(raw, pos, kThinkOpen)) return out;
  size_t think_close = raw.find(kThinkClose, pos);
  if (think_close == std::string_view::npos) return out;
  std::string_view think = raw.substr(pos, think_close - pos);
  pos = think_close + kThinkClose.size();

  skip_ws(raw, pos);
  if (!expect(raw, pos, kRangeOpen)) return out;
  size_t range_close = raw.find(kRangeClose, pos);
  if (range_close == std::string_view::npos) return out;
  auto interval = parse_interval(raw.substr(pos, range_close - pos));
  if (!interval) return out;
  pos = range_close + kRangeClose.size();

  skip_ws(raw, pos);
  if (!expect(raw, pos, kAnswerOpen)) return out;
  size_t answer_close = raw.find(kAnswerClose, pos);
  if (answer_close == std::string_view::npos) return out;
  auto answer = parse_count(raw.substr(pos, answer_close - pos));
  if (!answer) return out;
  pos = answer_close + kAnswerClose.size();

  skip_ws(raw, pos);
  if (pos != raw.size()) return out;

  out.think = std::string(think);
  out.range_low = interval->first;
  out.range_up = interval->second;
  out.answer = *answer;
  out.well_formed = true;
  return out;
}

double format_reward(const StructuredResponse& resp) { return resp.well_formed ? 1.0 : 0.0; }

std::string to_canonical_text(std::string_view think, int64_t range_low, int64_t range_up,
                              int64_t answer) {
  std::string out;
  out.reserve(think.size() + 64);
  out += kThinkOpen;
  out += think;
  out += kThinkClose;
  out += "\n<range>[";
  out += std::to_string(range_low);
  out += ", ";
  out += std::to_string(range_up);
  out += "]</range>\n<answer>";
  out += std::to_string(answer);
  out += "</answer>";
  return out;
}

std::string to_canonical_text(const StructuredResponse& resp) {
  return to_canonical_text(resp.think, resp.range_low, resp.range_up, resp.answer);
}

}  // namespace tra
