#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "erm2/curve.hpp"
#include "erm2/error.hpp"

namespace erm2 {

std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw Error(ErrorCode::InvalidArgument, "unformattable number");
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
  double x = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw Error(ErrorCode::CurveParse, "not a number: '" + std::string(text) + "'");
  }
  return x;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

RevenueCurve parse_curve(std::string_view text) {
  std::vector<Breakpoint> pts;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() != 2) {
      std::ostringstream os;
      os << "line " << line_no << ": expected 'q r', got " << fields.size() << " fields";
      throw Error(ErrorCode::CurveParse, os.str());
    }
    try {
      pts.push_back({parse_double(fields[0]), parse_double(fields[1])});
    } catch (const Error& e) {
      std::ostringstream os;
      os << "line " << line_no << ": " << e.what();
      throw Error(ErrorCode::CurveParse, os.str());
    }
  }
  return RevenueCurve(std::move(pts));
}

std::string format_curve(const RevenueCurve& curve) {
  std::string out;
  for (const auto& b : curve.breakpoints()) {
    out += format_double(b.q);
    out += ' ';
    out += format_double(b.r);
    out += '\n';
  }
  return out;
}

RevenueCurve load_curve(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open curve file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_curve(ss.str());
}

void save_curve(const RevenueCurve& curve, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write curve file '" + path + "'");
  out << format_curve(curve);
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

}  // namespace erm2
