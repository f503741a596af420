#include "erm2/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "erm2/curve.hpp"
#include "erm2/error.hpp"

namespace erm2 {

Format parse_format(std::string_view text) {
  if (text == "table") return Format::Table;
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(text) + "'");
}

bool Report::pass() const noexcept {
  for (const auto& t : targets_) {
    if (!t.met) return false;
  }
  return true;
}

void Report::set(const std::string& label, double value) {
  for (auto& [l, v] : computed_) {
    if (l == label) {
      v = value;
      return;
    }
  }
  computed_.emplace_back(label, value);
}

std::optional<double> Report::get(std::string_view label) const {
  for (const auto& [l, v] : computed_) {
    if (l == label) return v;
  }
  return std::nullopt;
}

bool Report::expect(const std::string& label, TargetKind kind, double value,
                    double tolerance, std::string note) {
  const auto got = get(label);
  if (!got) throw Error(ErrorCode::InvalidArgument, "no computed value '" + label + "'");
  bool met = false;
  switch (kind) {
    case TargetKind::Near: met = std::abs(*got - value) <= tolerance; break;
    case TargetKind::Below: met = *got < value; break;
    case TargetKind::Above: met = *got > value; break;
    case TargetKind::AtLeast: met = *got >= value; break;
  }
  targets_.push_back({label, kind, value, tolerance, std::move(note), met});
  return met;
}

namespace {

std::string sig9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

const char* relation(TargetKind k) {
  switch (k) {
    case TargetKind::Near: return "~";
    case TargetKind::Below: return "<";
    case TargetKind::Above: return ">";
    case TargetKind::AtLeast: return ">=";
  }
  return "?";
}

std::string render_table(const Report& r) {
  std::size_t width = 5;
  for (const auto& [l, v] : r.computed()) width = std::max(width, l.size());
  std::ostringstream os;
  os << "# " << r.name() << '\n';
  os << "label" << std::string(width - 5 + 2, ' ') << "value\n";
  for (const auto& [l, v] : r.computed()) {
    os << l << std::string(width - l.size() + 2, ' ') << sig9(v) << '\n';
  }
  for (const auto& t : r.targets()) {
    os << (t.met ? "[ok]   " : "[FAIL] ") << t.label << ' ' << relation(t.kind) << ' '
       << sig9(t.value);
    if (t.kind == TargetKind::Near) os << " +/- " << sig9(t.tolerance);
    if (!t.note.empty()) os << "  (" << t.note << ')';
    os << '\n';
  }
  os << "pass: " << (r.pass() ? "true" : "false") << '\n';
  return os.str();
}

std::string render_csv(const Report& r) {
  std::string out = "label,value\n";
  for (const auto& [l, v] : r.computed()) {
    out += l;
    out += ',';
    out += format_double(v);
    out += '\n';
  }
  out += "pass,";
  out += r.pass() ? "1" : "0";
  out += '\n';
  return out;
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  for (const auto& [l, v] : r.computed()) j[l] = v;
  j["pass"] = r.pass();
  return j.dump() + "\n";
}

}  // namespace

std::string Report::render(Format format) const {
  switch (format) {
    case Format::Table: return render_table(*this);
    case Format::Csv: return render_csv(*this);
    case Format::Json: return render_json(*this);
  }
  return {};
}

}  // namespace erm2
