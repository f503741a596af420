#ifndef ERM2_REPORT_HPP
#define ERM2_REPORT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace erm2 {

enum class Format { Table, Csv, Json };

Format parse_format(std::string_view text);

enum class TargetKind {
  Near,   // |computed - value| <= tolerance
  Below,  // computed < value
  Above,  // computed > value
  AtLeast,  // computed >= value
};

struct Target {
  std::string label;
  TargetKind kind = TargetKind::Near;
  double value = 0.0;
  double tolerance = 0.0;
  std::string note;
  bool met = false;
};

/// Named list of computed values, optionally checked against targets.
/// A report passes iff every target is met.
class Report {
 public:
  explicit Report(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::pair<std::string, double>>& computed() const noexcept {
    return computed_;
  }
  const std::vector<Target>& targets() const noexcept { return targets_; }
  bool pass() const noexcept;

  /// Adds or overwrites a computed value.
  void set(const std::string& label, double value);
  std::optional<double> get(std::string_view label) const;

  /// Checks the computed value under `label` (which must already be set).
  bool expect(const std::string& label, TargetKind kind, double value,
              double tolerance, std::string note);

  std::string render(Format format) const;

 private:
  std::string name_;
  std::vector<std::pair<std::string, double>> computed_;
  std::vector<Target> targets_;
};

using ExperimentReport = Report;

}  // namespace erm2

#endif
