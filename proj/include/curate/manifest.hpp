#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace curate {

/// One utterance. Durations are kept in integer milliseconds so corpus
/// totals add up exactly; manifest files carry seconds.
struct ManifestEntry {
  std::string audio_filepath;
  std::int64_t duration_ms = 0;
  std::string text;
  std::optional<std::string> source;
  std::optional<std::string> dialect;

  bool operator==(const ManifestEntry&) const = default;
};

enum class ErrorPolicy { FailFast, SkipAndCollect };

struct ParseIssue {
  std::size_t line = 0;
  std::string reason;
};

struct ManifestReadResult {
  std::vector<ManifestEntry> entries;
  std::vector<ParseIssue> errors;
};

/// Parses one JSON object line. Throws ManifestError on schema violations.
ManifestEntry parse_manifest_line(std::string_view line, std::size_t line_no);

/// Newline-delimited JSON. Blank lines are skipped. FailFast throws
/// ManifestError at the first bad line; SkipAndCollect records it and moves on.
ManifestReadResult read_manifest(std::istream& in, ErrorPolicy policy = ErrorPolicy::FailFast);
ManifestReadResult read_manifest(const std::filesystem::path& path, ErrorPolicy policy = ErrorPolicy::FailFast);

/// Keys in the fixed order audio_filepath, duration, text, source, dialect;
/// absent optional fields are omitted.
std::string to_json_line(const ManifestEntry& entry);
void write_manifest(std::ostream& out, std::span<const ManifestEntry> entries);
void write_manifest(const std::filesystem::path& path, std::span<const ManifestEntry> entries);

enum class GroupKey { Source, Dialect, None };
std::optional<GroupKey> parse_group_key(std::string_view s);

struct MixtureGroup {
  std::string key;
  std::int64_t duration_ms = 0;
  std::uint64_t utterances = 0;
};

struct MixtureReport {
  std::vector<MixtureGroup> groups;  // first-appearance order
  std::int64_t total_ms = 0;
  std::uint64_t total_utterances = 0;
};

/// Milliseconds as hours, rounded half-up to `decimals` places.
std::string format_hours(std::int64_t ms, int decimals);

/// Streaming group-by over entries; suitable for corpora too large to hold
/// in memory.
class MixtureAccumulator {
 public:
  explicit MixtureAccumulator(GroupKey key) : key_(key) {}

  void add(const ManifestEntry& entry);
  void add(std::string_view group, std::int64_t duration_ms, std::uint64_t utterances = 1);
  MixtureReport report() const;

 private:
  GroupKey key_;
  std::vector<MixtureGroup> groups_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline constexpr std::string_view kUnspecifiedGroup = "(unspecified)";

MixtureReport stats(std::span<const ManifestEntry> entries, GroupKey key);

/// Plain-text table: group, hours, utterances, then a Total row.
std::string format_report_table(const MixtureReport& report, int decimals = 2);

}  // namespace curate
