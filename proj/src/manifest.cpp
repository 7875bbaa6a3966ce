#include "curate/manifest.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <json.hpp>
#include <sstream>

#include "curate/errors.hpp"

namespace curate {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::optional<std::string> optional_string(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ManifestError(line_no, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

ManifestEntry parse_manifest_line(std::string_view line, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ManifestError(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ManifestError(line_no, "expected a JSON object");

  ManifestEntry entry;
  auto path = obj.find("audio_filepath");
  if (path == obj.end() || !path->is_string()) throw ManifestError(line_no, "missing audio_filepath");
  entry.audio_filepath = path->get<std::string>();
  if (entry.audio_filepath.empty()) throw ManifestError(line_no, "audio_filepath is empty");

  auto duration = obj.find("duration");
  if (duration == obj.end()) throw ManifestError(line_no, "missing duration");
  if (duration->is_number_unsigned() || duration->is_number_integer()) {
    const auto s = duration->get<std::int64_t>();
    if (s < 0) throw ManifestError(line_no, "duration is negative");
    entry.duration_ms = s * 1000;
  } else if (duration->is_number_float()) {
    const double s = duration->get<double>();
    if (!std::isfinite(s) || s < 0) throw ManifestError(line_no, "duration must be a non-negative number");
    entry.duration_ms = std::llround(s * 1000.0);
  } else {
    throw ManifestError(line_no, "duration must be a number");
  }

  auto text = obj.find("text");
  if (text == obj.end() || !text->is_string()) throw ManifestError(line_no, "missing text");
  entry.text = text->get<std::string>();
  entry.source = optional_string(obj, "source", line_no);
  entry.dialect = optional_string(obj, "dialect", line_no);
  return entry;
}

ManifestReadResult read_manifest(std::istream& in, ErrorPolicy policy) {
  ManifestReadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      result.entries.push_back(parse_manifest_line(line, line_no));
    } catch (const ManifestError& e) {
      if (policy == ErrorPolicy::FailFast) throw;
      result.errors.push_back({e.line(), e.reason()});
    }
  }
  return result;
}

ManifestReadResult read_manifest(const std::filesystem::path& path, ErrorPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot open manifest " + path.string());
  return read_manifest(in, policy);
}

std::string to_json_line(const ManifestEntry& entry) {
  ordered_json obj;
  obj["audio_filepath"] = entry.audio_filepath;
  if (entry.duration_ms % 1000 == 0) {
    obj["duration"] = static_cast<double>(entry.duration_ms / 1000);
  } else {
    obj["duration"] = static_cast<double>(entry.duration_ms) / 1000.0;
  }
  obj["text"] = entry.text;
  if (entry.source) obj["source"] = *entry.source;
  if (entry.dialect) obj["dialect"] = *entry.dialect;
  return obj.dump(-1, ' ', false, json::error_handler_t::replace);
}

void write_manifest(std::ostream& out, std::span<const ManifestEntry> entries) {
  for (const auto& e : entries) out << to_json_line(e) << '\n';
}

void write_manifest(const std::filesystem::path& path, std::span<const ManifestEntry> entries) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("IoError", "cannot write manifest " + path.string());
  write_manifest(out, entries);
}

std::optional<GroupKey> parse_group_key(std::string_view s) {
  if (s == "source") return GroupKey::Source;
  if (s == "dialect") return GroupKey::Dialect;
  if (s == "none") return GroupKey::None;
  return std::nullopt;
}

std::string format_hours(std::int64_t ms, int decimals) {
  constexpr std::int64_t kMsPerHour = 3'600'000;
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const bool negative = ms < 0;
  const unsigned __int128 scaled = static_cast<unsigned __int128>(negative ? -ms : ms) * scale;
  auto q = static_cast<std::uint64_t>(scaled / kMsPerHour);
  const auto r = static_cast<std::uint64_t>(scaled % kMsPerHour);
  if (2 * r >= static_cast<std::uint64_t>(kMsPerHour)) ++q;

  std::string out = std::to_string(q / static_cast<std::uint64_t>(scale));
  if (decimals > 0) {
    std::string frac = std::to_string(q % static_cast<std::uint64_t>(scale));
    out += '.';
    out += std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
  }
  return negative ? "-" + out : out;
}

void MixtureAccumulator::add(const ManifestEntry& entry) {
  const std::optional<std::string>* field = nullptr;
  switch (key_) {
    case GroupKey::Source: field = &entry.source; break;
    case GroupKey::Dialect: field = &entry.dialect; break;
    case GroupKey::None: break;
  }
  if (!field) {
    add("all", entry.duration_ms);
  } else {
    add(field->has_value() ? std::string_view(**field) : kUnspecifiedGroup, entry.duration_ms);
  }
}

void MixtureAccumulator::add(std::string_view group, std::int64_t duration_ms, std::uint64_t utterances) {
  auto [it, inserted] = index_.try_emplace(std::string(group), groups_.size());
  if (inserted) groups_.push_back({std::string(group), 0, 0});
  auto& g = groups_[it->second];
  g.duration_ms += duration_ms;
  g.utterances += utterances;
}

MixtureReport MixtureAccumulator::report() const {
  MixtureReport r;
  r.groups = groups_;
  for (const auto& g : groups_) {
    r.total_ms += g.duration_ms;
    r.total_utterances += g.utterances;
  }
  return r;
}

MixtureReport stats(std::span<const ManifestEntry> entries, GroupKey key) {
  MixtureAccumulator acc(key);
  for (const auto& e : entries) acc.add(e);
  return acc.report();
}

std::string format_report_table(const MixtureReport& report, int decimals) {
  std::size_t width = 5;
  for (const auto& g : report.groups) width = std::max(width, g.key.size());
  std::ostringstream out;
  auto row = [&](const std::string& key, const std::string& hours, const std::string& utts) {
    out << std::left << std::setw(static_cast<int>(width)) << key << "  " << std::right << std::setw(14) << hours
        << "  " << std::setw(12) << utts << '\n';
  };
  row("group", "hours", "utterances");
  for (const auto& g : report.groups) row(g.key, format_hours(g.duration_ms, decimals), std::to_string(g.utterances));
  row("Total", format_hours(report.total_ms, decimals), std::to_string(report.total_utterances));
  return out.str();
}

}  // namespace curate
