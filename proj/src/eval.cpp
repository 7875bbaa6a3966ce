#include "curate/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "curate/errors.hpp"
#include "curate/utf8.hpp"

namespace curate {

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  return edit_distance(utf8::to_u32(a), utf8::to_u32(b));
}

double cer(std::string_view ref, std::string_view hyp) {
  const std::u32string r = utf8::to_u32(ref);
  if (r.empty()) throw EvalError("EmptyReference", "reference is empty");
  return static_cast<double>(edit_distance(r, utf8::to_u32(hyp))) / static_cast<double>(r.size());
}

std::string_view to_string(EvalMode m) {
  switch (m) {
    case EvalMode::Raw: return "raw";
    case EvalMode::NormalizedRefs: return "normalized-refs";
    case EvalMode::NormalizedBoth: return "normalized-both";
  }
  return "raw";
}

std::optional<EvalMode> parse_eval_mode(std::string_view s) {
  if (s == "raw") return EvalMode::Raw;
  if (s == "normalized-refs") return EvalMode::NormalizedRefs;
  if (s == "normalized-both") return EvalMode::NormalizedBoth;
  return std::nullopt;
}

namespace {

std::string without_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c != ' ') out.push_back(c);
  }
  return out;
}

}  // namespace

EvalReport evaluate(std::span<const EvalPair> pairs, EvalMode mode, const NormConfig& config,
                    const EvalOptions& options) {
  std::unordered_set<std::string_view> seen;
  for (const auto& p : pairs) {
    if (!seen.insert(p.id).second) throw EvalError("DuplicateId", "duplicate utterance id '" + p.id + "'");
  }

  EvalReport report;
  report.mode = mode;
  double cer_sum = 0.0;
  for (const auto& p : pairs) {
    std::string ref = mode == EvalMode::Raw ? p.ref : normalize(p.ref, config).text;
    std::string hyp = mode == EvalMode::NormalizedBoth ? normalize(p.hyp, config).text : p.hyp;
    if (options.strip_spaces) {
      ref = without_spaces(ref);
      hyp = without_spaces(hyp);
    }
    const std::u32string r = utf8::to_u32(ref);
    if (r.empty()) {
      report.skipped.push_back({p.id, "EmptyReference: reference is empty after normalization"});
      continue;
    }
    UtteranceScore s;
    s.id = p.id;
    s.edit_distance = edit_distance(r, utf8::to_u32(hyp));
    s.ref_length = r.size();
    s.cer = static_cast<double>(s.edit_distance) / static_cast<double>(s.ref_length);
    s.ref = std::move(ref);
    s.hyp = std::move(hyp);
    report.total_distance += s.edit_distance;
    report.total_ref_length += s.ref_length;
    cer_sum += s.cer;
    report.per_utterance.push_back(std::move(s));
  }
  if (report.total_ref_length > 0) {
    report.aggregate_cer =
        static_cast<double>(report.total_distance) / static_cast<double>(report.total_ref_length);
    report.mean_cer = cer_sum / static_cast<double>(report.per_utterance.size());
  }
  return report;
}

double cohens_kappa(std::span<const std::string> rater_a, std::span<const std::string> rater_b) {
  if (rater_a.size() != rater_b.size()) {
    throw EvalError("LengthMismatch", "raters judged " + std::to_string(rater_a.size()) + " and " +
                                          std::to_string(rater_b.size()) + " items");
  }
  if (rater_a.empty()) throw EvalError("EmptyInput", "no items to compare");

  const double n = static_cast<double>(rater_a.size());
  std::map<std::string_view, std::pair<std::size_t, std::size_t>> marginals;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < rater_a.size(); ++i) {
    if (rater_a[i] == rater_b[i]) ++agree;
    ++marginals[rater_a[i]].first;
    ++marginals[rater_b[i]].second;
  }
  const double p_o = static_cast<double>(agree) / n;
  double p_e = 0.0;
  for (const auto& [category, counts] : marginals) {
    p_e += (static_cast<double>(counts.first) / n) * (static_cast<double>(counts.second) / n);
  }
  if (p_e >= 1.0) return 1.0;  // both raters used one identical category throughout
  return (p_o - p_e) / (1.0 - p_e);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::WinA: return "WinA";
    case Verdict::Tie: return "Tie";
    case Verdict::WinB: return "WinB";
  }
  return "Tie";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  std::string lower(s);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "wina" || lower == "win_a" || lower == "a") return Verdict::WinA;
  if (lower == "winb" || lower == "win_b" || lower == "b") return Verdict::WinB;
  if (lower == "tie" || lower == "t") return Verdict::Tie;
  return std::nullopt;
}

void validate(const AbJudgment& j) {
  if (j.item_id.empty() || j.annotator_id.empty() || j.system_a.empty() || j.system_b.empty()) {
    throw EvalError("MalformedJudgment", "judgment has an empty field");
  }
  if (j.system_a == j.system_b) {
    throw EvalError("MalformedJudgment", "system_a and system_b are both '" + j.system_a + "'");
  }
}

std::map<std::string, AbTally> aggregate_ab(std::span<const AbJudgment> judgments, std::string_view reference) {
  std::map<std::string, AbTally> out;
  for (const auto& j : judgments) {
    validate(j);
    const bool ref_is_a = j.system_a == reference;
    if (!ref_is_a && j.system_b != reference) {
      throw EvalError("JudgmentWithoutReference",
                      "item '" + j.item_id + "' compares " + j.system_a + " and " + j.system_b);
    }
    auto& t = out[ref_is_a ? j.system_b : j.system_a];
    const Verdict ref_win = ref_is_a ? Verdict::WinA : Verdict::WinB;
    if (j.verdict == Verdict::Tie) {
      ++t.ties;
    } else if (j.verdict == ref_win) {
      ++t.wins;
    } else {
      ++t.losses;
    }
    ++t.total;
  }
  for (auto& [name, t] : out) t.crosses_majority = 2 * t.wins > t.total;
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Maps header names to column positions; throws on a missing column.
std::vector<std::size_t> columns(const std::vector<std::string>& header, std::initializer_list<const char*> names) {
  std::vector<std::size_t> idx;
  for (const char* name : names) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw EvalError("CsvError", std::string("missing column '") + name + "'");
    idx.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  return idx;
}

}  // namespace

std::vector<AbJudgment> read_ab_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  const auto col = columns(split_csv_line(line), {"item_id", "annotator_id", "system_a", "system_b", "verdict"});
  std::vector<AbJudgment> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_csv_line(line);
    const std::size_t need = *std::max_element(col.begin(), col.end());
    if (f.size() <= need) throw EvalError("CsvError", "line " + std::to_string(line_no) + ": too few fields");
    const auto verdict = parse_verdict(f[col[4]]);
    if (!verdict) throw EvalError("CsvError", "line " + std::to_string(line_no) + ": bad verdict '" + f[col[4]] + "'");
    AbJudgment j{f[col[0]], f[col[1]], f[col[2]], f[col[3]], *verdict};
    validate(j);
    out.push_back(std::move(j));
  }
  return out;
}

void write_ab_csv(std::ostream& out, std::span<const AbJudgment> judgments) {
  out << "item_id,annotator_id,system_a,system_b,verdict\n";
  for (const auto& j : judgments) {
    out << csv_field(j.item_id) << ',' << csv_field(j.annotator_id) << ',' << csv_field(j.system_a) << ','
        << csv_field(j.system_b) << ',' << to_string(j.verdict) << '\n';
  }
}

double ab_kappa(std::span<const AbJudgment> judgments, std::string_view annotator_a, std::string_view annotator_b,
                std::size_t* shared) {
  // Key each judgment by item and unordered system pair; express the verdict
  // from the lexicographically smaller system's side so swapped
  // presentations compare equal.
  auto key_of = [](const AbJudgment& j) {
    const bool swapped = j.system_b < j.system_a;
    std::string key = j.item_id + '\x1f' + (swapped ? j.system_b : j.system_a) + '\x1f' +
                      (swapped ? j.system_a : j.system_b);
    Verdict v = j.verdict;
    if (swapped && v != Verdict::Tie) v = v == Verdict::WinA ? Verdict::WinB : Verdict::WinA;
    return std::pair{std::move(key), std::string(to_string(v))};
  };
  std::map<std::string, std::string> by_a, by_b;
  for (const auto& j : judgments) {
    if (j.annotator_id == annotator_a) by_a.insert(key_of(j));
    if (j.annotator_id == annotator_b) by_b.insert(key_of(j));
  }
  std::vector<std::string> la, lb;
  for (const auto& [key, verdict] : by_a) {
    if (auto it = by_b.find(key); it != by_b.end()) {
      la.push_back(verdict);
      lb.push_back(it->second);
    }
  }
  if (shared) *shared = la.size();
  return cohens_kappa(la, lb);
}

std::vector<ParetoRow> pareto_export(std::span<const ParetoPoint> points, std::string_view baseline) {
  const ParetoPoint* base = nullptr;
  for (const auto& p : points) {
    if (!(p.gflops_per_30s > 0.0)) {
      throw EvalError("InvalidPoint", "model '" + p.model_name + "' has non-positive GFLOPs");
    }
    if (p.model_name == baseline) base = &p;
  }
  if (!base) throw EvalError("UnknownBaseline", "baseline '" + std::string(baseline) + "' not among the points");
  std::vector<ParetoRow> rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    rows.push_back({p.model_name, p.gflops_per_30s, p.avg_cer, base->gflops_per_30s / p.gflops_per_30s});
  }
  return rows;
}

std::vector<ParetoPoint> read_pareto_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  const auto col = columns(split_csv_line(line), {"model", "gflops", "cer"});
  std::vector<ParetoPoint> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_csv_line(line);
    if (f.size() <= *std::max_element(col.begin(), col.end())) {
      throw EvalError("CsvError", "line " + std::to_string(line_no) + ": too few fields");
    }
    try {
      out.push_back({f[col[0]], std::stod(f[col[1]]), std::stod(f[col[2]])});
    } catch (const std::logic_error&) {
      throw EvalError("CsvError", "line " + std::to_string(line_no) + ": non-numeric value");
    }
  }
  return out;
}

std::string pareto_csv(std::span<const ParetoRow> rows) {
  std::ostringstream out;
  out << "model,gflops,cer,speedup\n";
  out << std::setprecision(10);
  for (const auto& r : rows) {
    out << csv_field(r.model) << ',' << r.gflops << ',' << r.cer << ',' << r.speedup << '\n';
  }
  return out.str();
}

}  // namespace curate
