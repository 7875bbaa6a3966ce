#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "curate/backends.hpp"
#include "curate/consensus.hpp"
#include "curate/errors.hpp"
#include "curate/eval.hpp"
#include "curate/json_io.hpp"
#include "curate/manifest.hpp"
#include "curate/normalizer.hpp"
#include "curate/review_server.hpp"
#include "curate/review_store.hpp"
#include "curate/utf8.hpp"

namespace curate::cli {

namespace {

struct NormFlags {
  std::string policy = "auto";
  std::string sense = "range";
  std::string lexicon;
  std::string translit;
  std::string whitelist;
};

void add_norm_flags(CLI::App* app, NormFlags& f) {
  app->add_option("--policy", f.policy, "Numeric reading: quantity, digits or auto")
      ->check(CLI::IsMember({"quantity", "digits", "auto"}))
      ->capture_default_str();
  app->add_option("--symbol-sense", f.sense, "Default reading of '-' between numbers: range, minus or separator")
      ->check(CLI::IsMember({"range", "minus", "separator"}))
      ->capture_default_str();
  app->add_option("--lexicon", f.lexicon, "Word list replacing the bundled lexicon (also CURATE_LEXICON)")
      ->check(CLI::ExistingFile);
  app->add_option("--translit", f.translit, "Transliteration TSV replacing the bundled one")->check(CLI::ExistingFile);
  app->add_option("--whitelist", f.whitelist, "Punctuation characters allowed in canonical text");
}

NormConfig build_config(const NormFlags& f) {
  NormConfig config = NormConfig::bundled();
  config.numeric_policy = *parse_numeric_policy(f.policy);
  config.symbol_default = *parse_symbol_sense(f.sense);
  std::string lexicon = f.lexicon;
  if (lexicon.empty()) {
    if (const char* env = std::getenv("CURATE_LEXICON"); env && *env) lexicon = env;
  }
  if (!lexicon.empty()) config.lexicon = std::make_shared<const Lexicon>(Lexicon::load(lexicon));
  if (!f.translit.empty()) config.translit = std::make_shared<const TranslitDict>(TranslitDict::load(f.translit));
  config.whitelist = utf8::to_u32(f.whitelist);
  return config;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("IoError", "cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot read " + path);
  return in;
}

// ---- normalize -------------------------------------------------------------

struct NormalizeArgs {
  std::string in, out, text;
  bool trace = false;
  NormFlags norm;
};

int cmd_normalize(const NormalizeArgs& a, std::ostream& out) {
  const NormConfig config = build_config(a.norm);
  if (!a.text.empty()) {
    out << to_json(normalize(a.text, config), a.trace).dump(2) << '\n';
    return 0;
  }
  const auto manifest = read_manifest(a.in);
  auto dst = open_out(a.out);
  auto sidecar = open_out(a.out + ".flags.jsonl");
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    ManifestEntry e = manifest.entries[i];
    NormalizedText n = normalize(e.text, config);
    if (!n.flags.empty()) {
      ++flagged;
      Json line;
      line["index"] = i;
      line["audio_filepath"] = e.audio_filepath;
      line["text"] = n.text;
      line["flags"] = Json::array();
      for (const auto& f : n.flags) line["flags"].push_back(to_json(f));
      sidecar << dump_line(line) << '\n';
    }
    e.text = std::move(n.text);
    dst << to_json_line(e) << '\n';
  }
  out << dump_line(Json{{"entries", manifest.entries.size()}, {"flagged", flagged}}) << '\n';
  return 0;
}

// ---- consensus -------------------------------------------------------------

struct ConsensusArgs {
  std::vector<std::string> hyps;
  std::vector<std::string> ids;
  std::vector<std::string> backends;  // id=url
  std::string in, authoritative, out, outcomes, journal;
  bool raw_compare = false;
  std::size_t concurrency = 4;
  int timeout_ms = 30000;
  int retries = 2;
  NormFlags norm;
};

int cmd_consensus(const ConsensusArgs& a, std::ostream& out, std::ostream& err) {
  if (a.hyps.empty() == a.backends.empty()) {
    throw CLI::ValidationError("consensus", "give either --hyps (three files) or --backend (three times)");
  }
  if (!a.ids.empty() && a.ids.size() != a.hyps.size()) {
    throw CLI::ValidationError("--ids", "needs one id per --hyps file");
  }
  if (!a.backends.empty() && a.in.empty()) throw CLI::ValidationError("--in", "required with --backend");

  PipelineConfig config;
  config.authoritative = a.authoritative;
  config.concurrency = a.concurrency;
  config.vote.compare_normalized = !a.raw_compare;
  config.vote.config = build_config(a.norm);

  std::vector<std::shared_ptr<TranscriptionBackend>> backends;
  for (std::size_t i = 0; i < a.hyps.size(); ++i) {
    const std::string id = a.ids.empty() ? std::filesystem::path(a.hyps[i]).stem().string() : a.ids[i];
    backends.push_back(std::make_shared<FileBackend>(id, a.hyps[i]));
  }
  for (const auto& spec : a.backends) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--backend", "expected id=url, got '" + spec + "'");
    HttpBackendOptions opts;
    opts.url = spec.substr(eq + 1);
    opts.timeout = std::chrono::milliseconds(a.timeout_ms);
    opts.retries = a.retries;
    backends.push_back(std::make_shared<HttpBackend>(spec.substr(0, eq), opts));
  }

  std::vector<ManifestEntry> entries;
  if (!a.in.empty()) {
    entries = read_manifest(a.in).entries;
  } else {
    // Offline mode without a manifest: take the clips from the first file.
    entries = read_manifest(a.hyps.front()).entries;
  }

  const auto outcomes = run_pipeline(entries, backends, config);

  std::optional<std::ofstream> clean;
  if (!a.out.empty()) clean = open_out(a.out);
  std::optional<std::ofstream> report;
  if (!a.outcomes.empty()) report = open_out(a.outcomes);
  std::unique_ptr<ReviewStore> store;
  if (!a.journal.empty()) {
    ReviewStore::Options opts;
    opts.journal = a.journal;
    opts.config = config.vote.config;
    store = std::make_unique<ReviewStore>(std::move(opts));
  }

  std::size_t n_clean = 0, n_review = 0, n_failed = 0, n_queued = 0, n_degraded = 0;
  std::map<std::string, std::size_t> agreement;
  for (const auto& o : outcomes) {
    if (report) *report << dump_line(to_json(o)) << '\n';
    if (o.consensus) {
      ++agreement[std::string(to_string(o.consensus->agreement))];
      if (o.consensus->degraded) ++n_degraded;
    }
    switch (o.route) {
      case Route::CleanStore: {
        ++n_clean;
        if (clean) {
          ManifestEntry e = o.entry;
          e.text = normalize(o.consensus->text, config.vote.config).text;
          *clean << to_json_line(e) << '\n';
        }
        break;
      }
      case Route::ReviewQueue:
        ++n_review;
        if (store && !store->get(o.task->id)) {
          store->enqueue(*o.task);
          ++n_queued;
        }
        break;
      case Route::Failed:
        ++n_failed;
        for (const auto& e : o.errors) err << "warning: " << o.entry.audio_filepath << ": " << e << '\n';
        break;
    }
  }

  Json summary;
  summary["entries"] = outcomes.size();
  summary["clean"] = n_clean;
  summary["review"] = n_review;
  summary["failed"] = n_failed;
  summary["degraded"] = n_degraded;
  summary["agreement"] = agreement;
  if (store) summary["queued"] = n_queued;
  out << dump_line(summary) << '\n';
  return 0;
}

// ---- stats -----------------------------------------------------------------

struct StatsArgs {
  std::string in;
  std::string group_by = "source";
  int decimals = 2;
  bool json = false;
};

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  MixtureAccumulator acc(*parse_group_key(a.group_by));
  auto in = open_in(a.in);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    acc.add(parse_manifest_line(line, line_no));
  }
  const MixtureReport report = acc.report();
  if (a.json) {
    out << to_json(report, a.decimals).dump(2) << '\n';
  } else {
    out << format_report_table(report, a.decimals);
  }
  return 0;
}

// ---- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string ref, hyp, mode = "raw";
  bool strip_spaces = false;
  bool per_utterance = true;
  NormFlags norm;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const NormConfig config = build_config(a.norm);
  const auto refs = read_manifest(a.ref).entries;
  std::map<std::string, std::string> hyps;
  for (auto& e : read_manifest(a.hyp).entries) hyps[e.audio_filepath] = std::move(e.text);

  std::vector<EvalPair> pairs;
  std::vector<SkippedUtterance> missing;
  for (const auto& r : refs) {
    auto it = hyps.find(r.audio_filepath);
    if (it == hyps.end()) {
      missing.push_back({r.audio_filepath, "MissingHypothesis: no hypothesis for this clip"});
      continue;
    }
    pairs.push_back({r.audio_filepath, r.text, it->second});
  }
  EvalReport report = evaluate(pairs, *parse_eval_mode(a.mode), config, EvalOptions{a.strip_spaces});
  report.skipped.insert(report.skipped.end(), missing.begin(), missing.end());
  Json j = to_json(report);
  if (!a.per_utterance) j.erase("per_utterance");
  out << j.dump(2) << '\n';
  return 0;
}

// ---- kappa -----------------------------------------------------------------

struct KappaArgs {
  std::string a, b, judgments;
  std::vector<std::string> annotators;
};

std::vector<std::string> read_labels(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) labels.push_back(line);
  }
  return labels;
}

int cmd_kappa(const KappaArgs& a, std::ostream& out) {
  const bool labels = !a.a.empty() || !a.b.empty();
  if (labels == !a.judgments.empty()) {
    throw CLI::ValidationError("kappa", "give either --a and --b, or --judgments with --annotators");
  }
  Json j;
  if (labels) {
    if (a.a.empty() || a.b.empty()) throw CLI::ValidationError("kappa", "--a and --b go together");
    const auto la = read_labels(a.a);
    const auto lb = read_labels(a.b);
    j["kappa"] = cohens_kappa(la, lb);
    j["items"] = la.size();
  } else {
    if (a.annotators.size() != 2) throw CLI::ValidationError("--annotators", "needs exactly two annotator ids");
    auto in = open_in(a.judgments);
    const auto judgments = read_ab_csv(in);
    std::size_t shared = 0;
    j["kappa"] = ab_kappa(judgments, a.annotators[0], a.annotators[1], &shared);
    j["items"] = shared;
  }
  out << dump_line(j) << '\n';
  return 0;
}

// ---- ab-report -------------------------------------------------------------

struct AbReportArgs {
  std::string judgments, reference;
  bool json = false;
};

int cmd_ab_report(const AbReportArgs& a, std::ostream& out) {
  auto in = open_in(a.judgments);
  const auto judgments = read_ab_csv(in);
  const auto tallies = aggregate_ab(judgments, a.reference);
  if (a.json) {
    out << Json{{"reference", a.reference}, {"competitors", to_json(tallies)}}.dump(2) << '\n';
    return 0;
  }
  std::size_t width = 10;
  for (const auto& [name, t] : tallies) width = std::max(width, utf8::length(name));
  out << std::left << std::setw(static_cast<int>(width)) << "competitor" << "  " << std::right << std::setw(6) << "wins"
      << std::setw(6) << "ties" << std::setw(8) << "losses" << std::setw(7) << "total" << "  majority\n";
  for (const auto& [name, t] : tallies) {
    out << name << std::string(width - utf8::length(name), ' ') << "  " << std::setw(6) << t.wins << std::setw(6)
        << t.ties << std::setw(8) << t.losses << std::setw(7) << t.total << "  " << (t.crosses_majority ? "yes" : "no")
        << '\n';
  }
  return 0;
}

// ---- pareto ----------------------------------------------------------------

struct ParetoArgs {
  std::string in, baseline, out;
};

int cmd_pareto(const ParetoArgs& a, std::ostream& out) {
  auto in = open_in(a.in);
  const auto points = read_pareto_csv(in);
  const std::string csv = pareto_csv(pareto_export(points, a.baseline));
  if (a.out.empty()) {
    out << csv;
  } else {
    open_out(a.out) << csv;
  }
  return 0;
}

// ---- serve -----------------------------------------------------------------

struct ServeArgs {
  std::string journal, audio_root, listen = "127.0.0.1:8080", static_dir;
  NormFlags norm;
};

std::atomic<ReviewServer*> g_server{nullptr};

extern "C" void on_signal(int) {
  if (auto* s = g_server.load()) s->stop();
}

int cmd_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  const auto colon = a.listen.rfind(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--listen", "expected host:port");
  int port = 0;
  try {
    port = std::stoi(a.listen.substr(colon + 1));
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--listen", "port is not a number");
  }
  ReviewStore::Options opts;
  opts.journal = a.journal;
  opts.config = build_config(a.norm);
  ReviewStore store(std::move(opts));
  ReviewServer server(store, {a.audio_root, a.static_dir});
  const int bound = server.bind(a.listen.substr(0, colon), port);
  if (bound < 0) {
    err << "error: cannot listen on " << a.listen << '\n';
    return 1;
  }
  out << "listening on " << a.listen.substr(0, colon) << ':' << bound << std::endl;
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.run();
  g_server = nullptr;
  return 0;
}

// ---- review-export / ab-add ------------------------------------------------

struct ReviewExportArgs {
  std::string journal, out;
};

int cmd_review_export(const ReviewExportArgs& a, std::ostream& out) {
  ReviewStore::Options opts;
  opts.journal = a.journal;
  ReviewStore store(std::move(opts));
  const auto entries = store.export_resolved();
  if (a.out.empty()) {
    write_manifest(out, entries);
  } else {
    write_manifest(std::filesystem::path(a.out), entries);
  }
  return 0;
}

struct AbAddArgs {
  std::string journal, in;
};

int cmd_ab_add(const AbAddArgs& a, std::ostream& out) {
  ReviewStore::Options opts;
  opts.journal = a.journal;
  ReviewStore store(std::move(opts));
  auto in = open_in(a.in);
  std::string line;
  std::size_t added = 0, line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
      store.add_ab_item({j.at("item_id").get<std::string>(), j.value("audio_filepath", ""),
                         j.at("system_a").get<std::string>(), j.value("text_a", ""),
                         j.at("system_b").get<std::string>(), j.value("text_b", "")});
    } catch (const Json::exception& e) {
      throw Error("ParseError", a.in + ":" + std::to_string(line_no) + ": " + e.what());
    }
    ++added;
  }
  out << dump_line(Json{{"added", added}}) << '\n';
  return 0;
}

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thai speech-corpus curation toolkit"};
  app.name("curate");
  app.require_subcommand(1);

  NormalizeArgs norm_args;
  auto* normalize_cmd = app.add_subcommand("normalize", "Rewrite transcripts into canonical spoken form");
  auto* norm_in = normalize_cmd->add_option("--in", norm_args.in, "Input manifest")->check(CLI::ExistingFile);
  auto* norm_out = normalize_cmd->add_option("--out", norm_args.out, "Output manifest; flags go to <out>.flags.jsonl");
  auto* norm_text = normalize_cmd->add_option("--text", norm_args.text, "Normalize one string and print JSON");
  normalize_cmd->add_flag("--trace", norm_args.trace, "Include the rewrite trace with --text");
  norm_in->needs(norm_out);
  norm_out->needs(norm_in);
  norm_text->excludes(norm_in)->excludes(norm_out);
  add_norm_flags(normalize_cmd, norm_args.norm);

  ConsensusArgs cons_args;
  auto* consensus_cmd = app.add_subcommand("consensus", "Vote over three transcription sources and route results");
  consensus_cmd->add_option("--hyps", cons_args.hyps, "Three hypothesis manifests (offline mode)")
      ->expected(3)
      ->check(CLI::ExistingFile);
  consensus_cmd->add_option("--ids", cons_args.ids, "Backend ids for the --hyps files (default: file stems)")->expected(3);
  consensus_cmd->add_option("--backend", cons_args.backends, "Live backend as id=http://host:port/path (three times)")
      ->expected(3);
  consensus_cmd->add_option("--in", cons_args.in, "Manifest of clips to transcribe")->check(CLI::ExistingFile);
  consensus_cmd->add_option("--authoritative", cons_args.authoritative, "Backend id that wins when none agree")
      ->required();
  consensus_cmd->add_option("--out", cons_args.out, "Clean manifest for transcripts that need no review");
  consensus_cmd->add_option("--outcomes", cons_args.outcomes, "Per-clip outcome JSON lines");
  consensus_cmd->add_option("--journal", cons_args.journal, "Review journal receiving flagged transcripts");
  consensus_cmd->add_flag("--raw-compare", cons_args.raw_compare, "Compare hypotheses byte for byte");
  consensus_cmd->add_option("--concurrency", cons_args.concurrency, "Clips processed in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  consensus_cmd->add_option("--timeout-ms", cons_args.timeout_ms, "Per-request timeout for live backends")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  consensus_cmd->add_option("--retries", cons_args.retries, "Retries per request for live backends")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_norm_flags(consensus_cmd, cons_args.norm);

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Hours and utterance counts per group");
  stats_cmd->add_option("--in", stats_args.in, "Manifest")->required()->check(CLI::ExistingFile);
  stats_cmd->add_option("--group-by", stats_args.group_by, "source, dialect or none")
      ->check(CLI::IsMember({"source", "dialect", "none"}))
      ->capture_default_str();
  stats_cmd->add_option("--decimals", stats_args.decimals, "Decimal places for hours")
      ->check(CLI::Range(0, 6))
      ->capture_default_str();
  stats_cmd->add_flag("--json", stats_args.json, "Print JSON instead of a table");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Character error rate of hypotheses against references");
  eval_cmd->add_option("--ref", eval_args.ref, "Reference manifest")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--hyp", eval_args.hyp, "Hypothesis manifest, joined on audio_filepath")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--mode", eval_args.mode, "raw, normalized-refs or normalized-both")
      ->check(CLI::IsMember({"raw", "normalized-refs", "normalized-both"}))
      ->capture_default_str();
  eval_cmd->add_flag("--strip-spaces", eval_args.strip_spaces, "Ignore spaces when scoring");
  eval_cmd->add_flag("!--no-per-utterance", eval_args.per_utterance, "Print only the totals");
  add_norm_flags(eval_cmd, eval_args.norm);

  KappaArgs kappa_args;
  auto* kappa_cmd = app.add_subcommand("kappa", "Cohen's kappa between two annotators");
  kappa_cmd->add_option("--a", kappa_args.a, "Labels of the first rater, one per line")->check(CLI::ExistingFile);
  kappa_cmd->add_option("--b", kappa_args.b, "Labels of the second rater, one per line")->check(CLI::ExistingFile);
  kappa_cmd->add_option("--judgments", kappa_args.judgments, "A/B judgment CSV")->check(CLI::ExistingFile);
  kappa_cmd->add_option("--annotators", kappa_args.annotators, "Two annotator ids in the CSV")->expected(2);

  AbReportArgs ab_args;
  auto* ab_cmd = app.add_subcommand("ab-report", "Win/tie/loss counts against a reference system");
  ab_cmd->add_option("--judgments", ab_args.judgments, "A/B judgment CSV")->required()->check(CLI::ExistingFile);
  ab_cmd->add_option("--reference", ab_args.reference, "Reference system")->required();
  ab_cmd->add_flag("--json", ab_args.json, "Print JSON instead of a table");

  ParetoArgs pareto_args;
  auto* pareto_cmd = app.add_subcommand("pareto", "Speedup of each model relative to a baseline");
  pareto_cmd->add_option("--in", pareto_args.in, "CSV with model,gflops,cer")->required()->check(CLI::ExistingFile);
  pareto_cmd->add_option("--baseline", pareto_args.baseline, "Baseline model name")->required();
  pareto_cmd->add_option("--out", pareto_args.out, "Output CSV (default: standard output)");

  ServeArgs serve_args;
  serve_args.journal = env_or("CURATE_JOURNAL", "");
  serve_args.audio_root = env_or("CURATE_AUDIO_ROOT", "");
  serve_args.listen = env_or("CURATE_LISTEN", serve_args.listen);
  auto* serve_cmd = app.add_subcommand("serve", "Run the review service");
  auto* journal_opt = serve_cmd->add_option("--journal", serve_args.journal, "Journal path (also CURATE_JOURNAL)");
  if (serve_args.journal.empty()) journal_opt->required();
  serve_cmd->add_option("--audio-root", serve_args.audio_root, "Directory audio paths are relative to (also CURATE_AUDIO_ROOT)")
      ->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--listen", serve_args.listen, "host:port (also CURATE_LISTEN)")->capture_default_str();
  serve_cmd->add_option("--static", serve_args.static_dir, "Directory served at /")->check(CLI::ExistingDirectory);
  add_norm_flags(serve_cmd, serve_args.norm);

  ReviewExportArgs export_args;
  auto* export_cmd = app.add_subcommand("review-export", "Write resolved review tasks as a manifest");
  export_cmd->add_option("--journal", export_args.journal, "Journal path")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--out", export_args.out, "Output manifest (default: standard output)");

  AbAddArgs ab_add_args;
  auto* ab_add_cmd = app.add_subcommand("ab-add", "Queue A/B comparison items in a review journal");
  ab_add_cmd->add_option("--journal", ab_add_args.journal, "Journal path")->required();
  ab_add_cmd->add_option("--in", ab_add_args.in, "JSON lines with item_id, audio_filepath, system_a, text_a, system_b, text_b")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    err << app.help();
    return 2;
  }

  try {
    if (normalize_cmd->parsed()) {
      if (norm_args.text.empty() && norm_args.in.empty()) {
        throw CLI::ValidationError("normalize", "give --in and --out, or --text");
      }
      return cmd_normalize(norm_args, out);
    }
    if (consensus_cmd->parsed()) return cmd_consensus(cons_args, out, err);
    if (stats_cmd->parsed()) return cmd_stats(stats_args, out);
    if (eval_cmd->parsed()) return cmd_eval(eval_args, out);
    if (kappa_cmd->parsed()) return cmd_kappa(kappa_args, out);
    if (ab_cmd->parsed()) return cmd_ab_report(ab_args, out);
    if (pareto_cmd->parsed()) return cmd_pareto(pareto_args, out);
    if (serve_cmd->parsed()) return cmd_serve(serve_args, out, err);
    if (export_cmd->parsed()) return cmd_review_export(export_args, out);
    if (ab_add_cmd->parsed()) return cmd_ab_add(ab_add_args, out);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace curate::cli
