// Copyright 2026 The Simile Miner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// simile: command-line driver for the mining pipeline. Stages exchange
// JSON-lines and TSV files; every output file is replaced atomically.
//
// Exit status: 0 on success, 1 when a stage reported an error, 2 on
// invalid usage.

#include <pthread.h>
#include <signal.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "simile/classifier.h"
#include "simile/corpus.h"
#include "simile/evaluation.h"
#include "simile/extractor.h"
#include "simile/features.h"
#include "simile/files.h"
#include "simile/harvester.h"
#include "simile/log.h"
#include "simile/service.h"
#include "simile/stemmer.h"
#include "simile/tagger.h"

namespace simile {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Globals {
  fs::path store = "simile.db";
  fs::path data_dir = SIMILE_DATA_DIR;
  std::string log_level = "info";
};

// Raised for failures that are not usage errors.
class StageError : public Error {
 public:
  using Error::Error;
};

class Timer {
 public:
  int64_t ElapsedMs() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

StemRuleSet LoadRules(const Globals &g) {
  return StemRuleSet::Load(g.data_dir / "stem_rules.tsv");
}

// Prints the stage summary on stdout and logs it; returns the exit code.
int Finish(const std::string &stage, json summary, const Timer &timer,
           bool failed = false) {
  summary["stage"] = stage;
  summary["elapsed_ms"] = timer.ElapsedMs();
  summary["ok"] = !failed;
  std::cout << summary.dump() << "\n";
  Log(failed ? LogLevel::kError : LogLevel::kInfo, "stage_done", summary);
  return failed ? 1 : 0;
}

// ---------------------------------------------------------------- crawl

struct CrawlArgs {
  fs::path site;
  fs::path out;
  int limit = 0;
};

int RunCrawl(const CrawlArgs &a) {
  Timer timer;
  SiteConfig cfg = LoadSiteConfig(a.site);
  if (a.limit > 0) cfg.max_pages = std::min(cfg.max_pages, a.limit);
  HttpFetcher fetcher;
  AtomicFileWriter out(a.out);
  CrawlStats stats =
      Crawl(cfg, fetcher, [&](const Document &d) { out.WriteJsonLine(ToJson(d)); });
  out.Commit();
  return Finish("crawl",
                {{"site_id", cfg.site_id},
                 {"fetched", stats.fetched},
                 {"documents", stats.emitted},
                 {"robots_blocked", stats.robots_blocked},
                 {"http_errors", stats.http_errors},
                 {"network_errors", stats.network_errors},
                 {"warnings", stats.warnings}},
                timer);
}

// -------------------------------------------------------------- extract

struct ExtractArgs {
  fs::path in;
  fs::path lexicon;
  fs::path out;
  int limit = 0;
};

int RunExtract(const Globals &g, const ExtractArgs &a) {
  Timer timer;
  Lexicon lexicon = Lexicon::LoadDir(a.lexicon.empty() ? g.data_dir : a.lexicon);
  std::vector<Document> docs;
  int bad_lines = ForEachJsonLine(a.in, [&](const json &j) {
    if (a.limit > 0 && static_cast<int>(docs.size()) >= a.limit) return;
    docs.push_back(DocumentFromJson(j));
  });
  ExtractResult result = ExtractCorpus(docs, lexicon);
  AtomicFileWriter out(a.out);
  for (const auto &c : result.candidates) out.WriteJsonLine(ToJson(c));
  out.Commit();
  const bool failed = bad_lines > 0 || result.failed_documents > 0;
  return Finish("extract",
                {{"documents", result.documents},
                 {"candidates", result.candidates.size()},
                 {"failed_documents", result.failed_documents},
                 {"malformed_lines", bad_lines}},
                timer, failed);
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  fs::path data;
  std::string model = "nb";
  fs::path out;
  double alpha = 1.0;
  double c = 1.0;
  int degree = 2;
  std::string kernel = "polynomial";
  double tol = 1e-3;
  uint64_t seed = 0;
};

TrainerSpec SpecFromArgs(const TrainArgs &a) {
  TrainerSpec spec;
  if (a.model == "nb") {
    spec.kind = ModelKind::kNaiveBayes;
  } else if (a.model == "svm") {
    spec.kind = ModelKind::kSvm;
  } else {
    throw ContractViolation("model must be nb or svm");
  }
  spec.alpha = a.alpha;
  spec.svm.c = a.c;
  spec.svm.kernel = {ParseKernelKind(a.kernel), a.degree};
  spec.svm.tol = a.tol;
  spec.svm.seed = a.seed;
  return spec;
}

int RunTrain(const Globals &g, const TrainArgs &a) {
  Timer timer;
  auto examples = FeaturizeAll(LoadLabeled(a.data), LoadRules(g));
  TrainedModel model = Train(examples, SpecFromArgs(a));
  SaveModel(model, a.out);
  Metrics m = Evaluate(model, examples);
  std::cout << "training set: " << FormatMetrics(m) << "\n";
  Log(LogLevel::kInfo, "stage_done",
      {{"stage", "train"},
       {"model", ModelKindName(model.kind)},
       {"examples", examples.size()},
       {"features", model.feature_index.size()},
       {"precision", m.precision},
       {"recall", m.recall},
       {"f_measure", m.f_measure},
       {"elapsed_ms", timer.ElapsedMs()}});
  return 0;
}

// ------------------------------------------------------------- classify

struct ClassifyArgs {
  fs::path model;
  fs::path in;
  fs::path out;
  double threshold = 0.0;
};

int RunClassify(const Globals &g, const ClassifyArgs &a) {
  Timer timer;
  TrainedModel model = LoadModel(a.model);
  StemRuleSet rules = LoadRules(g);
  AtomicFileWriter out(a.out);
  int total = 0, positive = 0, invalid = 0;
  int bad_lines = ForEachJsonLine(a.in, [&](const json &j) {
    CandidateSimile c;
    try {
      c = CandidateFromJson(j);
    } catch (const std::exception &e) {
      ++invalid;
      Log(LogLevel::kWarn, "bad_candidate", {{"error", e.what()}});
      return;
    }
    Prediction p = Predict(model, Featurize(c, rules), a.threshold);
    json row = ToJson(c);
    row["label"] = p.positive;
    row["score"] = p.score;
    out.WriteJsonLine(row);
    ++total;
    positive += p.positive;
  });
  out.Commit();
  return Finish("classify",
                {{"classified", total},
                 {"positive", positive},
                 {"negative", total - positive},
                 {"threshold", a.threshold},
                 {"malformed_lines", bad_lines + invalid}},
                timer, bad_lines + invalid > 0);
}

// ----------------------------------------------------------------- eval

struct EvalArgs {
  std::string model;
  fs::path data;
  int folds = 0;
  uint64_t seed = 7;
  double threshold = 0.0;
};

// `model` names a trainer ("nb", "svm") or a saved model file whose
// hyperparameters are reused for cross-validation.
int RunEval(const Globals &g, const EvalArgs &a) {
  auto examples = FeaturizeAll(LoadLabeled(a.data), LoadRules(g));
  std::optional<TrainedModel> saved;
  TrainerSpec spec;
  if (a.model == "nb") {
    spec.kind = ModelKind::kNaiveBayes;
  } else if (a.model == "svm") {
    spec.kind = ModelKind::kSvm;
  } else {
    saved = LoadModel(a.model);
    spec.kind = saved->kind;
    spec.alpha = saved->nb.alpha;
    spec.svm.c = saved->svm.c;
    spec.svm.kernel = saved->svm.kernel;
    spec.svm.tol = saved->svm.tol;
  }
  if (a.folds > 0) {
    CrossValidationReport report = CrossValidate(examples, a.folds, spec, a.seed);
    std::cout << FormatReport(report);
    for (const auto &w : report.warnings) Log(LogLevel::kWarn, "eval_warning", {{"warning", w}});
    return 0;
  }
  if (!saved) throw ContractViolation("eval without --folds needs a model file");
  std::cout << FormatMetrics(Evaluate(*saved, examples, a.threshold)) << "\n";
  return 0;
}

// -------------------------------------------------------- import-corpus

struct ImportArgs {
  fs::path file;
  std::string source;
  bool trusted = false;
};

int RunImport(const Globals &g, const ImportArgs &a) {
  Timer timer;
  Source source = ParseSource(a.source);
  if (source == Source::kWww) throw ContractViolation("source must be karadzic or manual");
  auto phrases = ReadPhraseFile(a.file);
  auto store = CorpusStore::Open(g.store, LoadRules(g));
  MergeReport r = store->Merge(phrases, source, a.trusted);
  return Finish("import-corpus",
                {{"read", phrases.size()},
                 {"added", r.added},
                 {"duplicates", r.duplicates},
                 {"intersection", r.intersection},
                 {"self_collisions", r.self_collisions},
                 {"errors", r.errors}},
                timer);
}

// ------------------------------------------------------ load-candidates

struct LoadArgs {
  fs::path in;
};

int RunLoadCandidates(const Globals &g, const LoadArgs &a) {
  Timer timer;
  auto store = CorpusStore::Open(g.store, LoadRules(g));
  int read = 0, positives = 0, created = 0, duplicates = 0, invalid = 0, unlabeled = 0;
  int bad_lines = ForEachJsonLine(a.in, [&](const json &j) {
    ++read;
    if (!j.contains("label") || !j["label"].is_boolean()) {
      ++unlabeled;
      return;
    }
    if (!j["label"].get<bool>()) return;
    ++positives;
    try {
      CandidateSimile c = CandidateFromJson(j);
      UpsertOptions opts;
      opts.kind = KindName(c.kind);
      opts.doc_url = c.doc_url;
      opts.count = c.count;
      auto r = store->Upsert(c.phrase, Source::kWww, opts);
      ++(r.created ? created : duplicates);
    } catch (const InvalidPhraseError &e) {
      ++invalid;
      Log(LogLevel::kWarn, "invalid_candidate", {{"reason", e.reason()}});
    } catch (const nlohmann::json::exception &e) {
      ++invalid;
      Log(LogLevel::kWarn, "bad_candidate", {{"error", e.what()}});
    }
  });
  const bool failed = bad_lines > 0 || unlabeled > 0 || invalid > 0;
  return Finish("load-candidates",
                {{"read", read},
                 {"positives", positives},
                 {"created", created},
                 {"duplicates", duplicates},
                 {"invalid", invalid},
                 {"unlabeled", unlabeled},
                 {"malformed_lines", bad_lines}},
                timer, failed);
}

// --------------------------------------------------- stats, export, users

int RunStats(const Globals &g) {
  auto store = CorpusStore::Open(g.store, LoadRules(g));
  std::cout << ToJson(store->Stats()).dump(2) << "\n";
  return 0;
}

int RunExport(const Globals &g, const fs::path &out) {
  Timer timer;
  auto store = CorpusStore::Open(g.store, LoadRules(g));
  store->Export(out);
  return Finish("export", {{"records", store->Stats().total}, {"out", out.string()}},
                timer);
}

struct UserArgs {
  std::string name;
  std::string role = "curator";
  std::string password;
};

int RunUserAdd(const Globals &g, UserArgs a) {
  Role role = ParseRole(a.role);
  if (a.password.empty() && !std::getline(std::cin, a.password)) {
    throw ContractViolation("no password on standard input");
  }
  if (a.password.size() < 8) throw ContractViolation("password must have at least 8 characters");
  auto store = CorpusStore::Open(g.store, LoadRules(g));
  store->AddUser(a.name, a.password, role);
  Log(LogLevel::kInfo, "user_added", {{"user", a.name}, {"role", RoleName(role)}});
  return 0;
}

// ---------------------------------------------------------------- serve

int RunServe(const Globals &g, const fs::path &config_path, bool store_given) {
  ServiceConfig cfg = config_path.empty() ? ServiceConfig{} : LoadServiceConfig(config_path);
  ApplyEnvironment(cfg);
  if (store_given) cfg.store_path = g.store;

  // Signals are taken synchronously by one thread.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto store = CorpusStore::Open(cfg.store_path, LoadRules(g));
  std::shared_ptr<const TrainedModel> model;
  if (!cfg.model_path.empty()) {
    model = std::make_shared<TrainedModel>(LoadModel(cfg.model_path));
  }
  Service service(*store, cfg, model);
  service.Bind();
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    Log(LogLevel::kInfo, "shutdown", {{"signal", sig}});
    service.Stop();
  });
  service.Run();
  // Wakes the waiter if the server stopped on its own.
  kill(getpid(), SIGTERM);
  waiter.join();
  return 0;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  fs::path out;
  int positives = 300;
  int negatives = 300;
  double noise = 0.1;
  uint64_t seed = 7;
};

int RunSynth(const SynthArgs &a) {
  auto data = GenerateSynthetic(a.positives, a.negatives, a.noise, a.seed);
  AtomicFileWriter out(a.out);
  WriteLabeled(data, out.stream());
  out.Commit();
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{"Simile mining toolkit", "simile"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--store", g.store, "Corpus store file");
  app.add_option("--data-dir", g.data_dir, "Directory with lexicon and stem rules")
      ->check(CLI::ExistingDirectory);
  app.add_option("--log-level", g.log_level, "debug, info, warn or error")
      ->check(CLI::IsMember({"debug", "info", "warn", "error"}));

  CrawlArgs crawl;
  auto *c_crawl = app.add_subcommand("crawl", "Harvest one site into a document file");
  c_crawl->add_option("--site", crawl.site, "Site config")->required()->check(CLI::ExistingFile);
  c_crawl->add_option("--out", crawl.out, "Documents (JSON lines)")->required();
  c_crawl->add_option("--limit", crawl.limit, "At most N page fetches")->check(CLI::PositiveNumber);

  ExtractArgs extract;
  auto *c_extract = app.add_subcommand("extract", "Find candidate similes in documents");
  c_extract->add_option("--in", extract.in, "Documents (JSON lines)")->required()->check(CLI::ExistingFile);
  c_extract->add_option("--lexicon", extract.lexicon, "Lexicon directory")->check(CLI::ExistingDirectory);
  c_extract->add_option("--out", extract.out, "Candidates (JSON lines)")->required();
  c_extract->add_option("--limit", extract.limit, "At most N documents")->check(CLI::PositiveNumber);

  TrainArgs train;
  auto *c_train = app.add_subcommand("train", "Train a classifier on labeled candidates");
  c_train->add_option("--data", train.data, "Labeled TSV")->required()->check(CLI::ExistingFile);
  c_train->add_option("--model", train.model, "nb or svm")->required()->check(CLI::IsMember({"nb", "svm"}));
  c_train->add_option("--out", train.out, "Model file")->required();
  c_train->add_option("--alpha", train.alpha, "Naive Bayes smoothing")->check(CLI::PositiveNumber);
  c_train->add_option("--c", train.c, "SVM box constraint")->check(CLI::PositiveNumber);
  c_train->add_option("--degree", train.degree, "Polynomial kernel degree")->check(CLI::Range(1, 10));
  c_train->add_option("--kernel", train.kernel, "linear or polynomial")
      ->check(CLI::IsMember({"linear", "polynomial", "poly"}));
  c_train->add_option("--tol", train.tol, "SVM KKT tolerance")->check(CLI::PositiveNumber);
  c_train->add_option("--seed", train.seed, "SVM random seed");

  ClassifyArgs classify;
  auto *c_classify = app.add_subcommand("classify", "Label candidates with a model");
  c_classify->add_option("--model", classify.model, "Model file")->required()->check(CLI::ExistingFile);
  c_classify->add_option("--in", classify.in, "Candidates (JSON lines)")->required()->check(CLI::ExistingFile);
  c_classify->add_option("--out", classify.out, "Labeled candidates")->required();
  c_classify->add_option("--threshold", classify.threshold, "Decision threshold");

  EvalArgs eval;
  auto *c_eval = app.add_subcommand("eval", "Evaluate a model or cross-validate a trainer");
  c_eval->add_option("--model", eval.model, "nb, svm or a model file")->required();
  c_eval->add_option("--data", eval.data, "Labeled TSV")->required()->check(CLI::ExistingFile);
  c_eval->add_option("--folds", eval.folds, "k for k-fold cross-validation")->check(CLI::Range(2, 1000000));
  c_eval->add_option("--seed", eval.seed, "Fold shuffle seed");
  c_eval->add_option("--threshold", eval.threshold, "Decision threshold");

  ImportArgs import;
  auto *c_import = app.add_subcommand("import-corpus", "Merge a phrase list into the store");
  c_import->add_option("--file", import.file, "One simile per line")->required()->check(CLI::ExistingFile);
  c_import->add_option("--source", import.source, "karadzic or manual")
      ->required()
      ->check(CLI::IsMember({"karadzic", "manual"}));
  c_import->add_flag("--trusted", import.trusted, "Import as approved");

  LoadArgs load;
  auto *c_load = app.add_subcommand("load-candidates", "Store positive candidates as pending");
  c_load->add_option("--in", load.in, "Classified candidates")->required()->check(CLI::ExistingFile);

  auto *c_stats = app.add_subcommand("stats", "Print corpus counts");

  fs::path export_out;
  auto *c_export = app.add_subcommand("export", "Write every record as JSON lines");
  c_export->add_option("--out", export_out, "Output file")->required();

  fs::path serve_config;
  auto *c_serve = app.add_subcommand("serve", "Run the HTTP service");
  c_serve->add_option("--config", serve_config, "Service config")->check(CLI::ExistingFile);

  UserArgs user;
  auto *c_user = app.add_subcommand("user-add", "Create or update a curator account");
  c_user->add_option("--name", user.name, "User name")->required();
  c_user->add_option("--role", user.role, "curator or admin")->check(CLI::IsMember({"curator", "admin"}));
  c_user->add_option("--password", user.password, "Password; read from standard input if absent");

  SynthArgs synth;
  auto *c_synth = app.add_subcommand("synth", "Generate a synthetic labeled set");
  c_synth->add_option("--out", synth.out, "Labeled TSV")->required();
  c_synth->add_option("--positives", synth.positives)->check(CLI::NonNegativeNumber);
  c_synth->add_option("--negatives", synth.negatives)->check(CLI::NonNegativeNumber);
  c_synth->add_option("--noise", synth.noise)->check(CLI::Range(0.0, 1.0));
  c_synth->add_option("--seed", synth.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }
  SetLogLevel(ParseLogLevel(g.log_level));

  try {
    if (*c_crawl) return RunCrawl(crawl);
    if (*c_extract) return RunExtract(g, extract);
    if (*c_train) return RunTrain(g, train);
    if (*c_classify) return RunClassify(g, classify);
    if (*c_eval) return RunEval(g, eval);
    if (*c_import) return RunImport(g, import);
    if (*c_load) return RunLoadCandidates(g, load);
    if (*c_stats) return RunStats(g);
    if (*c_export) return RunExport(g, export_out);
    if (*c_serve) return RunServe(g, serve_config, app.get_option("--store")->count() > 0);
    if (*c_user) return RunUserAdd(g, user);
    if (*c_synth) return RunSynth(synth);
  } catch (const std::exception &e) {
    Log(LogLevel::kError, "stage_failed",
        {{"stage", app.get_subcommands().front()->get_name()}, {"error", e.what()}});
    return 1;
  }
  return 2;
}

}  // namespace
}  // namespace simile

int main(int argc, char **argv) { return simile::Main(argc, argv); }
