// etf: command-line front end for entity tracing.
//
// Exit codes: 0 not hallucinated, 1 hallucinated, 2 indeterminate (check);
// 0 success for the batch commands; 3 usage or configuration error; 4 input
// error (missing file, bad dataset, empty code or summary); 5 backend error;
// 6 anything else.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>

#include "etf/client/model_client.hpp"
#include "etf/client/oracle.hpp"
#include "etf/client/transport.hpp"
#include "etf/errors.hpp"
#include "etf/eval/dataset.hpp"
#include "etf/eval/ner_eval.hpp"
#include "etf/eval/runner.hpp"
#include "etf/ner/heuristic.hpp"
#include "etf/pipeline.hpp"
#include "etf/verify/report.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

enum Exit : int {
  kNotHallucinated = 0,
  kHallucinated = 1,
  kIndeterminate = 2,
  kUsage = 3,
  kInput = 4,
  kBackend = 5,
  kInternal = 6,
};

class UsageError : public etf::Error {
 public:
  using Error::Error;
};

class InputError : public etf::Error {
 public:
  using Error::Error;
};

struct Flags {
  std::string config_path;
  std::string mode = "replay";
  std::string fixtures;
  bool record_fixtures = false;
  int threshold = 1;
  bool count_extrinsic = false;
  bool lenient_case = false;
  bool direct = false;
  std::string out;
  std::string format = "json";
  int workers = 1;
  std::string ner = "auto";
  int attempts = 3;
};

void add_model_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "Backend configuration file (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--mode", f.mode, "Execution mode")
      ->check(CLI::IsMember({"replay", "live", "oracle"}))
      ->capture_default_str();
  cmd->add_option("--fixtures", f.fixtures, "Fixture directory for replay mode or recording");
  cmd->add_flag("--record-fixtures", f.record_fixtures, "Store live responses in the fixture directory");
  cmd->add_option("--attempts", f.attempts, "Attempts per call when a reply cannot be parsed")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_pipeline_flags(CLI::App* cmd, Flags& f) {
  add_model_flags(cmd, f);
  cmd->add_option("--threshold", f.threshold, "Hallucinated entities needed to flag a summary")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--count-extrinsic", f.count_extrinsic, "Count unmapped code entities toward the threshold");
  cmd->add_flag("--lenient-case", f.lenient_case, "Match entities case-insensitively");
  cmd->add_flag("--direct", f.direct, "Use the single-prompt baseline instead of entity tracing");
  cmd->add_option("--ner", f.ner, "Summary entity extractor")
      ->check(CLI::IsMember({"auto", "llm", "heuristic", "gold"}))
      ->capture_default_str();
  cmd->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content << std::flush;
    return;
  }
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

etf::client::Mode mode_of(const Flags& f) { return *etf::client::parse_mode(f.mode); }

std::unique_ptr<etf::client::ModelClient> make_client(const Flags& f) {
  const etf::client::Mode mode = mode_of(f);
  if (mode == etf::client::Mode::ORACLE) return nullptr;
  etf::client::ClientConfig config;
  if (!f.config_path.empty()) config = etf::client::load_client_config(f.config_path);
  etf::client::ModelClient::Options options;
  options.mode = mode;
  if (!f.fixtures.empty()) options.fixtures_dir = f.fixtures;
  options.record_fixtures = f.record_fixtures;
  if (mode == etf::client::Mode::REPLAY && f.fixtures.empty()) throw UsageError("--mode replay needs --fixtures");
  if (f.record_fixtures && mode != etf::client::Mode::LIVE) throw UsageError("--record-fixtures needs --mode live");
  return std::make_unique<etf::client::ModelClient>(std::move(config), std::move(options));
}

etf::PipelineOptions pipeline_options(const Flags& f) {
  etf::PipelineOptions o;
  o.aggregate.threshold = f.threshold;
  o.aggregate.count_extrinsic = f.count_extrinsic;
  o.lenient_case = f.lenient_case;
  o.max_attempts = f.attempts;
  return o;
}

void check_combination(const Flags& f) {
  const bool oracle = mode_of(f) == etf::client::Mode::ORACLE;
  if (oracle && f.direct) throw UsageError("the direct baseline needs a model; use --mode replay or live");
  if (f.ner == "gold" && !oracle) throw UsageError("--ner gold is only available in oracle mode");
  if (oracle && f.ner == "llm") throw UsageError("--ner llm needs --mode replay or live");
}

std::unique_ptr<etf::ner::EntityExtractorBackend> make_extractor(const Flags& f, etf::client::ModelClient* client,
                                                                const etf::eval::DatasetRecord* gold) {
  if (f.ner == "heuristic") return std::make_unique<etf::ner::HeuristicExtractor>();
  if (gold && (f.ner == "gold" || f.ner == "auto")) return std::make_unique<etf::client::GoldEntityExtractor>(*gold);
  return std::make_unique<etf::ner::LlmEntityExtractor>(*client, f.attempts);
}

std::unique_ptr<etf::verify::JudgeBackend> make_judge(const Flags& f, etf::client::ModelClient* client,
                                                      const etf::eval::DatasetRecord* gold) {
  if (gold) return std::make_unique<etf::client::OracleJudge>(*gold);
  return std::make_unique<etf::verify::LlmJudge>(*client, f.attempts);
}

std::string trimmed(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

const etf::eval::DatasetRecord& pick_record(const std::vector<etf::eval::DatasetRecord>& records,
                                            const std::string& id, const std::string& summary) {
  if (!id.empty()) {
    for (const auto& r : records) {
      if (r.id == id) return r;
    }
    throw InputError("no record with id \"" + id + "\" in the gold dataset");
  }
  if (records.size() == 1) return records.front();
  for (const auto& r : records) {
    if (trimmed(r.summary) == trimmed(summary)) return r;
  }
  throw UsageError("cannot tell which gold record belongs to this summary; pass --id");
}

int exit_for(etf::verify::InstanceLabel label) {
  switch (label) {
    case etf::verify::InstanceLabel::NOT_HALLUCINATED: return kNotHallucinated;
    case etf::verify::InstanceLabel::HALLUCINATED: return kHallucinated;
    case etf::verify::InstanceLabel::INDETERMINATE: return kIndeterminate;
  }
  return kInternal;
}

// ---- check -----------------------------------------------------------------

struct CheckArgs {
  std::string code_path;
  std::string summary_path;
  std::string dataset;
  std::string id;
};

int cmd_check(const CheckArgs& args, const Flags& f) {
  check_combination(f);
  const bool oracle = mode_of(f) == etf::client::Mode::ORACLE;
  if (oracle && args.dataset.empty()) throw UsageError("--mode oracle needs --dataset with gold labels");

  const std::string code_text = read_file(args.code_path);
  const std::string summary_text = read_file(args.summary_path);
  etf::code::SourceUnit code{fs::path(args.code_path).stem().string(), code_text};
  etf::ner::Summary summary{code.id, summary_text, {}};

  std::vector<etf::eval::DatasetRecord> gold_records;
  const etf::eval::DatasetRecord* gold = nullptr;
  if (oracle) {
    gold_records = etf::eval::load_dataset(fs::path(args.dataset)).records;
    gold = &pick_record(gold_records, args.id, summary_text);
    code.id = summary.id = gold->id;
  }

  auto client = make_client(f);
  const etf::PipelineOptions options = pipeline_options(f);
  etf::verify::SummaryReport report;
  if (f.direct) {
    report = etf::run_direct(code, summary, *client, options);
  } else {
    auto extractor = make_extractor(f, client.get(), gold);
    auto judge = make_judge(f, client.get(), gold);
    report = etf::run_etf(code, summary, *extractor, *judge, options).report;
  }

  std::string rendered = f.format == "text" ? etf::verify::render_text(report, summary_text)
                                            : etf::verify::to_json(report, summary_text).dump(2) + "\n";
  write_output(f.out, rendered);
  return exit_for(report.instance_label);
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateArgs {
  std::string dataset;
  bool lenient_load = false;
  bool full_alphabet = false;
};

int cmd_evaluate(const EvaluateArgs& args, const Flags& f) {
  check_combination(f);
  const bool oracle = mode_of(f) == etf::client::Mode::ORACLE;
  auto loaded = etf::eval::load_dataset(fs::path(args.dataset),
                                        args.lenient_load ? etf::eval::LoadMode::LENIENT : etf::eval::LoadMode::STRICT);
  for (const auto& issue : loaded.skipped) spdlog::warn("skipped dataset line {}: {}", issue.line, issue.message);

  auto client = make_client(f);
  etf::eval::BackendFactory factory = [&](const etf::eval::DatasetRecord& record) {
    etf::eval::RecordBackends b;
    const etf::eval::DatasetRecord* gold = oracle ? &record : nullptr;
    if (f.direct) {
      b.direct_model = client.get();
    } else {
      b.extractor = make_extractor(f, client.get(), gold);
      b.judge = make_judge(f, client.get(), gold);
    }
    return b;
  };

  etf::eval::EvaluationOptions options;
  options.pipeline = pipeline_options(f);
  options.direct = f.direct;
  options.workers = f.workers;
  options.averaging = args.full_alphabet ? etf::eval::Averaging::FULL_ALPHABET : etf::eval::Averaging::GOLD_PRESENT;
  etf::eval::EvaluationResult result = etf::eval::evaluate_dataset(loaded.records, factory, options);

  ordered_json metrics;
  metrics["method"] = result.method;
  metrics["mode"] = f.mode;
  metrics["records"] = loaded.records.size();
  metrics["failures"] = result.failures;
  metrics["skipped_lines"] = loaded.skipped.size();
  metrics["instance_level"] = etf::eval::to_json(result.instance);
  metrics["entity_level"] = etf::eval::to_json(result.entity);
  if (result.corpus) metrics["corpus"] = etf::eval::to_json(*result.corpus);

  std::string tables = etf::eval::render_table(result.instance) + "\n" + etf::eval::render_table(result.entity);
  if (result.corpus) tables += "\n" + etf::eval::render_table(*result.corpus);
  tables += "\nrecords: " + std::to_string(loaded.records.size()) + ", failed: " + std::to_string(result.failures) + "\n";

  if (f.out.empty()) {
    write_output({}, f.format == "text" ? tables : metrics.dump(2) + "\n");
  } else {
    fs::create_directories(f.out);
    std::string reports;
    for (std::size_t i = 0; i < loaded.records.size(); ++i) {
      reports += etf::eval::outcome_line(result.outcomes[i], loaded.records[i]);
    }
    write_output((fs::path(f.out) / "reports.jsonl").string(), reports);
    write_output((fs::path(f.out) / "metrics.json").string(), metrics.dump(2) + "\n");
    write_output((fs::path(f.out) / "metrics.txt").string(), tables);
    if (f.format == "text") std::cout << tables << std::flush;
  }
  spdlog::info("evaluated {} records ({} failed)", loaded.records.size(), result.failures);
  if (!loaded.records.empty() && result.failures == loaded.records.size()) return kBackend;
  return 0;
}

// ---- generate --------------------------------------------------------------

int cmd_generate(const std::string& codes_path, const Flags& f) {
  if (mode_of(f) == etf::client::Mode::ORACLE) throw UsageError("generate needs --mode replay or live");
  if (f.out.empty()) throw UsageError("generate needs --out");

  std::vector<etf::code::SourceUnit> codes;
  {
    std::istringstream in(read_file(codes_path));
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
      if (trimmed(line).empty()) continue;
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("code") || !j["id"].is_string() ||
          !j["code"].is_string()) {
        throw etf::DatasetError(n, "expected an object with string fields \"id\" and \"code\"");
      }
      codes.push_back({j["id"].get<std::string>(), j["code"].get<std::string>()});
    }
  }

  std::set<std::pair<std::string, std::string>> done;
  if (fs::exists(f.out)) {
    std::istringstream in(read_file(f.out));
    std::string line;
    while (std::getline(in, line)) {
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_object() && j.value("id", "") != "" && j.contains("source_model")) {
        done.emplace(j["id"].get<std::string>(), j["source_model"].get<std::string>());
      }
    }
  } else if (fs::path(f.out).has_parent_path()) {
    fs::create_directories(fs::path(f.out).parent_path());
  }

  auto client = make_client(f);
  struct Job {
    const etf::code::SourceUnit* code;
    const etf::client::BackendConfig* cfg;
  };
  std::vector<Job> jobs;
  for (const auto& code : codes) {
    for (const auto& cfg : client->config().generate) {
      if (!done.count({code.id, cfg.model})) jobs.push_back({&code, &cfg});
    }
  }

  std::ofstream out(f.out, std::ios::binary | std::ios::app);
  if (!out) throw InputError("cannot write " + f.out);
  std::mutex out_mutex;
  std::size_t failures = 0;
  etf::eval::parallel_for(jobs.size(), f.workers, [&](std::size_t i) {
    try {
      etf::ner::Summary s = etf::client::generate_summary(*jobs[i].code, *client, *jobs[i].cfg);
      ordered_json row{{"id", s.id}, {"source_model", s.source_model}, {"summary", s.text}};
      std::lock_guard lock(out_mutex);
      out << row.dump() << "\n" << std::flush;
    } catch (const std::exception& e) {
      std::lock_guard lock(out_mutex);
      ++failures;
      spdlog::error("{} / {}: {}", jobs[i].code->id, jobs[i].cfg->model, e.what());
    }
  });
  spdlog::info("generated {} summaries, {} already present, {} failed", jobs.size() - failures, done.size(), failures);
  return failures == 0 ? 0 : kBackend;
}

// ---- ner-eval --------------------------------------------------------------

int cmd_ner_eval(const std::string& pred_path, const std::string& gold_path, const Flags& f) {
  for (const std::string& p : {pred_path, gold_path}) {
    if (!fs::exists(p)) throw InputError("cannot read " + p);
  }
  auto report = etf::eval::ner_eval_documents(etf::eval::load_ner_documents(pred_path),
                                              etf::eval::load_ner_documents(gold_path));
  for (const auto& id : report.missing_predictions) spdlog::warn("no prediction for gold id {}", id);
  for (const auto& id : report.unknown_predictions) spdlog::warn("prediction for unknown id {}", id);
  write_output(f.out, f.format == "text" ? etf::eval::render_table(report) : etf::eval::to_json(report).dump(2) + "\n");
  return 0;
}

// ---- convert ---------------------------------------------------------------

int cmd_convert(const std::string& flat_path, const Flags& f) {
  std::istringstream in(read_file(flat_path));
  auto records = etf::eval::convert_flat_rows(in);
  write_output(f.out, etf::eval::to_jsonl(records));
  spdlog::info("converted {} records", records.size());
  return 0;
}

void setup_logging(int verbosity) {
  auto logger = spdlog::stderr_color_mt("etf");
  logger->set_pattern("%^%l%$: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(verbosity >= 2 ? spdlog::level::debug : verbosity == 1 ? spdlog::level::info : spdlog::level::warn);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entity tracing for code summaries"};
  app.require_subcommand(1);
  int verbosity = 0;
  app.add_flag("-v,--verbose", verbosity, "More logging (repeat for debug)");

  Flags flags;

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Check one code/summary pair");
  check->add_option("code", check_args.code_path, "Source file")->required();
  check->add_option("summary", check_args.summary_path, "Summary file")->required();
  check->add_option("--dataset", check_args.dataset, "Gold dataset for oracle mode");
  check->add_option("--id", check_args.id, "Record id in the gold dataset");
  check->add_option("--out", flags.out, "Report file (default stdout)");
  add_pipeline_flags(check, flags);

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Run over a dataset and score against gold labels");
  evaluate->add_option("dataset", eval_args.dataset, "Dataset (JSON lines)")->required();
  evaluate->add_flag("--lenient-load", eval_args.lenient_load, "Skip invalid dataset lines instead of failing");
  evaluate->add_flag("--full-alphabet", eval_args.full_alphabet, "Average over all classes, not only gold-present");
  evaluate->add_option("--workers", flags.workers, "Records processed concurrently")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evaluate->add_option("--out", flags.out, "Output directory for reports and metrics (default: metrics to stdout)");
  add_pipeline_flags(evaluate, flags);

  std::string codes_path;
  auto* generate = app.add_subcommand("generate", "Generate summaries for code snippets");
  generate->add_option("codes", codes_path, "JSON lines with id and code")->required();
  generate->add_option("--out", flags.out, "Summaries file (JSON lines, appended)")->required();
  generate->add_option("--workers", flags.workers, "Concurrent requests")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_model_flags(generate, flags);

  std::string pred_path, gold_path;
  auto* ner_eval = app.add_subcommand("ner-eval", "Score predicted summary entities against gold");
  ner_eval->add_option("predicted", pred_path, "Predicted entities (JSON lines)")->required();
  ner_eval->add_option("gold", gold_path, "Gold entities or dataset (JSON lines)")->required();
  ner_eval->add_option("--out", flags.out, "Output file (default stdout)");
  ner_eval->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string flat_path;
  auto* convert = app.add_subcommand("convert", "Convert per-entity rows into dataset records");
  convert->add_option("rows", flat_path, "Rows (JSON array or JSON lines)")->required();
  convert->add_option("--out", flags.out, "Dataset file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }
  setup_logging(verbosity);

  try {
    if (*check) return cmd_check(check_args, flags);
    if (*evaluate) return cmd_evaluate(eval_args, flags);
    if (*generate) return cmd_generate(codes_path, flags);
    if (*ner_eval) return cmd_ner_eval(pred_path, gold_path, flags);
    if (*convert) return cmd_convert(flat_path, flags);
    return kUsage;
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const etf::ConfigError& e) {
    spdlog::error("configuration: {}", e.what());
    return kUsage;
  } catch (const InputError& e) {
    spdlog::error("{}", e.what());
    return kInput;
  } catch (const etf::DatasetError& e) {
    spdlog::error("dataset: {}", e.what());
    return kInput;
  } catch (const etf::EmptySourceError& e) {
    spdlog::error("{}", e.what());
    return kInput;
  } catch (const etf::EmptySummaryError& e) {
    spdlog::error("{}", e.what());
    return kInput;
  } catch (const fs::filesystem_error& e) {
    spdlog::error("{}", e.what());
    return kInput;
  } catch (const etf::BackendError& e) {
    spdlog::error("backend: {}", e.what());
    return kBackend;
  } catch (const etf::MalformedBackendOutput& e) {
    spdlog::error("backend: {}", e.what());
    return kBackend;
  } catch (const etf::client::TransportError& e) {
    spdlog::error("backend: {}", e.what());
    return kBackend;
  } catch (const etf::OracleMiss& e) {
    spdlog::error("oracle: {}", e.what());
    return kBackend;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kInternal;
  }
}
