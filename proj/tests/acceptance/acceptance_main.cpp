// Acceptance run: one PASS/FAIL/SKIP line per criterion, nonzero exit on any FAIL.

#include <httplib.h>
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "etf/code/entities.hpp"
#include "etf/eval/dataset.hpp"
#include "etf/eval/metrics.hpp"
#include "etf/match/matcher.hpp"
#include "etf/match/normalize.hpp"
#include "etf/ner/heuristic.hpp"
#include "etf/verify/aggregate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

enum class Status { PASS, FAIL, SKIP };

struct Outcome {
  Status status;
  std::string detail;
};

const fs::path kData = ETF_TEST_DATA;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult etf_cli(const std::vector<std::string>& args) {
  std::string cmd = quote(ETF_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  CliResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class ScratchDir {
 public:
  ScratchDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("etf-acceptance-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

// ---- oracle equivalence ----------------------------------------------------

Outcome oracle_equivalence() {
  const fs::path dataset = kData / "fixture_dataset.jsonl";
  const std::size_t records = etf::eval::load_dataset(dataset).records.size();
  if (records < 20) return {Status::FAIL, "fixture subset has only " + std::to_string(records) + " records"};
  ScratchDir dir;
  auto t0 = Clock::now();
  CliResult r = etf_cli({"evaluate", dataset.string(), "--mode", "oracle", "--out", (dir / "out").string()});
  const double elapsed = seconds_since(t0);
  if (r.exit_code != 0) return {Status::FAIL, "evaluate exited " + std::to_string(r.exit_code)};
  json m = json::parse(read_text(dir / "out" / "metrics.json"));
  const double inst = m["instance_level"]["macro_f1"].get<double>();
  const double ent = m["entity_level"]["macro_f1"].get<double>();
  std::ostringstream d;
  d << records << " records, instance F1 " << inst << ", entity F1 " << ent << ", " << elapsed << " s";
  bool ok = inst == 1.0 && ent == 1.0 && elapsed < 10.0 && m["failures"] == 0;
  return {ok ? Status::PASS : Status::FAIL, d.str()};
}

// ---- dataset integrity -----------------------------------------------------

Outcome dataset_integrity() {
  const char* path = std::getenv("ETF_CODESUMEVAL_PATH");
  if (!path || !*path) {
    return {Status::SKIP, "released dataset not vendored; set ETF_CODESUMEVAL_PATH to a JSONL or flat-row file"};
  }
  std::vector<etf::eval::DatasetRecord> records;
  try {
    records = etf::eval::load_dataset(fs::path(path)).records;
  } catch (const etf::DatasetError& first) {
    try {
      std::ifstream in(path);
      records = etf::eval::convert_flat_rows(in);
      for (const auto& r : records) etf::eval::validate_record(r);
    } catch (const std::exception& e) {
      return {Status::FAIL, std::string("cannot load: ") + first.what() + " / " + e.what()};
    }
  }
  auto t = etf::eval::totals(records);
  std::ostringstream d;
  d << t.summaries << " summaries, " << t.hallucinated << " hallucinated, " << t.entities << " entities ("
    << t.correct << "/" << t.incorrect << "/" << t.irrelevant << ")";
  bool ok = t.summaries == 411 && t.hallucinated == 130 && t.entities == 9933 && t.correct == 9024 &&
            t.incorrect == 303 && t.irrelevant == 606;
  return {ok ? Status::PASS : Status::FAIL, d.str()};
}

// ---- parser golden files ---------------------------------------------------

Outcome parser_golden() {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(kData / "golden")) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const char* required : {"example1.json", "hc2.json", "hc3.json", "hc4.json"}) {
    if (!fs::exists(kData / "golden" / required)) return {Status::FAIL, std::string("missing ") + required};
  }
  if (files.size() < 10) return {Status::FAIL, "only " + std::to_string(files.size()) + " golden files"};

  std::vector<json> docs;
  for (const auto& f : files) docs.push_back(json::parse(read_text(f)));
  auto t0 = Clock::now();
  std::vector<std::string> mismatched;
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto set = etf::code::extract_code_entities({files[i].stem().string(), docs[i]["source"].get<std::string>()});
    json got = json::array();
    for (const auto& e : set.entities) got.push_back({{"name", e.name}, {"kind", etf::code::to_string(e.kind)}});
    if (got != docs[i]["expected_entities"] || docs[i]["parse_mode"] != etf::code::to_string(set.parse_mode)) {
      mismatched.push_back(files[i].filename().string());
    }
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << files.size() << " files, " << mismatched.size() << " mismatched, " << elapsed * 1000 << " ms";
  for (const auto& m : mismatched) d << " [" << m << "]";
  return {mismatched.empty() && elapsed < 1.0 ? Status::PASS : Status::FAIL, d.str()};
}

// ---- matching properties ---------------------------------------------------

std::string random_identifier(std::mt19937& rng) {
  static const std::string first = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_";
  static const std::string rest = first + "0123456789";
  int len = 1 + static_cast<int>(rng() % 8);
  std::string s(1, first[rng() % first.size()]);
  while (static_cast<int>(s.size()) < len) s += rest[rng() % rest.size()];
  return s;
}

Outcome matching_properties() {
  using etf::ner::Tag;
  constexpr int kCases = 10000;
  const Tag code_tags[] = {Tag::CLASS, Tag::VARIABLE, Tag::FUNCTION, Tag::LIBRARY, Tag::DATA_TYPE};
  const Tag nl_tags[] = {Tag::LANGUAGE, Tag::APPLICATION, Tag::OS, Tag::DATA_STRUCTURE};
  std::mt19937 rng(20240601);
  int invariance = 0, boundary = 0, partition = 0;

  for (int i = 0; i < kCases; ++i) {
    std::vector<std::string> idents;
    std::string src = "class " + random_identifier(rng) + " {\n";
    for (int m = 0; m < 2; ++m) {
      std::string f = random_identifier(rng), p = random_identifier(rng), v = random_identifier(rng);
      idents.insert(idents.end(), {f, p, v});
      src += "  int " + f + "(String " + p + ") { int " + v + " = 1; return " + v + "; }\n";
    }
    src += "}\n";
    auto code = etf::code::extract_code_entities({"fuzz", src});

    std::string name = rng() % 2 ? idents[rng() % idents.size()] : random_identifier(rng);
    Tag tag = code_tags[rng() % std::size(code_tags)];
    const std::string decorated[] = {"`" + name + "()`", name + "()", "`" + name + "`", name + "[]"};
    auto bare = etf::match::match_entity({name, tag}, code);
    auto fancy = etf::match::match_entity({decorated[rng() % 4], tag}, code);
    if (bare.has_value() != fancy.has_value() || (bare && (bare->name != fancy->name || bare->kind != fancy->kind))) {
      ++invariance;
    }

    std::string inner = random_identifier(rng);
    std::string outer = random_identifier(rng) + inner + (rng() % 2 ? random_identifier(rng) : "");
    auto glued = etf::code::extract_code_entities({"b", "void " + outer + "() { " + outer + "(); }"});
    if (!glued.find(inner, etf::code::EntityKind::FUNCTION) && inner != outer) {
      if (etf::match::match_entity({inner, Tag::FUNCTION}, glued) || etf::match::contains_bounded(outer, inner)) {
        ++boundary;
      }
    }

    std::vector<etf::ner::SummaryEntity> es;
    int n = static_cast<int>(rng() % 8);
    for (int k = 0; k < n; ++k) {
      std::string s = rng() % 2 ? idents[rng() % idents.size()] : random_identifier(rng);
      Tag t = rng() % 4 == 0 ? nl_tags[rng() % std::size(nl_tags)] : code_tags[rng() % std::size(code_tags)];
      es.push_back({s, t, {}, k});
    }
    auto r = etf::match::partition(es, code);
    std::multiset<int> seen;
    bool ok = r.mapped.size() + r.unmapped.size() + r.nl_entities.size() == es.size();
    for (const auto& m : r.mapped) seen.insert(m.entity.ordinal);
    for (const auto& e : r.unmapped) {
      seen.insert(e.ordinal);
      ok &= etf::ner::is_code_tag(e.tag);
    }
    for (const auto& e : r.nl_entities) {
      seen.insert(e.ordinal);
      ok &= !etf::ner::is_code_tag(e.tag);
    }
    for (int k = 0; k < n; ++k) ok &= seen.count(k) == 1;
    partition += ok ? 0 : 1;
  }
  auto named = etf::code::extract_code_entities({"n", "public int getJobID(String jobName) { return -1; }"});
  if (etf::match::match_entity({"id", Tag::VARIABLE}, named, {.lenient_case = true})) ++boundary;

  std::ostringstream d;
  d << kCases << " cases; violations: invariance " << invariance << ", boundary " << boundary << ", partition "
    << partition;
  return {invariance + boundary + partition == 0 ? Status::PASS : Status::FAIL, d.str()};
}

// ---- metric oracles --------------------------------------------------------

double brute_macro_f1(const std::vector<std::size_t>& gold, const std::vector<std::size_t>& pred, std::size_t k,
                      bool present_only, double* macro_p, double* macro_r) {
  double sf = 0, sp = 0, sr = 0;
  int classes = 0;
  for (std::size_t c = 0; c < k; ++c) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      tp += pred[i] == c && gold[i] == c;
      fp += pred[i] == c && gold[i] != c;
      fn += pred[i] != c && gold[i] == c;
    }
    if (present_only && tp + fn == 0) continue;
    double p = tp + fp > 0 ? tp / (tp + fp) : 0, r = tp + fn > 0 ? tp / (tp + fn) : 0;
    sp += p;
    sr += r;
    sf += p + r > 0 ? 2 * p * r / (p + r) : 0;
    ++classes;
  }
  *macro_p = classes ? sp / classes : 0;
  *macro_r = classes ? sr / classes : 0;
  return classes ? sf / classes : 0;
}

Outcome metric_oracles() {
  std::mt19937 rng(5);
  double worst = 0;
  for (int round = 0; round < 1000; ++round) {
    std::size_t n = 1 + rng() % 40, k = 2 + rng() % 2;
    std::vector<std::size_t> gold(n), pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      gold[i] = rng() % k;
      pred[i] = rng() % k;
    }
    std::vector<std::string> classes;
    for (std::size_t c = 0; c < k; ++c) classes.push_back("c" + std::to_string(c));
    for (auto avg : {etf::eval::Averaging::GOLD_PRESENT, etf::eval::Averaging::FULL_ALPHABET}) {
      auto m = etf::eval::macro_metrics(gold, pred, classes, avg);
      double bp, br;
      double bf = brute_macro_f1(gold, pred, k, avg == etf::eval::Averaging::GOLD_PRESENT, &bp, &br);
      worst = std::max({worst, std::abs(m.macro_f1 - bf), std::abs(m.macro_precision - bp),
                        std::abs(m.macro_recall - br)});
    }
  }
  const double k1 = etf::eval::cohen_kappa(std::vector<char>{'C', 'C', 'I', 'C'}, std::vector<char>{'C', 'I', 'I', 'C'});
  const double k2 = etf::eval::cohen_kappa(std::vector<char>{'C', 'I', 'C'}, std::vector<char>{'C', 'I', 'C'});
  const double jac = etf::eval::jaccard({"a", "b", "c"}, {"b", "c", "d"});
  std::ostringstream d;
  d << "max |diff| " << worst << " over 1000 vectors; kappa " << k1 << " / " << k2 << "; jaccard " << jac;
  bool ok = worst <= 1e-9 && std::abs(k1 - 0.5) <= 1e-9 && k2 == 1.0 && std::abs(jac - 0.5) <= 1e-9;
  return {ok ? Status::PASS : Status::FAIL, d.str()};
}

// ---- aggregation contract --------------------------------------------------

Outcome aggregation_contract() {
  using etf::verify::InstanceLabel;
  using etf::verify::Label;
  auto tuple = [](std::optional<Label> label) {
    etf::verify::TupleVerdict t;
    t.tuple.entity = {"e", etf::ner::Tag::VARIABLE};
    t.tuple.relevant_sentences = {{"s", {0, 1}}};
    t.verdict.label = label;
    return t;
  };
  const std::optional<Label> kinds[] = {Label::CORRECT, Label::INCORRECT, Label::IRRELEVANT};
  int checked = 0, violations = 0;
  for (int n = 0; n <= 6; ++n) {
    for (int c = 0; c <= n; ++c) {
      for (int i = 0; c + i <= n; ++i) {
        const int irr = n - c - i;
        std::vector<etf::verify::TupleVerdict> ts;
        for (int k = 0; k < c; ++k) ts.push_back(tuple(kinds[0]));
        for (int k = 0; k < i; ++k) ts.push_back(tuple(kinds[1]));
        for (int k = 0; k < irr; ++k) ts.push_back(tuple(kinds[2]));
        for (int x = 0; x <= 2; ++x) {
          std::vector<etf::verify::ExtrinsicFlag> flags(x, etf::verify::ExtrinsicFlag{{"u", etf::ner::Tag::LIBRARY}, {}});
          for (int t = 1; t <= 3; ++t) {
            for (bool ce : {false, true}) {
              auto r = etf::verify::aggregate(ts, flags, {.threshold = t, .count_extrinsic = ce});
              const int count = i + irr + (ce ? x : 0);
              const bool hallucinated = r.instance_label == InstanceLabel::HALLUCINATED;
              if (hallucinated != (count >= t) || r.hallucinated_entity_count != count) ++violations;
              ++checked;
            }
          }
        }
      }
    }
  }
  std::ostringstream d;
  d << checked << " multiset/threshold/flag combinations, " << violations << " violations";
  return {violations == 0 ? Status::PASS : Status::FAIL, d.str()};
}

// ---- end-to-end determinism ------------------------------------------------

/// Chat endpoint answering deterministically from the prompt alone.
std::string fake_reply(const std::string& prompt) {
  static const std::string ner_marker = "Now consider the summary describing the code below:\n";
  if (auto pos = prompt.find(ner_marker); pos != std::string::npos) {
    auto entities = etf::ner::extract_entities_heuristic({"x", prompt.substr(pos + ner_marker.size()), ""});
    if (entities.empty()) return "[]";
    std::string out;
    for (const auto& e : entities) out += e.surface + " ||| " + std::string(etf::ner::to_string(e.tag)) + "\n";
    return out;
  }
  const std::size_t h = std::hash<std::string>{}(prompt);
  if (prompt.find("[/CODE]") != std::string::npos) return h % 3 == 0 ? "INCORRECT" : "CORRECT";
  if (h % 2 == 0) return "[]";
  auto s = prompt.find("Summary:\n");
  std::string first = prompt.substr(s + 9, prompt.find('.', s + 9) - (s + 9) + 1);
  return json::array({{{"entity_name", "method"}, {"relevant_sentence", first}}}).dump();
}

Outcome determinism() {
  httplib::Server server;
  server.Post("/v1/chat/completions", [](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body);
    std::string reply = fake_reply(body["messages"][0]["content"].get<std::string>());
    json out = {{"choices", json::array({{{"index", 0}, {"message", {{"role", "assistant"}, {"content", reply}}}}})}};
    res.set_content(out.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  if (port <= 0) return {Status::FAIL, "cannot bind a local port"};
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ScratchDir dir;
  const std::string endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  std::ofstream(dir / "cfg.json") << json{{"defaults", {{"endpoint", endpoint}, {"model", "fake"}}}}.dump();
  const std::string dataset = (kData / "fixture_dataset.jsonl").string();
  const std::string fixtures = (dir / "fixtures").string();

  std::string detail;
  bool ok = true;
  for (bool direct : {false, true}) {
    std::vector<std::string> common = {"evaluate", dataset, "--config", (dir / "cfg.json").string(), "--fixtures",
                                       fixtures, "--ner", "llm"};
    if (direct) common.push_back("--direct");
    const std::string tag = direct ? "direct" : "etf";
    auto with = [&](std::vector<std::string> extra) {
      auto args = common;
      args.insert(args.end(), extra.begin(), extra.end());
      return etf_cli(args);
    };
    int live = with({"--mode", "live", "--record-fixtures", "--out", (dir / (tag + "-live")).string()}).exit_code;
    int a = with({"--mode", "replay", "--out", (dir / (tag + "-a")).string()}).exit_code;
    int b = with({"--mode", "replay", "--workers", "4", "--out", (dir / (tag + "-b")).string()}).exit_code;
    if (live != 0 || a != 0 || b != 0) {
      ok = false;
      detail += tag + ": exit codes " + std::to_string(live) + "/" + std::to_string(a) + "/" + std::to_string(b) + "; ";
      continue;
    }
    for (const char* file : {"reports.jsonl", "metrics.json", "metrics.txt"}) {
      std::string ra = read_text(dir / (tag + "-a") / file), rb = read_text(dir / (tag + "-b") / file);
      if (ra.empty() || ra != rb) {
        ok = false;
        detail += tag + ": " + file + " differs; ";
      }
    }
    const bool live_matches = read_text(dir / (tag + "-live") / "reports.jsonl") == read_text(dir / (tag + "-a") / "reports.jsonl");
    detail += tag + ": replay runs identical" + std::string(live_matches ? ", live run identical too" : "") + "; ";
  }
  server.stop();
  thread.join();
  std::size_t n = std::distance(fs::directory_iterator(fixtures), fs::directory_iterator{});
  detail += std::to_string(n) + " recorded fixtures";
  return {ok ? Status::PASS : Status::FAIL, detail};
}

// ---- Figure 1 --------------------------------------------------------------

Outcome figure_one() {
  CliResult r = etf_cli({"check", (kData / "code" / "figure1.java").string(),
                         (kData / "figure1" / "summary.txt").string(), "--mode", "oracle", "--dataset",
                         (kData / "figure1" / "gold.jsonl").string()});
  if (r.exit_code != 1) return {Status::FAIL, "check exited " + std::to_string(r.exit_code)};
  json j = json::parse(r.out, nullptr, false);
  if (j.is_discarded()) return {Status::FAIL, "report is not JSON"};
  bool database_extrinsic = false;
  for (const auto& l : j["localization"]) {
    if (l["reason"] == "EXTRINSIC" && l.value("text", "").find("database") != std::string::npos) {
      database_extrinsic = true;
    }
  }
  return {database_extrinsic ? Status::PASS : Status::FAIL,
          std::string("exit 1, database sentence ") + (database_extrinsic ? "flagged EXTRINSIC" : "not flagged")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle-equivalence", oracle_equivalence},
      {"dataset-integrity", dataset_integrity},
      {"parser-golden", parser_golden},
      {"matching-properties", matching_properties},
      {"metric-oracles", metric_oracles},
      {"aggregation-contract", aggregation_contract},
      {"end-to-end-determinism", determinism},
      {"figure1-scenario", figure_one},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {Status::FAIL, std::string("exception: ") + e.what()};
    }
    const char* label = o.status == Status::PASS ? "PASS" : o.status == Status::FAIL ? "FAIL" : "SKIP";
    failures += o.status == Status::FAIL;
    std::cout << label << "  " << name << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
