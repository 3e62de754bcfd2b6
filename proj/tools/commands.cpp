#include "commands.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "sphan/errors.hpp"
#include "sphan/json_io.hpp"

#ifndef SPHAN_VERSION
#define SPHAN_VERSION "0.0.0"
#endif

namespace sphan::cli {

namespace {

using json = nlohmann::json;
namespace sj = sphan::json;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidInput, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidInput, "cannot write " + path);
  f << text;
}

std::string sha256Hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
    fail(ErrorKind::InternalInvariant, "SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

int exitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PreconditionViolated:
    case ErrorKind::RankTooLarge:
      return kPreconditionViolated;
    case ErrorKind::InternalInvariant:
      return kInternalError;
    default:
      return kInputError;
  }
}

bool reportedKind(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotQGorenstein:
    case ErrorKind::NotComplete:
    case ErrorKind::NotFano:
    case ErrorKind::NotAmpleCondition1:
    case ErrorKind::NotAmpleCondition2:
    case ErrorKind::DegenerateQ:
    case ErrorKind::UnboundedBody:
      return true;
    default:
      return false;
  }
}

struct Run {
  std::ostream& out;
  std::string outPath;
  std::string manifestPath;
  std::string command;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> parameters;

  std::string load(const std::string& path) {
    std::string text = readFile(path);
    inputs.push_back(text);
    return text;
  }

  void emit(const std::string& text) {
    if (outPath.empty())
      out << text;
    else
      writeFile(outPath, text);
  }

  void emit(const json& doc) { emit(doc.dump(2) + "\n"); }

  void finish() {
    if (manifestPath.empty()) return;
    std::string all;
    for (const auto& in : inputs) all += sha256Hex(in);
    json manifest = {{"command", command},
                     {"inputs_digest", "sha256:" + sha256Hex(all)},
                     {"parameters", parameters},
                     {"tool_version", SPHAN_VERSION}};
    writeFile(manifestPath, manifest.dump(2) + "\n");
  }
};

std::optional<Rational> optionalRational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parseRational(text);
}

json parsed(Run& run, const std::string& path) { return sj::parse(run.load(path), path); }

void analyze(Run& run, const std::string& input, const std::string& epsText) {
  run.parameters = {{"input", input}, {"epsilon", epsText.empty() ? "" : ratString(parseRational(epsText))}};
  json doc = parsed(run, input);
  auto eps = optionalRational(epsText);
  if (eps && *eps <= 0) fail(ErrorKind::InvalidInput, "epsilon must be positive");
  Fan fan = doc.contains("rays") ? sj::readFan(doc) : faceFan(sj::readPolytope(doc));
  run.emit(sj::write(analyzeFan(fan, eps)));
}

void classify(Run& run, std::size_t rank, const std::string& epsText, int box, int index, unsigned jobs,
              std::ostream& err) {
  const Rational eps = parseRational(epsText);
  run.parameters = {{"rank", std::to_string(rank)},
                    {"epsilon", ratString(eps)},
                    {"box", std::to_string(box)},
                    {"index", index > 0 ? std::to_string(index) : ""}};
  Classification result = enumerateEpsLTFanoPolytopes(rank, eps, box, jobs);
  std::string text;
  std::size_t written = 0;
  for (const auto& cls : result.classes) {
    json record = sj::classificationRecord(cls, eps, box);
    if (index > 0 && record["index"] != index) continue;
    text += record.dump() + "\n";
    ++written;
  }
  run.emit(text);
  err << "classes: " << written << " (of " << result.classes.size() << " before the index filter)\n"
      << "note: " << result.caveat << "\n";
}

void coloredCheck(Run& run, const std::string& input, const std::string& epsText) {
  run.parameters = {{"input", input}, {"epsilon", epsText.empty() ? "" : ratString(parseRational(epsText))}};
  json doc = parsed(run, input);
  auto eps = optionalRational(epsText);
  if (eps && *eps <= 0) fail(ErrorKind::InvalidInput, "epsilon must be positive");
  ColoredFan cf = sj::readColoredFan(doc);
  ValidationReport validation = validateColoredFan(cf);
  json report = {{"validation", sj::write(validation)}};
  if (validation.valid()) {
    report["complete"] = isCompleteColored(cf);
    report["toroidal"] = isToroidal(cf);
    try {
      FanoBodies bodies = fanoBodies(cf);
      json pieces = json::array();
      for (const auto& l : bodies.pieces) pieces.push_back(sj::write(l));
      report["fano"] = {{"ok", true}};
      report["pieces"] = pieces;
      report["P"] = sj::write(bodies.p);
      report["Q"] = sj::write(bodies.q);
      report["mld_exceptional"] = sj::write(coloredMld(cf, bodies, MldVariant::Exceptional));
      if (eps) {
        report["epsilon"] = sj::write(*eps);
        report["epsilon_lt"] = isEpsilonLTColored(cf, bodies, *eps);
        report["epsilon_q"] = epsilonQTest(cf, bodies, *eps);
      }
    } catch (const Error& e) {
      if (!reportedKind(e.kind())) throw;
      report["fano"] = {{"ok", false}, {"error", std::string(errorKindName(e.kind()))}, {"detail", e.what()}};
    }
  }
  run.emit(report);
}

void fanoSearch(Run& run, std::size_t toricRank, const std::string& coloredPath, int height, unsigned jobs) {
  run.parameters = {{"height", std::to_string(height)}};
  FanoSearchResult result;
  if (!coloredPath.empty()) {
    run.parameters["colored"] = coloredPath;
    result = fanoInvariantSearch(sj::readColoredSkeleton(parsed(run, coloredPath)), height);
  } else {
    run.parameters["toric_rank"] = std::to_string(toricRank);
    result = fanoInvariantSearch(toricRank, height, jobs);
  }
  run.emit(sj::write(result));
}

void lemma(Run& run, const std::string& dataPath, const std::string& candPath, const std::string& epsText) {
  const Rational eps = parseRational(epsText);
  run.parameters = {{"data", dataPath}, {"candidate", candPath}, {"epsilon", ratString(eps)}};
  CombFinitenessData data = sj::readCombFinitenessData(parsed(run, dataPath));
  CandidatePolytope cand = sj::readCandidate(parsed(run, candPath), data);
  auto threshold = hensleyThresholdF(data);
  bool verdict = verifyLemmaReduction(data, cand, eps);
  run.emit(json{{"threshold", threshold ? sj::write(*threshold) : json("+inf")},
                {"epsilon", sj::write(eps)},
                {"verdict", verdict}});
}

void normform(Run& run, const std::string& input) {
  run.parameters = {{"input", input}};
  Polytope q = sj::readPolytope(parsed(run, input));
  run.emit(json{{"key", sj::write(normalForm(q))}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact toric and colored-fan Fano geometry", "sphan"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SPHAN_VERSION);
  Run state{out, "", "", "", {}, {}};
  app.add_option("--manifest", state.manifestPath, "Write a run manifest to this file");
  app.fallthrough();
  std::function<void()> action;

  std::string input, epsText;
  std::string dataPath, candPath, coloredPath;
  std::size_t rank = 2, toricRank = 0;
  int box = 0, height = 0, index = 0;
  unsigned jobs = 1;

  auto* analyzeCmd = app.add_subcommand("analyze", "Fano report for a fan or polytope JSON file");
  analyzeCmd->add_option("input", input, "Fan or polytope JSON")->required();
  analyzeCmd->add_option("--epsilon", epsText, "Test the epsilon-lt condition (p/q)");
  analyzeCmd->add_option("--out", state.outPath, "Write the report to a file");
  analyzeCmd->callback([&] { action = [&] { analyze(state, input, epsText); }; });

  auto* classifyCmd = app.add_subcommand("classify", "Enumerate epsilon-lt Fano polygons in a box");
  classifyCmd->add_option("--rank", rank, "Lattice rank (2)")->default_val(2);
  classifyCmd->add_option("--epsilon", epsText, "epsilon (p/q)")->required();
  classifyCmd->add_option("--box", box, "Coordinate bound for vertices")->required()->check(CLI::NonNegativeNumber);
  classifyCmd->add_option("--index", index, "Keep only classes with this Gorenstein index");
  classifyCmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  classifyCmd->add_option("--out", state.outPath, "Write the NDJSON database to a file");
  classifyCmd->callback([&] { action = [&] { classify(state, rank, epsText, box, index, jobs, err); }; });

  auto* coloredCmd = app.add_subcommand("colored-check", "Validate a colored fan and test the Fano conditions");
  coloredCmd->add_option("input", input, "Colored fan JSON")->required();
  coloredCmd->add_option("--epsilon", epsText, "Test the epsilon-lt condition (p/q)");
  coloredCmd->add_option("--out", state.outPath, "Write the report to a file");
  coloredCmd->callback([&] { action = [&] { coloredCheck(state, input, epsText); }; });

  auto* searchCmd = app.add_subcommand("fano-search", "Search for the Fano compactification of largest mld");
  auto* toricOpt = searchCmd->add_option("--toric-rank", toricRank, "Toric search in this rank");
  auto* coloredOpt = searchCmd->add_option("--colored", coloredPath, "Colored skeleton JSON");
  toricOpt->excludes(coloredOpt);
  searchCmd->add_option("--height", height, "Coordinate bound for generators")->required()->check(CLI::NonNegativeNumber);
  searchCmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  searchCmd->add_option("--out", state.outPath, "Write the result to a file");
  searchCmd->callback([&] {
    if (toricOpt->count() + coloredOpt->count() != 1)
      throw CLI::ValidationError("fano-search", "exactly one of --toric-rank and --colored is required");
    action = [&] { fanoSearch(state, toricRank, coloredPath, height, jobs); };
  });

  auto* lemmaCmd = app.add_subcommand("lemma", "Threshold 1/F and the reduction check for a candidate");
  lemmaCmd->add_option("--data", dataPath, "Finiteness data JSON")->required();
  lemmaCmd->add_option("--candidate", candPath, "Candidate polytope JSON")->required();
  lemmaCmd->add_option("--epsilon", epsText, "epsilon (p/q)")->required();
  lemmaCmd->add_option("--out", state.outPath, "Write the verdict to a file");
  lemmaCmd->callback([&] { action = [&] { lemma(state, dataPath, candPath, epsText); }; });

  auto* normformCmd = app.add_subcommand("normform", "Unimodular normal form of a lattice polytope");
  normformCmd->add_option("input", input, "Polytope JSON")->required();
  normformCmd->add_option("--out", state.outPath, "Write the key to a file");
  normformCmd->callback([&] { action = [&] { normform(state, input); }; });

  std::vector<const char*> argv{"sphan"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  state.command = app.get_subcommands().front()->get_name();
  try {
    action();
    state.finish();
  } catch (const Error& e) {
    err << "error [" << errorKindName(e.kind()) << "]: " << e.what() << "\n";
    return exitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}

}  // namespace sphan::cli
