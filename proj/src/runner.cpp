//===-- runner.cpp --------------------------------------------------------------===//

#include "smartgen/runner.hpp"

#include "smartgen/parser.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

namespace smartgen {

namespace fs = std::filesystem;

bool globMatch(const std::string& pattern, const std::string& text) {
  size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() &&
        (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

namespace {

double branchPctFromGeneration(const Cfg& cfg, const GenerationResult& gen) {
  size_t total = cfg.labeledEdgeCount();
  if (total == 0) return 100.0;
  size_t uncovered = gen.uncovered.size();
  return 100.0 * static_cast<double>(total - uncovered) /
         static_cast<double>(total);
}

} // namespace

FunctionOutcome processFunction(const Program& program, const FunctionDef& fn,
                                const RunConfig& config,
                                const std::string& fileStem) {
  auto start = std::chrono::steady_clock::now();

  FunctionOutcome out;
  out.file = fileStem;
  out.function = fn.name;

  CfgOptions cfgOpts;
  cfgOpts.inlineDepth = config.inlineDepth;
  Cfg cfg = buildCfg(program, fn, cfgOpts);

  EngineOptions engineOpts;
  engineOpts.symbolicLocals = config.symbolicLocals;
  engineOpts.externalSolver = config.externalSolver;
  engineOpts.search = SearchPolicy::Flood;
  out.generation = explore(program, fn, cfg, config.budgets, engineOpts);
  out.cases = out.generation.cases;

  // boundary values on top of every path case
  {
    ConstraintBackend backend(config.externalSolver, config.budgets.solverMs);
    int nextId = 1;
    for (const auto& tc : out.cases) nextId = std::max(nextId, tc.id + 1);
    std::vector<TestCase> extras;
    for (const auto& tc : out.cases) {
      if (tc.origin != CaseOrigin::Path) continue;
      std::vector<TestCase> known = out.cases;
      known.insert(known.end(), extras.begin(), extras.end());
      auto more =
          boundaryCases(tc, backend, known, &nextId, &out.boundarySkipped);
      for (auto& m : more) extras.push_back(std::move(m));
    }
    for (auto& e : extras) out.cases.push_back(std::move(e));
  }

  // replay every case: expected outputs, decision vectors, oracle agreement
  ReplayOptions replayOpts;
  replayOpts.symbolicLocals = config.symbolicLocals;
  std::vector<int> caseIds;
  for (auto& tc : out.cases) {
    ReplayTrace trace = replay(tc, program, fn, cfg, replayOpts);
    tc.expectedReturn = trace.returnValue;
    tc.decisionOutcomes = trace.decisions;
    if (tc.exception) tc.expectedReturn.reset();

    if (trace.edgeSet() != tc.coveredEdges) {
      out.oracleMismatch = true;
      out.oracleNotes.push_back("case " + std::to_string(tc.id) +
                                ": replay edges differ from claimed edges");
    }
    bool predicted = tc.exception.has_value();
    bool observed = trace.exception.has_value();
    if (predicted != observed ||
        (predicted && !(*tc.exception == *trace.exception))) {
      out.oracleMismatch = true;
      out.oracleNotes.push_back("case " + std::to_string(tc.id) +
                                ": exception disagreement");
    }
    caseIds.push_back(tc.id);
    out.traces.push_back(std::move(trace));
  }

  out.coverage = measure(out.traces, cfg, caseIds);
  for (const auto& u : out.generation.uncovered)
    out.coverage.uncovered.push_back(UncoveredItem{u.edge, u.reason});
  for (const auto& d : out.generation.diagnostics)
    out.coverage.notes.push_back(d);
  for (const auto& n : out.oracleNotes) out.coverage.notes.push_back(n);

  if (config.compareDfs) {
    EngineOptions dfsOpts = engineOpts;
    dfsOpts.search = SearchPolicy::DepthFirst;
    GenerationResult dfsGen = explore(program, fn, cfg, config.budgets, dfsOpts);
    out.dfsBranchPct = branchPctFromGeneration(cfg, dfsGen);
  }

  auto elapsed = std::chrono::steady_clock::now() - start;
  out.coverage.generationSeconds =
      std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() /
      1e6;
  return out;
}

namespace {

struct ParsedFile {
  std::string stem;
  Program program;
};

void writeFile(const fs::path& path, const std::string& text,
               std::vector<std::string>& ioErrors) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    ioErrors.push_back("cannot write " + path.string());
    return;
  }
  out << text;
}

} // namespace

BatchResult runBatch(const RunConfig& config) {
  BatchResult result;

  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(config.sourceDir, ec)) {
    if (entry.path().extension() == ".mc") files.push_back(entry.path());
  }
  if (ec) {
    result.ioErrors.push_back("cannot read source directory " +
                              config.sourceDir + ": " + ec.message());
    result.exitCode = 1;
    return result;
  }
  std::sort(files.begin(), files.end());

  std::vector<ParsedFile> parsed;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) {
      result.ioErrors.push_back("cannot read " + path.string());
      continue;
    }
    std::string source((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
    try {
      ParsedFile pf;
      pf.stem = path.stem().string();
      pf.program = parseAndCheck(source);
      parsed.push_back(std::move(pf));
    } catch (const FrontendError& e) {
      result.parseErrors.push_back(path.string() + ":" + e.format());
    }
  }

  // the work list: (file index, function index)
  std::vector<std::pair<size_t, size_t>> work;
  for (size_t f = 0; f < parsed.size(); ++f)
    for (size_t i = 0; i < parsed[f].program.functions.size(); ++i) {
      const std::string& name = parsed[f].program.functions[i].name;
      if (!config.functionFilter.empty() &&
          !globMatch(config.functionFilter, name))
        continue;
      work.emplace_back(f, i);
    }

  std::vector<FunctionOutcome> outcomes(work.size());
  int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (size_t w = 0; w < work.size(); ++w) {
      const auto& [f, i] = work[w];
      outcomes[w] = processFunction(parsed[f].program,
                                    parsed[f].program.functions[i], config,
                                    parsed[f].stem);
    }
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      while (true) {
        size_t w = next.fetch_add(1);
        if (w >= work.size()) return;
        const auto& [f, i] = work[w];
        outcomes[w] = processFunction(parsed[f].program,
                                      parsed[f].program.functions[i], config,
                                      parsed[f].stem);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // artifacts
  bool wantsFiles = !config.outputDir.empty();
  fs::path outDir(config.outputDir);
  if (wantsFiles) {
    fs::create_directories(outDir, ec);
    if (ec) {
      result.ioErrors.push_back("cannot create output directory " +
                                config.outputDir + ": " + ec.message());
      wantsFiles = false;
    }
  }

  for (size_t w = 0; w < outcomes.size(); ++w) {
    FunctionOutcome& oc = outcomes[w];
    const auto& [f, i] = work[w];

    FunctionRow row;
    row.file = oc.file;
    row.coverage = oc.coverage;
    row.pathCases = 0;
    for (const auto& tc : oc.cases) {
      switch (tc.origin) {
      case CaseOrigin::Path: ++row.pathCases; break;
      case CaseOrigin::Exception: ++row.exceptionCases; break;
      case CaseOrigin::Boundary: ++row.boundaryCases; break;
      }
      if (tc.exception)
        row.exceptionCounts[exceptionKindName(tc.exception->kind)]++;
    }
    result.report.rows.push_back(row);

    if (wantsFiles) {
      std::string base = oc.file + "." + oc.function;
      if (config.formats.count("json")) {
        TestCaseDoc doc = buildDoc(oc.function, oc.cases, oc.generation.symbols);
        writeFile(outDir / (base + ".json"), writeTestCasesJson(doc),
                  result.ioErrors);
      }
      if (config.formats.count("tcf"))
        writeFile(outDir / (base + ".tcf"),
                  writeTcf(oc.function, oc.cases, oc.generation.symbols),
                  result.ioErrors);
      if (config.formats.count("dot")) {
        CfgOptions cfgOpts;
        cfgOpts.inlineDepth = config.inlineDepth;
        Cfg cfg = buildCfg(parsed[f].program, parsed[f].program.functions[i],
                           cfgOpts);
        writeFile(outDir / (base + ".dot"), toDot(cfg), result.ioErrors);
      }
    }
    result.outcomes.push_back(std::move(oc));
  }

  result.report.finalize();
  if (wantsFiles && config.formats.count("csv"))
    writeFile(outDir / "coverage.csv", writeCoverageCsv(result.report),
              result.ioErrors);
  if (wantsFiles)
    writeFile(outDir / "report.json", writeReportJson(result.report),
              result.ioErrors);

  if (!result.ioErrors.empty())
    result.exitCode = 1;
  else if (config.strict && !result.parseErrors.empty())
    result.exitCode = 1;
  return result;
}

} // namespace smartgen
