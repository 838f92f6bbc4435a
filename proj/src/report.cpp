//===-- report.cpp --------------------------------------------------------------===//

#include "smartgen/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace smartgen {

using nlohmann::json;

std::string renderValue(uint32_t bits, VType type) {
  return std::to_string(sym::interpret(bits, type));
}

namespace {

VType symbolType(const std::map<std::string, SymbolInfo>& symbols,
                 const std::string& name) {
  auto it = symbols.find(name);
  return it == symbols.end() ? VType{32, true} : it->second.type;
}

// inputs ordered by symbol presentation order (params, globals, stubs)
std::vector<std::pair<std::string, uint32_t>>
orderedInputs(const TestCase& tc, const std::map<std::string, SymbolInfo>& symbols) {
  std::vector<std::pair<std::string, uint32_t>> out(tc.inputs.begin(),
                                                    tc.inputs.end());
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    auto ia = symbols.find(a.first);
    auto ib = symbols.find(b.first);
    int oa = ia == symbols.end() ? 1 << 30 : ia->second.order;
    int ob = ib == symbols.end() ? 1 << 30 : ib->second.order;
    if (oa != ob) return oa < ob;
    return a.first < b.first;
  });
  return out;
}

} // namespace

TestCaseDoc buildDoc(const std::string& function,
                     const std::vector<TestCase>& cases,
                     const std::map<std::string, SymbolInfo>& symbols) {
  TestCaseDoc doc;
  doc.function = function;
  for (const auto& tc : cases) {
    CaseDoc c;
    c.id = tc.id;
    for (const auto& [name, bits] : tc.inputs)
      c.inputs[name] = sym::interpret(bits, symbolType(symbols, name));
    for (const auto& [name, bits] : tc.stubReturns)
      c.stubReturns.push_back(sym::interpret(bits, symbolType(symbols, name)));
    c.expectedReturn = tc.expectedReturn;
    if (tc.exception) c.exception = exceptionKindName(tc.exception->kind);
    for (EdgeId e : tc.coveredEdges) c.coveredEdges.push_back(e);
    doc.cases.push_back(std::move(c));
  }
  return doc;
}

std::string writeTestCasesJson(const TestCaseDoc& doc) {
  json cases = json::array();
  for (const auto& c : doc.cases) {
    json inputs = json::object();
    for (const auto& [name, value] : c.inputs) inputs[name] = value;
    json entry = {
        {"coveredEdges", c.coveredEdges},
        {"exception", c.exception ? json(*c.exception) : json(nullptr)},
        {"expectedReturn",
         c.expectedReturn ? json(*c.expectedReturn) : json(nullptr)},
        {"id", c.id},
        {"inputs", inputs},
        {"stubReturns", c.stubReturns},
    };
    cases.push_back(entry);
  }
  json doc2 = {{"cases", cases}, {"function", doc.function}};
  return doc2.dump(2) + "\n";
}

TestCaseDoc readTestCasesJson(const std::string& text) {
  json j = json::parse(text);
  TestCaseDoc doc;
  doc.function = j.at("function").get<std::string>();
  for (const auto& c : j.at("cases")) {
    CaseDoc out;
    out.id = c.at("id").get<int>();
    for (auto it = c.at("inputs").begin(); it != c.at("inputs").end(); ++it)
      out.inputs[it.key()] = it.value().get<int64_t>();
    for (const auto& v : c.at("stubReturns"))
      out.stubReturns.push_back(v.get<int64_t>());
    if (!c.at("expectedReturn").is_null())
      out.expectedReturn = c.at("expectedReturn").get<int64_t>();
    if (!c.at("exception").is_null())
      out.exception = c.at("exception").get<std::string>();
    for (const auto& v : c.at("coveredEdges"))
      out.coveredEdges.push_back(v.get<int>());
    doc.cases.push_back(std::move(out));
  }
  return doc;
}

std::string writeTcf(const std::string& function,
                     const std::vector<TestCase>& cases,
                     const std::map<std::string, SymbolInfo>& symbols) {
  std::ostringstream out;
  out << "#TCF v1\n";
  out << "# function: " << function << "\n";
  for (const auto& tc : cases) {
    out << "CASE " << tc.id << " | ";
    auto inputs = orderedInputs(tc, symbols);
    for (size_t i = 0; i < inputs.size(); ++i) {
      if (i) out << ",";
      out << inputs[i].first << "="
          << renderValue(inputs[i].second, symbolType(symbols, inputs[i].first));
    }
    if (tc.expectedReturn) out << " | expect=" << *tc.expectedReturn;
    if (tc.exception) out << " | exc=" << exceptionKindName(tc.exception->kind);
    out << "\n";
  }
  return out.str();
}

//===----------------------------------------------------------------------===//
// batch report
//===----------------------------------------------------------------------===//

void BatchReport::finalize() {
  functionCount = rows.size();
  totalTestCases = 0;
  totalSeconds = 0.0;
  exceptionTotals.clear();
  for (const auto& row : rows) {
    totalTestCases += static_cast<size_t>(row.coverage.testCaseCount);
    totalSeconds += row.coverage.generationSeconds;
    for (const auto& [kind, n] : row.exceptionCounts) exceptionTotals[kind] += n;
  }
  averageSeconds =
      functionCount == 0 ? 0.0 : totalSeconds / static_cast<double>(functionCount);
}

BinCounts countBins(const std::vector<FunctionRow>& rows) {
  BinCounts counts;
  for (const auto& row : rows) {
    counts.statement[static_cast<size_t>(row.coverage.stmtBin)]++;
    counts.branch[static_cast<size_t>(row.coverage.branchBin)]++;
    counts.mcdc[static_cast<size_t>(row.coverage.mcdcBin)]++;
  }
  return counts;
}

namespace {

void appendBinCells(std::ostringstream& out, const std::array<int, 6>& bins) {
  for (int v : bins) out << "," << v;
}

const char* kBinHeader = "N/A,0-10,10-50,50-90,90-100,100";

} // namespace

std::string writeCoverageCsv(const BatchReport& report) {
  std::ostringstream out;
  out << "# coverage bins per criterion: statement, branch, mcdc\n";
  out << "subject,functions,testcases," << kBinHeader << "," << kBinHeader << ","
      << kBinHeader << "\n";

  // group rows by source file
  std::map<std::string, std::vector<FunctionRow>> byFile;
  for (const auto& row : report.rows) byFile[row.file].push_back(row);

  for (const auto& [file, rows] : byFile) {
    BinCounts counts = countBins(rows);
    size_t cases = 0;
    for (const auto& r : rows) cases += static_cast<size_t>(r.coverage.testCaseCount);
    out << file << "," << rows.size() << "," << cases;
    appendBinCells(out, counts.statement);
    appendBinCells(out, counts.branch);
    appendBinCells(out, counts.mcdc);
    out << "\n";
  }

  BinCounts total = countBins(report.rows);
  out << "total," << report.rows.size() << "," << report.totalTestCases;
  appendBinCells(out, total.statement);
  appendBinCells(out, total.branch);
  appendBinCells(out, total.mcdc);
  out << "\n";
  return out.str();
}

std::string formatSummary(const BatchReport& report) {
  std::ostringstream out;
  char line[256];
  out << "function                          cases  stmt%  branch%  mcdc%   time(s)\n";
  for (const auto& row : report.rows) {
    const CoverageReport& c = row.coverage;
    std::string mcdc = c.mcdcPct
                           ? (std::snprintf(line, sizeof(line), "%.1f", *c.mcdcPct),
                              std::string(line))
                           : std::string("N/A");
    std::snprintf(line, sizeof(line), "%-32s %6d %6.1f %8.1f %6s %9.3f\n",
                  (row.file + ":" + c.function).c_str(), c.testCaseCount,
                  c.statementPct, c.branchPct, mcdc.c_str(),
                  c.generationSeconds);
    out << line;
  }
  std::snprintf(line, sizeof(line),
                "total: %zu functions, %zu cases, %.2f s, avg %.2f s/function\n",
                report.functionCount, report.totalTestCases, report.totalSeconds,
                report.averageSeconds);
  out << line;
  if (!report.exceptionTotals.empty()) {
    out << "exceptions:";
    for (const auto& [kind, n] : report.exceptionTotals)
      out << " " << kind << "=" << n;
    out << "\n";
  }
  return out.str();
}

std::string writeReportJson(const BatchReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    const CoverageReport& c = row.coverage;
    json uncovered = json::array();
    for (const auto& u : c.uncovered)
      uncovered.push_back({{"edge", u.edge},
                           {"reason", uncoveredReasonName(u.reason)}});
    rows.push_back({
        {"file", row.file},
        {"function", c.function},
        {"cases", c.testCaseCount},
        {"pathCases", row.pathCases},
        {"exceptionCases", row.exceptionCases},
        {"boundaryCases", row.boundaryCases},
        {"statementPct", c.statementPct},
        {"branchPct", c.branchPct},
        {"mcdcPct", c.mcdcPct ? json(*c.mcdcPct) : json(nullptr)},
        {"bins",
         {{"statement", binLabel(c.stmtBin)},
          {"branch", binLabel(c.branchBin)},
          {"mcdc", binLabel(c.mcdcBin)}}},
        {"seconds", c.generationSeconds},
        {"uncovered", uncovered},
        {"exceptions", row.exceptionCounts},
    });
  }
  json doc = {
      {"rows", rows},
      {"functions", report.functionCount},
      {"testcases", report.totalTestCases},
      {"totalSeconds", report.totalSeconds},
      {"averageSecondsPerFunction", report.averageSeconds},
      {"exceptionTotals", report.exceptionTotals},
  };
  return doc.dump(2) + "\n";
}

} // namespace smartgen
