#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lft/classify.hpp"
#include "lft/dynamics.hpp"
#include "lft/serialize.hpp"
#include "lft/tolerances.hpp"

namespace lft {

/// A map named inside a record: an LFT, or an entry of the map registry.
struct CorpusMap {
  std::string name;
  std::optional<Moebius> lft;
  std::string registry_name;
  Evaluable eval;
};

/// One assertion; `kind` selects the library operation, `args` its inputs
/// and expected outcome. See README for the field list of each kind.
struct CorpusCheck {
  std::string kind;
  Json args;
};

struct ExampleRecord {
  std::string id;
  std::string anchor;
  std::vector<CorpusMap> maps;
  std::vector<CorpusCheck> checks;
  // Compatibility-table cell this record claims to exhibit a solution for.
  std::optional<std::pair<MapTag, MapTag>> witness;

  const CorpusMap& map(const std::string& name) const;
};

/// Parses and validates a corpus file. An empty or blank file yields no
/// records. Throws ParseError naming the line or field, UnknownMapName for
/// unregistered evaluators.
std::vector<ExampleRecord> load_corpus(const std::string& path, const Tolerances& tol = {});
std::vector<ExampleRecord> parse_corpus(std::string_view text, std::string_view source,
                                        const Tolerances& tol = {});

struct CheckResult {
  std::string kind;
  std::string expected;
  std::string measured;
  bool pass = false;
};

struct RecordResult {
  std::string id;
  std::string anchor;
  bool pass = true;
  std::vector<CheckResult> checks;
  // The claimed table cell, once confirmed by a passing solution check.
  std::optional<std::pair<MapTag, MapTag>> witness_cell;
};

struct CorpusReport {
  Tolerances tol;
  std::vector<RecordResult> records;
  int passed = 0;
  int failed = 0;

  bool all_pass() const { return failed == 0; }
};

/// Never throws for mathematical failures; each failing check is recorded.
CorpusReport run_corpus(const std::vector<ExampleRecord>& records, const Tolerances& tol = {});

Json report_json(const CorpusReport& report);
std::string report_table(const CorpusReport& report);

}  // namespace lft
