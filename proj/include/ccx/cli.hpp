#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ccx {

// Outcome of one command-line invocation, produced without touching the
// filesystem except for reading --spec. The caller decides where the pieces
// go: the record to stdout, the table to stderr, artifacts under --out.
struct CliResult {
  int exit_code = 0;  // 0 definite, 2 inconclusive at truncation, 1 error
  std::string record;  // one JSON record, trailing newline
  std::string table;   // human-readable summary lines
  std::string out_dir;  // empty when --out was not given
  std::vector<std::pair<std::string, std::string>> artifacts;  // file name -> DOT text
};

// Parses and runs one command. args excludes the program name and is in
// natural order. Never throws; failures come back as exit code 1 with an
// error record.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace ccx
