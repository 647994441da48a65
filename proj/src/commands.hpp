#pragma once

// Command dispatch for problem documents.

#include <string>

#include "document.hpp"

namespace hsig {

struct RunOptions {
  std::string form;
  std::string ref;
  bool use_extension = false;
  bool json = false;
  bool search = true;  // hsig/ktf fall back to find_reference_tuple without --ref
  std::size_t pool_budget = kDefaultPoolBudget;
};

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

enum ExitCode { kExitOk = 0, kExitInvalid = 1, kExitTraceFormulaFail = 2, kExitNoReference = 3 };

// hsig, msig, invsig, nil, ktf, findref, traceform. Never throws library errors.
RunResult run_command(const std::string& cmd, const ProblemDocument& doc, const RunOptions& opts);

int exit_code_for(Errc code);

}  // namespace hsig
