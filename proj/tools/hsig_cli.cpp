// hsig: command-line front end over the C interface.
//
//   hsig <command> <document> [--form NAME] [--ref NAME] [--ext] [--json]
//        [--pool-budget N] [--no-search]

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hsig/hsig.h"

namespace {

int fail_with(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signatures of hermitian forms over algebras with involution"};
  std::string command, path, form, ref;
  bool ext = false, json = false, no_search = false;
  std::size_t budget = 0;

  app.add_option("command", command, "hsig | msig | invsig | nil | ktf | findref | traceform")
      ->required()
      ->check(CLI::IsMember({"hsig", "msig", "invsig", "nil", "ktf", "findref", "traceform"}));
  app.add_option("document", path, "problem document ('-' for stdin)")->required();
  app.add_option("--form", form, "form block to evaluate");
  app.add_option("--ref", ref, "reference block to use");
  app.add_flag("--ext", ext, "work over the extension block");
  app.add_flag("--json", json, "JSON lines output");
  auto* budget_opt = app.add_option("--pool-budget", budget, "candidates examined by the reference search");
  app.add_flag("--no-search", no_search, "never search for a reference tuple");
  app.add_flag_callback("--version", [] {
    std::cout << "hsig " << hsig_version() << "\n";
    std::exit(0);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  std::stringstream text;
  if (path == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) return fail_with("cannot read '" + path + "'");
    text << in.rdbuf();
  }

  hsig_document* doc = nullptr;
  if (hsig_document_parse(text.str().c_str(), &doc) != HSIG_OK) return fail_with(hsig_last_error());

  hsig_run_options opts;
  hsig_run_options_init(&opts);
  opts.form = form.empty() ? nullptr : form.c_str();
  opts.ref = ref.empty() ? nullptr : ref.c_str();
  opts.use_extension = ext;
  opts.json = json;
  opts.search = !no_search;
  if (*budget_opt) opts.pool_budget = budget;

  hsig_report* report = nullptr;
  if (hsig_run(doc, command.c_str(), &opts, &report) != HSIG_OK) {
    hsig_document_free(doc);
    return fail_with(hsig_last_error());
  }
  std::cout << hsig_report_text(report);
  std::cerr << hsig_report_error(report);
  const int rc = hsig_report_exit_code(report);
  hsig_report_free(report);
  hsig_document_free(doc);
  return rc;
}
