#include "hsig/hsig.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "commands.hpp"

struct hsig_document {
  hsig::ProblemDocument doc;
};

struct hsig_report {
  hsig::RunResult result;
};

namespace {

thread_local std::string g_last_error;

hsig_status status_of(hsig::Errc code) { return static_cast<int>(code) + 1; }

template <class F>
hsig_status guard(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return HSIG_OK;
  } catch (const hsig::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "Internal: out of memory";
  } catch (const std::exception& e) {
    g_last_error = std::string("Internal: ") + e.what();
  } catch (...) {
    g_last_error = "Internal: unknown exception";
  }
  return status_of(hsig::Errc::Internal);
}

hsig_status bad_argument(const char* what) {
  g_last_error = std::string("ValidationError: ") + what;
  return status_of(hsig::Errc::ValidationError);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hsig::FieldTower tower_of(const char* const* radicands, size_t n) {
  hsig::FieldTower f;
  for (size_t i = 0; i < n; ++i) {
    if (!radicands[i]) hsig::fail(hsig::Errc::ValidationError, "null radicand");
    f = f.extend(hsig::parse_field_element(radicands[i], f));
  }
  return f;
}

}  // namespace

extern "C" {

const char* hsig_version(void) { return "0.1.0"; }

const char* hsig_status_name(hsig_status status) {
  if (status == HSIG_OK) return "Ok";
  if (status < 1 || status > static_cast<int>(hsig::Errc::Internal) + 1) return "Unknown";
  return hsig::errc_name(static_cast<hsig::Errc>(status - 1));
}

const char* hsig_last_error(void) { return g_last_error.c_str(); }

void hsig_run_options_init(hsig_run_options* opts) {
  if (!opts) return;
  opts->form = nullptr;
  opts->ref = nullptr;
  opts->use_extension = 0;
  opts->json = 0;
  opts->search = 1;
  opts->pool_budget = hsig::kDefaultPoolBudget;
}

hsig_status hsig_document_parse(const char* text, hsig_document** out) {
  if (!text || !out) return bad_argument("null argument");
  *out = nullptr;
  return guard([&] { *out = new hsig_document{hsig::parse_document(text)}; });
}

void hsig_document_free(hsig_document* doc) { delete doc; }

hsig_status hsig_document_serialize(const hsig_document* doc, char** out) {
  if (!doc || !out) return bad_argument("null argument");
  *out = nullptr;
  return guard([&] { *out = dup_string(hsig::serialize_document(doc->doc)); });
}

size_t hsig_document_form_count(const hsig_document* doc) { return doc ? doc->doc.forms.size() : 0; }

const char* hsig_document_form_name(const hsig_document* doc, size_t index) {
  if (!doc || index >= doc->doc.forms.size()) return nullptr;
  return doc->doc.forms[index].name.c_str();
}

void hsig_string_free(char* s) { std::free(s); }

hsig_status hsig_run(const hsig_document* doc, const char* command, const hsig_run_options* opts,
                     hsig_report** out) {
  if (!doc || !command || !out) return bad_argument("null argument");
  *out = nullptr;
  return guard([&] {
    hsig::RunOptions o;
    if (opts) {
      o.form = opts->form ? opts->form : "";
      o.ref = opts->ref ? opts->ref : "";
      o.use_extension = opts->use_extension != 0;
      o.json = opts->json != 0;
      o.search = opts->search != 0;
      o.pool_budget = opts->pool_budget;
    }
    *out = new hsig_report{hsig::run_command(command, doc->doc, o)};
  });
}

int hsig_report_exit_code(const hsig_report* report) { return report ? report->result.exit_code : 1; }
const char* hsig_report_text(const hsig_report* report) { return report ? report->result.out.c_str() : ""; }
const char* hsig_report_error(const hsig_report* report) { return report ? report->result.err.c_str() : ""; }
void hsig_report_free(hsig_report* report) { delete report; }

hsig_status hsig_field_ordering_count(const char* const* radicands, size_t n, size_t* count) {
  if ((n && !radicands) || !count) return bad_argument("null argument");
  return guard([&] { *count = hsig::orderings(tower_of(radicands, n)).size(); });
}

hsig_status hsig_field_sign(const char* const* radicands, size_t n, const char* element, size_t ordering,
                            int* sign) {
  if ((n && !radicands) || !element || !sign) return bad_argument("null argument");
  return guard([&] {
    const hsig::FieldTower f = tower_of(radicands, n);
    const auto ords = hsig::orderings(f);
    if (ordering >= ords.size()) hsig::fail(hsig::Errc::ValidationError, "ordering index out of range");
    *sign = hsig::sign_at(hsig::parse_field_element(element, f), ords[ordering]);
  });
}

hsig_status hsig_field_normalize(const char* const* radicands, size_t n, const char* element, char** out) {
  if ((n && !radicands) || !element || !out) return bad_argument("null argument");
  *out = nullptr;
  return guard([&] { *out = dup_string(hsig::parse_field_element(element, tower_of(radicands, n)).to_string()); });
}

}  // extern "C"
