#include "commands.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace hsig {

namespace {

using json = nlohmann::ordered_json;

struct Context {
  const ProblemDocument& doc;
  const RunOptions& opts;
  std::ostringstream out;

  void line(const std::string& text, const json& record) {
    if (opts.json)
      out << record.dump() << "\n";
    else
      out << text << "\n";
  }
  // Comment lines only appear in text mode.
  void note(const std::string& text) {
    if (!opts.json) out << "# " << text << "\n";
  }

  const Algebra& algebra() const {
    if (opts.use_extension) {
      if (!doc.extended) fail(Errc::ValidationError, "--ext given but the document has no extension block");
      return *doc.extended;
    }
    return *doc.algebra;
  }

  const FormSpec& form_spec() const {
    if (opts.form.empty()) fail(Errc::UnknownForm, "this command needs --form <name>");
    const FormSpec* f = doc.find_form(opts.form);
    if (!f) fail(Errc::UnknownForm, "no form named '" + opts.form + "'");
    return *f;
  }

  // The selected form, moved to the extension when --ext is given.
  HermForm form() const {
    const FormSpec& f = form_spec();
    if (f.over_extension || !opts.use_extension) return *f.form;
    return f.form->base_change(algebra());
  }

  // Reference tuple over the base algebra.
  ReferenceTuple base_reference() {
    if (!opts.ref.empty()) {
      const ReferenceSpec* r = doc.find_reference(opts.ref);
      if (!r) fail(Errc::MissingReference, "no reference block named '" + opts.ref + "'");
      ReferenceTuple t = doc.reference_tuple(*r);
      validate_reference_tuple(*doc.algebra, t);
      return t;
    }
    if (!opts.search) {
      if (doc.references.size() != 1)
        fail(Errc::MissingReference, "no --ref given and the reference search is disabled");
      ReferenceTuple t = doc.reference_tuple(doc.references.front());
      validate_reference_tuple(*doc.algebra, t);
      return t;
    }
    ReferenceTuple t = find_reference_tuple(*doc.algebra, opts.pool_budget);
    for (std::size_t i = 0; i < t.forms.size(); ++i)
      note("reference " + std::to_string(i + 1) + ": " + matrix_to_string(t.forms[i].gram()));
    return t;
  }
};

std::string bool_text(bool b) { return b ? "true" : "false"; }

json ref_json(const SignatureReport& r) { return r.reference ? json(*r.reference + 1) : json(nullptr); }

void report(Context& c, const SignatureReport& r) {
  std::ostringstream s;
  s << "P#" << r.ordering_index << " signs=" << r.signs << " nil=" << bool_text(r.nil) << " lambda=" << r.lambda
    << " ref=" << (r.reference ? std::to_string(*r.reference + 1) : "-") << " value=" << r.value;
  json j;
  j["ordering"] = r.ordering_index;
  j["signs"] = r.signs;
  j["nil"] = r.nil;
  j["lambda"] = r.lambda;
  j["ref"] = ref_json(r);
  j["value"] = r.value;
  c.line(s.str(), j);
}

int cmd_hsig(Context& c) {
  const HermForm h = c.form();
  ReferenceTuple refs = c.base_reference();
  if (h.algebra() != *c.doc.algebra) refs = extend_reference(refs, h.algebra());
  for (const auto& r : total_h_signature(h, refs)) report(c, r);
  return kExitOk;
}

int cmd_msig(Context& c) {
  const HermForm h = c.form();
  const Algebra& a = h.algebra();
  const auto ords = orderings(a.field());
  for (std::size_t i = 0; i < ords.size(); ++i) {
    SignatureReport r;
    r.ordering_index = i;
    r.signs = ords[i].signs_string();
    r.nil = is_nil(a, ords[i]);
    r.lambda = lambda_at(a, ords[i]);
    r.value = m_signature(h, ords[i]);
    report(c, r);
  }
  return kExitOk;
}

int cmd_invsig(Context& c) {
  const Algebra& a = c.algebra();
  const auto ords = orderings(a.field());
  const TraceForm t = trace_form(a.involution());
  for (std::size_t i = 0; i < ords.size(); ++i) {
    const int v = exact_isqrt(trace_form_signature(t, ords[i]));
    json j;
    j["ordering"] = i;
    j["signs"] = ords[i].signs_string();
    j["value"] = v;
    c.line("P#" + std::to_string(i) + " signs=" + ords[i].signs_string() + " value=" + std::to_string(v), j);
  }
  return kExitOk;
}

int cmd_nil(Context& c) {
  const Algebra& a = c.algebra();
  const auto ords = orderings(a.field());
  for (std::size_t i = 0; i < ords.size(); ++i) {
    const bool nil = is_nil(a, ords[i]);
    json j;
    j["ordering"] = i;
    j["signs"] = ords[i].signs_string();
    j["nil"] = nil;
    c.line("P#" + std::to_string(i) + " signs=" + ords[i].signs_string() + " nil=" + bool_text(nil), j);
  }
  return kExitOk;
}

int cmd_ktf(Context& c) {
  if (!c.doc.extended) fail(Errc::ValidationError, "ktf needs an extension block");
  const FormSpec& f = c.form_spec();
  const HermForm h = f.over_extension ? *f.form : f.form->base_change(*c.doc.extended);
  const ReferenceTuple refs = c.base_reference();
  bool all = true;
  const auto ords = orderings(c.doc.field);
  for (std::size_t i = 0; i < ords.size(); ++i) {
    const TraceFormulaRecord rec = verify_trace_formula(h, *c.doc.algebra, refs, ords[i]);
    all = all && rec.pass();
    std::string terms;
    json jt = json::array();
    for (const auto& t : rec.terms) {
      terms += (terms.empty() ? "" : ",") + ("Q#" + std::to_string(t.ordering_index) + ":" + std::to_string(t.value));
      jt.push_back(json{{"ordering", t.ordering_index}, {"value", t.value}});
    }
    json j;
    j["ordering"] = i;
    j["signs"] = ords[i].signs_string();
    j["lhs"] = rec.lhs;
    j["rhs"] = rec.rhs;
    j["terms"] = jt;
    j["result"] = rec.pass() ? "PASS" : "FAIL";
    c.line("P#" + std::to_string(i) + " signs=" + ords[i].signs_string() + " lhs=" + std::to_string(rec.lhs) +
               " rhs=" + std::to_string(rec.rhs) + " terms=[" + terms + "] " + (rec.pass() ? "PASS" : "FAIL"),
           j);
  }
  return all ? kExitOk : kExitTraceFormulaFail;
}

int cmd_findref(Context& c) {
  const Algebra& a = *c.doc.algebra;
  const ReferenceTuple t = find_reference_tuple(a, c.opts.pool_budget);
  if (c.opts.json) {
    json forms = json::array();
    for (const auto& f : t.forms) forms.push_back(matrix_to_string(f.gram()));
    c.out << json{{"reference", forms}}.dump() << "\n";
    return kExitOk;
  }
  std::string names;
  for (std::size_t i = 0; i < t.forms.size(); ++i) {
    FormSpec spec;
    spec.diagonal.push_back(t.forms[i].gram());
    const std::string name = "ref" + std::to_string(i + 1);
    c.out << form_block(name, spec, a.m());
    names += (i ? ", " : " ") + name;
  }
  c.out << "reference found {" << names << " }\n";
  return kExitOk;
}

int cmd_traceform(Context& c) {
  Involution tau;
  if (!c.opts.form.empty())
    tau = adjoint_involution(c.form());
  else
    tau = c.algebra().involution();
  const TraceForm t = trace_form(tau);
  std::vector<std::string> diag;
  if (const auto* q = std::get_if<QuadForm>(&t)) {
    for (const auto& e : diagonalize_sym(*q).entries) diag.push_back(e.to_string());
  } else {
    const auto& hk = std::get<HermKForm>(t);
    const auto units = hk.ring().basis();
    const auto d = congruence_diagonalize(hk.gram(), [](const DElement& x) { return x.conj(); }, 1,
                                          std::span<const DElement>(units), false);
    for (const auto& e : d.entries) diag.push_back(e.to_string());
  }
  std::string text;
  for (const auto& s : diag) text += (text.empty() ? "" : ", ") + s;
  c.line("diag=[" + text + "]", json{{"diagonal", diag}});
  const auto ords = orderings(tau.ring.field());
  for (std::size_t i = 0; i < ords.size(); ++i) {
    const int s = trace_form_signature(t, ords[i]);
    const int r = exact_isqrt(s);
    json j;
    j["ordering"] = i;
    j["signs"] = ords[i].signs_string();
    j["signature"] = s;
    j["invsig"] = r;
    c.line("P#" + std::to_string(i) + " signs=" + ords[i].signs_string() + " signature=" + std::to_string(s) +
               " invsig=" + std::to_string(r),
           j);
  }
  return kExitOk;
}

}  // namespace

int exit_code_for(Errc code) {
  return code == Errc::ExhaustedReferences || code == Errc::PoolExhausted ? kExitNoReference : kExitInvalid;
}

RunResult run_command(const std::string& cmd, const ProblemDocument& doc, const RunOptions& opts) {
  static const std::map<std::string, std::function<int(Context&)>> table = {
      {"hsig", cmd_hsig}, {"msig", cmd_msig}, {"invsig", cmd_invsig},       {"nil", cmd_nil},
      {"ktf", cmd_ktf},   {"findref", cmd_findref}, {"traceform", cmd_traceform}};
  RunResult res;
  const auto it = table.find(cmd);
  if (it == table.end()) {
    res.exit_code = kExitInvalid;
    res.err = "error: unknown command '" + cmd + "'\n";
    return res;
  }
  Context c{doc, opts, {}};
  try {
    res.exit_code = it->second(c);
    res.out = c.out.str();
  } catch (const Error& e) {
    res.exit_code = exit_code_for(e.code());
    res.out = c.out.str();
    res.err = std::string("error: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace hsig
