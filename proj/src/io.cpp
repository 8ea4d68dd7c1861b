#include "dfh/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace dfh {

namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void schema_fail(const std::string& origin, const std::string& what) {
  throw SchemaError(origin + ": " + what);
}

const nlohmann::json& require(const nlohmann::json& j, const char* key,
                              const std::string& origin) {
  auto it = j.find(key);
  if (it == j.end()) schema_fail(origin, std::string("missing \"") + key + "\"");
  return *it;
}

FieldElement parse_element(const nlohmann::json& j, long want_d, const std::string& where,
                           const std::string& origin) {
  if (!j.is_string()) schema_fail(origin, where + ": expected a string literal");
  FieldElement v;
  try {
    v = FieldElement::parse(j.get<std::string>());
  } catch (const Error& e) {
    schema_fail(origin, where + ": " + e.what());
  }
  if (v.d() != 0 && v.d() != want_d)
    schema_fail(origin, where + ": element of Q(sqrt(" + std::to_string(v.d()) +
                            ")) outside the declared field");
  return v;
}

std::vector<Poly> parse_poly_list(const nlohmann::json& j, long want_d,
                                  const std::string& where, const std::string& origin) {
  if (!j.is_array() || j.empty())
    schema_fail(origin, where + ": expected a nonempty array of coefficient lists");
  std::vector<Poly> out;
  for (size_t i = 0; i < j.size(); ++i) {
    const auto& row = j[i];
    std::string here = where + "[" + std::to_string(i) + "]";
    if (!row.is_array()) schema_fail(origin, here + ": expected a coefficient list");
    std::vector<FieldElement> c;
    for (size_t k = 0; k < row.size(); ++k)
      c.push_back(parse_element(row[k], want_d, here + "[" + std::to_string(k) + "]", origin));
    out.emplace_back(std::move(c));
  }
  return out;
}

// sum_j B_j(n) a_{n+j} = 0 for n >= 0; leading zero polynomials shift the
// validity start (the variable is re-based so the stored relation reads
// sum_j B'_j(m) a_{m+j} = 0 for m >= start).
PRecurrence recurrence_from_rows(std::vector<Poly> B, const std::string& origin) {
  size_t lead = 0;
  while (lead < B.size() && B[lead].is_zero()) ++lead;
  if (lead == B.size()) schema_fail(origin, "recurrence.B: all coefficients are zero");
  size_t last = B.size();
  while (last > lead + 1 && B[last - 1].is_zero()) --last;
  if (B[last - 1].is_zero()) schema_fail(origin, "recurrence.B: zero leading coefficient");
  PRecurrence rec;
  rec.start = (long)lead;
  for (size_t j = lead; j < last; ++j) rec.B.push_back(B[j].compose_shift(-(long)lead));
  rec.recompute_singular();
  return rec;
}

std::string csv_escape(const std::string& s) {
  // exact texts never contain commas or quotes today; keep the check anyway
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string tag_key(GrowthTag t) { return growth_tag_name(t); }

std::string pole_verdict_name(PoleVerdictKind k) {
  switch (k) {
    case PoleVerdictKind::AllRootsOfUnity: return "AllRootsOfUnity";
    case PoleVerdictKind::HasOtherPole: return "HasOtherPole";
    case PoleVerdictKind::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

}  // namespace

SeriesDefinition series_from_json_text(const std::string& text, const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(origin + ": " + e.what());
  }
  if (!j.is_object()) schema_fail(origin, "top level must be an object");

  const auto& jname = require(j, "name", origin);
  if (!jname.is_string()) schema_fail(origin, "name: expected a string");
  std::string name = jname.get<std::string>();

  const auto& jfield = require(j, "field", origin);
  const auto& jtype = require(jfield, "type", origin + ": field");
  if (!jtype.is_string()) schema_fail(origin, "field.type: expected a string");
  std::string ftype = jtype.get<std::string>();
  long want_d = 0;
  if (ftype == "Q") {
    want_d = 0;
  } else if (ftype == "quadratic") {
    const auto& jd = require(jfield, "d", origin + ": field");
    if (!jd.is_number_integer()) schema_fail(origin, "field.d: expected an integer");
    want_d = jd.get<long>();
    if (want_d == 0 || want_d == 1 || !is_squarefree(want_d))
      schema_fail(origin, "field.d: must be squarefree, not 0 or 1");
  } else {
    schema_fail(origin, "field.type: must be \"Q\" or \"quadratic\"");
  }

  bool has_op = j.contains("operator");
  bool has_rec = j.contains("recurrence");
  if (!has_op && !has_rec)
    schema_fail(origin, "need \"operator\" or \"recurrence\" (or both)");

  std::optional<DiffOperator> op;
  if (has_op) {
    const auto& jop = j["operator"];
    if (!jop.is_object()) schema_fail(origin, "operator: expected an object");
    auto A = parse_poly_list(require(jop, "A", origin + ": operator"), want_d, "operator.A",
                             origin);
    if (A.front().is_zero()) schema_fail(origin, "operator.A[0]: must be nonzero");
    op.emplace(std::move(A));
  }

  PRecurrence rec;
  if (has_rec) {
    const auto& jrec = j["recurrence"];
    if (!jrec.is_object()) schema_fail(origin, "recurrence: expected an object");
    rec = recurrence_from_rows(
        parse_poly_list(require(jrec, "B", origin + ": recurrence"), want_d, "recurrence.B",
                        origin),
        origin);
  } else {
    rec = ode_to_recurrence(*op);
  }

  const auto& jinit = require(j, "initial", origin);
  if (!jinit.is_array()) schema_fail(origin, "initial: expected an array");
  std::vector<FieldElement> initial;
  for (size_t i = 0; i < jinit.size(); ++i)
    initial.push_back(
        parse_element(jinit[i], want_d, "initial[" + std::to_string(i) + "]", origin));

  SeriesDefinition def;
  def.series = SeriesHandle::make(std::move(rec), std::move(initial), name);
  if (has_op && has_rec) {
    long horizon = std::max<long>(40, def.series->recurrence().required_initial() +
                                          op->p() + op->delta() + 5);
    if (!verify_annihilation(*def.series, *op, horizon))
      schema_fail(origin, "operator and recurrence disagree on the coefficient stream");
  }
  def.op = std::move(op);
  return def;
}

SeriesDefinition series_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return series_from_json_text(buf.str(), path);
}

IndexSet exclusion_from_stream(std::istream& in, long N, const std::string& origin) {
  IndexSet S(N);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(a, b - a + 1);
    long idx = 0;
    try {
      size_t used = 0;
      idx = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw SchemaError(origin + ": line " + std::to_string(lineno) +
                        ": expected a nonnegative index, got \"" + tok + "\"");
    }
    if (idx < 0)
      throw SchemaError(origin + ": line " + std::to_string(lineno) + ": negative index");
    if (idx <= N) S.member[idx] = true;
  }
  return S;
}

IndexSet exclusion_from_file(const std::string& path, long N) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  return exclusion_from_stream(in, N, path);
}

std::string format_real(const Real& x, int digits) { return x.str(digits); }

std::string format_height(const HeightValue& h, int digits) {
  Real mid = Real::div(Real::add(h.lo, h.hi, MPFR_RNDN), Real(2L), MPFR_RNDN);
  return mid.str(digits);
}

std::string format_double(double x, int digits) {
  if (digits > 17) digits = 17;
  if (digits < 1) digits = 1;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void write_coeffs_csv(std::ostream& out, const std::vector<FieldElement>& a) {
  out << "n,a_n\n";
  for (size_t n = 0; n < a.size(); ++n) out << n << ',' << csv_escape(a[n].str()) << '\n';
}

void write_coeffs_json(std::ostream& out, const std::string& name,
                       const std::vector<FieldElement>& a) {
  ojson j;
  j["series"] = name;
  ojson arr = ojson::array();
  for (const auto& v : a) arr.push_back(v.str());
  j["coefficients"] = std::move(arr);
  out << j.dump(2) << '\n';
}

void write_profile_csv(std::ostream& out, const std::vector<FieldElement>& a,
                       const GrowthProfile& prof, int digits) {
  out << "n,a_n,h,den,log_lcm,excluded\n";
  for (long n = 0; n <= prof.N; ++n) {
    bool ex = prof.mask && prof.mask->contains(n);
    out << n << ',' << csv_escape(a[(size_t)n].str()) << ','
        << format_height(prof.h[(size_t)n], digits) << ',' << prof.den[(size_t)n].get_str()
        << ',' << format_real(prof.log_lcm[(size_t)n], digits) << ',' << (ex ? 1 : 0)
        << '\n';
  }
}

void write_profile_json(std::ostream& out, const std::string& name,
                        const std::vector<FieldElement>& a, const GrowthProfile& prof,
                        int digits) {
  ojson j;
  j["series"] = name;
  j["n"] = prof.N;
  ojson rows = ojson::array();
  for (long n = 0; n <= prof.N; ++n) {
    ojson row;
    row["n"] = n;
    row["a_n"] = a[(size_t)n].str();
    row["h"] = format_height(prof.h[(size_t)n], digits);
    row["den"] = prof.den[(size_t)n].get_str();
    row["log_lcm"] = format_real(prof.log_lcm[(size_t)n], digits);
    row["excluded"] = prof.mask && prof.mask->contains(n);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << '\n';
}

void write_hankel_csv(std::ostream& out, const HankelScan& scan, int digits) {
  out << "n,delta_exact,is_zero,log_abs\n";
  for (const auto& e : scan) {
    out << e.n << ',' << csv_escape(e.delta.str()) << ',' << (e.is_zero ? 1 : 0) << ',';
    if (!e.is_zero) out << format_real(e.log_abs, digits);
    out << '\n';
  }
}

void write_hankel_json(std::ostream& out, const std::string& name, const HankelScan& scan,
                       int digits) {
  ojson j;
  j["series"] = name;
  ojson rows = ojson::array();
  for (const auto& e : scan) {
    ojson row;
    row["n"] = e.n;
    row["delta_exact"] = e.delta.str();
    row["is_zero"] = e.is_zero;
    if (e.is_zero)
      row["log_abs"] = nullptr;
    else
      row["log_abs"] = format_real(e.log_abs, digits);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << '\n';
}

std::string guess_report_json(const std::string& name, long n_max, long window,
                              const std::optional<RatFunc>& guess) {
  ojson j;
  j["series"] = name;
  j["n_max"] = n_max;
  j["window"] = window;
  j["found"] = guess.has_value();
  if (guess) {
    j["num"] = guess->num().str();
    j["den"] = guess->den().str();
  } else {
    j["num"] = nullptr;
    j["den"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string classify_report_json(SeriesHandle& s, long N, const ClassifyConfig& cfg,
                                 long gevrey_bound, int digits) {
  GrowthClass gc = growth_classify(s, N, cfg);
  ojson j;
  j["series"] = s.name();
  j["n"] = N;
  j["class"] = tag_key(gc.tag);
  ojson ev;
  for (const auto& e : gc.evidence) {
    ojson one;
    one["density"] = e.density.get_str();
    one["median"] = format_double(e.median, digits);
    one["pass"] = e.pass;
    ev[tag_key(e.tag)] = std::move(one);
  }
  j["evidence"] = std::move(ev);

  auto qp = quasipolynomial_detect(s, N);
  if (qp) {
    ojson q;
    q["s"] = qp->s;
    ojson secs = ojson::array();
    for (const auto& sec : qp->Q) secs.push_back(sec.str());
    q["sections"] = std::move(secs);
    j["quasipolynomial"] = std::move(q);
    auto rf = quasipolynomial_to_ratfunc(*qp);
    if (rf) {
      PoleVerdict v = root_of_unity_poles(*rf);
      ojson p;
      p["verdict"] = pole_verdict_name(v.kind);
      p["M"] = v.M;
      p["N"] = v.N;
      j["poles"] = std::move(p);
    } else {
      j["poles"] = nullptr;
    }
  } else {
    j["quasipolynomial"] = nullptr;
    j["poles"] = nullptr;
  }

  // the root-test window needs N >= 100; below that the field stays null
  if (N >= 100) {
    auto gv = gevrey_estimate(s, N, gevrey_bound);
    if (gv)
      j["gevrey"] = gv->get_str();
    else
      j["gevrey"] = nullptr;
  } else {
    j["gevrey"] = nullptr;
  }
  return j.dump(2) + "\n";
}

namespace {

bool lcm_exceeds_beta(const CounterexampleCheckpoint& cp, const Rational& beta) {
  Real cap = Real::mul(Real(cp.n), Real::log_q(beta, MPFR_RNDN), MPFR_RNDN);
  return cp.log_lcm_out > cap;
}

}  // namespace

void write_counterexample_csv(std::ostream& out, const CounterexampleResult& r,
                              const std::optional<Rational>& beta, int digits) {
  out << "n,density,lcm_rate";
  if (beta) out << ",exceeds_beta";
  out << '\n';
  for (const auto& cp : r.checkpoints) {
    Real rate = Real::div(cp.log_lcm_out, Real(cp.n), MPFR_RNDN);
    out << cp.n << ',' << cp.density.get_str() << ',' << format_real(rate, digits);
    if (beta) out << ',' << (lcm_exceeds_beta(cp, *beta) ? 1 : 0);
    out << '\n';
  }
}

void write_counterexample_json(std::ostream& out, const std::string& alpha,
                               const CounterexampleResult& r,
                               const std::optional<Rational>& beta, int digits) {
  ojson j;
  j["alpha"] = alpha;
  if (beta)
    j["beta"] = beta->get_str();
  else
    j["beta"] = nullptr;
  ojson cks = ojson::array();
  for (const auto& cp : r.checkpoints) {
    ojson row;
    row["n"] = cp.n;
    row["density"] = cp.density.get_str();
    row["lcm_rate"] = format_real(Real::div(cp.log_lcm_out, Real(cp.n), MPFR_RNDN), digits);
    if (beta) row["exceeds_beta"] = lcm_exceeds_beta(cp, *beta);
    cks.push_back(std::move(row));
  }
  j["checkpoints"] = std::move(cks);
  ojson cs = ojson::array();
  for (const auto& c : r.c) cs.push_back(format_real(c, digits));
  j["c"] = std::move(cs);
  out << j.dump(2) << '\n';
}

std::vector<PolyaRow> polya_table(SeriesHandle& s, const Real& r, const Real& A,
                                  const Real& rho0, long n_max, long grid) {
  auto sup = sup_norm_on_circle(s, r, A, rho0, grid, Real(1e-45));
  DiskBoundInput in;
  in.M = sup.value;
  in.r = r;
  auto scan = hankel_scan(s, n_max);
  std::vector<PolyaRow> rows;
  rows.reserve(scan.size());
  for (const auto& e : scan) {
    PolyaRow row;
    row.n = e.n;
    row.delta = e.delta;
    row.bound = polya_bound(in, e.n);
    row.sound = e.delta.abs_upper() <= row.bound;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_polya_csv(std::ostream& out, const std::vector<PolyaRow>& rows, int digits) {
  out << "n,delta_exact,bound,sound\n";
  for (const auto& row : rows)
    out << row.n << ',' << csv_escape(row.delta.str()) << ','
        << format_real(row.bound, digits) << ',' << (row.sound ? 1 : 0) << '\n';
}

void write_polya_json(std::ostream& out, const std::string& name,
                      const std::vector<PolyaRow>& rows, int digits) {
  ojson j;
  j["series"] = name;
  ojson arr = ojson::array();
  for (const auto& row : rows) {
    ojson one;
    one["n"] = row.n;
    one["delta_exact"] = row.delta.str();
    one["bound"] = format_real(row.bound, digits);
    one["sound"] = row.sound;
    arr.push_back(std::move(one));
  }
  j["rows"] = std::move(arr);
  out << j.dump(2) << '\n';
}

Rational parse_rational_arg(const std::string& text, const std::string& what) {
  try {
    Rational q(text);
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw SchemaError(what + ": expected a rational like \"3/2\", got \"" + text + "\"");
  }
}

Real parse_real_arg(const std::string& text, const std::string& what) {
  Real r;
  char* end = nullptr;
  int bad = mpfr_strtofr(r.get(), text.c_str(), &end, 10, MPFR_RNDN);
  (void)bad;
  if (end == text.c_str() || *end != '\0')
    throw SchemaError(what + ": expected a decimal number, got \"" + text + "\"");
  return r;
}

std::vector<long> parse_index_list(const std::string& text, const std::string& what) {
  std::vector<long> out;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    size_t a = tok.find_first_not_of(" \t");
    if (a == std::string::npos)
      throw SchemaError(what + ": empty entry in \"" + text + "\"");
    size_t b = tok.find_last_not_of(" \t");
    try {
      size_t used = 0;
      long v = std::stol(tok.substr(a, b - a + 1), &used);
      if (used != b - a + 1) throw std::invalid_argument("trailing");
      out.push_back(v);
    } catch (const std::exception&) {
      throw SchemaError(what + ": expected integers, got \"" + text + "\"");
    }
  }
  if (out.empty()) throw SchemaError(what + ": empty list");
  return out;
}

}  // namespace dfh
