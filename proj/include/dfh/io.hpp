#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dfh/classify.hpp"
#include "dfh/growth.hpp"
#include "dfh/hankel.hpp"
#include "dfh/ode.hpp"
#include "dfh/polya.hpp"

namespace dfh {

// A loaded series definition. The operator is kept when the file carried one
// so commands can run the ODE-side checks.
struct SeriesDefinition {
  SeriesPtr series;
  std::optional<DiffOperator> op;
};

// Series definition JSON:
//   { "name": string,
//     "field": {"type":"Q"} | {"type":"quadratic","d":int},
//     "operator": {"A": [[coeff strings, lowest degree first], ...]}   (optional)
//     "recurrence": {"B": [[poly-in-n coeff strings], ...]}            (optional)
//     "initial": [element strings] }
// At least one of operator/recurrence is required; with both, the generated
// stream is checked against the operator. Recurrence rows are read as
// sum_j B_j(n) a_{n+j} = 0 for n >= 0; leading zero polynomials shift the
// validity start. Malformed input raises SchemaError (exit code 2) with
// line/column diagnostics; missing initial terms raise
// SingularIndexUncovered (exit code 3).
SeriesDefinition series_from_json_text(const std::string& text, const std::string& origin);
SeriesDefinition series_from_json_file(const std::string& path);

// Exclusion file: one nonnegative index per line, blanks ignored.
IndexSet exclusion_from_stream(std::istream& in, long N, const std::string& origin);
IndexSet exclusion_from_file(const std::string& path, long N);

// Decimal rendering used by every report: `digits` significant digits.
std::string format_real(const Real& x, int digits);
std::string format_height(const HeightValue& h, int digits);
std::string format_double(double x, int digits);

// CSV/JSON emitters. CSV always starts with a header row; all exact values
// are printed in the arith text format, reals as decimals at `digits`.
void write_coeffs_csv(std::ostream& out, const std::vector<FieldElement>& a);
void write_coeffs_json(std::ostream& out, const std::string& name,
                       const std::vector<FieldElement>& a);

void write_profile_csv(std::ostream& out, const std::vector<FieldElement>& a,
                       const GrowthProfile& prof, int digits);
void write_profile_json(std::ostream& out, const std::string& name,
                        const std::vector<FieldElement>& a, const GrowthProfile& prof,
                        int digits);

void write_hankel_csv(std::ostream& out, const HankelScan& scan, int digits);
void write_hankel_json(std::ostream& out, const std::string& name, const HankelScan& scan,
                       int digits);
std::string guess_report_json(const std::string& name, long n_max, long window,
                              const std::optional<RatFunc>& guess);

// Full classifier report: class tag with per-class evidence, quasipolynomial
// sections, pole verdict for the polynomial-section generating function, and
// the Gevrey estimate. JSON text, two-space indent, trailing newline.
std::string classify_report_json(SeriesHandle& s, long N, const ClassifyConfig& cfg,
                                 long gevrey_bound, int digits);

void write_counterexample_csv(std::ostream& out, const CounterexampleResult& r,
                              const std::optional<Rational>& beta, int digits);
void write_counterexample_json(std::ostream& out, const std::string& alpha,
                               const CounterexampleResult& r,
                               const std::optional<Rational>& beta, int digits);

struct PolyaRow {
  long n = 0;
  FieldElement delta;
  Real bound;
  bool sound = false;
};

// Exact |Delta_n| against the disk bound with M from the certified circle
// sup: rows for n = 0..n_max.
std::vector<PolyaRow> polya_table(SeriesHandle& s, const Real& r, const Real& A,
                                  const Real& rho0, long n_max, long grid);
void write_polya_csv(std::ostream& out, const std::vector<PolyaRow>& rows, int digits);
void write_polya_json(std::ostream& out, const std::string& name,
                      const std::vector<PolyaRow>& rows, int digits);

// Parse helpers for flag values; all raise SchemaError on malformed text.
Rational parse_rational_arg(const std::string& text, const std::string& what);
Real parse_real_arg(const std::string& text, const std::string& what);
std::vector<long> parse_index_list(const std::string& text, const std::string& what);

}  // namespace dfh
