#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dfh/poly.hpp"

namespace dfh {

// Linear differential operator A_0 D^p + A_1 D^(p-1) + ... + A_p.
class DiffOperator {
public:
  explicit DiffOperator(std::vector<Poly> A);

  long p() const { return (long)A_.size() - 1; }
  long delta() const { return delta_; }
  const std::vector<Poly>& A() const { return A_; }
  const Poly& A(size_t i) const { return A_[i]; }

  // Apply the operator to a rational function by exact calculus.
  RatFunc apply(const RatFunc& r) const;

private:
  std::vector<Poly> A_;
  long delta_;
};

// Recurrence sum_j B_j(n) a_{n+j} = 0, valid for n >= start. The polynomials
// are in the index variable n, lowest a-shift first. singular_indices lists
// every nonnegative integer root of the leading B: at such n the relation
// cannot be solved for a_{n+order}.
struct PRecurrence {
  std::vector<Poly> B;
  long start = 0;
  std::vector<long> singular_indices;

  long order() const { return (long)B.size() - 1; }
  // Number of leading terms a_0..a_{k-1} that must be supplied.
  long required_initial() const;
  void recompute_singular();
  // Divide out the common polynomial factor of all B_j, raising start past
  // its nonnegative integer roots, and scale to primitive integer form.
  PRecurrence simplified() const;
};

class SeriesHandle;
using SeriesPtr = std::shared_ptr<SeriesHandle>;

// Exact coefficient stream of a D-finite series, generated from a recurrence
// with supplied initial terms, or derived from a parent stream as
// g = sum_i P_i f^(i).
class SeriesHandle {
public:
  SeriesHandle(PRecurrence rec, std::vector<FieldElement> initial, std::string name);

  static SeriesPtr make(PRecurrence rec, std::vector<FieldElement> initial,
                        std::string name);
  static SeriesPtr derived(SeriesPtr parent, std::vector<Poly> P, std::string name);

  const std::string& name() const { return name_; }
  bool has_recurrence() const { return !derived_; }
  const PRecurrence& recurrence() const;
  const std::vector<FieldElement>& initial_terms() const { return initial_; }

  // a_0 .. a_N, exact; extends the cache monotonically.
  std::vector<FieldElement> coefficients(long N);
  FieldElement coefficient(long n);
  long cached_count() const { return (long)cache_.size(); }

private:
  void extend_(long N);

  std::string name_;
  PRecurrence rec_;
  std::vector<FieldElement> initial_;
  bool derived_ = false;
  SeriesPtr parent_;
  std::vector<Poly> P_;
  std::vector<FieldElement> cache_;
};

PRecurrence ode_to_recurrence(const DiffOperator& L);

bool verify_annihilation(SeriesHandle& s, const DiffOperator& L, long N);

// Coefficients of f^(p+j) in the basis f, f', ..., f^(p-1), lowest order
// first. Numerator degrees over the common denominator A_0^(j+1) are at most
// delta*(j+1); violation throws.
std::vector<RatFunc> reduce_derivative(const DiffOperator& L, long j);

// C with [g, g', ..., g^(p-1)]^T = C [f, f', ..., f^(p-1)]^T for the twist
// g = sum_i P_i f^(i), and B = C^(-1). Throws SingularMatrix when det C = 0.
void basis_change_matrix(const DiffOperator& L, const std::vector<Poly>& P_list,
                         std::vector<std::vector<RatFunc>>& C,
                         std::vector<std::vector<RatFunc>>& Bout);

// Nonnegative integer roots of the characteristic polynomial at the origin;
// size is at most p.
std::vector<long> exceptional_orders(const DiffOperator& L);

struct RationalApproxVerdict {
  enum class Kind { ForcedEqual, AnnihilatedButExceptional, Inconclusive };
  Kind kind;
  bool m_infinite = false;  // no disagreement found up to the scan cap
  long m = -1;              // ord(P - Q f) when finite
  long threshold = 0;       // (p+2)l + delta + p
  long cap = 0;             // scan cap used
};

RationalApproxVerdict rational_approx_principle(const DiffOperator& L, const Poly& P,
                                                const Poly& Q, SeriesHandle& s,
                                                long cap = 0);

}  // namespace dfh
