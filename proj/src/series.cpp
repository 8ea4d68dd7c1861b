#include "dfh/ode.hpp"

#include <algorithm>

#include "dfh/errors.hpp"

namespace dfh {

SeriesHandle::SeriesHandle(PRecurrence rec, std::vector<FieldElement> initial,
                           std::string name)
    : name_(std::move(name)), rec_(std::move(rec)), initial_(std::move(initial)) {
  if (rec_.B.empty() || rec_.B.back().is_zero())
    throw PreconditionFailed("recurrence must have a nonzero leading coefficient");
  long need = rec_.required_initial();
  if ((long)initial_.size() < need)
    throw SingularIndexUncovered("series '" + name_ + "' needs " + std::to_string(need) +
                                 " initial terms, got " + std::to_string(initial_.size()));
  cache_ = initial_;
  // Supplied terms must satisfy the recurrence wherever it applies.
  long q = rec_.order();
  for (long n = rec_.start; n + q < (long)cache_.size(); ++n) {
    FieldElement acc;
    for (long j = 0; j <= q; ++j) acc += rec_.B[(size_t)j].eval_int(n) * cache_[(size_t)(n + j)];
    if (!acc.is_zero())
      throw PreconditionFailed("series '" + name_ + "': supplied terms violate the recurrence at n=" +
                               std::to_string(n));
  }
}

SeriesPtr SeriesHandle::make(PRecurrence rec, std::vector<FieldElement> initial,
                             std::string name) {
  return std::make_shared<SeriesHandle>(std::move(rec), std::move(initial), std::move(name));
}

SeriesPtr SeriesHandle::derived(SeriesPtr parent, std::vector<Poly> P, std::string name) {
  auto s = std::make_shared<SeriesHandle>(PRecurrence{{Poly::one()}, 0, {}},
                                          std::vector<FieldElement>{}, std::move(name));
  s->derived_ = true;
  s->parent_ = std::move(parent);
  s->P_ = std::move(P);
  s->cache_.clear();
  return s;
}

const PRecurrence& SeriesHandle::recurrence() const {
  if (derived_) throw PreconditionFailed("derived series has no explicit recurrence");
  return rec_;
}

void SeriesHandle::extend_(long N) {
  if (derived_) {
    long imax = 0;
    for (size_t i = 0; i < P_.size(); ++i)
      if (!P_[i].is_zero()) imax = (long)i;
    auto a = parent_->coefficients(N + imax);
    for (long n = (long)cache_.size(); n <= N; ++n) {
      FieldElement g;
      for (size_t i = 0; i < P_.size(); ++i) {
        const Poly& Pi = P_[i];
        for (long k = 0; k <= Pi.deg(); ++k) {
          if (n - k < 0) continue;
          FieldElement c = Pi.coef((size_t)k);
          if (c.is_zero()) continue;
          FieldElement fac(1L);
          for (long t = 1; t <= (long)i; ++t) fac *= FieldElement(n - k + t);
          g += c * fac * a[(size_t)(n - k + (long)i)];
        }
      }
      cache_.push_back(g);
    }
    return;
  }
  long q = rec_.order();
  for (long idx = (long)cache_.size(); idx <= N; ++idx) {
    long n = idx - q;
    if (n < rec_.start)
      throw SingularIndexUncovered("series '" + name_ + "': a_" + std::to_string(idx) +
                                   " precedes recurrence validity and was not supplied");
    FieldElement lead = rec_.B.back().eval_int(n);
    if (lead.is_zero())
      throw SingularIndexUncovered("series '" + name_ + "': singular index n=" +
                                   std::to_string(n) + " not covered by initial terms");
    FieldElement acc;
    for (long j = 0; j < q; ++j) acc += rec_.B[(size_t)j].eval_int(n) * cache_[(size_t)(n + j)];
    cache_.push_back(-acc / lead);
  }
}

std::vector<FieldElement> SeriesHandle::coefficients(long N) {
  if (N < 0) throw PreconditionFailed("coefficient index must be nonnegative");
  if ((long)cache_.size() <= N) extend_(N);
  return std::vector<FieldElement>(cache_.begin(), cache_.begin() + N + 1);
}

FieldElement SeriesHandle::coefficient(long n) {
  if (n < 0) throw PreconditionFailed("coefficient index must be nonnegative");
  if ((long)cache_.size() <= n) extend_(n);
  return cache_[(size_t)n];
}

}  // namespace dfh
