#include "dfh/factor.hpp"

#include <algorithm>
#include <cmath>

#include "dfh/errors.hpp"

namespace dfh {

namespace {

constexpr unsigned long kSieveLimit = 65536;

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> comp(kSieveLimit + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long p = 2; p <= kSieveLimit; ++p) {
      if (comp[p]) continue;
      out.push_back(p);
      for (unsigned long q = p * p; q <= kSieveLimit; q += p) comp[q] = true;
    }
    return out;
  }();
  return primes;
}

double log_of(const Int& n) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, n.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

unsigned long remove_all(Int& n, const Int& f) {
  return mpz_remove(n.get_mpz_t(), n.get_mpz_t(), f.get_mpz_t());
}

// Coprime basis of a list of values > 1 (worklist refinement).
std::vector<Int> coprime_basis(std::vector<Int> work) {
  std::vector<Int> basis;
  while (!work.empty()) {
    Int x = work.back();
    work.pop_back();
    if (x == 1) continue;
    bool consumed = false;
    for (size_t i = 0; i < basis.size();) {
      Int g = gcd(x, basis[i]);
      if (g == 1) {
        ++i;
        continue;
      }
      if (g == basis[i]) {
        remove_all(x, g);
        if (x == 1) {
          consumed = true;
          break;
        }
        continue;  // leftover may still share a proper factor with this entry
      }
      Int b = basis[i];
      basis.erase(basis.begin() + static_cast<long>(i));
      work.push_back(g);
      work.push_back(b / g);
      work.push_back(x);
      consumed = true;
      break;
    }
    if (!consumed) basis.push_back(x);
  }
  return basis;
}

}  // namespace

std::vector<std::pair<Int, unsigned long>> factorize(const Int& n0) {
  if (n0 < 1) throw PreconditionFailed("factorize requires a positive integer");
  std::vector<std::pair<Int, unsigned long>> out;
  Int n = n0;
  for (unsigned long p : small_primes()) {
    if (n == 1) return out;
    if (Int(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      Int pz(static_cast<long>(p));
      unsigned long e = remove_all(n, pz);
      out.emplace_back(pz, e);
    }
  }
  if (n == 1) return out;
  if (n < Int(kSieveLimit) * Int(kSieveLimit) ||
      mpz_probab_prime_p(n.get_mpz_t(), 32) > 0) {
    out.emplace_back(n, 1);
    return out;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    auto sub = factorize(r);
    for (auto& [p, e] : sub) out.emplace_back(p, 2 * e);
    return out;
  }
  throw PreconditionFailed("factorize: composite cofactor too large to split: " + n.get_str());
}

void FactorMap::insert_power_(const Int& key, unsigned long e) {
  if (key == 1 || e == 0) return;
  // Fast path: key coprime to everything already present, or an exact match.
  auto it = exp_.find(key);
  if (it != exp_.end()) {
    if (e > it->second) it->second = e;
    return;
  }
  std::vector<Int> affected;
  for (auto& [k, ek] : exp_)
    if (gcd(key, k) != 1) affected.push_back(k);
  if (affected.empty()) {
    exp_[key] = e;
    return;
  }
  std::vector<Int> vals = affected;
  vals.push_back(key);
  std::vector<Int> basis = coprime_basis(vals);
  std::map<Int, unsigned long> fresh;
  for (const Int& b : basis) {
    unsigned long best = 0;
    for (const Int& k : affected) {
      Int t = k;
      unsigned long m = remove_all(t, b);
      if (m > 0) best = std::max(best, m * exp_[k]);
    }
    Int t = key;
    unsigned long m = remove_all(t, b);
    if (m > 0) best = std::max(best, m * e);
    if (best > 0) fresh[b] = best;
  }
  for (const Int& k : affected) exp_.erase(k);
  for (auto& [b, eb] : fresh) {
    auto jt = exp_.find(b);
    if (jt == exp_.end())
      exp_[b] = eb;
    else if (eb > jt->second)
      jt->second = eb;
  }
}

void FactorMap::insert_value(const Int& v0) {
  if (v0 <= 1) return;
  Int v = v0;
  for (unsigned long p : small_primes()) {
    if (v == 1) return;
    if (Int(p) * p > v) break;
    if (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
      Int pz(static_cast<long>(p));
      unsigned long e = remove_all(v, pz);
      insert_power_(pz, e);
    }
  }
  if (v == 1) return;
  insert_power_(v, 1);
}

double FactorMap::log_value() const {
  double s = 0;
  for (auto& [k, e] : exp_) s += static_cast<double>(e) * log_of(k);
  return s;
}

Int FactorMap::to_int() const {
  Int r = 1;
  for (auto& [k, e] : exp_) {
    Int p;
    mpz_pow_ui(p.get_mpz_t(), k.get_mpz_t(), e);
    r *= p;
  }
  return r;
}

}  // namespace dfh
