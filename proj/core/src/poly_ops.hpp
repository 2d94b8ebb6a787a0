#pragma once

// Dense univariate polynomials over a small finite field whose elements are
// integer codes. `F` must provide add, sub, mul, inv on std::uint32_t codes
// and a size() equal to the field cardinality.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace scatseq::gf::detail {

using Poly = std::vector<std::uint32_t>;  // low degree first

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

struct PrimeOps {
  std::uint32_t p;

  std::uint64_t size() const { return p; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p ? s - p : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p - b);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
  }
  std::uint32_t inv(std::uint32_t a) const {
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e != 0) {
      if (e & 1U) result = result * base % p;
      base = base * base % p;
      e >>= 1U;
    }
    return static_cast<std::uint32_t>(result);
  }
};

template <class F>
class PolyRing {
 public:
  explicit PolyRing(const F& field) : f_(field) {}

  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        r[i + j] = f_.add(r[i + j], f_.mul(a[i], b[j]));
      }
    }
    trim(r);
    return r;
  }

  Poly sub(Poly a, const Poly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f_.sub(a[i], b[i]);
    trim(a);
    return a;
  }

  // Remainder of a modulo m (m nonzero).
  Poly mod(Poly a, const Poly& m) const {
    trim(a);
    const int dm = degree(m);
    const std::uint32_t lead_inv = f_.inv(m.back());
    while (degree(a) >= dm) {
      const int shift = degree(a) - dm;
      const std::uint32_t c = f_.mul(a.back(), lead_inv);
      for (int i = 0; i <= dm; ++i) {
        a[shift + i] = f_.sub(a[shift + i], f_.mul(c, m[i]));
      }
      trim(a);
    }
    return a;
  }

  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const { return mod(mul(a, b), m); }

  Poly powmod(Poly base, std::uint64_t e, const Poly& m) const {
    Poly result{1};
    result = mod(result, m);
    base = mod(base, m);
    while (e != 0) {
      if (e & 1U) result = mulmod(result, base, m);
      e >>= 1U;
      if (e != 0) base = mulmod(base, base, m);
    }
    return result;
  }

  Poly gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  // Rabin's test for a monic polynomial of degree >= 1.
  bool is_irreducible(const Poly& f) const {
    const int d = degree(f);
    if (d < 1) return false;
    if (d == 1) return true;
    const std::uint64_t fq = f_.size();
    // frob_pow[k] = x^{Q^k} mod f
    std::vector<Poly> frob_pow(static_cast<std::size_t>(d) + 1);
    frob_pow[0] = mod(Poly{0, 1}, f);
    for (int k = 1; k <= d; ++k) frob_pow[k] = powmod(frob_pow[k - 1], fq, f);
    const Poly x = mod(Poly{0, 1}, f);
    if (sub(frob_pow[d], x) != Poly{}) return false;
    for (int r = 2; r <= d; ++r) {
      if (d % r != 0 || !is_small_prime(r)) continue;
      const Poly g = gcd(f, sub(frob_pow[d / r], x));
      if (degree(g) > 0) return false;
    }
    return true;
  }

 private:
  static bool is_small_prime(int r) {
    if (r < 2) return false;
    for (int i = 2; i * i <= r; ++i) {
      if (r % i == 0) return false;
    }
    return true;
  }

  const F& f_;
};

template <class F>
bool has_root(const F& field, const Poly& f) {
  if (field.size() > 256) return false;
  for (std::uint32_t a = 0; a < field.size(); ++a) {
    std::uint32_t v = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) v = field.add(field.mul(v, a), *it);
    if (v == 0) return true;
  }
  return false;
}

// Smallest monic irreducible of the given degree. Candidates are the
// coefficient tuples (c_0, ..., c_{d-1}) in lexicographic order with c_0
// compared first.
template <class F>
Poly smallest_monic_irreducible(const F& field, int d) {
  PolyRing<F> ring(field);
  const std::uint64_t fq = field.size();
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= fq;
  // c_0 = 0 means x divides f, so start at c_0 = 1 once d >= 2
  const std::uint64_t start = d >= 2 ? total / fq : 0;
  for (std::uint64_t k = start; k < total; ++k) {
    Poly f(static_cast<std::size_t>(d) + 1, 0);
    std::uint64_t rest = k;
    for (int i = d - 1; i >= 0; --i) {
      f[i] = static_cast<std::uint32_t>(rest % fq);
      rest /= fq;
    }
    f[d] = 1;
    if (d >= 2 && has_root(field, f)) continue;
    if (ring.is_irreducible(f)) return f;
  }
  return {};
}

}  // namespace scatseq::gf::detail
