#pragma once

// Slow reference implementations used only as test oracles. Nothing here
// shares code with the library beyond the element encoding.

#include <cstdint>
#include <set>
#include <vector>

#include "scatseq/useq.hpp"

namespace oracle {

using Poly = std::vector<std::uint32_t>;  // low degree first, coefficients mod p

inline Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline Poly poly_mod_p(const Poly& a, const Poly& m, std::uint32_t p) {
  Poly r = trim(a);
  const Poly mm = trim(m);
  const std::size_t dm = mm.size() - 1;
  // m is monic in every use below
  while (r.size() > dm) {
    const std::uint32_t lead = r.back();
    const std::size_t shift = r.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) r[shift + i] = (r[shift + i] + p * p - lead * mm[i] % p) % p;
    r = trim(r);
  }
  return r;
}

/// Brute-force irreducibility over F_p: no monic factor of degree 1..d/2.
inline bool irreducible_fp(const Poly& m, std::uint32_t p) {
  const std::size_t d = m.size() - 1;
  for (std::size_t k = 1; 2 * k <= d; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly f(k + 1, 0);
      f[k] = 1;
      std::uint64_t c = code;
      for (std::size_t i = 0; i < k; ++i) {
        f[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (poly_mod_p(m, f, p).empty()) return false;
    }
  }
  return true;
}

/// F_q = F_p[y]/m1 with elements as base-p digit codes, multiplication by schoolbook.
struct NaiveFq {
  std::uint32_t p;
  Poly m1;
  int h;

  Poly digits(std::uint32_t a) const {
    Poly d(h, 0);
    for (int i = 0; i < h; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  }
  std::uint32_t code(const Poly& d) const {
    std::uint32_t c = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) c = c * p + d[i];
    return c;
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    Poly x = digits(a), y = digits(b);
    for (int i = 0; i < h; ++i) x[i] = (x[i] + y[i]) % p;
    return code(x);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const Poly x = digits(a), y = digits(b);
    Poly prod(2 * h, 0);
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < h; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    Poly r = poly_mod_p(prod, m1, p);
    r.resize(h, 0);
    return code(r);
  }
};

/// F_{q^n} = F_q[x]/m2, schoolbook over NaiveFq.
struct NaiveFqn {
  NaiveFq fq;
  std::vector<std::uint32_t> m2;  // monic, coefficients are F_q codes
  int n;
  std::uint64_t q;

  std::vector<std::uint32_t> digits(std::uint64_t a) const {
    std::vector<std::uint32_t> d(n, 0);
    for (int i = 0; i < n; ++i) {
      d[i] = static_cast<std::uint32_t>(a % q);
      a /= q;
    }
    return d;
  }
  std::uint64_t code(const std::vector<std::uint32_t>& d) const {
    std::uint64_t c = 0;
    for (int i = n - 1; i >= 0; --i) c = c * q + d[i];
    return c;
  }
  std::uint32_t neg(std::uint32_t a) const {
    Poly d = fq.digits(a);
    for (auto& x : d) x = (fq.p - x) % fq.p;
    return fq.code(d);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    auto x = digits(a), y = digits(b);
    for (int i = 0; i < n; ++i) x[i] = fq.add(x[i], y[i]);
    return code(x);
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    const auto x = digits(a), y = digits(b);
    std::vector<std::uint32_t> prod(2 * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) prod[i + j] = fq.add(prod[i + j], fq.mul(x[i], y[j]));
    for (int k = 2 * n - 1; k >= n; --k) {
      const std::uint32_t lead = prod[k];
      if (lead == 0) continue;
      for (int i = 0; i <= n; ++i) prod[k - n + i] = fq.add(prod[k - n + i], neg(fq.mul(lead, m2[i])));
    }
    prod.resize(n);
    return code(prod);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
};

/// Set of all d-th powers of nonzero elements, by direct exponentiation.
template <class Field>
std::set<std::uint32_t> power_set(const Field& f, std::uint64_t d) {
  std::set<std::uint32_t> out;
  for (std::uint64_t c = 1; c < f.size(); ++c) {
    out.insert(f.pow(scatseq::gf::Elem{static_cast<std::uint32_t>(c)}, d).code);
  }
  return out;
}

/// dim_{F_q}(U meet <gens>_{F_{q^n}}) by enumerating every F_{q^n}-combination.
inline int span_dim_by_enumeration(const scatseq::useq::SeqParams& params,
                                   const std::vector<scatseq::useq::UPoint>& gens) {
  const auto& f = params.field();
  const std::uint64_t s = f.size();
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) combos *= s;
  std::set<std::vector<std::uint32_t>> hits;
  for (std::uint64_t idx = 0; idx < combos; ++idx) {
    std::uint64_t rest = idx;
    scatseq::useq::UPoint v{};
    for (const auto& g : gens) {
      const scatseq::gf::Elem a{static_cast<std::uint32_t>(rest % s)};
      rest /= s;
      for (int c = 0; c < 6; ++c) v[c] = f.add(v[c], f.mul(a, g[c]));
    }
    if (scatseq::useq::evaluate(params, v[0], v[1], v[2]) == v) {
      std::vector<std::uint32_t> key;
      for (auto e : v) key.push_back(e.code);
      hits.insert(key);
    }
  }
  int d = 0;
  for (std::uint64_t c = hits.size(); c >= f.q(); c /= f.q()) ++d;
  return d;
}

}  // namespace oracle
