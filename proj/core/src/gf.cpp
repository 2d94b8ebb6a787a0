#include "scatseq/gf.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "poly_ops.hpp"

namespace scatseq::gf {

namespace {

using detail::Poly;

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t limit, const char* what) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > limit / base) {
      throw BudgetExceeded(std::string(what) + " exceeds the configured size budget");
    }
    r *= base;
  }
  return r;
}

std::uint64_t isqrt_ceil(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r < v) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= v) --r;
  return r;
}

}  // namespace

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d != 0) continue;
    out.push_back(d);
    while (v % d == 0) v /= d;
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::uint32_t add_digits(std::uint32_t a, std::uint32_t b, std::uint32_t p, int digits) {
  if (p == 2) return a ^ b;
  std::uint32_t result = 0;
  std::uint32_t place = 1;
  for (int i = 0; i < digits; ++i) {
    const std::uint32_t s = (a % p + b % p) % p;
    result += s * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return result;
}

std::uint32_t sub_digits(std::uint32_t a, std::uint32_t b, std::uint32_t p, int digits) {
  if (p == 2) return a ^ b;
  std::uint32_t result = 0;
  std::uint32_t place = 1;
  for (int i = 0; i < digits; ++i) {
    const std::uint32_t s = (a % p + p - b % p) % p;
    result += s * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return result;
}

// ---------------------------------------------------------------- BaseField

BaseField::BaseField(std::uint32_t p, int h) : p_(p), h_(h) {
  if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
  if (h < 1) throw InvalidArgument("extension degree h must be >= 1");
  q_ = checked_pow(p, h, std::uint64_t{1} << 31, "q = p^h");
  m1_ = detail::smallest_monic_irreducible(detail::PrimeOps{p}, h);

  if (q_ <= kTableLimit) {
    const std::uint64_t order = q_ - 1;
    const auto factors = prime_factors(order);
    std::uint32_t g = 1;
    for (std::uint32_t c = 1; c < q_; ++c) {
      bool ok = true;
      for (auto r : factors) {
        std::uint32_t acc = 1, base = c;
        std::uint64_t e = order / r;
        while (e != 0) {
          if (e & 1U) acc = mul_slow(acc, base);
          base = mul_slow(base, base);
          e >>= 1U;
        }
        if (acc == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g = c;
        break;
      }
    }
    exp_.resize(order == 0 ? 1 : order);
    log_.assign(q_, 0);
    std::uint32_t cur = 1;
    for (std::uint64_t k = 0; k < order; ++k) {
      exp_[k] = cur;
      log_[cur] = static_cast<std::uint32_t>(k);
      cur = mul_slow(cur, g);
    }
  }
}

std::uint32_t BaseField::add(std::uint32_t a, std::uint32_t b) const {
  return add_digits(a, b, p_, h_);
}

std::uint32_t BaseField::sub(std::uint32_t a, std::uint32_t b) const {
  return sub_digits(a, b, p_, h_);
}

std::uint32_t BaseField::mul_slow(std::uint32_t a, std::uint32_t b) const {
  if (h_ == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  Poly pa(h_, 0), pb(h_, 0);
  for (int i = 0; i < h_; ++i) {
    pa[i] = a % p_;
    pb[i] = b % p_;
    a /= p_;
    b /= p_;
  }
  detail::trim(pa);
  detail::trim(pb);
  detail::PrimeOps ops{p_};
  detail::PolyRing<detail::PrimeOps> ring(ops);
  const Poly r = ring.mulmod(pa, pb, m1_);
  std::uint32_t code = 0;
  for (int i = static_cast<int>(r.size()) - 1; i >= 0; --i) code = code * p_ + r[i];
  return code;
}

std::uint32_t BaseField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) {
    const std::uint64_t order = q_ - 1;
    std::uint64_t e = std::uint64_t{log_[a]} + log_[b];
    if (e >= order) e -= order;
    return exp_[e];
  }
  return mul_slow(a, b);
}

std::uint32_t BaseField::inv(std::uint32_t a) const {
  if (a == 0) throw InvalidArgument("inversion of zero in F_q");
  const std::uint64_t order = q_ - 1;
  if (!exp_.empty()) return exp_[(order - log_[a]) % order];
  std::uint32_t acc = 1, base = a;
  std::uint64_t e = order - 1;
  while (e != 0) {
    if (e & 1U) acc = mul_slow(acc, base);
    base = mul_slow(base, base);
    e >>= 1U;
  }
  return acc;
}

// -------------------------------------------------------------------- Field

FieldPtr make_field(std::uint32_t p, int h, int n, std::uint64_t size_budget) {
  return std::make_shared<const Field>(p, h, n, size_budget);
}

Field::Field(std::uint32_t p, int h, int n, std::uint64_t size_budget) : base_(p, h), n_(n) {
  if (n < 1) throw InvalidArgument("extension degree n must be >= 1");
  const std::uint64_t limit = std::min<std::uint64_t>(size_budget, std::uint64_t{1} << 31);
  size_ = checked_pow(base_.size(), n, limit, "field size q^n");
  m2_ = detail::smallest_monic_irreducible(base_, n);

  const std::uint64_t order = size_ - 1;
  order_factors_ = prime_factors(order);

  for (std::uint64_t c = 1; c < size_; ++c) {
    bool ok = true;
    for (auto r : order_factors_) {
      if (pow_slow(Elem{static_cast<std::uint32_t>(c)}, order / r) == one()) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g_ = Elem{static_cast<std::uint32_t>(c)};
      break;
    }
  }

  // Frobenius images of the polynomial basis.
  frob_images_.resize(n_);
  Elem x_qt = n_ >= 2 ? Elem{static_cast<std::uint32_t>(base_.size())} : neg(Elem{m2_[0]});
  for (int t = 0; t < n_; ++t) {
    auto& row = frob_images_[t];
    row.resize(n_);
    Elem acc = one();
    for (int i = 0; i < n_; ++i) {
      row[i] = acc;
      acc = mul_slow(acc, x_qt);
    }
    x_qt = pow_slow(x_qt, base_.size());
  }

  q_pow_.resize(n_);
  std::uint64_t qp = 1 % std::max<std::uint64_t>(order, 1);
  for (int t = 0; t < n_; ++t) {
    q_pow_[t] = qp;
    qp = order == 0 ? 0 : mulmod_u64(qp, base_.size(), order);
  }

  if (size_ <= kTableLimit) {
    exp_.resize(order);
    log_.assign(size_, 0);
    Elem cur = one();
    for (std::uint64_t k = 0; k < order; ++k) {
      exp_[k] = cur.code;
      log_[cur.code] = static_cast<std::uint32_t>(k);
      cur = mul_slow(cur, g_);
    }
  }
}

Elem Field::from_code(std::uint64_t code) const {
  if (code >= size_) {
    throw InvalidArgument("element code " + std::to_string(code) + " out of range for a field of size " +
                          std::to_string(size_));
  }
  return Elem{static_cast<std::uint32_t>(code)};
}

std::vector<std::uint32_t> Field::coeffs(Elem e) const {
  std::vector<std::uint32_t> c(n_);
  std::uint64_t v = e.code;
  const std::uint64_t q = base_.size();
  for (int i = 0; i < n_; ++i) {
    c[i] = static_cast<std::uint32_t>(v % q);
    v /= q;
  }
  return c;
}

Elem Field::from_coeffs(std::span<const std::uint32_t> c) const {
  std::uint64_t code = 0;
  const std::uint64_t q = base_.size();
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) code = code * q + c[i];
  return Elem{static_cast<std::uint32_t>(code)};
}

Elem Field::add(Elem a, Elem b) const {
  return Elem{add_digits(a.code, b.code, base_.p(), base_.h() * n_)};
}

Elem Field::sub(Elem a, Elem b) const {
  return Elem{sub_digits(a.code, b.code, base_.p(), base_.h() * n_)};
}

Elem Field::mul_slow(Elem a, Elem b) const {
  if (a.code == 0 || b.code == 0) return zero();
  const std::uint32_t q = static_cast<std::uint32_t>(base_.size());
  std::array<std::uint32_t, 64> ca{}, cb{}, prod{};
  std::uint32_t va = a.code, vb = b.code;
  for (int i = 0; i < n_; ++i) {
    ca[i] = va % q;
    cb[i] = vb % q;
    va /= q;
    vb /= q;
  }
  for (int i = 0; i < n_; ++i) {
    if (ca[i] == 0) continue;
    for (int j = 0; j < n_; ++j) {
      if (cb[j] == 0) continue;
      prod[i + j] = base_.add(prod[i + j], base_.mul(ca[i], cb[j]));
    }
  }
  // m2 is monic of degree n
  for (int d = 2 * n_ - 2; d >= n_; --d) {
    const std::uint32_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int k = 0; k < n_; ++k) {
      prod[d - n_ + k] = base_.sub(prod[d - n_ + k], base_.mul(c, m2_[k]));
    }
  }
  std::uint32_t code = 0;
  for (int i = n_ - 1; i >= 0; --i) code = code * q + prod[i];
  return Elem{code};
}

Elem Field::pow_slow(Elem a, std::uint64_t e) const {
  Elem result = one();
  Elem base = a;
  while (e != 0) {
    if (e & 1U) result = mul_slow(result, base);
    e >>= 1U;
    if (e != 0) base = mul_slow(base, base);
  }
  return result;
}

Elem Field::mul(Elem a, Elem b) const {
  if (a.code == 0 || b.code == 0) return zero();
  if (!exp_.empty()) {
    const std::uint64_t order = size_ - 1;
    std::uint64_t e = std::uint64_t{log_[a.code]} + log_[b.code];
    if (e >= order) e -= order;
    return Elem{exp_[e]};
  }
  return mul_slow(a, b);
}

Elem Field::scale(std::uint32_t c, Elem a) const {
  if (c == 0 || a.code == 0) return zero();
  if (c == 1) return a;
  if (!exp_.empty()) return mul(Elem{c}, a);
  const std::uint32_t q = static_cast<std::uint32_t>(base_.size());
  std::uint32_t v = a.code, code = 0, place = 1;
  for (int i = 0; i < n_; ++i) {
    code += base_.mul(c, v % q) * place;
    v /= q;
    place *= q;
  }
  return Elem{code};
}

Elem Field::inv(Elem a) const {
  if (a.code == 0) throw InvalidArgument("inversion of zero");
  const std::uint64_t order = size_ - 1;
  if (!exp_.empty()) return Elem{exp_[(order - log_[a.code]) % order]};
  return pow_slow(a, order - 1);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (a.code == 0) return e == 0 ? one() : zero();
  const std::uint64_t order = size_ - 1;
  const std::uint64_t r = e % order;
  if (!exp_.empty()) return Elem{exp_[mulmod_u64(log_[a.code], r, order)]};
  return pow_slow(a, r);
}

Elem Field::pow(Elem a, const BigInt& e) const {
  if (a.code == 0) {
    if (e < 0) throw InvalidArgument("negative power of zero");
    return e == 0 ? one() : zero();
  }
  return pow(a, mod_u64(e, size_ - 1));
}

Elem Field::frob(Elem a, int t) const {
  t %= n_;
  if (t < 0) t += n_;
  if (t == 0 || a.code == 0) return a;
  if (!exp_.empty()) {
    const std::uint64_t order = size_ - 1;
    return Elem{exp_[mulmod_u64(log_[a.code], q_pow_[t], order)]};
  }
  const auto& images = frob_images_[t];
  const std::uint32_t q = static_cast<std::uint32_t>(base_.size());
  Elem acc = zero();
  std::uint32_t v = a.code;
  for (int i = 0; i < n_; ++i) {
    const std::uint32_t c = v % q;
    v /= q;
    if (c != 0) acc = add(acc, scale(c, images[i]));
  }
  return acc;
}

Elem Field::frob_p(Elem a, int s) const {
  const int total = base_.h() * n_;
  s %= total;
  if (s < 0) s += total;
  if (s == 0 || a.code == 0) return a;
  return pow(a, powmod_u64(base_.p(), static_cast<std::uint64_t>(s), size_ - 1));
}

bool Field::is_dth_power(Elem a, const BigInt& d) const {
  if (a.code == 0) throw InvalidArgument("power-residue test of zero");
  if (d < 1) throw InvalidArgument("power-residue exponent must be >= 1");
  const std::uint64_t order = size_ - 1;
  const std::uint64_t g = gcd(d, BigInt(order)).convert_to<std::uint64_t>();
  return pow(a, order / g) == one();
}

std::uint64_t Field::dlog(Elem a) const {
  if (a.code == 0) throw InvalidArgument("discrete logarithm of zero");
  if (!exp_.empty()) return log_[a.code];
  return dlog_bsgs(a);
}

std::uint64_t Field::dlog_bsgs(Elem a) const {
  const std::uint64_t order = size_ - 1;
  std::call_once(bsgs_once_, [this, order] {
    bsgs_step_ = isqrt_ceil(order);
    bsgs_baby_.reserve(bsgs_step_ * 2);
    Elem cur = one();
    for (std::uint64_t j = 0; j < bsgs_step_; ++j) {
      bsgs_baby_.emplace(cur.code, static_cast<std::uint32_t>(j));
      cur = mul_slow(cur, g_);
    }
    bsgs_giant_ = pow_slow(g_, (order - bsgs_step_ % order) % order);
  });
  Elem gamma = a;
  for (std::uint64_t i = 0; i <= bsgs_step_; ++i) {
    auto it = bsgs_baby_.find(gamma.code);
    if (it != bsgs_baby_.end()) return (i * bsgs_step_ + it->second) % order;
    gamma = mul_slow(gamma, bsgs_giant_);
  }
  throw std::logic_error("baby-step/giant-step failed: generator does not span the group");
}

std::uint64_t Field::multiplicative_order(Elem a) const {
  if (a.code == 0) throw InvalidArgument("multiplicative order of zero");
  std::uint64_t ord = size_ - 1;
  for (auto r : order_factors_) {
    while (ord % r == 0 && pow(a, ord / r) == one()) ord /= r;
  }
  return ord;
}

// ------------------------------------------------------------- FieldElement

FieldElement::FieldElement(FieldPtr field, Elem e) : field_(std::move(field)), e_(e) {
  if (!field_) throw InvalidArgument("null field context");
  if (e.code >= field_->size()) throw InvalidArgument("element code out of range");
}

const Field& FieldElement::checked(const FieldElement& o) const {
  if (!field_->same_as(*o.field_)) throw InvalidArgument("field context mismatch");
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return {field_, checked(o).add(e_, o.e_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  return {field_, checked(o).sub(e_, o.e_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  return {field_, checked(o).mul(e_, o.e_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  return {field_, checked(o).div(e_, o.e_)};
}
FieldElement FieldElement::inv() const { return {field_, field_->inv(e_)}; }
FieldElement FieldElement::pow(const BigInt& e) const { return {field_, field_->pow(e_, e)}; }
FieldElement FieldElement::frob(int t) const { return {field_, field_->frob(e_, t)}; }

// ---------------------------------------------------------------- embedding

EmbeddingMap embed(const FieldPtr& src, const FieldPtr& dst) {
  if (!src || !dst) throw InvalidArgument("null field context");
  const int src_deg = src->h() * src->n();
  const int dst_deg = dst->h() * dst->n();
  if (src->p() != dst->p() || dst_deg % src_deg != 0) {
    throw InvalidArgument("no embedding: F_" + std::to_string(src->size()) + " is not a subfield of F_" +
                          std::to_string(dst->size()));
  }

  // Minimal polynomial of the source generator over F_p.
  const Elem g = src->generator();
  std::vector<Elem> minpoly{Field::one()};
  for (int k = 0; k < src_deg; ++k) {
    const Elem c = src->frob_p(g, k);
    std::vector<Elem> next(minpoly.size() + 1, Field::zero());
    for (std::size_t i = 0; i < minpoly.size(); ++i) {
      next[i + 1] = src->add(next[i + 1], minpoly[i]);
      next[i] = src->sub(next[i], src->mul(c, minpoly[i]));
    }
    minpoly = std::move(next);
  }
  for (const Elem c : minpoly) {
    if (c.code >= src->p()) throw std::logic_error("minimal polynomial has a coefficient outside F_p");
  }

  auto eval = [&](Elem x) {
    Elem acc = Field::zero();
    for (int i = static_cast<int>(minpoly.size()) - 1; i >= 0; --i) {
      acc = dst->add(dst->mul(acc, x), Elem{minpoly[i].code});
    }
    return acc;
  };

  const std::uint64_t src_order = src->order();
  const Elem theta = dst->pow(dst->generator(), dst->order() / src_order);
  std::optional<Elem> root;
  for (std::uint64_t k = 1; k <= src_order; ++k) {
    if (gcd_u64(k, src_order) != 1) continue;
    const Elem cand = dst->pow(theta, k);
    if (eval(cand) == Field::zero()) {
      root = cand;
      break;
    }
  }
  if (!root) throw std::logic_error("no root of the source minimal polynomial in the target field");

  EmbeddingMap map{src, dst, *root, Field::zero(), {}};
  map.basis_images.resize(src_deg);
  std::uint64_t code = 1;
  for (int idx = 0; idx < src_deg; ++idx) {
    map.basis_images[idx] = dst->pow(*root, src->dlog(Elem{static_cast<std::uint32_t>(code)}));
    code *= src->p();
  }
  const Elem outer = src->n() >= 2 ? Elem{static_cast<std::uint32_t>(src->q())} : src->neg(Elem{src->m2()[0]});
  map.outer_image = embed_elem(map, outer);
  return map;
}

Elem embed_elem(const EmbeddingMap& map, Elem e) {
  const std::uint32_t p = map.src->p();
  Elem acc = Field::zero();
  std::uint32_t v = e.code;
  for (std::size_t idx = 0; v != 0; ++idx) {
    const std::uint32_t digit = v % p;
    v /= p;
    if (digit != 0) acc = map.dst->add(acc, map.dst->mul(Elem{digit}, map.basis_images[idx]));
  }
  return acc;
}

}  // namespace scatseq::gf
