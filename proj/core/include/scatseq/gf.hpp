#pragma once

// Finite-field tower arithmetic: F_p subset F_q = F_p[y]/m1 subset
// F_{q^n} = F_q[x]/m2.
//
// Elements are identified by their canonical integer code
//   sum_{i<n} sum_{j<h} c_ij * p^(i*h + j)
// where c_ij is the F_p coefficient of y^j x^i. Equivalently the code of an
// F_{q^n} element is sum_i code(a_i) * q^i with a_i in F_q, so F_q sits inside
// F_{q^n} as the codes below q.

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "scatseq/bigint.hpp"

namespace scatseq::gf {

/// Largest field cardinality accepted by make_field unless overridden.
inline constexpr std::uint64_t kDefaultSizeBudget = std::uint64_t{1} << 28;

/// Fields up to this size keep full exp/log tables.
inline constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

struct Elem {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(Elem, Elem) = default;
};

bool is_prime(std::uint64_t v);
std::vector<std::uint64_t> prime_factors(std::uint64_t v);

/// F_q = F_p[y]/m1, elements are codes in [0, q).
class BaseField {
 public:
  BaseField(std::uint32_t p, int h);

  std::uint32_t p() const { return p_; }
  int h() const { return h_; }
  std::uint64_t size() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return m1_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const { return sub(0, a); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;

 private:
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t p_;
  int h_;
  std::uint64_t q_;
  std::vector<std::uint32_t> m1_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

/// Digit-wise base-p addition of `digits` base-p digits.
std::uint32_t add_digits(std::uint32_t a, std::uint32_t b, std::uint32_t p, int digits);
std::uint32_t sub_digits(std::uint32_t a, std::uint32_t b, std::uint32_t p, int digits);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Builds F_{p^(h*n)} as a two-level tower with the lexicographically
/// smallest monic irreducible moduli and the smallest-code generator.
FieldPtr make_field(std::uint32_t p, int h, int n,
                    std::uint64_t size_budget = kDefaultSizeBudget);

/// Immutable context for F_{q^n}; safe to share across threads.
class Field {
 public:
  Field(std::uint32_t p, int h, int n, std::uint64_t size_budget);
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  std::uint32_t p() const { return base_.p(); }
  int h() const { return base_.h(); }
  int n() const { return n_; }
  std::uint64_t q() const { return base_.size(); }
  std::uint64_t size() const { return size_; }
  std::uint64_t order() const { return size_ - 1; }
  BigInt order_big() const { return BigInt(size_ - 1); }
  const BaseField& base() const { return base_; }
  const std::vector<std::uint32_t>& m1() const { return base_.modulus(); }
  const std::vector<std::uint32_t>& m2() const { return m2_; }
  Elem generator() const { return g_; }
  bool has_tables() const { return !exp_.empty(); }

  /// Same (p, h, n), hence bit-identical contexts.
  bool same_as(const Field& other) const {
    return p() == other.p() && h() == other.h() && n() == other.n();
  }

  static constexpr Elem zero() { return Elem{0}; }
  static constexpr Elem one() { return Elem{1}; }

  /// Validated conversion from a canonical code.
  Elem from_code(std::uint64_t code) const;
  /// F_q element (code < q) viewed inside F_{q^n}.
  Elem from_base(std::uint32_t c) const { return Elem{c}; }

  /// Coordinates over F_q in the polynomial basis 1, x, ..., x^{n-1}.
  std::vector<std::uint32_t> coeffs(Elem e) const;
  Elem from_coeffs(std::span<const std::uint32_t> c) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const { return sub(zero(), a); }
  Elem mul(Elem a, Elem b) const;
  /// Multiplication by an F_q scalar.
  Elem scale(std::uint32_t c, Elem a) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem pow(Elem a, const BigInt& e) const;

  /// a^(q^t); t is reduced modulo n.
  Elem frob(Elem a, int t) const;
  /// a^(p^s); s is reduced modulo h*n.
  Elem frob_p(Elem a, int s) const;

  /// True iff a is in {x^d : x != 0}; a must be nonzero.
  bool is_dth_power(Elem a, const BigInt& d) const;
  /// k in [0, order) with g^k = a; a must be nonzero.
  std::uint64_t dlog(Elem a) const;
  std::uint64_t multiplicative_order(Elem a) const;
  const std::vector<std::uint64_t>& order_factors() const { return order_factors_; }

 private:
  Elem mul_slow(Elem a, Elem b) const;
  Elem pow_slow(Elem a, std::uint64_t e) const;
  std::uint64_t dlog_bsgs(Elem a) const;

  BaseField base_;
  int n_;
  std::uint64_t size_;
  std::vector<std::uint32_t> m2_;
  Elem g_;
  std::vector<std::uint64_t> order_factors_;

  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint64_t> q_pow_;  // q^t mod order
  // frob_images_[t][i] = (x^i)^(q^t)
  std::vector<std::vector<Elem>> frob_images_;

  mutable std::once_flag bsgs_once_;
  mutable std::unordered_map<std::uint32_t, std::uint32_t> bsgs_baby_;
  mutable std::uint64_t bsgs_step_ = 0;
  mutable Elem bsgs_giant_{};
};

/// An element bound to its field; arithmetic checks that operands share a
/// context.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem e);

  const FieldPtr& field() const { return field_; }
  Elem elem() const { return e_; }
  std::uint32_t code() const { return e_.code; }
  bool is_zero() const { return e_.code == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inv() const;
  FieldElement pow(const BigInt& e) const;
  FieldElement frob(int t) const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_->same_as(*b.field_) && a.e_ == b.e_;
  }

 private:
  const Field& checked(const FieldElement& o) const;

  FieldPtr field_;
  Elem e_;
};

/// Field homomorphism F_{q^n} -> F_{q^{nm}} fixed by the image of the
/// source generator.
struct EmbeddingMap {
  FieldPtr src;
  FieldPtr dst;
  Elem generator_image;
  Elem outer_image;
  // image of the F_p basis element y^j x^i at index i*h + j
  std::vector<Elem> basis_images;
};

EmbeddingMap embed(const FieldPtr& src, const FieldPtr& dst);
Elem embed_elem(const EmbeddingMap& map, Elem e);

}  // namespace scatseq::gf
