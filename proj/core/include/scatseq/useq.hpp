#pragma once

// The order-three family
//
//   U = { (x, y, z, x^{q^I} + alpha y^{q^J}, x^{q^J} + beta z^{q^I},
//          y^{q^I} + gamma z^{q^J}) : x, y, z in F_{q^n} }
//
// an F_q-subspace of F_{q^n}^6 of dimension 3n. The variables range over
// F_{q^n}, not F_q: only then is U a 3n-dimensional F_q-subspace, which every
// scatteredness and evasiveness argument about the family presupposes.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "scatseq/gf.hpp"

namespace scatseq::useq {

using gf::Elem;
using gf::FieldPtr;

using UPoint = std::array<Elem, 6>;

class SeqParams {
 public:
  /// Throws InvalidArgument unless 0 <= I < J < n and alpha, beta, gamma are
  /// nonzero elements of `field`.
  static SeqParams make(FieldPtr field, int I, int J, Elem alpha, Elem beta, Elem gamma);

  const gf::Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int I() const { return i_; }
  int J() const { return j_; }
  int K() const { return j_ - i_; }
  Elem alpha() const { return alpha_; }
  Elem beta() const { return beta_; }
  Elem gamma() const { return gamma_; }

  /// gcd(I, J, n); values other than 1 are accepted but produce a warning.
  int gcd_ijn() const;
  std::vector<std::string> warnings() const;

  SeqParams with_triple(Elem alpha, Elem beta, Elem gamma) const {
    return make(field_, i_, j_, alpha, beta, gamma);
  }

 private:
  SeqParams(FieldPtr field, int I, int J, Elem a, Elem b, Elem c)
      : field_(std::move(field)), i_(I), j_(J), alpha_(a), beta_(b), gamma_(c) {}

  FieldPtr field_;
  int i_;
  int j_;
  Elem alpha_;
  Elem beta_;
  Elem gamma_;
};

UPoint evaluate(const SeqParams& params, Elem x, Elem y, Elem z);

/// The first three coordinates determine the point, so membership is a
/// constant number of field operations.
bool membership(const SeqParams& params, const UPoint& v);

/// Images of (b_i,0,0), (0,b_i,0), (0,0,b_i) for the polynomial basis b_i = x^i.
std::vector<UPoint> u_basis(const SeqParams& params);

/// Number of points of U, q^{3n}.
std::uint64_t point_count(const SeqParams& params);

/// Point number `index` in [0, q^{3n}): x = index mod q^n, y, z the next digits.
UPoint point_at(const SeqParams& params, std::uint64_t index);

std::vector<Elem> to_vector(const UPoint& p);

/// A generic I-space: the image of F_{q^n}^m under F_q-linear coordinate maps.
class ISpace {
 public:
  using Evaluator = std::function<Elem(std::span<const Elem>)>;

  /// Spot-checks additivity and F_q-homogeneity of every evaluator on seeded
  /// random inputs; throws InvalidArgument when a counterexample turns up.
  static ISpace make(FieldPtr field, int num_vars, std::vector<Evaluator> coords, std::uint64_t seed = 1,
                     int trials = 64);

  /// The concrete order-three family as an I-space in three variables.
  static ISpace from_family(const SeqParams& params);

  const gf::Field& field() const { return *field_; }
  int num_vars() const { return num_vars_; }
  std::size_t ambient_dim() const { return coords_.size(); }

  std::vector<Elem> evaluate(std::span<const Elem> vars) const;
  /// Images of the unit vectors b_i e_v over the polynomial basis; spans the space.
  std::vector<std::vector<Elem>> spanning_set() const;
  /// F_q-dimension of the space.
  std::size_t dimension() const;

 private:
  ISpace(FieldPtr field, int num_vars, std::vector<Evaluator> coords)
      : field_(std::move(field)), num_vars_(num_vars), coords_(std::move(coords)) {}

  FieldPtr field_;
  int num_vars_;
  std::vector<Evaluator> coords_;
};

}  // namespace scatseq::useq
