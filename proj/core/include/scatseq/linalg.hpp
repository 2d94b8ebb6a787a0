#pragma once

// Exact linear algebra over F_q (flattened coordinates) and small dense
// systems over F_{q^n}.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scatseq/gf.hpp"

namespace scatseq::linalg {

using gf::Elem;
using FqVector = std::vector<std::uint32_t>;

/// Dense row-major matrix of F_q codes.
class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FqMatrix identity(std::size_t k);
  static FqMatrix from_rows(std::span<const FqVector> rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const std::uint32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  FqVector apply(const gf::BaseField& fq, std::span<const std::uint32_t> v) const;

  friend bool operator==(const FqMatrix&, const FqMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> data_;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<FqVector> kernel;  // basis of {v : M v = 0}
};

/// Coordinates of v in F_q^{kn}: coordinate c contributes entries c*n .. c*n+n-1.
FqVector flatten(const gf::Field& field, std::span<const Elem> v);
std::vector<Elem> unflatten(const gf::Field& field, std::span<const std::uint32_t> flat);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(const gf::BaseField& fq, FqMatrix& m);
std::size_t rank(const gf::BaseField& fq, FqMatrix m);
RankKernel rank_kernel(const gf::BaseField& fq, const FqMatrix& m);

/// H with ker(H) = F_q-span of the flattened basis vectors.
struct CheckMatrix {
  FqMatrix h;

  bool annihilates(const gf::Field& field, std::span<const Elem> v) const;
};

CheckMatrix check_matrix(const gf::Field& field, std::span<const std::vector<Elem>> basis);

/// Rank over F_{q^n} of the given row vectors.
std::size_t rank_ext(const gf::Field& field, std::vector<std::vector<Elem>> rows);

/// Coefficients c with sum_i c_i gens[i] = target, if any (over F_{q^n}).
std::optional<std::vector<Elem>> solve_ext(const gf::Field& field, std::span<const std::vector<Elem>> gens,
                                           std::span<const Elem> target);

/// Determinant over F_{q^n} of a square matrix.
Elem det_ext(const gf::Field& field, std::vector<std::vector<Elem>> m);

}  // namespace scatseq::linalg
