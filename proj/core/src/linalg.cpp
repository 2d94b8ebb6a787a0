#include "scatseq/linalg.hpp"

#include <utility>

namespace scatseq::linalg {

FqMatrix FqMatrix::identity(std::size_t k) {
  FqMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = 1;
  return m;
}

FqMatrix FqMatrix::from_rows(std::span<const FqVector> rows, std::size_t cols) {
  FqMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

FqVector FqMatrix::apply(const gf::BaseField& fq, std::span<const std::uint32_t> v) const {
  if (v.size() != cols_) throw InvalidArgument("matrix-vector dimension mismatch");
  FqVector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint32_t acc = 0;
    const std::uint32_t* row = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (row[c] != 0 && v[c] != 0) acc = fq.add(acc, fq.mul(row[c], v[c]));
    }
    out[r] = acc;
  }
  return out;
}

FqVector flatten(const gf::Field& field, std::span<const Elem> v) {
  const auto n = static_cast<std::size_t>(field.n());
  const std::uint64_t q = field.q();
  FqVector out(v.size() * n);
  for (std::size_t c = 0; c < v.size(); ++c) {
    std::uint64_t code = v[c].code;
    for (std::size_t i = 0; i < n; ++i) {
      out[c * n + i] = static_cast<std::uint32_t>(code % q);
      code /= q;
    }
  }
  return out;
}

std::vector<Elem> unflatten(const gf::Field& field, std::span<const std::uint32_t> flat) {
  const auto n = static_cast<std::size_t>(field.n());
  if (flat.size() % n != 0) throw InvalidArgument("flattened length is not a multiple of n");
  std::vector<Elem> out(flat.size() / n);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = field.from_coeffs(flat.subspan(c * n, n));
  return out;
}

std::vector<std::size_t> rref(const gf::BaseField& fq, FqMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t col = 0; col < m.cols() && pr < m.rows(); ++col) {
    std::size_t sel = pr;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pr) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(pr, c));
    }
    const std::uint32_t inv = fq.inv(m(pr, col));
    if (inv != 1) {
      for (std::size_t c = col; c < m.cols(); ++c) m(pr, c) = fq.mul(m(pr, c), inv);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pr || m(r, col) == 0) continue;
      const std::uint32_t f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (m(pr, c) != 0) m(r, c) = fq.sub(m(r, c), fq.mul(f, m(pr, c)));
      }
    }
    pivots.push_back(col);
    ++pr;
  }
  return pivots;
}

std::size_t rank(const gf::BaseField& fq, FqMatrix m) { return rref(fq, m).size(); }

RankKernel rank_kernel(const gf::BaseField& fq, const FqMatrix& m) {
  FqMatrix r = m;
  const auto pivots = rref(fq, r);
  RankKernel out;
  out.rank = pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    FqVector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = fq.neg(r(i, free));
    out.kernel.push_back(std::move(v));
  }
  return out;
}

bool CheckMatrix::annihilates(const gf::Field& field, std::span<const Elem> v) const {
  const FqVector flat = flatten(field, v);
  for (auto c : h.apply(field.base(), flat)) {
    if (c != 0) return false;
  }
  return true;
}

CheckMatrix check_matrix(const gf::Field& field, std::span<const std::vector<Elem>> basis) {
  if (basis.empty()) throw InvalidArgument("empty basis");
  std::vector<FqVector> rows;
  rows.reserve(basis.size());
  for (const auto& b : basis) rows.push_back(flatten(field, b));
  const FqMatrix b = FqMatrix::from_rows(rows, rows.front().size());
  RankKernel rk = rank_kernel(field.base(), b);
  if (rk.rank != basis.size()) throw InvalidArgument("check_matrix: basis vectors are F_q-dependent");
  return CheckMatrix{FqMatrix::from_rows(rk.kernel, b.cols())};
}

namespace {

// Row reduction over F_{q^n}; returns the rank and leaves `m` in row echelon form.
std::size_t echelon_ext(const gf::Field& f, std::vector<std::vector<Elem>>& m, bool* swapped_odd = nullptr) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  std::size_t pr = 0;
  bool odd = false;
  for (std::size_t col = 0; col < cols && pr < m.size(); ++col) {
    std::size_t sel = pr;
    while (sel < m.size() && m[sel][col] == gf::Field::zero()) ++sel;
    if (sel == m.size()) continue;
    if (sel != pr) {
      std::swap(m[sel], m[pr]);
      odd = !odd;
    }
    const Elem inv = f.inv(m[pr][col]);
    for (std::size_t r = pr + 1; r < m.size(); ++r) {
      if (m[r][col] == gf::Field::zero()) continue;
      const Elem factor = f.mul(m[r][col], inv);
      for (std::size_t c = col; c < cols; ++c) m[r][c] = f.sub(m[r][c], f.mul(factor, m[pr][c]));
    }
    ++pr;
  }
  if (swapped_odd) *swapped_odd = odd;
  return pr;
}

}  // namespace

std::size_t rank_ext(const gf::Field& field, std::vector<std::vector<Elem>> rows) {
  return echelon_ext(field, rows);
}

std::optional<std::vector<Elem>> solve_ext(const gf::Field& field, std::span<const std::vector<Elem>> gens,
                                           std::span<const Elem> target) {
  const std::size_t r = gens.size();
  const std::size_t k = target.size();
  // Augmented system: k equations, r unknowns.
  std::vector<std::vector<Elem>> aug(k, std::vector<Elem>(r + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (gens[j].size() != k) throw InvalidArgument("solve_ext: dimension mismatch");
      aug[i][j] = gens[j][i];
    }
    aug[i][r] = target[i];
  }
  echelon_ext(field, aug);
  std::vector<Elem> sol(r, gf::Field::zero());
  for (std::size_t i = k; i-- > 0;) {
    std::size_t lead = 0;
    while (lead <= r && aug[i][lead] == gf::Field::zero()) ++lead;
    if (lead > r) continue;
    if (lead == r) return std::nullopt;
    Elem rhs = aug[i][r];
    for (std::size_t j = lead + 1; j < r; ++j) rhs = field.sub(rhs, field.mul(aug[i][j], sol[j]));
    sol[lead] = field.div(rhs, aug[i][lead]);
  }
  return sol;
}

Elem det_ext(const gf::Field& field, std::vector<std::vector<Elem>> m) {
  const std::size_t k = m.size();
  for (const auto& row : m) {
    if (row.size() != k) throw InvalidArgument("det_ext: matrix is not square");
  }
  bool odd = false;
  if (echelon_ext(field, m, &odd) < k) return gf::Field::zero();
  Elem d = gf::Field::one();
  for (std::size_t i = 0; i < k; ++i) d = field.mul(d, m[i][i]);
  return odd ? field.neg(d) : d;
}

}  // namespace scatseq::linalg
