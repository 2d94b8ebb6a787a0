#include "scatseq/useq.hpp"

#include <numeric>
#include <random>

#include "scatseq/linalg.hpp"

namespace scatseq::useq {

SeqParams SeqParams::make(FieldPtr field, int I, int J, Elem alpha, Elem beta, Elem gamma) {
  if (!field) throw InvalidArgument("null field context");
  if (I < 0 || I >= J || J >= field->n()) {
    throw InvalidArgument("indices must satisfy 0 <= I < J < n (got I=" + std::to_string(I) +
                          ", J=" + std::to_string(J) + ", n=" + std::to_string(field->n()) + ")");
  }
  for (const Elem e : {alpha, beta, gamma}) {
    if (e.code == 0) throw InvalidArgument("alpha, beta, gamma must be nonzero");
    if (e.code >= field->size()) throw InvalidArgument("coefficient code out of range");
  }
  return SeqParams(std::move(field), I, J, alpha, beta, gamma);
}

int SeqParams::gcd_ijn() const { return std::gcd(std::gcd(i_, j_), field_->n()); }

std::vector<std::string> SeqParams::warnings() const {
  std::vector<std::string> out;
  if (gcd_ijn() != 1) {
    out.push_back("gcd(I, J, n) = " + std::to_string(gcd_ijn()) +
                  " != 1: the scatteredness criterion does not apply");
  }
  return out;
}

UPoint evaluate(const SeqParams& params, Elem x, Elem y, Elem z) {
  const gf::Field& f = params.field();
  const int I = params.I(), J = params.J();
  return UPoint{x,
                y,
                z,
                f.add(f.frob(x, I), f.mul(params.alpha(), f.frob(y, J))),
                f.add(f.frob(x, J), f.mul(params.beta(), f.frob(z, I))),
                f.add(f.frob(y, I), f.mul(params.gamma(), f.frob(z, J)))};
}

bool membership(const SeqParams& params, const UPoint& v) {
  const gf::Field& f = params.field();
  const int I = params.I(), J = params.J();
  if (v[3] != f.add(f.frob(v[0], I), f.mul(params.alpha(), f.frob(v[1], J)))) return false;
  if (v[4] != f.add(f.frob(v[0], J), f.mul(params.beta(), f.frob(v[2], I)))) return false;
  return v[5] == f.add(f.frob(v[1], I), f.mul(params.gamma(), f.frob(v[2], J)));
}

std::vector<UPoint> u_basis(const SeqParams& params) {
  const gf::Field& f = params.field();
  const auto zero = gf::Field::zero();
  std::vector<UPoint> out;
  out.reserve(3 * static_cast<std::size_t>(f.n()));
  for (int slot = 0; slot < 3; ++slot) {
    std::uint64_t b = 1;
    for (int i = 0; i < f.n(); ++i, b *= f.q()) {
      const Elem e{static_cast<std::uint32_t>(b)};
      out.push_back(evaluate(params, slot == 0 ? e : zero, slot == 1 ? e : zero, slot == 2 ? e : zero));
    }
  }
  return out;
}

std::uint64_t point_count(const SeqParams& params) {
  const std::uint64_t s = params.field().size();
  if (s > (std::uint64_t{1} << 21)) throw BudgetExceeded("q^{3n} points do not fit a 64-bit index");
  return s * s * s;
}

UPoint point_at(const SeqParams& params, std::uint64_t index) {
  const std::uint64_t s = params.field().size();
  const Elem x{static_cast<std::uint32_t>(index % s)};
  const Elem y{static_cast<std::uint32_t>((index / s) % s)};
  const Elem z{static_cast<std::uint32_t>(index / (s * s))};
  return evaluate(params, x, y, z);
}

std::vector<Elem> to_vector(const UPoint& p) { return {p.begin(), p.end()}; }

// ------------------------------------------------------------------ ISpace

ISpace ISpace::make(FieldPtr field, int num_vars, std::vector<Evaluator> coords, std::uint64_t seed, int trials) {
  if (!field) throw InvalidArgument("null field context");
  if (num_vars < 1) throw InvalidArgument("an I-space needs at least one variable");
  if (coords.empty()) throw InvalidArgument("an I-space needs at least one coordinate");
  const gf::Field& f = *field;
  std::mt19937_64 rng(seed);
  auto draw = [&] { return Elem{static_cast<std::uint32_t>(rng() % f.size())}; };
  auto draw_scalar = [&] { return static_cast<std::uint32_t>(rng() % f.q()); };

  std::vector<Elem> u(num_vars), v(num_vars), w(num_vars);
  for (int t = 0; t < trials; ++t) {
    const std::uint32_t a = draw_scalar();
    for (int i = 0; i < num_vars; ++i) {
      u[i] = draw();
      v[i] = draw();
      w[i] = f.add(f.scale(a, u[i]), v[i]);
    }
    for (std::size_t c = 0; c < coords.size(); ++c) {
      const Elem lhs = coords[c](w);
      const Elem rhs = f.add(f.scale(a, coords[c](u)), coords[c](v));
      if (lhs != rhs) {
        throw InvalidArgument("coordinate evaluator " + std::to_string(c) + " is not F_q-linear");
      }
    }
  }
  return ISpace(std::move(field), num_vars, std::move(coords));
}

ISpace ISpace::from_family(const SeqParams& params) {
  auto p = std::make_shared<const SeqParams>(params);
  std::vector<Evaluator> coords;
  for (int c = 0; c < 6; ++c) {
    coords.emplace_back([p, c](std::span<const Elem> v) { return useq::evaluate(*p, v[0], v[1], v[2])[c]; });
  }
  return make(params.field_ptr(), 3, std::move(coords));
}

std::vector<Elem> ISpace::evaluate(std::span<const Elem> vars) const {
  if (vars.size() != static_cast<std::size_t>(num_vars_)) throw InvalidArgument("wrong number of variables");
  std::vector<Elem> out(coords_.size());
  for (std::size_t c = 0; c < coords_.size(); ++c) out[c] = coords_[c](vars);
  return out;
}

std::vector<std::vector<Elem>> ISpace::spanning_set() const {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> vars(num_vars_, gf::Field::zero());
  for (int v = 0; v < num_vars_; ++v) {
    std::uint64_t b = 1;
    for (int i = 0; i < field_->n(); ++i, b *= field_->q()) {
      vars[v] = Elem{static_cast<std::uint32_t>(b)};
      out.push_back(evaluate(vars));
    }
    vars[v] = gf::Field::zero();
  }
  return out;
}

std::size_t ISpace::dimension() const {
  const auto gens = spanning_set();
  std::vector<linalg::FqVector> rows;
  for (const auto& g : gens) rows.push_back(linalg::flatten(*field_, g));
  return linalg::rank(field_->base(), linalg::FqMatrix::from_rows(rows, rows.front().size()));
}

}  // namespace scatseq::useq
