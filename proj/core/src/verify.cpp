#include "scatseq/verify.hpp"

#include <chrono>
#include <random>

#include "parallel.hpp"

namespace scatseq::verify {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

UPoint scale_point(const gf::Field& f, Elem lambda, const UPoint& u) {
  UPoint out;
  for (std::size_t c = 0; c < 6; ++c) out[c] = f.mul(lambda, u[c]);
  return out;
}

int log_q(std::uint64_t count, std::uint64_t q) {
  int d = 0;
  while (count >= q) {
    count /= q;
    ++d;
  }
  return d;
}

std::vector<std::vector<Elem>> as_rows(std::span<const UPoint> gens) {
  std::vector<std::vector<Elem>> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) rows.push_back(useq::to_vector(g));
  return rows;
}

struct Chunk {
  int max_dim = 0;
  std::uint64_t visited = 0;
  std::uint64_t tests = 0;
  std::uint64_t skipped = 0;
  std::optional<std::vector<std::uint64_t>> witness;  // tuple of point indices
  std::optional<Elem> lambda;
};

void merge_into(Chunk& acc, const Chunk& c) {
  acc.max_dim = std::max(acc.max_dim, c.max_dim);
  acc.visited += c.visited;
  acc.tests += c.tests;
  acc.skipped += c.skipped;
  if (!acc.witness && c.witness) {
    acc.witness = c.witness;
    acc.lambda = c.lambda;
  }
}

BigInt binomial(std::uint64_t m, int r) {
  BigInt out = 1;
  for (int i = 0; i < r; ++i) out = out * (m - i) / (i + 1);
  return out;
}

}  // namespace

// ----------------------------------------------------------- scattered oracle

OracleReport scattered_oracle(const SeqParams& params, const OracleOptions& options) {
  const auto start = Clock::now();
  const gf::Field& f = params.field();
  const std::uint64_t total = useq::point_count(params);
  const std::uint64_t q = f.q();
  const std::uint64_t size = f.size();
  if (BigInt(total) * size > options.budget) {
    throw BudgetExceeded("scattered oracle needs q^{3n} * q^n = " + to_decimal(BigInt(total) * size) +
                         " membership tests, over the budget of " + std::to_string(options.budget));
  }

  auto chunks = detail::run_chunks<Chunk>(total, 1024, options.threads, [&](std::uint64_t begin, std::uint64_t end) {
    Chunk c;
    for (std::uint64_t idx = std::max<std::uint64_t>(begin, 1); idx < end; ++idx) {
      const UPoint u = useq::point_at(params, idx);
      std::uint64_t fibre = q;  // F_q multiples always stay in U
      for (std::uint64_t l = q; l < size; ++l) {
        const Elem lambda{static_cast<std::uint32_t>(l)};
        ++c.tests;
        if (useq::membership(params, scale_point(f, lambda, u))) {
          ++fibre;
          if (!c.witness) {
            c.witness = std::vector<std::uint64_t>{idx};
            c.lambda = lambda;
          }
        }
      }
      ++c.visited;
      c.max_dim = std::max(c.max_dim, log_q(fibre, q));
    }
    return c;
  });

  Chunk acc;
  for (const auto& c : chunks) merge_into(acc, c);

  OracleReport report;
  report.property = "scattered";
  report.r = 1;
  report.bound = 1;
  report.verdict = !acc.witness.has_value();
  report.max_dim_found = acc.max_dim;
  report.points_visited = acc.visited;
  report.membership_tests = acc.tests;
  if (acc.witness) {
    OracleWitness w;
    w.generators = {useq::point_at(params, acc.witness->front())};
    w.lambda = acc.lambda;
    w.dim = acc.max_dim;
    report.witness = std::move(w);
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

// ------------------------------------------------------ intersection counter

IntersectionCounter::IntersectionCounter(const SeqParams& params) : params_(params) {
  std::vector<std::vector<Elem>> basis;
  for (const auto& b : useq::u_basis(params)) basis.push_back(useq::to_vector(b));
  check_ = linalg::check_matrix(params.field(), basis);
}

bool IntersectionCounter::independent(std::span<const UPoint> gens) const {
  return linalg::rank_ext(params_.field(), as_rows(gens)) == gens.size();
}

linalg::FqMatrix IntersectionCounter::composite(std::span<const UPoint> gens) const {
  const gf::Field& f = params_.field();
  const std::size_t n = static_cast<std::size_t>(f.n());
  const std::size_t rows = check_.h.rows();
  linalg::FqMatrix m(rows, gens.size() * n);
  std::uint64_t b = 1;
  for (std::size_t k = 0; k < n; ++k, b *= f.q()) {
    const Elem basis_elem{static_cast<std::uint32_t>(b)};
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const UPoint w = scale_point(f, basis_elem, gens[i]);
      const auto col = check_.h.apply(f.base(), linalg::flatten(f, w));
      for (std::size_t r = 0; r < rows; ++r) m(r, i * n + k) = col[r];
    }
  }
  return m;
}

int IntersectionCounter::span_dim(std::span<const UPoint> gens) const {
  const linalg::FqMatrix m = composite(gens);
  return static_cast<int>(m.cols() - linalg::rank(params_.field().base(), m));
}

std::vector<UPoint> IntersectionCounter::intersection_basis(std::span<const UPoint> gens) const {
  const gf::Field& f = params_.field();
  const std::size_t n = static_cast<std::size_t>(f.n());
  const auto rk = linalg::rank_kernel(f.base(), composite(gens));
  std::vector<UPoint> out;
  for (const auto& a : rk.kernel) {
    UPoint acc{};
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Elem coeff = f.from_coeffs(std::span<const std::uint32_t>(a).subspan(i * n, n));
      const UPoint term = scale_point(f, coeff, gens[i]);
      for (std::size_t c = 0; c < 6; ++c) acc[c] = f.add(acc[c], term[c]);
    }
    out.push_back(acc);
  }
  return out;
}

int span_dim(const SeqParams& params, std::span<const UPoint> gens) {
  if (gens.empty() || gens.size() > 3) throw InvalidArgument("span_dim takes between 1 and 3 generators");
  IntersectionCounter counter(params);
  if (!counter.independent(gens)) throw InvalidArgument("span_dim: generators are F_{q^n}-dependent");
  return counter.span_dim(gens);
}

// ------------------------------------------------------------ evasive oracle

OracleReport evasive_oracle(const SeqParams& params, int r, int bound, std::optional<SampleSpec> sample,
                            const OracleOptions& options) {
  if (r < 1 || r > 3) throw InvalidArgument("evasive_oracle: r must be 1, 2 or 3");
  const auto start = Clock::now();
  const gf::Field& f = params.field();
  const std::uint64_t total = useq::point_count(params);
  const std::uint64_t nonzero = total - 1;
  const std::uint64_t unit = static_cast<std::uint64_t>(r) * f.n() * 3 * f.n();

  const BigInt tuples = sample ? BigInt(sample->count) : binomial(nonzero, r);
  if (tuples * unit > options.budget) {
    throw BudgetExceeded("evasive oracle needs about " + to_decimal(tuples * unit) +
                         " operations, over the budget of " + std::to_string(options.budget) +
                         "; use sampling");
  }

  const IntersectionCounter counter(params);
  auto examine = [&](Chunk& c, const std::vector<std::uint64_t>& idx) {
    ++c.visited;
    std::array<UPoint, 3> pts;
    for (int i = 0; i < r; ++i) pts[i] = useq::point_at(params, idx[i]);
    const std::span<const UPoint> gens(pts.data(), static_cast<std::size_t>(r));
    if (!counter.independent(gens)) {
      ++c.skipped;
      return;
    }
    const int d = counter.span_dim(gens);
    c.max_dim = std::max(c.max_dim, d);
    if (d > bound && !c.witness) c.witness = idx;
  };

  std::vector<Chunk> chunks;
  if (sample) {
    std::mt19937_64 rng(sample->seed);
    std::vector<std::uint64_t> drawn(sample->count * r);
    for (auto& v : drawn) v = 1 + rng() % nonzero;
    chunks = detail::run_chunks<Chunk>(sample->count, 256, options.threads, [&](std::uint64_t b, std::uint64_t e) {
      Chunk c;
      std::vector<std::uint64_t> idx(r);
      for (std::uint64_t s = b; s < e; ++s) {
        for (int i = 0; i < r; ++i) idx[i] = drawn[s * r + i];
        examine(c, idx);
      }
      return c;
    });
  } else {
    // Chunks over the first index; later indices run above it.
    const std::uint64_t chunk = r == 1 ? 4096 : (r == 2 ? 8 : 1);
    chunks = detail::run_chunks<Chunk>(total, chunk, options.threads, [&](std::uint64_t b, std::uint64_t e) {
      Chunk c;
      std::vector<std::uint64_t> idx(r);
      for (std::uint64_t i = std::max<std::uint64_t>(b, 1); i < e; ++i) {
        idx[0] = i;
        if (r == 1) {
          examine(c, idx);
          continue;
        }
        for (std::uint64_t j = i + 1; j < total; ++j) {
          idx[1] = j;
          if (r == 2) {
            examine(c, idx);
            continue;
          }
          for (std::uint64_t k = j + 1; k < total; ++k) {
            idx[2] = k;
            examine(c, idx);
          }
        }
      }
      return c;
    });
  }

  Chunk acc;
  for (const auto& c : chunks) merge_into(acc, c);

  OracleReport report;
  report.property = "evasive";
  report.r = r;
  report.bound = bound;
  report.sample = sample;
  report.certified = !sample.has_value();
  report.verdict = !acc.witness.has_value();
  report.max_dim_found = acc.max_dim;
  report.points_visited = acc.visited;
  report.membership_tests = acc.visited * unit;
  report.dependent_skipped = acc.skipped;
  if (r == 2) {
    report.assumptions.push_back(
        "U-spanned pairs: complete for scattered U, since any 2-dimensional F_{q^n}-subspace meeting U in "
        "F_q-dimension >= 2 is spanned by two U-points");
  }
  if (r == 3) {
    report.assumptions.push_back(
        "U-spanned triples: only 3-dimensional F_{q^n}-subspaces spanned by three U-points are examined");
  }
  if (sample) report.assumptions.push_back("sampled run: absence of a violation is not a certificate");
  if (acc.witness) {
    OracleWitness w;
    for (auto idx : *acc.witness) w.generators.push_back(useq::point_at(params, idx));
    w.intersection = counter.intersection_basis(w.generators);
    w.dim = static_cast<int>(w.intersection.size());
    report.witness = std::move(w);
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

bool recheck_witness(const SeqParams& params, const OracleReport& report) {
  if (!report.witness) return false;
  const auto& w = *report.witness;
  const gf::Field& f = params.field();
  for (const auto& g : w.generators) {
    if (!useq::membership(params, g)) return false;
  }
  if (report.property == "scattered") {
    if (w.generators.size() != 1 || !w.lambda) return false;
    if (w.lambda->code < f.q()) return false;  // lambda must lie outside F_q
    if (w.generators.front() == UPoint{}) return false;
    return useq::membership(params, scale_point(f, *w.lambda, w.generators.front()));
  }
  // Every intersection vector lies in U and in the F_{q^n}-span of the generators,
  // and they are F_q-independent with the claimed count exceeding the bound.
  const auto gens = as_rows(w.generators);
  std::vector<linalg::FqVector> flat;
  for (const auto& v : w.intersection) {
    if (!useq::membership(params, v)) return false;
    const auto vec = useq::to_vector(v);
    if (!linalg::solve_ext(f, gens, vec)) return false;
    flat.push_back(linalg::flatten(f, vec));
  }
  if (flat.empty()) return false;
  const auto rk = linalg::rank(f.base(), linalg::FqMatrix::from_rows(flat, flat.front().size()));
  return static_cast<int>(rk) == w.dim && w.dim > report.bound;
}

// ---------------------------------------------------------------- tightness

Elem moore_determinant(const SeqParams& params, Elem lambda1, Elem lambda2) {
  const gf::Field& f = params.field();
  const int I = params.I(), J = params.J();
  std::vector<std::vector<Elem>> m{
      {gf::Field::one(), gf::Field::one(), gf::Field::one()},
      {lambda1, f.frob(lambda1, I), f.frob(lambda1, J)},
      {lambda2, f.frob(lambda2, I), f.frob(lambda2, J)},
  };
  return linalg::det_ext(f, std::move(m));
}

TightnessResult tightness_witness(const SeqParams& params, Elem lambda1, Elem lambda2) {
  if (moore_determinant(params, lambda1, lambda2) == gf::Field::zero()) {
    throw InvalidArgument("tightness_witness: the Moore determinant vanishes");
  }
  const auto zero = gf::Field::zero();
  TightnessResult out;
  out.generators = {useq::evaluate(params, gf::Field::one(), zero, zero), useq::evaluate(params, lambda1, zero, zero),
                    useq::evaluate(params, lambda2, zero, zero)};
  out.dim = span_dim(params, out.generators);
  out.ok = out.dim >= params.field().n();
  return out;
}

}  // namespace scatseq::verify
