#pragma once

// Brute-force ground truth for the family: scatteredness by lambda-fibres,
// (r, m)_q-evasiveness by intersection dimensions, and the tightness
// construction showing 3-dimensional F_{q^n}-subspaces can meet U in
// dimension n.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scatseq/linalg.hpp"
#include "scatseq/useq.hpp"

namespace scatseq::verify {

using gf::Elem;
using useq::SeqParams;
using useq::UPoint;

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 32;

struct OracleOptions {
  std::uint64_t budget = kDefaultBudget;  // membership-equivalent operations
  unsigned threads = 1;
};

struct SampleSpec {
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

struct OracleWitness {
  std::vector<UPoint> generators;
  std::optional<Elem> lambda;      // scattered: lambda * generators[0] lies in U
  std::vector<UPoint> intersection; // evasive: F_q-basis of U meet <generators>
  int dim = 0;
};

struct OracleReport {
  std::string property;  // "scattered" or "evasive"
  int r = 1;
  int bound = 1;
  std::optional<SampleSpec> sample;  // empty: exhaustive
  bool verdict = true;               // no violation seen
  bool certified = true;             // false for sampled runs
  int max_dim_found = 0;
  std::optional<OracleWitness> witness;
  std::uint64_t points_visited = 0;  // points (scattered) or tuples (evasive) examined
  std::uint64_t membership_tests = 0;
  std::uint64_t dependent_skipped = 0;
  double elapsed_ms = 0;             // not part of serialized reports
  std::vector<std::string> assumptions;
};

/// For every nonzero u in U, W_u = {lambda : lambda u in U} must equal F_q.
/// Exhaustive; requires q^{3n} * q^n <= budget.
OracleReport scattered_oracle(const SeqParams& params, const OracleOptions& options = {});

/// Holds the check matrix of U and computes dim_{F_q}(U meet <h_1..h_r>_{F_{q^n}})
/// as rn minus the rank of the composite F_q-linear map.
class IntersectionCounter {
 public:
  explicit IntersectionCounter(const SeqParams& params);

  const linalg::CheckMatrix& check() const { return check_; }
  bool independent(std::span<const UPoint> gens) const;
  /// Assumes F_{q^n}-independent generators.
  int span_dim(std::span<const UPoint> gens) const;
  std::vector<UPoint> intersection_basis(std::span<const UPoint> gens) const;

 private:
  linalg::FqMatrix composite(std::span<const UPoint> gens) const;

  SeqParams params_;
  linalg::CheckMatrix check_;
};

/// Throws InvalidArgument unless 1 <= r <= 3 generators are F_{q^n}-independent.
int span_dim(const SeqParams& params, std::span<const UPoint> gens);

/// r in {1,2,3}; exhaustive over U-point tuples unless `sample` is given.
OracleReport evasive_oracle(const SeqParams& params, int r, int bound, std::optional<SampleSpec> sample = {},
                            const OracleOptions& options = {});

/// Re-verifies a refutation independently of the oracle that produced it.
bool recheck_witness(const SeqParams& params, const OracleReport& report);

Elem moore_determinant(const SeqParams& params, Elem lambda1, Elem lambda2);

struct TightnessResult {
  int dim = 0;
  bool ok = false;  // dim >= n
  std::array<UPoint, 3> generators{};
};

/// h1 = (1,0,0,1,1,0), h2, h3 the analogous points for lambda1, lambda2.
/// Throws InvalidArgument when the Moore determinant vanishes.
TightnessResult tightness_witness(const SeqParams& params, Elem lambda1, Elem lambda2);

}  // namespace scatseq::verify
