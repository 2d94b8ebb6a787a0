#pragma once

// GammaL(6, q^n)-equivalence of members of the family: the (I, J)
// obstruction, the three K_{i,sigma} power criteria, explicit witness
// matrices and classification of coefficient triples.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scatseq/criteria.hpp"
#include "scatseq/useq.hpp"

namespace scatseq::equiv {

using gf::Elem;
using useq::SeqParams;

enum class Status { equivalent, inequivalent, hypothesis_not_met };

std::string to_string(Status s);

struct SigmaRow {
  int e = 0;                      // sigma = x -> x^{p^e}
  std::array<Elem, 3> k{};        // K_{1,sigma}, K_{2,sigma}, K_{3,sigma}
  std::array<bool, 3> power{};    // each is a (q^{3K} - 1)-th power
};

using Matrix6 = std::array<std::array<Elem, 6>, 6>;

struct EquivWitness {
  int sigma_exponent = 0;
  int branch = 1;  // 1: diagonal block, 2 and 3: cyclic blocks
  Matrix6 m{};
};

struct EquivVerdict {
  Status status = Status::inequivalent;
  std::optional<EquivWitness> witness;
  std::vector<SigmaRow> sigma_table;
  std::string hypothesis;  // the failed hypothesis, or the one that decided the verdict
};

/// K_{i,sigma} for params1 = (alpha, beta, gamma) twisted by sigma and
/// params2 = (alpha-bar, beta-bar, gamma-bar). Throws on mismatched (p, h, n, I, J).
std::array<Elem, 3> k_sigma(const SeqParams& params1, const SeqParams& params2, int e);

/// Decides equivalence of U(params1) and U(params2) over the same field.
EquivVerdict equivalent(const SeqParams& params1, const SeqParams& params2);

/// Matrix M with u -> M sigma(u) mapping U(params1) onto U(params2). Requires
/// K_{branch,sigma} to be a (q^{3K} - 1)-th power; throws InvalidArgument
/// otherwise and std::logic_error if the relation chain fails to close.
EquivWitness build_witness(const SeqParams& params1, const SeqParams& params2, int e, int branch);

/// Checks invertibility of M and that M sigma(u) lies in U(params2) for every
/// basis point of U(params1) plus one pseudo-random point.
bool verify_witness(const EquivWitness& w, const SeqParams& params1, const SeqParams& params2,
                    std::string* diagnostic = nullptr);

using Triple = std::array<Elem, 3>;

struct Universe {
  bool all = true;
  std::uint64_t count = 0;  // sample size when !all
  std::uint64_t seed = 0;
};

/// Distinct triples of the universe, sorted lexicographically by code.
std::vector<Triple> universe_triples(const gf::Field& field, const Universe& universe);

struct ClassInfo {
  Triple representative{};  // lexicographically smallest member
  std::uint64_t size = 0;
};

struct ClassificationReport {
  std::uint32_t p = 0;
  int h = 0, n = 0, I = 0, J = 0;
  Universe universe;
  std::uint64_t universe_size = 0;
  std::vector<ClassInfo> classes;
  std::vector<std::uint32_t> class_of;  // class index per universe triple, in sorted order
  std::uint64_t prefilter_rejects = 0;
  std::uint64_t equivalence_calls = 0;
  criteria::ClassLowerBound lower_bound;
};

inline constexpr std::uint64_t kMaxUniverse = std::uint64_t{1} << 22;

/// Requires 2J < n. Each triple is compared against the current class
/// representatives in order; a dlog-residue filter rejects most pairs and
/// every acceptance is confirmed by `equivalent`.
ClassificationReport classify(const gf::FieldPtr& field, int I, int J, const Universe& universe,
                              std::uint64_t max_universe = kMaxUniverse);

}  // namespace scatseq::equiv
