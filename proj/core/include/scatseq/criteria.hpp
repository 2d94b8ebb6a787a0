#pragma once

// Closed-form criteria on the order-three family and the counting formulas
// for its equivalence classes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scatseq/bigint.hpp"
#include "scatseq/useq.hpp"

namespace scatseq::criteria {

using gf::Elem;
using useq::SeqParams;

/// A = q^{2K} + q^K + 1 with K = J - I.
BigInt a_exponent(const BigInt& q, int I, int J);

/// alpha * gamma^{q^K} * beta^{q^K + 1}.
Elem k_invariant(const SeqParams& params);

/// gcd(I, J, n) = 1 and k_invariant is not an A-th power. Sufficient for
/// scatteredness, not necessary; the brute-force oracle is the ground truth.
bool theorem1_holds(const SeqParams& params);

/// (q^{nm} - 1) / (q^n - 1) = 1 + q^n + ... + q^{n(m-1)}.
BigInt c_value(const BigInt& q, int n, int m);

/// All m in [1, m_max] with gcd(A, C_{n,m}) = 1, ascending. Requires gcd(q, A) = 1.
std::vector<int> find_good_extensions(const BigInt& q, int n, const BigInt& a, int m_max);

/// theorem1_holds and 4J < n - 2.
bool indecomposable_predicate(const SeqParams& params);

struct CriteriaReport {
  BigInt a_exponent;
  Elem k_invariant;
  bool theorem1 = false;
  int gcd_ijn = 0;
  bool indecomposable_predicate = false;
  std::vector<std::string> notes;
};

CriteriaReport make_report(const SeqParams& params);

struct ExtensionEntry {
  int m = 0;
  BigInt gcd;
  bool passes = false;           // gcd == 1
  bool direct_checked = false;   // the extension field fit the size budget
  bool direct_not_power = false; // embedded k_invariant is not an A-th power upstairs
};

struct ExtensionCertificate {
  int m_max = 0;
  BigInt a_exponent;
  std::vector<ExtensionEntry> entries;
};

/// Requires theorem1_holds(params). Lists every m <= m_max with its gcd
/// verdict and, when q^{nm} <= direct_budget, the embedded power test.
ExtensionCertificate exceptional_certificate(const SeqParams& params, int m_max,
                                             std::uint64_t direct_budget = std::uint64_t{1} << 24);

struct ClassLowerBound {
  BigInt g3;         // gcd(q^{3K} - 1, q^n - 1)
  BigInt g_a;        // gcd(A, q^n - 1)
  BigInt three_nh;   // 3 n h, h the degree of F_q over F_p
  BigInt numerator;  // g3 * g_a - g3, over denominator g_a * 3nh
  BigInt denominator;
  BigRational value;
  BigInt floor;
  BigInt ceil;
  std::string raw;   // unreduced "a/b" whenever g_a divides g3
  std::vector<std::string> notes;
};

/// (1 / 3nh) * (g3 - g3 / g_a), exactly. q must be a prime power.
ClassLowerBound class_lower_bound(const BigInt& q, int n, int I, int J);

/// (q^n - 1)^3 * (1 - 1 / gcd(A, q^n - 1)).
BigInt scattered_triple_count(const BigInt& q, int n, int I, int J);

/// Decomposes a prime power q = p^h; nullopt if q is not one.
std::optional<std::pair<std::uint64_t, int>> prime_power(const BigInt& q);

}  // namespace scatseq::criteria
