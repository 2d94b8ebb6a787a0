#include "scatseq/equiv.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "scatseq/linalg.hpp"

namespace scatseq::equiv {

namespace {

void require_same_field(const SeqParams& a, const SeqParams& b) {
  if (!a.field().same_as(b.field())) throw InvalidArgument("equivalence requires parameters over the same field");
}

void require_same_family(const SeqParams& a, const SeqParams& b) {
  require_same_field(a, b);
  if (a.I() != b.I() || a.J() != b.J()) throw InvalidArgument("k_sigma requires equal (I, J)");
}

void require_sigma(const gf::Field& f, int e) {
  if (e < 0 || e >= f.h() * f.n()) throw InvalidArgument("sigma exponent must lie in [0, hn)");
}

BigInt power_exponent(const SeqParams& p) { return ipow(p.field().q(), 3 * static_cast<std::uint64_t>(p.K())) - 1; }

// Smallest d >= 0 with t*d = l (mod m), if any.
std::optional<std::uint64_t> solve_linear(std::uint64_t t, std::uint64_t l, std::uint64_t m) {
  t %= m;
  l %= m;
  const std::uint64_t g = gcd_u64(t, m);
  if (g == 0) return l == 0 ? std::optional<std::uint64_t>(0) : std::nullopt;
  if (l % g != 0) return std::nullopt;
  const std::uint64_t mg = m / g;
  if (mg == 1) return 0;
  // inverse of t/g modulo m/g by extended Euclid
  __int128 r0 = mg, r1 = (t / g) % mg, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const __int128 qt = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - qt * s1);
  }
  __int128 inv = s0 % static_cast<__int128>(mg);
  if (inv < 0) inv += mg;
  return mulmod_u64(l / g, static_cast<std::uint64_t>(inv), mg);
}

struct Position {
  int r, c;
};

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::equivalent: return "equivalent";
    case Status::inequivalent: return "inequivalent";
    case Status::hypothesis_not_met: return "hypothesis-not-met";
  }
  return "unknown";
}

std::array<Elem, 3> k_sigma(const SeqParams& params1, const SeqParams& params2, int e) {
  require_same_family(params1, params2);
  const gf::Field& f = params1.field();
  require_sigma(f, e);
  const int K = params1.K();
  const Elem as = f.frob_p(params1.alpha(), e);
  const Elem bs = f.frob_p(params1.beta(), e);
  const Elem gs = f.frob_p(params1.gamma(), e);
  const Elem ab = params2.alpha(), bb = params2.beta(), gb = params2.gamma();
  auto t1 = [&](Elem v) { return f.frob(v, K); };
  auto t2 = [&](Elem v) { return f.frob(v, 2 * K); };

  const Elem k1 = f.mul(f.mul(f.div(ab, as), t1(f.div(gb, gs))), t2(f.div(bs, bb)));
  const Elem k2 = f.mul(f.mul(f.div(gb, as), t1(f.inv(f.mul(gs, bb)))), t2(f.mul(ab, bs)));
  const Elem k3 = f.mul(f.mul(f.inv(f.mul(as, bb)), t1(f.div(ab, gs))), t2(f.mul(gb, bs)));
  return {k1, k2, k3};
}

EquivWitness build_witness(const SeqParams& params1, const SeqParams& params2, int e, int branch) {
  require_same_family(params1, params2);
  const gf::Field& f = params1.field();
  require_sigma(f, e);
  if (branch < 1 || branch > 3) throw InvalidArgument("branch must be 1, 2 or 3");
  const auto ks = k_sigma(params1, params2, e);
  if (!f.is_dth_power(ks[branch - 1], power_exponent(params1))) {
    throw InvalidArgument("build_witness: K_" + std::to_string(branch) + " is not a (q^{3K}-1)-th power");
  }

  const int I = params1.I(), J = params1.J(), K = params1.K();
  const Elem A = f.frob_p(params1.alpha(), e);
  const Elem B = f.frob_p(params1.beta(), e);
  const Elem G = f.frob_p(params1.gamma(), e);
  const Elem ab = params2.alpha(), bb = params2.beta(), gb = params2.gamma();
  auto back = [&](Elem v) { return f.frob(v, -I); };

  // v1 = c1 v2^{q^K}, v2 = c2 v3^{q^K}, v3 = c3 v1^{q^K}
  std::array<Elem, 3> c;
  std::array<Position, 3> pos;
  switch (branch) {
    case 1:
      c = {back(f.div(ab, A)), back(f.div(gb, G)), back(f.div(B, bb))};
      pos = {{{0, 0}, {1, 1}, {2, 2}}};
      break;
    case 2:
      c = {back(f.div(gb, A)), back(f.inv(f.mul(G, bb))), back(f.mul(B, ab))};
      pos = {{{1, 0}, {2, 1}, {0, 2}}};
      break;
    default:
      c = {back(f.inv(f.mul(A, bb))), back(f.div(ab, G)), back(f.mul(B, gb))};
      pos = {{{2, 0}, {0, 1}, {1, 2}}};
      break;
  }
  const Elem closure = f.mul(f.mul(c[0], f.frob(c[1], K)), f.frob(c[2], 2 * K));

  // v1^{q^{3K} - 1} = closure^{-1}
  const std::uint64_t N = f.order();
  const std::uint64_t t = mod_u64(power_exponent(params1), N);
  const auto d = solve_linear(t, f.dlog(f.inv(closure)), N);
  if (!d) throw std::logic_error("build_witness: closure constant has no root despite the power test");
  const Elem v1 = f.pow(f.generator(), *d);
  const Elem v3 = f.mul(c[2], f.frob(v1, K));
  const Elem v2 = f.mul(c[1], f.frob(v3, K));
  if (f.mul(c[0], f.frob(v2, K)) != v1) throw std::logic_error("build_witness: relation chain does not close");

  EquivWitness w;
  w.sigma_exponent = e;
  w.branch = branch;
  for (auto& row : w.m) row.fill(gf::Field::zero());
  const std::array<Elem, 3> v{v1, v2, v3};
  for (int i = 0; i < 3; ++i) w.m[pos[i].r][pos[i].c] = v[i];
  switch (branch) {
    case 1:
      w.m[3][3] = f.frob(v1, I);
      w.m[4][4] = f.frob(v1, J);
      w.m[5][5] = f.frob(v2, I);
      break;
    case 2:
      w.m[3][4] = f.mul(ab, f.frob(v1, J));
      w.m[4][5] = f.mul(bb, f.frob(v2, I));
      w.m[5][3] = f.frob(v1, I);
      break;
    default:
      w.m[3][5] = f.frob(v2, I);
      w.m[4][3] = f.mul(bb, f.frob(v1, I));
      w.m[5][4] = f.mul(gb, f.frob(v1, J));
      break;
  }

  std::string diag;
  if (!verify_witness(w, params1, params2, &diag)) throw std::logic_error("build_witness: " + diag);
  return w;
}

bool verify_witness(const EquivWitness& w, const SeqParams& params1, const SeqParams& params2,
                    std::string* diagnostic) {
  auto fail = [&](std::string msg) {
    if (diagnostic) *diagnostic = std::move(msg);
    return false;
  };
  if (!params1.field().same_as(params2.field())) return fail("parameters live over different fields");
  const gf::Field& f = params1.field();
  if (w.sigma_exponent < 0 || w.sigma_exponent >= f.h() * f.n()) return fail("sigma exponent out of range");

  std::vector<std::vector<Elem>> rows(6, std::vector<Elem>(6));
  for (int r = 0; r < 6; ++r) std::copy(w.m[r].begin(), w.m[r].end(), rows[r].begin());
  if (linalg::det_ext(f, rows) == gf::Field::zero()) return fail("matrix is singular");

  auto points = useq::u_basis(params1);
  std::mt19937_64 rng(0x5eedULL);
  auto draw = [&] { return Elem{static_cast<std::uint32_t>(rng() % f.size())}; };
  const Elem x = draw(), y = draw(), z = draw();
  points.push_back(useq::evaluate(params1, x, y, z));

  for (std::size_t k = 0; k < points.size(); ++k) {
    useq::UPoint s;
    for (int c = 0; c < 6; ++c) s[c] = f.frob_p(points[k][c], w.sigma_exponent);
    useq::UPoint image{};
    for (int r = 0; r < 6; ++r) {
      Elem acc = gf::Field::zero();
      for (int c = 0; c < 6; ++c) acc = f.add(acc, f.mul(w.m[r][c], s[c]));
      image[r] = acc;
    }
    if (!useq::membership(params2, image)) {
      return fail(k + 1 == points.size() ? "image of the random check point leaves the target"
                                         : "image of basis point " + std::to_string(k) + " leaves the target");
    }
  }
  if (diagnostic) diagnostic->clear();
  return true;
}

EquivVerdict equivalent(const SeqParams& params1, const SeqParams& params2) {
  require_same_field(params1, params2);
  const gf::Field& f = params1.field();
  const int n = f.n();
  EquivVerdict v;

  if (params1.I() != params2.I() || params1.J() != params2.J()) {
    const int I = params1.I(), J = params1.J(), I0 = params2.I(), J0 = params2.J();
    v.hypothesis = "max(I+J, J+J0, I0+J0) < n";
    v.status = std::max({I + J, J + J0, I0 + J0}) < n ? Status::inequivalent : Status::hypothesis_not_met;
    return v;
  }
  v.hypothesis = "J < n/2";
  if (2 * params1.J() >= n) {
    v.status = Status::hypothesis_not_met;
    return v;
  }

  const BigInt d = power_exponent(params1);
  std::optional<std::pair<int, int>> hit;
  for (int e = 0; e < f.h() * n; ++e) {
    SigmaRow row;
    row.e = e;
    row.k = k_sigma(params1, params2, e);
    for (int i = 0; i < 3; ++i) {
      row.power[i] = f.is_dth_power(row.k[i], d);
      if (row.power[i] && !hit) hit = std::make_pair(e, i + 1);
    }
    v.sigma_table.push_back(row);
  }
  if (hit) {
    v.status = Status::equivalent;
    v.witness = build_witness(params1, params2, hit->first, hit->second);
  } else {
    v.status = Status::inequivalent;
  }
  return v;
}

std::vector<Triple> universe_triples(const gf::Field& field, const Universe& universe) {
  const std::uint64_t N = field.order();
  const BigInt size = BigInt(N) * N * N;
  std::vector<Triple> out;
  if (universe.all) {
    if (size > BigInt(kMaxUniverse) * 64) throw BudgetExceeded("triple universe too large to enumerate; sample it");
    out.reserve(static_cast<std::size_t>(N * N * N));
    for (std::uint64_t a = 1; a <= N; ++a)
      for (std::uint64_t b = 1; b <= N; ++b)
        for (std::uint64_t c = 1; c <= N; ++c)
          out.push_back({Elem{static_cast<std::uint32_t>(a)}, Elem{static_cast<std::uint32_t>(b)},
                         Elem{static_cast<std::uint32_t>(c)}});
    return out;
  }
  if (BigInt(universe.count) > size) throw InvalidArgument("sample size exceeds the number of triples");
  std::mt19937_64 rng(universe.seed);
  std::set<Triple> seen;
  while (seen.size() < universe.count) {
    Triple t;
    for (auto& x : t) x = Elem{static_cast<std::uint32_t>(1 + rng() % N)};
    seen.insert(t);
  }
  return {seen.begin(), seen.end()};
}

ClassificationReport classify(const gf::FieldPtr& field, int I, int J, const Universe& universe,
                              std::uint64_t max_universe) {
  const gf::Field& f = *field;
  const int n = f.n();
  if (I < 0 || I >= J || J >= n) throw InvalidArgument("indices must satisfy 0 <= I < J < n");
  if (2 * J >= n) throw InvalidArgument("classification requires J < n/2");

  ClassificationReport rep;
  rep.p = f.p();
  rep.h = f.h();
  rep.n = n;
  rep.I = I;
  rep.J = J;
  rep.universe = universe;
  rep.lower_bound = criteria::class_lower_bound(f.q(), n, I, J);
  const std::uint64_t N = f.order();
  if (universe.all && BigInt(N) * N * N > max_universe) {
    throw BudgetExceeded("triple universe of size " + to_decimal(BigInt(N) * N * N) + " exceeds the limit " +
                         std::to_string(max_universe) + "; sample it");
  }
  if (!universe.all && universe.count > max_universe) throw BudgetExceeded("sample size exceeds the limit");

  const auto triples = universe_triples(f, universe);
  rep.universe_size = triples.size();
  rep.class_of.assign(triples.size(), 0);

  const int K = J - I;
  const std::uint64_t g3 = gcd(ipow(f.q(), 3 * static_cast<std::uint64_t>(K)) - 1, BigInt(N)).convert_to<std::uint64_t>();
  const std::uint64_t qk = powmod_u64(f.q(), K, g3);
  const std::uint64_t qk2 = mulmod_u64(qk, qk, g3);
  std::vector<std::uint64_t> sig;
  for (int e = 0; e < f.h() * n; ++e) sig.push_back(powmod_u64(f.p(), e, g3));

  std::unordered_map<std::uint32_t, std::uint64_t> log_cache;
  auto lg = [&](Elem x) {
    auto it = log_cache.find(x.code);
    if (it != log_cache.end()) return it->second;
    const std::uint64_t v = f.dlog(x) % g3;
    log_cache.emplace(x.code, v);
    return v;
  };
  using Logs = std::array<std::uint64_t, 3>;
  auto logs_of = [&](const Triple& t) { return Logs{lg(t[0]), lg(t[1]), lg(t[2])}; };

  auto add = [&](std::uint64_t a, std::uint64_t b) { return (a + b) % g3; };
  auto sub = [&](std::uint64_t a, std::uint64_t b) { return (a + g3 - b % g3) % g3; };
  auto mul = [&](std::uint64_t a, std::uint64_t b) { return mulmod_u64(a, b, g3); };

  // Some K_{i,sigma}(x as params1, y as params2) has dlog divisible by g3.
  auto may_match = [&](const Logs& x, const Logs& y) {
    if (g3 == 1) return true;
    const auto [la1, lb1, lc1] = x;
    const auto [la2, lb2, lc2] = y;
    for (std::uint64_t s : sig) {
      const std::uint64_t sa = mul(s, la1), sb = mul(s, lb1), sc = mul(s, lc1);
      const std::uint64_t l1 = add(add(sub(la2, sa), mul(qk, sub(lc2, sc))), mul(qk2, sub(sb, lb2)));
      const std::uint64_t l2 = add(sub(sub(lc2, sa), mul(qk, add(sc, lb2))), mul(qk2, add(la2, sb)));
      const std::uint64_t l3 = add(sub(0, add(sa, lb2)), add(mul(qk, sub(la2, sc)), mul(qk2, add(lc2, sb))));
      if (l1 == 0 || l2 == 0 || l3 == 0) return true;
    }
    return false;
  };

  std::vector<Logs> rep_logs;
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const Logs lt = logs_of(triples[t]);
    bool placed = false;
    for (std::size_t c = 0; c < rep.classes.size(); ++c) {
      if (!may_match(rep_logs[c], lt)) {
        ++rep.prefilter_rejects;
        continue;
      }
      const auto& r = rep.classes[c].representative;
      const auto p1 = SeqParams::make(field, I, J, r[0], r[1], r[2]);
      const auto p2 = SeqParams::make(field, I, J, triples[t][0], triples[t][1], triples[t][2]);
      ++rep.equivalence_calls;
      if (equivalent(p1, p2).status != Status::equivalent) {
        throw std::logic_error("classify: residue filter and power criterion disagree");
      }
      ++rep.classes[c].size;
      rep.class_of[t] = static_cast<std::uint32_t>(c);
      placed = true;
      break;
    }
    if (!placed) {
      rep.class_of[t] = static_cast<std::uint32_t>(rep.classes.size());
      rep.classes.push_back({triples[t], 1});
      rep_logs.push_back(lt);
    }
  }
  return rep;
}

}  // namespace scatseq::equiv
