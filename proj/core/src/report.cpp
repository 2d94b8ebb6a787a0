#include "scatseq/report.hpp"

#include <sstream>

namespace scatseq::report {

namespace {

std::string dec(const BigInt& v) { return to_decimal(v); }

Json codes(const std::vector<std::uint32_t>& v) {
  Json a = Json::array();
  for (auto c : v) a.push_back(c);
  return a;
}

Json triple_json(const equiv::Triple& t) { return Json::array({t[0].code, t[1].code, t[2].code}); }

void flatten_text(const Json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    }
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten_text(j[i], prefix + "." + std::to_string(i), os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

Json field_json(const gf::Field& f) {
  Json j;
  j["p"] = f.p();
  j["h"] = f.h();
  j["n"] = f.n();
  j["q"] = f.q();
  j["m1"] = codes(f.m1());
  j["m2"] = codes(f.m2());
  j["generator"] = f.generator().code;
  j["order"] = dec(f.order_big());
  return j;
}

Json params_json(const useq::SeqParams& p) {
  Json j;
  j["field"] = field_json(p.field());
  j["I"] = p.I();
  j["J"] = p.J();
  j["K"] = p.K();
  j["alpha"] = p.alpha().code;
  j["beta"] = p.beta().code;
  j["gamma"] = p.gamma().code;
  return j;
}

Json point_json(const useq::UPoint& point) {
  Json a = Json::array();
  for (auto e : point) a.push_back(e.code);
  return a;
}

Json to_json(const criteria::CriteriaReport& r) {
  Json j;
  j["a_exponent"] = dec(r.a_exponent);
  j["k_invariant"] = r.k_invariant.code;
  j["theorem1"] = r.theorem1;
  j["gcd_ijn"] = r.gcd_ijn;
  j["indecomposable_predicate"] = r.indecomposable_predicate;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const criteria::ExtensionCertificate& c) {
  Json j;
  j["m_max"] = c.m_max;
  j["a_exponent"] = dec(c.a_exponent);
  Json entries = Json::array();
  std::vector<int> good;
  for (const auto& e : c.entries) {
    Json x;
    x["m"] = e.m;
    x["gcd"] = dec(e.gcd);
    x["passes"] = e.passes;
    x["direct_checked"] = e.direct_checked;
    if (e.direct_checked) x["direct_not_power"] = e.direct_not_power;
    entries.push_back(std::move(x));
    if (e.passes) good.push_back(e.m);
  }
  j["good_extensions"] = good;
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const criteria::ClassLowerBound& b) {
  Json j;
  j["g3"] = dec(b.g3);
  j["g_a"] = dec(b.g_a);
  j["three_nh"] = dec(b.three_nh);
  j["raw"] = b.raw;
  j["reduced"] = dec(numerator(b.value)) + "/" + dec(denominator(b.value));
  j["floor"] = dec(b.floor);
  j["ceil"] = dec(b.ceil);
  j["notes"] = b.notes;
  return j;
}

Json to_json(const verify::OracleReport& r) {
  Json j;
  j["property"] = r.property;
  j["r"] = r.r;
  j["bound"] = r.bound;
  if (r.sample) {
    j["mode"] = {{"kind", "sampled"}, {"count", r.sample->count}, {"seed", r.sample->seed}};
  } else {
    j["mode"] = {{"kind", "exhaustive"}};
  }
  j["verdict"] = r.verdict;
  j["certified"] = r.certified;
  j["max_dim_found"] = r.max_dim_found;
  if (r.witness) {
    Json w;
    Json gens = Json::array();
    for (const auto& g : r.witness->generators) gens.push_back(point_json(g));
    w["generators"] = std::move(gens);
    if (r.witness->lambda) w["lambda"] = r.witness->lambda->code;
    if (!r.witness->intersection.empty()) {
      Json inter = Json::array();
      for (const auto& v : r.witness->intersection) inter.push_back(point_json(v));
      w["intersection"] = std::move(inter);
    }
    w["dim"] = r.witness->dim;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["points_visited"] = r.points_visited;
  j["membership_tests"] = r.membership_tests;
  j["dependent_skipped"] = r.dependent_skipped;
  j["assumptions"] = r.assumptions;
  return j;
}

Json to_json(const verify::TightnessResult& t) {
  Json j;
  j["dim"] = t.dim;
  j["ok"] = t.ok;
  Json gens = Json::array();
  for (const auto& g : t.generators) gens.push_back(point_json(g));
  j["generators"] = std::move(gens);
  return j;
}

Json to_json(const equiv::EquivWitness& w) {
  Json j;
  j["sigma_exponent"] = w.sigma_exponent;
  j["branch"] = w.branch;
  Json m = Json::array();
  for (const auto& row : w.m) {
    Json r = Json::array();
    for (auto e : row) r.push_back(e.code);
    m.push_back(std::move(r));
  }
  j["matrix"] = std::move(m);
  return j;
}

Json to_json(const equiv::EquivVerdict& v) {
  Json j;
  j["status"] = equiv::to_string(v.status);
  j["hypothesis"] = v.hypothesis;
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  Json table = Json::array();
  for (const auto& row : v.sigma_table) {
    Json r;
    r["e"] = row.e;
    r["k"] = Json::array({row.k[0].code, row.k[1].code, row.k[2].code});
    r["power"] = Json::array({row.power[0], row.power[1], row.power[2]});
    table.push_back(std::move(r));
  }
  j["sigma_table"] = std::move(table);
  return j;
}

Json to_json(const equiv::ClassificationReport& r) {
  Json j;
  j["p"] = r.p;
  j["h"] = r.h;
  j["n"] = r.n;
  j["I"] = r.I;
  j["J"] = r.J;
  if (r.universe.all) {
    j["universe"] = {{"kind", "all"}};
  } else {
    j["universe"] = {{"kind", "sample"}, {"count", r.universe.count}, {"seed", r.universe.seed}};
  }
  j["universe_size"] = r.universe_size;
  j["class_count"] = r.classes.size();
  Json classes = Json::array();
  for (const auto& c : r.classes) {
    classes.push_back({{"representative", triple_json(c.representative)}, {"size", c.size}});
  }
  j["classes"] = std::move(classes);
  j["prefilter_rejects"] = r.prefilter_rejects;
  j["equivalence_calls"] = r.equivalence_calls;
  j["lower_bound"] = to_json(r.lower_bound);
  return j;
}

std::string classification_csv(const equiv::ClassificationReport& r) {
  std::ostringstream os;
  os << "alpha,beta,gamma,size\n";
  for (const auto& c : r.classes) {
    os << c.representative[0].code << ',' << c.representative[1].code << ',' << c.representative[2].code << ','
       << c.size << '\n';
  }
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string to_text(const Json& j) {
  std::ostringstream os;
  flatten_text(j, "", os);
  return os.str();
}

}  // namespace scatseq::report
