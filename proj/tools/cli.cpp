#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "scatseq/criteria.hpp"
#include "scatseq/equiv.hpp"
#include "scatseq/report.hpp"
#include "scatseq/verify.hpp"

namespace scatseq::cli {

namespace fs = std::filesystem;
using report::Json;

namespace {

struct Options {
  std::uint32_t p = 2;
  int h = 1;
  int n = 3;
  int I = 1;
  int J = 2;
  std::string alpha = "1";
  std::string beta = "1";
  std::string gamma = "1";
  std::string lambda1 = "g^1";
  std::string lambda2 = "g^2";
  std::uint64_t seed = 0;
  std::uint64_t sample = 0;  // 0: exhaustive / full universe
  std::uint64_t budget = verify::kDefaultBudget;
  unsigned threads = 1;
  int bound = -1;  // -1: the command's default
  int m_max = 12;
  std::string format = "json";
  bool no_cache = false;
  int verbosity = 0;
  std::string results_dir;
};

struct Outcome {
  Json result;
  int code = kOk;
};

gf::Elem parse_elem(const gf::Field& f, const std::string& text) {
  try {
    if (text.rfind("g^", 0) == 0) {
      const std::string k = text.substr(2);
      if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) throw InvalidArgument("");
      return f.pow(f.generator(), BigInt(k));
    }
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) throw InvalidArgument("");
    return f.from_code(std::stoull(text));
  } catch (const std::exception&) {
    throw InvalidArgument("malformed field element '" + text + "' (expected a code below q^n or g^k)");
  }
}

gf::FieldPtr field_of(const Options& o) { return gf::make_field(o.p, o.h, o.n); }

useq::SeqParams params_of(const Options& o) {
  auto f = field_of(o);
  const auto& fr = *f;
  return useq::SeqParams::make(f, o.I, o.J, parse_elem(fr, o.alpha), parse_elem(fr, o.beta),
                               parse_elem(fr, o.gamma));
}

BigInt q_of(const Options& o) { return ipow(BigInt(o.p), static_cast<std::uint64_t>(o.h)); }

verify::OracleOptions oracle_options(const Options& o) { return {o.budget, o.threads}; }

std::optional<verify::SampleSpec> sample_of(const Options& o) {
  if (o.sample == 0) return std::nullopt;
  return verify::SampleSpec{o.sample, o.seed};
}

Json request_json(const std::string& command, const Options& o) {
  Json j;
  j["command"] = command;
  j["p"] = o.p;
  j["h"] = o.h;
  j["n"] = o.n;
  if (command != "field-info") {
    j["I"] = o.I;
    j["J"] = o.J;
  }
  if (command == "check" || command == "extensions" || command.rfind("verify", 0) == 0) {
    j["alpha"] = o.alpha;
    j["beta"] = o.beta;
    j["gamma"] = o.gamma;
  }
  if (command == "verify tightness") {
    j["lambda1"] = o.lambda1;
    j["lambda2"] = o.lambda2;
  }
  if (command == "verify evasive2" || command == "verify evasive3") j["bound"] = o.bound;
  if (command == "extensions") j["m_max"] = o.m_max;
  if (command == "classify" || command == "verify evasive2" || command == "verify evasive3") {
    j["sample"] = o.sample;
    j["seed"] = o.seed;
  }
  return j;
}

Outcome run(const std::string& command, const Options& o) {
  Outcome out;
  if (command == "field-info") {
    out.result = report::field_json(*field_of(o));
  } else if (command == "check") {
    const auto params = params_of(o);
    const BigInt q = q_of(o);
    Json j;
    j["params"] = report::params_json(params);
    j["order"] = to_decimal(params.field().order_big());
    j["q3k_minus_1"] = to_decimal(ipow(q, 3 * static_cast<std::uint64_t>(params.K())) - 1);
    j["criteria"] = report::to_json(criteria::make_report(params));
    j["lower_bound"] = report::to_json(criteria::class_lower_bound(q, o.n, o.I, o.J));
    out.result = std::move(j);
  } else if (command == "verify scattered") {
    const auto r = verify::scattered_oracle(params_of(o), oracle_options(o));
    out.result = {{"params", report::params_json(params_of(o))}, {"report", report::to_json(r)}};
    out.code = r.verdict ? kOk : kRefuted;
  } else if (command == "verify evasive2" || command == "verify evasive3") {
    const auto params = params_of(o);
    const int r = command == "verify evasive2" ? 2 : 3;
    const int bound = o.bound >= 0 ? o.bound : (r == 2 ? 2 * o.J : o.n + 2 * o.J);
    const auto rep = verify::evasive_oracle(params, r, bound, sample_of(o), oracle_options(o));
    out.result = {{"params", report::params_json(params)}, {"report", report::to_json(rep)}};
    out.code = rep.verdict ? kOk : kRefuted;
  } else if (command == "verify tightness") {
    const auto params = params_of(o);
    const auto t = verify::tightness_witness(params, parse_elem(params.field(), o.lambda1),
                                             parse_elem(params.field(), o.lambda2));
    out.result = {{"params", report::params_json(params)}, {"tightness", report::to_json(t)}};
    out.code = t.ok ? kOk : kRefuted;
  } else if (command == "extensions") {
    const auto params = params_of(o);
    const BigInt a = criteria::a_exponent(q_of(o), o.I, o.J);
    Json j;
    j["params"] = report::params_json(params);
    j["a_exponent"] = to_decimal(a);
    j["good_extensions"] = criteria::find_good_extensions(q_of(o), o.n, a, o.m_max);
    j["theorem1"] = criteria::theorem1_holds(params);
    j["certificate"] =
        criteria::theorem1_holds(params) ? report::to_json(criteria::exceptional_certificate(params, o.m_max)) : Json();
    out.result = std::move(j);
  } else if (command == "classify") {
    equiv::Universe u;
    u.all = o.sample == 0;
    u.count = o.sample;
    u.seed = o.seed;
    out.result = report::to_json(equiv::classify(field_of(o), o.I, o.J, u));
  } else if (command == "bound") {
    const BigInt q = q_of(o);
    out.result = {{"bound", report::to_json(criteria::class_lower_bound(q, o.n, o.I, o.J))},
                  {"scattered_triples", to_decimal(criteria::scattered_triple_count(q, o.n, o.I, o.J))}};
  } else {
    throw InvalidArgument("unknown command " + command);
  }
  return out;
}

std::string render(const Json& doc, const std::string& format) {
  if (format == "json") return report::dump(doc);
  if (format == "text") return report::to_text(doc);
  // csv: class table for classifications, otherwise key,value pairs
  std::ostringstream os;
  const Json& res = doc.at("result");
  if (res.contains("classes")) {
    os << "alpha,beta,gamma,size\n";
    for (const auto& c : res.at("classes")) {
      const auto& t = c.at("representative");
      os << t[0] << ',' << t[1] << ',' << t[2] << ',' << c.at("size") << '\n';
    }
    return os.str();
  }
  std::istringstream lines(report::to_text(doc));
  std::string line;
  os << "key,value\n";
  while (std::getline(lines, line)) {
    const auto pos = line.find(": ");
    std::string value = line.substr(pos + 2);
    if (value.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : value) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      value = quoted + "\"";
    }
    os << line.substr(0, pos) << ',' << value << '\n';
  }
  return os.str();
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << bytes;
  }
  fs::rename(tmp, path);
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Order-three scattered sequences: criteria, oracles and equivalence", "scatseq"};
  app.set_help_flag("--help", "print help");
  app.set_config("--config", "", "key=value file overriding defaults");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--p", o.p, "characteristic");
  app.add_option("--h", o.h, "q = p^h");
  app.add_option("--n", o.n, "extension degree of F_{q^n} over F_q");
  app.add_option("--I", o.I, "first Frobenius index");
  app.add_option("--J", o.J, "second Frobenius index");
  app.add_option("--alpha", o.alpha, "code or g^k");
  app.add_option("--beta", o.beta, "code or g^k");
  app.add_option("--gamma", o.gamma, "code or g^k");
  app.add_option("--seed", o.seed, "sampling seed");
  app.add_option("--sample", o.sample, "sample size (0: exhaustive)");
  app.add_option("--budget", o.budget, "work budget in membership-equivalent operations")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", o.threads, "worker cap")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--no-cache", o.no_cache, "recompute even if a cached report exists");
  app.add_option("--results-dir", o.results_dir, "results cache directory");
  app.add_flag("-v,--verbose", o.verbosity, "cache and timing diagnostics on stderr (repeatable)");

  std::string command;
  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& desc, const std::string& full) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    s->callback([&command, full] { command = full; });
    return s;
  };
  sub(&app, "field-info", "tower moduli, generator and order", "field-info");
  sub(&app, "check", "closed-form criteria report", "check");
  CLI::App* ver = app.add_subcommand("verify", "brute-force oracles");
  ver->fallthrough();
  ver->require_subcommand(1);
  sub(ver, "scattered", "lambda-fibre scatteredness oracle", "verify scattered");
  sub(ver, "evasive2", "(2, 2J)-evasiveness oracle", "verify evasive2")->add_option("--bound", o.bound);
  sub(ver, "evasive3", "(3, n+2J)-evasiveness oracle", "verify evasive3")->add_option("--bound", o.bound);
  CLI::App* tight = sub(ver, "tightness", "span dimension of the tightness construction", "verify tightness");
  tight->add_option("--lambda1", o.lambda1, "code or g^k");
  tight->add_option("--lambda2", o.lambda2, "code or g^k");
  sub(&app, "extensions", "good extension degrees and the embedded power check", "extensions")
      ->add_option("--m-max", o.m_max, "largest extension degree")
      ->check(CLI::PositiveNumber);
  sub(&app, "classify", "equivalence classes of coefficient triples", "classify");
  sub(&app, "bound", "class lower bound and scattered triple count", "bound");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (o.results_dir.empty()) {
    if (const char* env = std::getenv("SCATSEQ_RESULTS_DIR")) o.results_dir = env;
    else o.results_dir = "scatseq-results";
  }

  const Json request = request_json(command, o);
  const std::string key = hex64(fnv1a(request.dump()));
  const fs::path dir(o.results_dir);
  const fs::path report_path = dir / (key + ".json");
  const fs::path status_path = dir / (key + ".status");

  std::string doc_bytes;
  int code = kOk;
  bool cached = false;
  if (!o.no_cache) {
    auto doc = read_file(report_path);
    auto status = read_file(status_path);
    if (doc && status) {
      doc_bytes = *doc;
      code = std::atoi(status->c_str());
      cached = true;
      if (o.verbosity > 0) err << "cache hit: " << report_path.string() << "\n";
    }
  }
  if (!cached) {
    try {
      const auto t0 = std::chrono::steady_clock::now();
      Outcome res = run(command, o);
      if (o.verbosity > 0) {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        err << command << ": " << dt.count() << " s, exit " << res.code << "\n";
      }
      Json doc;
      doc["request"] = request;
      doc["result"] = std::move(res.result);
      doc_bytes = report::dump(doc);
      code = res.code;
    } catch (const InvalidArgument& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const BudgetExceeded& e) {
      err << "budget exceeded: " << e.what() << "\n";
      return kUsage;
    }
    try {
      fs::create_directories(dir);
      write_file(report_path, doc_bytes);
      write_file(status_path, std::to_string(code) + "\n");
    } catch (const std::exception& e) {
      err << "warning: results cache not written: " << e.what() << "\n";
    }
  }

  out << render(Json::parse(doc_bytes), o.format);
  return code;
}

}  // namespace scatseq::cli
