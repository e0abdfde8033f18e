#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "anomaly/finite_cohomology.hpp"
#include "anomaly/lattice.hpp"
#include "anomaly/random.hpp"
#include "anomaly/torus_cocycle.hpp"

namespace anomaly::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "anomaly-forge";
inline constexpr const char* kToolVersion = "1.0.0";

enum class Command { analyze, verify, decompose, restrict, classify, selftest };
enum class Format { json, markdown };

enum ExitCode : int { exit_pass = 0, exit_check_failed = 1, exit_usage = 2, exit_domain = 3 };

/// Malformed input (bad JSON, unknown option values). Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const char* to_string(Command c) {
  switch (c) {
    case Command::analyze: return "analyze";
    case Command::verify: return "verify";
    case Command::decompose: return "decompose";
    case Command::restrict: return "restrict";
    case Command::classify: return "classify";
    case Command::selftest: return "selftest";
  }
  return "?";
}

inline Command parse_command(const std::string& s) {
  for (Command c : {Command::analyze, Command::verify, Command::decompose, Command::restrict, Command::classify,
                    Command::selftest})
    if (s == to_string(c)) return c;
  throw UsageError("unknown command '" + s + "'");
}

inline const char* to_string(Format f) { return f == Format::json ? "json" : "markdown"; }

struct JobSpec {
  Command command = Command::analyze;
  std::optional<IntMatrix> gram;
  TwoCocycleVariant variant = TwoCocycleVariant::standard;
  Sign sign = Sign::minus;
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  std::vector<long> denominators = default_denominators();
  Format format = Format::json;
  bool inject_fault = false;  // swap in a known-bad cochain to exercise the failure path
};

struct CheckRecord {
  std::string name;
  bool pass = true;
  std::string counterexample;
};

struct Report {
  JobSpec job;
  std::vector<CheckRecord> checks;
  Json artifacts = Json::object();

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  int exit_code() const { return all_pass() ? exit_pass : exit_check_failed; }
};

// ---------------------------------------------------------------------------------------------
// Input

inline IntMatrix gram_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("gram")) throw UsageError("lattice input must be a JSON object with a \"gram\" field");
  const Json& g = doc.at("gram");
  if (!g.is_array() || g.empty()) throw UsageError("\"gram\" must be a non-empty array of integer rows");
  const std::size_t n = g.size();
  IntMatrix m(n, g.at(0).is_array() ? g.at(0).size() : 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = g.at(i);
    if (!row.is_array()) throw UsageError("row " + std::to_string(i) + " of \"gram\" is not an array");
    if (row.size() != m.cols()) throw UsageError("\"gram\" rows have different lengths");
    for (std::size_t j = 0; j < row.size(); ++j) {
      const Json& x = row.at(j);
      if (x.is_number_integer())
        m(i, j) = x.is_number_unsigned() ? Integer(x.get<unsigned long>()) : Integer(x.get<long>());
      else if (x.is_string() && Integer().set_str(x.get<std::string>(), 10) == 0)
        m(i, j) = Integer(x.get<std::string>());
      else
        throw UsageError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") of \"gram\" is not an integer");
    }
  }
  return m;
}

inline std::optional<IntMatrix> preset_gram(const std::string& name) {
  if (name == "A1") return lattices::a_n(1);
  if (name == "A2") return lattices::a2();
  if (name == "A3") return lattices::a_n(3);
  if (name == "D4") return lattices::d4();
  if (name == "E8") return lattices::e8();
  if (name == "U") return lattices::hyperbolic();
  return std::nullopt;
}

/// Gram matrix from a preset name, inline JSON, or a JSON file. Structure errors are UsageError;
/// symmetry and evenness are not checked here.
inline IntMatrix read_gram(const std::string& arg) {
  if (auto p = preset_gram(arg)) return *p;
  std::string text;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot read lattice file '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
  return gram_from_json(doc);
}

/// Validated lattice: UsageError on malformed input, anomaly::Error on asymmetric or odd input.
inline EvenLattice parse_lattice(const std::string& arg) { return EvenLattice::from_gram(read_gram(arg)); }

// ---------------------------------------------------------------------------------------------
// Serialization

inline Json rational_json(const Rational& x) { return x.get_str(); }

inline Json qvector_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

inline Json matrix_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Integer& x = m(i, j);
      if (x.fits_slong_p())
        row.push_back(x.get_si());
      else
        row.push_back(x.get_str());
    }
    a.push_back(std::move(row));
  }
  return a;
}

inline Json qmatrix_json(const QMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    a.push_back(std::move(row));
  }
  return a;
}

inline Json points_json(PointSpan pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(qvector_json(p.coords()));
  return a;
}

inline std::string points_str(PointSpan pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? ", " : "") + pts[i].str();
  return s;
}

inline Json job_json(const JobSpec& job) {
  Json j;
  j["command"] = to_string(job.command);
  j["gram"] = job.gram ? matrix_json(*job.gram) : Json(nullptr);
  j["variant"] = job.variant == TwoCocycleVariant::kac ? "kac" : "std";
  j["sign"] = to_string(job.sign);
  j["seed"] = job.seed;
  j["samples"] = job.samples;
  j["denominators"] = job.denominators;
  j["format"] = to_string(job.format);
  j["inject_fault"] = job.inject_fault;
  return j;
}

inline Json to_json(const Report& r) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["exact_arithmetic"] = true;
  j["job"] = job_json(r.job);
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["counterexample"] = c.pass ? Json(nullptr) : Json(c.counterexample);
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["artifacts"] = r.artifacts;
  j["status"] = r.all_pass() ? "pass" : "fail";
  return j;
}

inline Json error_json(const JobSpec& job, const std::string& kind, const std::string& message) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["exact_arithmetic"] = true;
  j["job"] = job_json(job);
  j["error"] = {{"kind", kind}, {"message", message}};
  j["status"] = "error";
  return j;
}

inline std::string to_markdown(const Report& r) {
  std::ostringstream out;
  out << "# " << kToolName << " " << to_string(r.job.command) << "\n\n";
  if (r.job.gram) out << "Gram matrix: `" << to_string(*r.job.gram) << "`  \n";
  out << "Seed: " << r.job.seed << ", samples: " << r.job.samples << ", sign: " << to_string(r.job.sign) << "\n\n";
  if (!r.checks.empty()) {
    out << "| check | result | counterexample |\n|---|---|---|\n";
    for (const auto& c : r.checks) out << "| " << c.name << " | " << (c.pass ? "pass" : "FAIL") << " | " << c.counterexample << " |\n";
    out << "\n";
  }
  out << "## Artifacts\n\n```json\n" << r.artifacts.dump(2) << "\n```\n\n";
  out << "Status: **" << (r.all_pass() ? "pass" : "fail") << "**\n";
  return out.str();
}

inline std::string render(const Report& r) {
  return r.job.format == Format::json ? to_json(r).dump(2) + "\n" : to_markdown(r);
}

// ---------------------------------------------------------------------------------------------
// Checks

namespace detail {

struct Sampler {
  SplitMix64 rng;
  std::size_t rank;
  std::vector<long> denominators;

  std::vector<TorusPoint> points(std::size_t k) {
    std::vector<TorusPoint> v;
    v.reserve(k);
    for (std::size_t i = 0; i < k; ++i) v.emplace_back(sample_coordinates(rng, rank, denominators));
    return v;
  }
};

/// Runs `test` on `samples` random k-tuples; the first failure message becomes the counterexample.
template <class F>
CheckRecord sampled(std::string name, Sampler s, std::size_t samples, std::size_t k, F&& test) {
  CheckRecord rec{std::move(name), true, {}};
  for (std::size_t i = 0; i < samples; ++i) {
    auto pts = s.points(k);
    if (auto msg = test(PointSpan(pts))) {
      rec.pass = false;
      rec.counterexample = "at (" + points_str(pts) + "): " + *msg;
      break;
    }
  }
  return rec;
}

inline std::optional<std::string> phase_mismatch(const Phase& a, const Phase& b) {
  if (a == b) return std::nullopt;
  return a.str() + " != " + b.str();
}

inline Json decomposition_json(const std::vector<GeneratorTerm>& terms) {
  Json a = Json::array();
  for (const auto& t : terms) a.push_back({{"coefficient", t.coefficient.get_str()}, {"gram", matrix_json(t.lattice.gram())}});
  return a;
}

inline Json discriminant_json(const DiscriminantGroup& d) {
  Json reps = Json::array();
  for (const auto& r : d.representatives) reps.push_back(qvector_json(r));
  return {{"invariant_factors", d.group.factors()}, {"order", d.order.get_str()}, {"representatives", reps}};
}

inline Json element_json(const FiniteAbelianGroup& g, std::size_t e) { return g.coords(e); }

// Multiplies one table entry by e^{2*pi*i/D}.
inline FiniteCochain perturbed(const FiniteCochain& w, std::size_t flat) {
  FiniteCochain c = w;
  c.set_flat(flat, w.values()[flat] + 1);
  return c;
}

inline CheckRecord pentagon_record(const std::string& name, const FiniteCochain& w) {
  auto p = pentagon_check(w);
  CheckRecord rec{name, p.ok, {}};
  if (!p.ok) {
    const auto& x = *p.witness;
    std::string s = "boundary nonzero at group elements (";
    for (std::size_t i = 0; i < 4; ++i) s += (i ? ", " : "") + std::to_string(x[i]);
    rec.counterexample = s + ")";
  }
  return rec;
}

inline Json class_json(const CohomologyClass& c) {
  return {{"coordinates", c.coordinates}, {"factors", c.factors}, {"order", c.order()}};
}

}  // namespace detail

inline void run_analyze(const JobSpec& job, Report& rep) {
  const EvenLattice l = EvenLattice::from_gram(*job.gram);
  rep.artifacts["rank"] = l.rank();
  rep.artifacts["even"] = true;
  rep.artifacts["symmetric"] = true;
  rep.artifacts["positive_definite"] = l.definite();
  rep.artifacts["determinant"] = l.det().get_str();
  if (l.det() == 0) fail(ErrorKind::degenerate_lattice, "singular Gram matrix " + to_string(l.gram()));
  const QMatrix dual = dual_basis(l);
  rep.artifacts["dual_basis"] = qmatrix_json(dual);
  DiscriminantGroup d = discriminant_group(l);
  if (job.inject_fault && d.representatives.size() > 1) d.representatives[1][0] += make_rational(1, 2 * abs_of(l.det()).get_si() + 1);
  rep.artifacts["discriminant"] = detail::discriminant_json(d);

  CheckRecord count{"discriminant_order_equals_abs_det", Integer(static_cast<unsigned long>(d.representatives.size())) == d.order, {}};
  if (!count.pass) count.counterexample = std::to_string(d.representatives.size()) + " representatives vs |det| = " + d.order.get_str();
  rep.checks.push_back(count);

  CheckRecord dual_check{"representatives_in_dual_lattice", true, {}};
  for (const auto& r : d.representatives) {
    QVector gr = mat_vec(to_rational(l.gram()), r);
    for (const auto& x : gr)
      if (!is_integer(x)) {
        dual_check.pass = false;
        std::string s;
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + anomaly::to_string(r[i]);
        dual_check.counterexample = "G*(" + s + ") is not integral";
      }
    if (!dual_check.pass) break;
  }
  rep.checks.push_back(dual_check);
}

inline void run_verify(const JobSpec& job, Report& rep) {
  const EvenLattice l = EvenLattice::from_gram(*job.gram);
  const IntMatrix& g = l.gram();
  const std::size_t n = l.rank();
  SplitMix64 root(job.seed);
  auto sampler = [&] { return detail::Sampler{root.split(), n, job.denominators}; };

  AnomalyCocycle w(g, job.sign);
  PhaseCochain omega = w.cochain();
  if (job.inject_fault) {
    PhaseCochain bad;
    bad.arity = 3;
    bad.eval = [omega](PointSpan x) { return omega(x) * Phase(make_rational(1, 3)); };
    bad.provenance = "faulty";
    omega = bad;
  }

  {
    SplitMix64 r = root.split();
    BilinearTwoCocycle b = two_cocycle(l, job.variant);
    CheckResult res = verify_two_cocycle(b, l, r, job.samples);
    rep.checks.push_back({"two_cocycle", res.ok, res.counterexample});
  }

  rep.checks.push_back(detail::sampled("cocycle_law", sampler(), job.samples, 4, [&](PointSpan x) {
    return detail::phase_mismatch(boundary(omega, x), Phase::one());
  }));

  const IntMatrix g2 = 2 * g;
  const IntMatrix shift = lattices::scaled_identity(n, 2);
  rep.checks.push_back(detail::sampled("multiplicativity", sampler(), job.samples, 3, [&](PointSpan x) {
    if (auto e = detail::phase_mismatch(omega(x) * omega(x), omega_closed_form(g2, job.sign, x[0], x[1], x[2])))
      return std::optional<std::string>("w_G * w_G vs w_2G: " + *e);
    const Phase lhs = omega(x) * omega_closed_form(shift, job.sign, x[0], x[1], x[2]);
    if (auto e = detail::phase_mismatch(lhs, omega_closed_form(g + shift, job.sign, x[0], x[1], x[2])))
      return std::optional<std::string>("w_G * w_2Id vs w_(G+2Id): " + *e);
    return std::optional<std::string>();
  }));

  const SectionMap sec(n);
  const MuFn mu_std = mu_of(two_cocycle(l, TwoCocycleVariant::standard));
  const LambdaFn lambda = lambda_braiding(g, job.sign);
  rep.checks.push_back(detail::sampled("assembler_agreement", sampler(), job.samples, 3, [&](PointSpan x) {
    return detail::phase_mismatch(jones_assemble(mu_std, lambda, sec, x[0], x[1], x[2]), omega(x));
  }));
  if (job.variant == TwoCocycleVariant::kac) {
    PhaseCochain kac = jones_cochain(mu_of(two_cocycle(l, TwoCocycleVariant::kac)), lambda, sec);
    rep.checks.push_back(detail::sampled("assembler_cocycle_kac", sampler(), job.samples, 4, [&](PointSpan x) {
      return detail::phase_mismatch(boundary(kac, x), Phase::one());
    }));
  }

  const IntCochain c_g = gram_pairing_cochain(g);
  const int sgn = exponent_sign(job.sign);
  const IntCochain delta_canon = bockstein_lift(omega, LiftMode::canonical);
  rep.checks.push_back(detail::sampled("bockstein_identity", sampler(), job.samples, 4, [&](PointSpan x) -> std::optional<std::string> {
    Integer lhs;
    try {
      lhs = delta_canon(x);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    const Integer rhs = sgn * c_g(x);
    if (lhs == rhs) return std::nullopt;
    return "delta3(w) = " + lhs.get_str() + " but c_G = " + rhs.get_str();
  }));

  const CoboundaryCertificate cert = coboundary_certificate(g, job.sign);
  const IntCochain delta_norm = bockstein_lift(w.cochain(), LiftMode::normalized);
  Json eta_samples = Json::array();
  {
    detail::Sampler s = sampler();
    for (int i = 0; i < 3; ++i) {
      auto pts = s.points(3);
      eta_samples.push_back({{"args", points_json(pts)}, {"eta", cert.eta(PointSpan(pts)).get_str()}});
    }
  }
  rep.checks.push_back(detail::sampled("coboundary_certificate", sampler(), job.samples, 4, [&](PointSpan x) -> std::optional<std::string> {
    const Integer lhs = delta_norm(x) - sgn * c_g(x);
    const Integer rhs = boundary(cert.eta, x);
    if (lhs == rhs) return std::nullopt;
    return "delta3(w) - c_G = " + lhs.get_str() + " but d(eta) = " + rhs.get_str();
  }));

  Json omega_samples = Json::array();
  {
    detail::Sampler s = sampler();
    for (int i = 0; i < 3; ++i) {
      auto pts = s.points(3);
      omega_samples.push_back({{"args", points_json(pts)}, {"exponent", rational_json(w(pts[0], pts[1], pts[2]).exponent())}});
    }
  }
  rep.artifacts["omega_samples"] = std::move(omega_samples);
  rep.artifacts["certificate"] = {{"terms", detail::decomposition_json(cert.terms)}, {"eta_samples", std::move(eta_samples)}};
}

inline void run_decompose(const JobSpec& job, Report& rep) {
  const IntMatrix& h = *job.gram;
  require_even_symmetric(h);
  std::vector<GeneratorTerm> terms = decompose_even_symmetric(h);
  IntMatrix sum = resum(terms, h.rows());
  if (job.inject_fault) sum(0, 0) += 2;
  rep.artifacts["terms"] = detail::decomposition_json(terms);
  rep.artifacts["resum"] = matrix_json(sum);

  CheckRecord resum_check{"resum_equals_input", sum == h, {}};
  if (!resum_check.pass) resum_check.counterexample = "sum of terms is " + to_string(sum);
  rep.checks.push_back(resum_check);

  CheckRecord pd{"terms_even_positive_definite", true, {}};
  for (const auto& t : terms) {
    const IntMatrix& m = t.lattice.gram();
    bool even = true;
    for (std::size_t i = 0; i < m.rows(); ++i) even = even && mpz_even_p(m(i, i).get_mpz_t());
    if (!even || !m.is_symmetric() || !is_positive_definite(m)) {
      pd.pass = false;
      pd.counterexample = "term " + to_string(m) + " is not even positive-definite";
      break;
    }
  }
  rep.checks.push_back(pd);
}

inline void run_restrict(const JobSpec& job, Report& rep) {
  const EvenLattice l = EvenLattice::from_gram(*job.gram);
  RestrictedCocycle r = restrict_to_discriminant(l, job.sign);
  if (job.inject_fault && r.omega.values().size() > 1) r.omega = detail::perturbed(r.omega, r.omega.values().size() - 1);
  const auto& grp = r.discriminant.group;

  rep.artifacts["discriminant"] = detail::discriminant_json(r.discriminant);
  rep.artifacts["denominator"] = r.omega.denominator();
  rep.artifacts["table"] = r.omega.values();
  rep.checks.push_back(detail::pentagon_record("pentagon", r.omega));

  Json fs = Json::array();
  CheckRecord fs_check{"fs_indicator_squares_to_one", true, {}};
  for (std::size_t e = 0; e < grp.order(); ++e) {
    if (grp.add(e, e) != 0) continue;
    try {
      fs.push_back({{"element", detail::element_json(grp, e)}, {"indicator", fs_indicator(r.omega, e)}});
    } catch (const Error& err) {
      fs_check.pass = false;
      fs_check.counterexample = "element " + std::to_string(e) + ": " + err.what();
    }
  }
  rep.checks.push_back(fs_check);
  rep.artifacts["fs_indicators"] = std::move(fs);
}

inline void run_classify(const JobSpec& job, Report& rep) {
  const EvenLattice l = EvenLattice::from_gram(*job.gram);
  RestrictedCocycle r = restrict_to_discriminant(l, job.sign);
  if (job.inject_fault && r.omega.values().size() > 1) r.omega = detail::perturbed(r.omega, r.omega.values().size() - 1);
  const auto& grp = r.discriminant.group;
  const H3Presentation pres = h_three(grp, r.omega.denominator());

  rep.artifacts["discriminant"] = detail::discriminant_json(r.discriminant);
  rep.artifacts["h3_invariant_factors"] = pres.factors;
  rep.artifacts["h3_order"] = pres.order().get_str();

  CheckRecord pent = detail::pentagon_record("pentagon", r.omega);
  rep.checks.push_back(pent);
  if (!pent.pass) return;

  const CohomologyClass cls = classify(r.omega, pres);
  rep.artifacts["class"] = detail::class_json(cls);

  // A different transversal changes w by a coboundary only.
  QVector offset(l.rank(), make_rational(-1, 2));
  RestrictedCocycle shifted = restrict_to_discriminant(l, job.sign, SectionMap(offset), r.omega.denominator());
  const CohomologyClass cls2 = classify(shifted.omega, pres);
  CheckRecord stable{"class_independent_of_section", cls == cls2, {}};
  if (!stable.pass) stable.counterexample = "section offset -1/2 gives coordinates " + detail::class_json(cls2).dump();
  rep.checks.push_back(stable);

  CheckRecord round{"basis_round_trip", true, {}};
  for (std::size_t k = 0; k < pres.basis.size() && round.pass; ++k) {
    const CohomologyClass c = classify(pres.basis[k], pres);
    for (std::size_t i = 0; i < c.coordinates.size(); ++i)
      if (c.coordinates[i] != (i == k ? 1 : 0)) {
        round.pass = false;
        round.counterexample = "basis cocycle " + std::to_string(k) + " classifies as " + detail::class_json(c).dump();
        break;
      }
  }
  rep.checks.push_back(round);
}

inline void run_selftest(const JobSpec& job, Report& rep) {
  auto expect = [&](std::string name, bool ok, std::string detail) {
    if (job.inject_fault && rep.checks.empty()) ok = !ok;
    rep.checks.push_back({std::move(name), ok, ok ? std::string() : std::move(detail)});
  };
  const TorusPoint half(QVector{make_rational(1, 2)});
  const IntMatrix g2{{2}};

  {
    Phase v = omega_closed_form(g2, Sign::minus, half, half, half);
    expect("omega_sqrt2_qqq_is_minus_one", v == Phase::minus_one(), "w(q,q,q) = " + v.str());
  }
  {
    Phase v = omega_one_dim(1, half, half, half);
    expect("omega_one_at_half_is_minus_one", v == Phase::minus_one(), "w_1 = " + v.str());
  }
  {
    Phase v = braiding_phase(QVector{Rational(1)}, QVector{Rational(1)}, IntMatrix{{1}});
    expect("self_braiding_unit_is_minus_one", v == Phase::minus_one(), "e^{i*pi*pq} = " + v.str());
  }
  {
    EvenLattice l = EvenLattice::from_gram(g2);
    QMatrix d = dual_basis(l);
    expect("dual_basis_sqrt2", d.rows() == 1 && d(0, 0) == make_rational(1, 2), "dual basis " + d(0, 0).get_str());
    DiscriminantGroup dg = discriminant_group(l);
    bool ok = dg.group.factors() == std::vector<long>{2} && dg.representatives.size() == 2 &&
              dg.representatives[0][0] == 0 && dg.representatives[1][0] == make_rational(1, 2);
    expect("discriminant_sqrt2_is_z2", ok, "got " + dg.group.str());
  }
  for (long n = 2; n <= 4; ++n) {
    DiscriminantGroup dg = discriminant_group(EvenLattice::from_gram(IntMatrix{{2 * n}}));
    expect("discriminant_sqrt" + std::to_string(2 * n) + "_is_cyclic", dg.group.factors() == std::vector<long>{2 * n},
           "got " + dg.group.str());
  }
  {
    EvenLattice a2 = EvenLattice::from_gram(lattices::a2());
    expect("a2_positive_definite", a2.definite(), "A2 reported indefinite");
    BilinearTwoCocycle b = two_cocycle(a2, TwoCocycleVariant::standard);
    ZVector e1{1, 0}, e2{0, 1};
    expect("a2_std_b_e1_e2", b(e1, e2) == Phase::minus_one() && b(e2, e1) == Phase::one(),
           "b(e1,e2) = " + b(e1, e2).str() + ", b(e2,e1) = " + b(e2, e1).str());
    expect("std_b_diagonal_trivial", b(e1, e1).is_one() && b(e2, e2).is_one(), "nontrivial diagonal value");
    SplitMix64 rng(job.seed);
    CheckResult res = verify_two_cocycle(b, a2, rng, 50);
    expect("a2_std_two_cocycle", res.ok, res.counterexample);
    BilinearTwoCocycle k = two_cocycle(EvenLattice::from_gram(g2), TwoCocycleVariant::kac);
    expect("kac_b_sqrt2_is_minus_one", k(ZVector{1}, ZVector{1}) == Phase::minus_one(), "b(e1,e1) = " + k(ZVector{1}, ZVector{1}).str());
  }
  {
    SplitMix64 root(job.seed);
    const std::size_t samples = std::min<std::size_t>(job.samples, 100);
    auto w1 = omega_one_dim_cochain(1), w2 = omega_one_dim_cochain(2);
    CheckRecord m = detail::sampled("omega_m_multiplicative", {root.split(), 1, job.denominators}, samples, 3,
                                    [&](PointSpan x) { return detail::phase_mismatch(w1(x) * w1(x), w2(x)); });
    expect(m.name, m.pass, m.counterexample);

    PhaseCochain wa2 = AnomalyCocycle(lattices::a2(), Sign::minus).cochain();
    CheckRecord c = detail::sampled("a2_cocycle_law", {root.split(), 2, job.denominators}, samples, 4,
                                    [&](PointSpan x) { return detail::phase_mismatch(boundary(wa2, x), Phase::one()); });
    expect(c.name, c.pass, c.counterexample);

    IntCochain d1 = bockstein_lift(w1), bb = cup_bb(0, 0, 1);
    CheckRecord b1 = detail::sampled("bockstein_omega_one_is_b_wedge_b", {root.split(), 1, job.denominators}, samples, 4,
                                     [&](PointSpan x) -> std::optional<std::string> {
                                       if (d1(x) == bb(x)) return std::nullopt;
                                       return d1(x).get_str() + " != " + bb(x).get_str();
                                     });
    expect(b1.name, b1.pass, b1.counterexample);

    IntCochain da2 = bockstein_lift(wa2);
    IntCochain b11 = cup_bb(0, 0, 2), b22 = cup_bb(1, 1, 2), b12 = cup_bb(0, 1, 2);
    CheckRecord b2 = detail::sampled("bockstein_a2", {root.split(), 2, job.denominators}, samples, 4,
                                     [&](PointSpan x) -> std::optional<std::string> {
                                       Integer rhs = b11(x) + b22(x) - b12(x);
                                       if (da2(x) == rhs) return std::nullopt;
                                       return da2(x).get_str() + " != " + rhs.get_str();
                                     });
    expect(b2.name, b2.pass, b2.counterexample);

    IntCochain cg2 = gram_pairing_cochain(g2), cga2 = gram_pairing_cochain(lattices::a2());
    CheckRecord p1 = detail::sampled("pairing_sqrt2_is_b_wedge_b", {root.split(), 1, job.denominators}, samples, 4,
                                     [&](PointSpan x) -> std::optional<std::string> {
                                       if (cg2(x) == bb(x)) return std::nullopt;
                                       return cg2(x).get_str() + " != " + bb(x).get_str();
                                     });
    expect(p1.name, p1.pass, p1.counterexample);
    CheckRecord p2 = detail::sampled("pairing_a2", {root.split(), 2, job.denominators}, samples, 4,
                                     [&](PointSpan x) -> std::optional<std::string> {
                                       Integer rhs = b11(x) + b22(x) - b12(x);
                                       if (cga2(x) == rhs) return std::nullopt;
                                       return cga2(x).get_str() + " != " + rhs.get_str();
                                     });
    expect(p2.name, p2.pass, p2.counterexample);
  }
  {
    RestrictedCocycle r = restrict_to_discriminant(EvenLattice::from_gram(g2));
    expect("restricted_sqrt2_qqq_is_half", r.omega.turns(std::array<std::size_t, 3>{1, 1, 1}) == make_rational(1, 2),
           "w(q,q,q) exponent " + anomaly::to_string(r.omega.turns(std::array<std::size_t, 3>{1, 1, 1})));
    auto pent = pentagon_check(r.omega);
    expect("restricted_sqrt2_pentagon", pent.ok, "pentagon fails");
    H3Presentation z2 = h_three(FiniteAbelianGroup::cyclic(2));
    expect("h3_z2_is_z2", z2.factors == std::vector<long>{2}, "factors " + Json(z2.factors).dump());
    H3Presentation z3 = h_three(FiniteAbelianGroup::cyclic(3));
    expect("h3_z3_is_z3", z3.factors == std::vector<long>{3}, "factors " + Json(z3.factors).dump());
    CohomologyClass c = classify(r.omega.rescaled(z2.denominator), z2);
    expect("restricted_sqrt2_is_generator", c.order() == 2, "class " + detail::class_json(c).dump());
    int nu = fs_indicator(r.omega, 1);
    expect("fs_indicator_sqrt2_is_minus_one", nu == -1, "indicator " + std::to_string(nu));
  }
  {
    EvenLattice a2 = parse_lattice(R"({"gram": [[2,-1],[-1,2]]})");
    expect("parse_a2", a2.gram() == lattices::a2(), "parsed " + to_string(a2.gram()));
  }
}

/// Executes a job. Mathematical precondition failures propagate as anomaly::Error.
inline Report run(const JobSpec& job) {
  Report rep;
  rep.job = job;
  if (job.command != Command::selftest && !job.gram) throw UsageError("--gram is required for this command");
  if (job.samples == 0) throw UsageError("--samples must be positive");
  if (job.denominators.empty()) throw UsageError("--denominators must be non-empty");
  for (long d : job.denominators)
    if (d < 1) throw UsageError("denominators must be positive");
  switch (job.command) {
    case Command::analyze: run_analyze(job, rep); break;
    case Command::verify: run_verify(job, rep); break;
    case Command::decompose: run_decompose(job, rep); break;
    case Command::restrict: run_restrict(job, rep); break;
    case Command::classify: run_classify(job, rep); break;
    case Command::selftest: run_selftest(job, rep); break;
  }
  return rep;
}

}  // namespace anomaly::cli
