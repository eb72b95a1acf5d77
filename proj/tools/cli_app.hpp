#pragma once

// Command-line driver: verify, search, count, dual, equiv, weights, oracle.
// Exit codes: 0 ok, 1 usage/parse error, 2 enumeration budget exceeded,
// 3 a verified counterexample to one of the checked statements.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scatseq/family.hpp"
#include "scatseq/io.hpp"
#include "scatseq/rankcode.hpp"
#include "scatseq/subspace.hpp"

namespace scatseq::cli {

using json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kUsage = 1, kBudget = 2, kContradiction = 3 };

struct RunConfig {
  std::string command;
  std::uint64_t q = 2;
  unsigned h = 0;  // 0 = derive from q
  unsigned n = 4;
  std::string modulus;
  long long I = 1, J = 2, K = 1;
  std::string alpha = "1", beta = "1", gamma = "1";
  std::optional<long long> I2, J2;
  std::optional<std::string> alpha2, beta2, gamma2;
  unsigned ell = 0;  // 0 = no extension check
  std::uint64_t budget = std::uint64_t{1} << 24;
  unsigned threads = 0;
  std::string format = "json";
  std::string out;
  std::string criterion = "exhaustive";
  std::string c_range, gamma_range;
  bool timings = false;
};

/// Rewrites "key=value" tokens to "--key value".
inline std::vector<std::string> normalize_args(int argc, const char* const* argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    const auto eq = a.find('=');
    if (!a.empty() && a[0] != '-' && eq != std::string::npos && eq > 0) {
      out.push_back("--" + a.substr(0, eq));
      out.push_back(a.substr(eq + 1));
    } else {
      out.push_back(std::move(a));
    }
  }
  return out;
}

inline FieldPtr build_field(const RunConfig& c) {
  if (c.q < 2) throw Error(Errc::InvalidArgument, "q must be a prime power");
  const auto fs = detail::prime_factors(c.q);
  const std::uint32_t p = static_cast<std::uint32_t>(fs.front());
  unsigned h = 0;
  for (std::uint64_t x = c.q; x > 1; x /= p, ++h)
    if (x % p != 0) throw Error(Errc::InvalidArgument, "q must be a prime power");
  if (c.h != 0 && c.h != h) throw Error(Errc::InvalidArgument, "h disagrees with q");
  std::optional<std::vector<std::uint32_t>> mod;
  if (!c.modulus.empty()) mod = io::parse_modulus(c.modulus, p);
  return make_field(p, h, c.n, mod);
}

inline FamilyParams params_from(const RunConfig& c, FieldPtr F, bool second = false) {
  FamilyParams P;
  P.ctx = F;
  P.I = second && c.I2 ? *c.I2 : c.I;
  P.J = second && c.J2 ? *c.J2 : c.J;
  P.alpha = io::parse_elem(*F, second && c.alpha2 ? *c.alpha2 : c.alpha);
  P.beta = io::parse_elem(*F, second && c.beta2 ? *c.beta2 : c.beta);
  P.gamma = io::parse_elem(*F, second && c.gamma2 ? *c.gamma2 : c.gamma);
  P.validate();
  return P;
}

/// "a:b" (inclusive) exponent range of the canonical generator; empty string = all of F^*.
inline std::vector<Elem> exponent_range(const FieldContext& F, const std::string& r) {
  std::vector<Elem> out;
  if (r.empty()) {
    for (std::uint64_t i = 1; i < F.size(); ++i) out.push_back(F.element(i));
    return out;
  }
  const auto colon = r.find(':');
  long long a = 0, b = 0;
  try {
    if (colon == std::string::npos) {
      a = b = std::stoll(r);
    } else {
      a = std::stoll(r.substr(0, colon));
      b = std::stoll(r.substr(colon + 1));
    }
  } catch (const std::logic_error&) {
    throw Error(Errc::ParseError, "bad exponent range '" + r + "'");
  }
  for (long long e = a; e <= b; ++e) out.push_back(F.gen_pow(e));
  return out;
}

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

struct Result {
  json doc;
  std::string text;  // used instead of doc for csv output
  int code = kOk;
};

inline json header(const RunConfig& c, const FieldContext& F) {
  return json{{"schema", 1}, {"command", c.command}, {"field", io::field_json(F)}};
}

inline Result cmd_verify(const RunConfig& c) {
  auto F = build_field(c);
  const FamilyParams P = params_from(c, F);
  const Exec ex{c.threads, c.budget};
  const long long n = F->n(), mx = std::max(P.I, P.J);
  Result res;
  json doc = header(c, *F);
  doc["params"] = io::params_json(P);
  json checks = json::array();
  bool contradiction = false;

  Timer t;
  const auto s = verify_scattered(P, ex);
  json rs{{"check", "scattered"},
          {"gcd_ok", s.gcd_ok},
          {"p_root_free", s.p_root_free},
          {"scattered", s.scattered},
          {"max_line_intersection", s.max_line_intersection},
          {"converse_applies", s.converse_applies},
          {"contradiction", s.contradiction}};
  if (s.witness_line) rs["witness_line"] = io::fqn_subspace_json(*s.witness_line);
  if (c.timings) rs["ms"] = t.ms();
  checks.push_back(rs);
  contradiction |= s.contradiction;

  if (!s.p_root_free) {
    checks.push_back({{"check", "evasive"}, {"skipped", "P has roots"}});
    checks.push_back({{"check", "cutting"}, {"skipped", "P has roots"}});
    checks.push_back({{"check", "indecomposable"}, {"skipped", "P has roots"}});
  } else {
    Timer te;
    const auto e = verify_evasive(P, ex);
    json re{{"check", "evasive"},
            {"max_plane_intersection", e.max_plane_intersection},
            {"bound", e.bound},
            {"within_bound", e.within_bound},
            {"contradiction", e.contradiction}};
    if (e.witness_plane) re["witness_plane"] = io::fqn_subspace_json(*e.witness_plane);
    if (c.timings) re["ms"] = te.ms();
    checks.push_back(re);
    contradiction |= e.contradiction;

    const FqSubspace U = build_subspace(P);
    const bool in_range = 2 * mx <= n - 1;
    Timer tc;
    const auto cut = cutting_report(U, ex);
    json rc{{"check", "cutting"}, {"cutting", cut.cutting}, {"applies", in_range}};
    if (cut.failing_hyperplane) rc["failing_hyperplane"] = io::fqn_subspace_json(*cut.failing_hyperplane);
    rc["contradiction"] = in_range && !cut.cutting;
    if (c.timings) rc["ms"] = tc.ms();
    checks.push_back(rc);
    contradiction |= in_range && !cut.cutting;

    if (!s.scattered) {
      checks.push_back({{"check", "indecomposable"}, {"skipped", "not scattered"}});
    } else {
      Timer ti;
      const auto ind = indecomposability_criterion(U, 1, ex);
      json windows = json::array();
      for (const auto& w : ind.windows)
        windows.push_back({{"r", w.r}, {"bound", w.bound}, {"max_dim", w.max_dim}, {"evasive", w.evasive}});
      const bool applies = s.gcd_ok && in_range;
      const bool bad = applies && ind.verdict != Decomposability::Indecomposable;
      json ri{{"check", "indecomposable"},
              {"verdict", ind.verdict == Decomposability::Indecomposable ? "Indecomposable" : "Inconclusive"},
              {"windows", windows},
              {"applies", applies},
              {"contradiction", bad}};
      if (c.timings) ri["ms"] = ti.ms();
      checks.push_back(ri);
      contradiction |= bad;
    }
  }
  if (c.ell > 1) {
    Timer tx;
    const auto x = verify_extension(P, c.ell, ex);
    const bool bad = x.gcd_ok && x.p_root_free && !x.scattered;
    json rx{{"check", "extension"},
            {"ell", c.ell},
            {"field", io::field_json(*x.lifted.ctx)},
            {"gcd_ok", x.gcd_ok},
            {"p_root_free", x.p_root_free},
            {"scattered", x.scattered},
            {"contradiction", bad}};
    if (c.timings) rx["ms"] = tx.ms();
    checks.push_back(rx);
    contradiction |= bad;
  }
  doc["checks"] = checks;
  doc["contradiction"] = contradiction;
  res.doc = std::move(doc);
  res.code = contradiction ? kContradiction : kOk;
  return res;
}

inline Result cmd_search(const RunConfig& c) {
  auto F = build_field(c);
  const Exec ex{c.threads, c.budget};
  if (c.K < 1 || c.K > static_cast<long long>(F->n()) - 2) throw Error(Errc::InvalidArgument, "K must lie in [1, n-2]");
  if (c.criterion != "exhaustive" && c.criterion != "companion")
    throw Error(Errc::InvalidArgument, "criterion must be exhaustive or companion");
  const long long I = 1, J = 1 + c.K;
  const auto cs = exponent_range(*F, c.c_range), gs = exponent_range(*F, c.gamma_range);
  struct Row {
    Elem c, g;
    bool root_free, scattered;
    std::size_t d1, d2, d3;
  };
  const std::uint64_t total = cs.size() * gs.size();
  require_budget(total, ex, "search rows");
  Exec inner{1, c.budget};
  auto rows = parallel_reduce(
      total, c.threads, std::vector<Row>{},
      [&](std::uint64_t b, std::uint64_t e) {
        std::vector<Row> out;
        for (std::uint64_t i = b; i < e; ++i) {
          FamilyParams P{F, I, J, F->one(), cs[i / gs.size()], gs[i % gs.size()]};
          Row r{P.beta, P.gamma, false, false, 0, 0, 0};
          r.root_free = c.criterion == "companion" ? companion_criterion(P) : !p_has_root(P, inner);
          const FqSubspace U = build_subspace(P);
          const std::size_t lines = scan_h_subspaces(U, 1, inner).max_dim;
          r.scattered = lines <= 1;
          r.d1 = U.dim() - scan_h_subspaces(U, 3, inner).max_dim;
          r.d2 = U.dim() - scan_h_subspaces(U, 2, inner).max_dim;
          r.d3 = U.dim() - lines;
          out.push_back(r);
        }
        return out;
      },
      [](std::vector<Row> a, std::vector<Row> b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
      });
  std::uint64_t root_free = 0;
  for (const auto& r : rows) root_free += r.root_free;
  const std::uint64_t Q = F->size();
  const bool full = c.c_range.empty() && c.gamma_range.empty();
  std::optional<std::uint64_t> lb;
  if (std::gcd(c.K, static_cast<long long>(F->n())) == 1 && F->n() % (F->q() + 1) != 0)
    lb = (Q - 1) * detail::euler_phi(F->q() * F->q() - 1) / 2;

  Result res;
  if (c.format == "csv") {
    std::ostringstream os;
    os << "c,gamma,root_free,scattered,d,d_2,d_3\n";
    for (const auto& r : rows)
      os << io::format_elem(r.c) << ',' << io::format_elem(r.g) << ',' << r.root_free << ',' << r.scattered << ','
         << r.d1 << ',' << r.d2 << ',' << r.d3 << '\n';
    os << "# rows=" << rows.size() << " root_free_pairs=" << root_free << " exact_triples=" << root_free * (Q - 1);
    if (lb) os << " lower_bound=" << *lb;
    os << '\n';
    res.text = os.str();
    return res;
  }
  json doc = header(c, *F);
  doc["I"] = I;
  doc["J"] = J;
  doc["criterion"] = c.criterion;
  json jr = json::array();
  for (const auto& r : rows)
    jr.push_back({{"c", io::format_elem(r.c)},
                  {"gamma", io::format_elem(r.g)},
                  {"root_free", r.root_free},
                  {"scattered", r.scattered},
                  {"d", r.d1},
                  {"d_2", r.d2},
                  {"d_3", r.d3}});
  doc["rows"] = jr;
  json summary{{"rows", rows.size()}, {"root_free_pairs", root_free}, {"exact_triples", root_free * (Q - 1)},
               {"full_range", full}};
  summary["lower_bound"] = lb ? json(*lb) : json(nullptr);
  bool contradiction = false;
  if (full && lb && root_free * (Q - 1) < *lb) contradiction = true;
  for (const auto& r : rows)
    if (r.root_free && !r.scattered && std::gcd(std::gcd(I, J), static_cast<long long>(F->n())) == 1) contradiction = true;
  summary["contradiction"] = contradiction;
  doc["summary"] = summary;
  res.doc = std::move(doc);
  res.code = contradiction ? kContradiction : kOk;
  return res;
}

inline Result cmd_count(const RunConfig& c) {
  auto F = build_field(c);
  const Exec ex{c.threads, c.budget};
  Timer t;
  const auto tc = count_root_free_triples(F, c.I, c.J, ex);
  Result res;
  const bool bad = tc.lower_bound && tc.exact < *tc.lower_bound;
  if (c.format == "csv") {
    std::ostringstream os;
    os << "I,J,root_free_pairs,exact_triples,lower_bound\n"
       << c.I << ',' << c.J << ',' << tc.root_free_pairs << ',' << tc.exact << ','
       << (tc.lower_bound ? std::to_string(*tc.lower_bound) : "") << '\n';
    res.text = os.str();
  } else {
    json doc = header(c, *F);
    doc["I"] = c.I;
    doc["J"] = c.J;
    doc["root_free_pairs"] = tc.root_free_pairs;
    doc["exact_triples"] = tc.exact;
    doc["lower_bound"] = tc.lower_bound ? json(*tc.lower_bound) : json(nullptr);
    doc["contradiction"] = bad;
    if (c.timings) doc["ms"] = t.ms();
    res.doc = std::move(doc);
  }
  res.code = bad ? kContradiction : kOk;
  return res;
}

inline json matrix_json(const Matrix<Elem>& M) {
  json rows = json::array();
  for (std::size_t r = 0; r < M.rows; ++r) rows.push_back(io::vec_json(Vec(M.row(r).begin(), M.row(r).end())));
  return rows;
}

inline Result cmd_dual(const RunConfig& c) {
  auto F = build_field(c);
  const FamilyParams P = params_from(c, F);
  const auto d = ordinary_dual_params(P);
  json doc = header(c, *F);
  doc["params"] = io::params_json(P);
  doc["dual_params"] = io::params_json(d.params);
  doc["exact_dual"] = io::subspace_json(d.exact_dual);
  doc["map_to_family"] = matrix_json(d.map);
  doc["closed_form_matches"] = true;
  return {std::move(doc), {}, kOk};
}

inline Result cmd_equiv(const RunConfig& c) {
  auto F = build_field(c);
  const FamilyParams p1 = params_from(c, F), p2 = params_from(c, F, true);
  const auto v = equivalence_verdict(p1, p2);
  json doc = header(c, *F);
  doc["p1"] = io::params_json(p1);
  doc["p2"] = io::params_json(p2);
  doc["verdict"] = equiv_tag_name(v.tag);
  doc["in_range"] = v.in_range;
  doc["kernel_dim"] = v.kernel_dim ? json(*v.kernel_dim) : json(nullptr);
  if (v.coefficients) {
    const auto& s = *v.coefficients;
    doc["coefficients_q_K"] = {{"rho", io::format_elem(s.rho)},  {"theta", io::format_elem(s.theta)},
                               {"sigma", io::format_elem(s.sigma)}, {"mu", io::format_elem(s.mu)},
                               {"nu", io::format_elem(s.nu)},    {"xi", io::format_elem(s.xi)}};
  }
  doc["corollary_holds"] = v.corollary_holds;
  if (v.witness) {
    json w = json::array();
    for (Elem e : *v.witness) w.push_back(io::format_elem(e));
    doc["witness_diagonal"] = w;
    doc["witness_verified"] = v.witness_verified;
  }
  if (!v.note.empty()) doc["note"] = v.note;
  const bool bad = v.in_range && v.corollary_holds && v.witness && !v.witness_verified;
  doc["contradiction"] = bad;
  return {std::move(doc), {}, bad ? kContradiction : kOk};
}

inline Result cmd_weights(const RunConfig& c) {
  auto F = build_field(c);
  const FamilyParams P = params_from(c, F);
  const Exec ex{c.threads, c.budget};
  const RankCode C = family_code(P);
  const FqSubspace U = associated_subspace(C);
  json doc = header(c, *F);
  doc["params"] = io::params_json(P);
  doc["code"] = io::code_json(C);
  json report;
  const std::size_t d = min_distance(C, ex);
  report["d"] = d;
  report["is_mrd"] = C.k() == C.m() * (C.n() - d + 1);
  report["effective_length"] = effective_length(C);
  report["nondegenerate"] = is_nondegenerate(C, ex);
  json ws = json::array(), hs = json::array();
  for (std::size_t r = 1; r <= C.k(); ++r) {
    const std::size_t dim = C.k() - r;
    if (dim == 0) {
      ws.push_back(U.dim());
      hs.push_back(io::fqn_subspace_json(FqnSubspace::zero(C.k())));
      continue;
    }
    const auto scan = scan_h_subspaces(U, dim, ex);
    ws.push_back(U.dim() - scan.max_dim);
    hs.push_back(scan.witness ? io::fqn_subspace_json(*scan.witness) : json(nullptr));
  }
  report["weights"] = ws;
  report["weight_witnesses"] = hs;
  const auto mr = minimality_report(C, ex);
  report["minimal"] = mr.minimal;
  report["distinct_supports"] = mr.supports;
  const bool bad = ws[0].get<std::size_t>() != d;
  report["d1_matches_min_distance"] = !bad;
  doc["report"] = report;
  doc["contradiction"] = bad;
  return {std::move(doc), {}, bad ? kContradiction : kOk};
}

/// Cross-checks pairs of independent routes on the given parameters.
inline Result cmd_oracle(const RunConfig& c) {
  auto F = build_field(c);
  const FamilyParams P = params_from(c, F);
  const Exec ex{c.threads, c.budget};
  json doc = header(c, *F);
  doc["params"] = io::params_json(P);
  json checks = json::array();
  bool bad = false;

  const long long K = P.K();
  if (std::gcd(K, static_cast<long long>(F->n())) == 1) {
    const std::uint64_t Q = F->size();
    require_budget((Q - 1) * (Q - 1) * Q, ex, "criterion cross-check");
    std::uint64_t dis = 0, cases = 0;
    for (std::uint64_t b = 1; b < Q; ++b)
      for (std::uint64_t g = 1; g < Q; ++g) {
        FamilyParams R = P;
        R.alpha = F->one();
        R.beta = F->element(b);
        R.gamma = F->element(g);
        dis += p_has_root(R, ex) == companion_criterion(R);
        ++cases;
      }
    checks.push_back({{"check", "root_criteria"}, {"cases", cases}, {"disagreements", dis}});
    bad |= dis != 0;
  } else {
    checks.push_back({{"check", "root_criteria"}, {"skipped", "gcd(K, n) != 1"}});
  }

  const FqSubspace U = build_subspace(P);
  const bool by_lines = scan_h_subspaces(U, 1, ex).max_dim <= 1;
  const auto w = lambda_witness(P, ex);
  const bool by_lambda = !w.has_value();
  json sc{{"check", "scattered_routes"}, {"line_scan", by_lines}, {"lambda_scan", by_lambda}};
  if (w) {
    sc["witness"] = {{"x", io::format_elem(w->x)}, {"y", io::format_elem(w->y)}, {"lambda", io::format_elem(w->lambda)}};
    sc["witness_rechecked"] = check_lambda_witness(P, *w);
    bad |= !check_lambda_witness(P, *w);
  }
  checks.push_back(sc);
  bad |= by_lines != by_lambda;

  const RankCode C = family_code(P);
  const bool mrd = is_mrd(C, ex);
  checks.push_back({{"check", "mrd_iff_scattered"}, {"is_mrd", mrd}, {"scattered", by_lines}});
  bad |= mrd != by_lines;

  doc["checks"] = checks;
  doc["contradiction"] = bad;
  return {std::move(doc), {}, bad ? kContradiction : kOk};
}

inline int emit(const RunConfig& c, const Result& r, std::ostream& out, std::ostream& err) {
  std::string body = r.text.empty() ? r.doc.dump(2) + "\n" : r.text;
  if (c.out.empty()) {
    out << body;
  } else {
    std::ofstream f(c.out);
    if (!f) {
      err << "cannot open " << c.out << "\n";
      return kUsage;
    }
    f << body;
  }
  return r.code;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"scattered sequences and the U^{I,J,n} family"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--q", c.q, "field size q = p^h");
  app.add_option("--h", c.h, "q = p^h (derived from q when omitted)");
  app.add_option("--n", c.n, "extension degree");
  app.add_option("--modulus", c.modulus, "F_p-modulus of degree hn: coefficients c0,c1,... or packed hex");
  app.add_option("--I", c.I);
  app.add_option("--J", c.J);
  app.add_option("--K", c.K, "shift J - I for search (I = 1)");
  app.add_option("--alpha", c.alpha, "gK, 0x.. or decimal index");
  app.add_option("--beta", c.beta);
  app.add_option("--gamma", c.gamma);
  app.add_option("--I2", c.I2, "second parameter set for equiv (defaults to the first)");
  app.add_option("--J2", c.J2);
  app.add_option("--alpha2", c.alpha2);
  app.add_option("--beta2", c.beta2);
  app.add_option("--gamma2", c.gamma2);
  app.add_option("--ell", c.ell, "extension degree for the extension check");
  app.add_option("--budget", c.budget, "max objects enumerated by one scan");
  app.add_option("--threads", c.threads, "worker threads, 0 = auto");
  app.add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", c.out, "output path (stdout when omitted)");
  app.add_option("--criterion", c.criterion)->check(CLI::IsMember({"exhaustive", "companion"}));
  app.add_option("--c-range", c.c_range, "generator exponent range a:b for c = alpha*beta");
  app.add_option("--gamma-range", c.gamma_range, "generator exponent range a:b for gamma");
  app.add_flag("--timings", c.timings, "include wall-clock timings (breaks byte-identical output)");
  for (const char* name : {"verify", "search", "count", "dual", "equiv", "weights", "oracle"})
    app.add_subcommand(name)->fallthrough();

  auto args = normalize_args(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  try {
    Result r;
    if (c.format == "csv" && c.command != "search" && c.command != "count")
      throw Error(Errc::InvalidArgument, "csv output is available for search and count only");
    if (c.command == "verify") r = cmd_verify(c);
    else if (c.command == "search") r = cmd_search(c);
    else if (c.command == "count") r = cmd_count(c);
    else if (c.command == "dual") r = cmd_dual(c);
    else if (c.command == "equiv") r = cmd_equiv(c);
    else if (c.command == "weights") r = cmd_weights(c);
    else r = cmd_oracle(c);
    return emit(c, r, out, err);
  } catch (const Error& e) {
    json j{{"schema", 1}, {"command", c.command}, {"error", errc_name(e.code())}, {"message", e.what()}};
    err << j.dump() << "\n";
    return e.code() == Errc::TooLargeToExhaust ? kBudget : kUsage;
  }
}

}  // namespace scatseq::cli
