#pragma once

// Text and JSON encodings. Field elements are written as lowercase hex of
// their index sum c_i p^i; on input "gK" (K-th power of the canonical
// generator), "0x..." hex, and plain decimal indices are accepted.

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scatseq/error.hpp"
#include "scatseq/family.hpp"
#include "scatseq/gf.hpp"
#include "scatseq/linpoly.hpp"
#include "scatseq/rankcode.hpp"
#include "scatseq/subspace.hpp"

namespace scatseq::io {

using json = nlohmann::ordered_json;

inline std::string format_elem(Elem e) {
  static const char* hex = "0123456789abcdef";
  std::string s;
  std::uint32_t v = e.v;
  do {
    s.insert(s.begin(), hex[v & 15]);
    v >>= 4;
  } while (v);
  return "0x" + s;
}

inline Elem parse_elem(const FieldContext& F, const std::string& text) {
  auto fail = [&] { return Error(Errc::ParseError, "cannot parse field element '" + text + "'"); };
  if (text.empty()) throw fail();
  std::size_t used = 0;
  try {
    if (text[0] == 'g') {
      const long long k = std::stoll(text.substr(1), &used);
      if (used + 1 != text.size()) throw fail();
      return F.gen_pow(k);
    }
    std::uint64_t v = 0;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
      v = std::stoull(text.substr(2), &used, 16);
      if (used + 2 != text.size()) throw fail();
    } else {
      v = std::stoull(text, &used, 10);
      if (used != text.size()) throw fail();
    }
    if (v >= F.size()) throw Error(Errc::ParseError, "element index " + text + " outside the field");
    return F.element(v);
  } catch (const std::logic_error&) {
    throw fail();
  }
}

/// Modulus as comma-separated coefficients (constant term first) or a packed
/// hex/decimal integer sum c_i p^i.
inline std::vector<std::uint32_t> parse_modulus(const std::string& text, std::uint32_t p) {
  std::vector<std::uint32_t> out;
  try {
    if (text.find(',') != std::string::npos) {
      std::size_t pos = 0;
      while (pos <= text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        out.push_back(static_cast<std::uint32_t>(std::stoul(text.substr(pos, next - pos))));
        pos = next + 1;
      }
      return out;
    }
    std::uint64_t v = 0;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
      v = std::stoull(text.substr(2), nullptr, 16);
    else
      v = std::stoull(text);
    while (v) {
      out.push_back(static_cast<std::uint32_t>(v % p));
      v /= p;
    }
  } catch (const std::logic_error&) {
    throw Error(Errc::ParseError, "cannot parse modulus '" + text + "'");
  }
  return out;
}

inline json vec_json(const Vec& v) {
  json a = json::array();
  for (Elem e : v) a.push_back(format_elem(e));
  return a;
}

inline Vec vec_from_json(const FieldContext& F, const json& j) {
  Vec v;
  for (const auto& e : j) v.push_back(parse_elem(F, e.get<std::string>()));
  return v;
}

inline json field_json(const FieldContext& F) {
  return json{{"p", F.p()}, {"h", F.h()}, {"n", F.n()}, {"q", F.q()}, {"descriptor", F.descriptor()}};
}

/// {"m", "n", "coeffs": m rows of n hex entries, row i = X_i^{q^0..q^{n-1}}}
inline json linpoly_json(const LinPoly& f) {
  json rows = json::array();
  for (std::size_t i = 0; i < f.m(); ++i) {
    json r = json::array();
    for (unsigned j = 0; j < f.n(); ++j) r.push_back(format_elem(f.coeff(i, j)));
    rows.push_back(std::move(r));
  }
  return json{{"m", f.m()}, {"n", f.n()}, {"coeffs", std::move(rows)}};
}

inline LinPoly linpoly_from_json(FieldPtr ctx, const json& j) {
  const std::size_t m = j.at("m").get<std::size_t>();
  if (j.at("n").get<unsigned>() != ctx->n()) throw Error(Errc::ParseError, "polynomial n differs from field n");
  LinPoly f(ctx, m);
  const auto& rows = j.at("coeffs");
  if (rows.size() != m) throw Error(Errc::ParseError, "coefficient rows != m");
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != ctx->n()) throw Error(Errc::ParseError, "coefficient row length != n");
    for (unsigned t = 0; t < ctx->n(); ++t) f.set(i, t, parse_elem(*ctx, rows[i][t].get<std::string>()));
  }
  return f;
}

inline json subspace_json(const FqSubspace& U) {
  json b = json::array();
  for (const auto& v : U.basis()) b.push_back(vec_json(v));
  return json{{"k", U.k()}, {"n", U.field().n()}, {"q", U.field().descriptor()}, {"dim", U.dim()}, {"basis", b}};
}

inline FqSubspace subspace_from_json(FieldPtr ctx, const json& j) {
  if (j.at("q").get<std::string>() != ctx->descriptor()) throw Error(Errc::ParseError, "subspace field differs");
  const std::size_t k = j.at("k").get<std::size_t>();
  std::vector<Vec> vs;
  for (const auto& v : j.at("basis")) {
    vs.push_back(vec_from_json(*ctx, v));
    if (vs.back().size() != k) throw Error(Errc::ParseError, "basis vector length != k");
  }
  return FqSubspace::span(ctx, k, vs);
}

inline json fqn_subspace_json(const FqnSubspace& H) {
  json rows = json::array();
  for (std::size_t r = 0; r < H.dim(); ++r) rows.push_back(vec_json(Vec(H.rref.row(r).begin(), H.rref.row(r).end())));
  return json{{"k", H.k}, {"dim", H.dim()}, {"rref", rows}};
}

inline json code_json(const RankCode& C) {
  json b = json::array();
  for (const auto& g : C.basis()) b.push_back(linpoly_json(g));
  return json{{"m", C.m()}, {"n", C.n()}, {"k", C.k()}, {"basis", b}};
}

inline RankCode code_from_json(FieldPtr ctx, const json& j) {
  const std::size_t m = j.at("m").get<std::size_t>();
  std::vector<LinPoly> b;
  for (const auto& g : j.at("basis")) b.push_back(linpoly_from_json(ctx, g));
  return RankCode(ctx, m, std::move(b));
}

inline json params_json(const FamilyParams& P) {
  return json{{"I", P.I},
              {"J", P.J},
              {"alpha", format_elem(P.alpha)},
              {"beta", format_elem(P.beta)},
              {"gamma", format_elem(P.gamma)}};
}

}  // namespace scatseq::io
