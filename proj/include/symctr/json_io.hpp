#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symctr/basis.hpp"
#include "symctr/printer.hpp"
#include "symctr/structure.hpp"

namespace symctr {

using json = nlohmann::ordered_json;

inline constexpr const char *kSchemaVersion = "symctr/v1";

inline json scalar_to_json(const GaussianRational &q) {
  return {{"re", q.re().get_str()}, {"im", q.im().get_str()}};
}

inline GaussianRational scalar_from_json(const json &j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_string() || !j["im"].is_string())
    throw Error("scalar must be an object with string fields \"re\" and \"im\"");
  try {
    return GaussianRational::from_strings(j["re"].get<std::string>(), j["im"].get<std::string>());
  } catch (const std::exception &e) {
    throw Error(std::string("malformed scalar: ") + e.what());
  }
}

namespace detail {

inline json header(const char *kind) { return {{"schema", kSchemaVersion}, {"kind", kind}}; }

inline void expect_kind(const json &j, const std::string &kind) {
  if (!j.is_object())
    throw Error("JSON document must be an object");
  if (j.value("schema", "") != kSchemaVersion)
    throw Error("unsupported schema version (expected " + std::string(kSchemaVersion) + ")");
  if (j.value("kind", "") != kind)
    throw Error("expected a document of kind '" + kind + "', got '" + j.value("kind", "") + "'");
}

inline json terms_to_json(const DiffOperator &op) {
  json terms = json::array();
  for (const auto &[alpha, c] : op.terms()) {
    json coeff = json::array();
    for (const auto &t : c.terms()) {
      json jt = {{"scalar", scalar_to_json(t.scalar)}, {"powers", t.powers}};
      if (t.has_exp()) {
        json e = json::array();
        for (const auto &z : t.expArg)
          e.push_back(scalar_to_json(z));
        jt["exp"] = e;
      }
      coeff.push_back(jt);
    }
    terms.push_back({{"deriv", alpha.alpha}, {"coefficient", coeff}});
  }
  return terms;
}

inline DiffOperator terms_from_json(const json &terms, std::size_t dim) {
  DiffOperator op(dim);
  for (const auto &jt : terms) {
    auto alpha = jt.at("deriv").get<std::vector<int>>();
    if (alpha.size() != dim)
      throw DimensionMismatch(alpha.size(), dim);
    for (int a : alpha)
      if (a < 0)
        throw Error("derivative multi-index entries must be non-negative");
    std::vector<CoeffTerm> cts;
    for (const auto &c : jt.at("coefficient")) {
      CoeffTerm t;
      t.scalar = scalar_from_json(c.at("scalar"));
      t.powers = c.at("powers").get<std::vector<int>>();
      if (t.powers.size() != dim)
        throw DimensionMismatch(t.powers.size(), dim);
      t.expArg.assign(dim, GaussianRational{});
      if (c.contains("exp")) {
        const auto &e = c["exp"];
        if (e.size() != dim)
          throw DimensionMismatch(e.size(), dim);
        for (std::size_t v = 0; v < dim; ++v)
          t.expArg[v] = scalar_from_json(e[v]);
      }
      cts.push_back(std::move(t));
    }
    op.add_term(DerivIndex(alpha), Coefficient(dim, std::move(cts)));
  }
  return op;
}

} // namespace detail

/// {"schema","kind":"operator","vars","text","terms":[{"deriv","coefficient":[...]}]}
inline json operator_to_json(const DiffOperator &op, const std::vector<std::string> &vars) {
  json j = detail::header("operator");
  j["vars"] = vars;
  j["text"] = print_operator(op, vars);
  j["terms"] = detail::terms_to_json(op);
  return j;
}

struct OperatorDocument {
  std::vector<std::string> vars;
  DiffOperator op;
};

inline OperatorDocument operator_from_json(const json &j) {
  detail::expect_kind(j, "operator");
  OperatorDocument d;
  d.vars = j.at("vars").get<std::vector<std::string>>();
  d.op = detail::terms_from_json(j.at("terms"), d.vars.size());
  return d;
}

/// Extra fields carried with a solved basis.
struct LinearSystemSummary {
  int order = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  std::size_t nullity = 0;
  friend bool operator==(const LinearSystemSummary &, const LinearSystemSummary &) = default;
};

inline json summary_to_json(const LinearSystemSummary &s) {
  json j = detail::header("linear-system-summary");
  j["order"] = s.order;
  j["unknowns"] = s.unknowns;
  j["equations"] = s.equations;
  j["rank"] = s.rank;
  j["nullity"] = s.nullity;
  return j;
}

inline LinearSystemSummary summary_from_json(const json &j) {
  detail::expect_kind(j, "linear-system-summary");
  return {j.at("order").get<int>(), j.at("unknowns").get<std::size_t>(), j.at("equations").get<std::size_t>(),
          j.at("rank").get<std::size_t>(), j.at("nullity").get<std::size_t>()};
}

/// Member indices (unitIndex) are 0-based in JSON.
inline json basis_to_json(const OperatorBasis &b, const std::optional<LinearSystemSummary> &system = {}) {
  json j = detail::header("basis");
  j["vars"] = b.vars;
  if (b.unitIndex)
    j["unitIndex"] = *b.unitIndex;
  if (!b.parity.empty())
    j["parity"] = b.parity;
  json ops = json::array();
  for (std::size_t k = 0; k < b.size(); ++k)
    ops.push_back({{"name", b.name(k)}, {"text", print_operator(b[k], b.vars)}, {"terms", detail::terms_to_json(b[k])}});
  j["operators"] = ops;
  if (system)
    j["system"] = summary_to_json(*system);
  return j;
}

inline OperatorBasis basis_from_json(const json &j) {
  detail::expect_kind(j, "basis");
  OperatorBasis b;
  b.vars = j.at("vars").get<std::vector<std::string>>();
  for (const auto &o : j.at("operators"))
    b.push_back(detail::terms_from_json(o.at("terms"), b.vars.size()), o.value("name", ""));
  if (j.contains("unitIndex")) {
    b.unitIndex = j["unitIndex"].get<std::size_t>();
    if (*b.unitIndex >= b.size())
      throw Error("unitIndex out of range");
  }
  if (j.contains("parity")) {
    b.parity = j["parity"].get<std::vector<int>>();
    if (b.parity.size() != b.size())
      throw DimensionMismatch(b.parity.size(), b.size());
  }
  return b;
}

/// Dense table: table[i][j][k] = C^k_ij.
inline json structure_to_json(const StructureConstants &C, const std::vector<std::string> &names = {}) {
  json j = detail::header("structure-constants");
  const std::size_t n = C.size();
  j["size"] = n;
  if (!names.empty())
    j["names"] = names;
  json table = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < n; ++b) {
      json cell = json::array();
      for (std::size_t c = 0; c < n; ++c)
        cell.push_back(scalar_to_json(C(a, b, c)));
      row.push_back(cell);
    }
    table.push_back(row);
  }
  j["table"] = table;
  return j;
}

inline StructureConstants structure_from_json(const json &j) {
  detail::expect_kind(j, "structure-constants");
  const std::size_t n = j.at("size").get<std::size_t>();
  const auto &table = j.at("table");
  StructureConstants C(n);
  if (table.size() != n)
    throw DimensionMismatch(table.size(), n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n)
      throw DimensionMismatch(table[a].size(), n);
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b].size() != n)
        throw DimensionMismatch(table[a][b].size(), n);
      for (std::size_t c = 0; c < n; ++c)
        C(a, b, c) = scalar_from_json(table[a][b][c]);
    }
  }
  return C;
}

/// One named check inside a report: pass/fail, an optional residual operator
/// (printed text) and free-form details.
struct ReportCheck {
  std::string name;
  bool ok = true;
  std::optional<std::string> residual;
  json details = json::object();
  bool informational = false; // reported but never fails the document
  friend bool operator==(const ReportCheck &, const ReportCheck &) = default;
};

struct ReportDocument {
  std::string title;
  std::vector<std::string> vars;
  std::vector<ReportCheck> checks;
  json metadata = json::object();

  bool ok() const {
    for (const auto &c : checks)
      if (!c.ok && !c.informational)
        return false;
    return true;
  }
  friend bool operator==(const ReportDocument &, const ReportDocument &) = default;
};

inline json report_to_json(const ReportDocument &r) {
  json j = detail::header("report");
  j["title"] = r.title;
  j["ok"] = r.ok();
  j["vars"] = r.vars;
  if (!r.metadata.empty())
    j["metadata"] = r.metadata;
  json checks = json::array();
  for (const auto &c : r.checks) {
    json jc = {{"name", c.name}, {"ok", c.ok}};
    if (c.informational)
      jc["informational"] = true;
    if (c.residual)
      jc["residual"] = *c.residual;
    if (!c.details.empty())
      jc["details"] = c.details;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  return j;
}

inline ReportDocument report_from_json(const json &j) {
  detail::expect_kind(j, "report");
  ReportDocument r;
  r.title = j.at("title").get<std::string>();
  r.vars = j.value("vars", std::vector<std::string>{});
  if (j.contains("metadata"))
    r.metadata = j["metadata"];
  for (const auto &c : j.at("checks")) {
    ReportCheck rc;
    rc.name = c.at("name").get<std::string>();
    rc.ok = c.at("ok").get<bool>();
    rc.informational = c.value("informational", false);
    if (c.contains("residual"))
      rc.residual = c["residual"].get<std::string>();
    if (c.contains("details"))
      rc.details = c["details"];
    r.checks.push_back(std::move(rc));
  }
  return r;
}

} // namespace symctr
