#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symctr/abstract.hpp"
#include "symctr/json_io.hpp"
#include "symctr/liealg.hpp"
#include "symctr/models.hpp"
#include "symctr/parser.hpp"
#include "symctr/printer.hpp"
#include "symctr/solver.hpp"
#include "symctr/words.hpp"

namespace symctr::cli {

enum ExitCode : int { Success = 0, Residual = 1, Usage = 2 };

enum class Format { Text, Json, Latex };

namespace detail {

class UsageError : public Error {
public:
  using Error::Error;
};

inline std::vector<std::string> split(const std::string &s, char delim) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, delim)) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string{} : cur.substr(b, e - b + 1));
  }
  return out;
}

/// "1,4,5" -> {0,3,4}.
inline std::vector<std::size_t> parse_indices(const std::string &text, std::size_t bound) {
  std::vector<std::size_t> out;
  for (const auto &tok : split(text, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("malformed index list '" + text + "' (expected 1-based integers like 1,4,5)");
    unsigned long v = std::stoul(tok);
    if (v < 1 || v > bound)
      throw UsageError("index " + tok + " out of range 1.." + std::to_string(bound));
    out.push_back(v - 1);
  }
  if (out.empty())
    throw UsageError("empty index list");
  return out;
}

inline PrintStyle style_of(Format f) { return f == Format::Latex ? PrintStyle::Latex : PrintStyle::Text; }

inline json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw UsageError("invalid JSON in '" + path + "': " + e.what());
  }
}

/// An inline expression, or `@file.json` holding an operator document.
inline DiffOperator load_operator(const std::string &arg, const std::vector<std::string> &vars) {
  if (!arg.empty() && arg[0] == '@') {
    OperatorDocument d = operator_from_json(read_json_file(arg.substr(1)));
    if (d.vars != vars)
      throw UsageError("operator file '" + arg.substr(1) + "' uses different variables");
    return d.op;
  }
  return parse_operator(arg, vars);
}

struct ModelOptions {
  std::string model;
  std::size_t d = 0; // 0 = model default
  std::string a = "1", c1 = "1", K = "1", k = "1";
};

inline ModelSpec make_model(const ModelOptions &o) {
  if (o.model == "schrodinger1d")
    return model_schrodinger1d();
  if (o.model == "kg")
    return model_klein_gordon(o.d ? o.d : 3);
  if (o.model == "kg4th")
    return model_kg4th(o.d ? o.d : 3, parse_scalar(o.a));
  if (o.model == "harmonic-pert")
    return model_harmonic_pert(parse_scalar(o.c1), parse_scalar(o.K), parse_scalar(o.k));
  std::string names;
  for (const auto &n : model_names())
    names += (names.empty() ? "" : ", ") + n;
  throw UsageError("unknown model '" + o.model + "' (available: " + names + ")");
}

struct BasisOptions {
  ModelOptions model;
  std::string basisFile;
  std::string table;
  std::string ops;
  std::string vars;
};

struct LoadedBasis {
  OperatorBasis basis;
  std::optional<ModelSpec> model;
};

inline LoadedBasis load_basis(const BasisOptions &o) {
  LoadedBasis out;
  int sources = !o.basisFile.empty() + !o.table.empty() + !o.ops.empty();
  if (sources > 1)
    throw UsageError("give at most one of --basis, --table, --ops");
  if (!o.model.model.empty())
    out.model = make_model(o.model);
  if (!o.table.empty()) {
    if (!out.model)
      out.model = model_schrodinger1d();
    if (out.model->name != "schrodinger1d")
      throw UsageError("--table is only available for the schrodinger1d model");
    if (o.table == "order2")
      out.basis = entries_basis(printed_order2_entries(), out.model->vars);
    else if (o.table == "order3")
      out.basis = entries_basis(printed_order3_entries(), out.model->vars);
    else
      throw UsageError("unknown table '" + o.table + "' (available: order2, order3)");
  } else if (!o.basisFile.empty()) {
    out.basis = basis_from_json(read_json_file(o.basisFile));
    if (out.model && out.model->vars != out.basis.vars)
      throw UsageError("basis file variables do not match the model");
  } else if (!o.ops.empty()) {
    std::vector<std::string> vars = !o.vars.empty() ? parse_var_list(o.vars)
                                    : out.model     ? out.model->vars
                                                    : throw UsageError("--ops needs --vars or --model");
    out.basis.vars = vars;
    for (const auto &text : split(o.ops, ';'))
      out.basis.push_back(load_operator(text, vars));
    for (std::size_t k = 0; k < out.basis.size(); ++k)
      if (out.basis[k] == DiffOperator::identity(vars.size()))
        out.basis.unitIndex = k;
  } else if (out.model) {
    out.basis = out.model->knownGenerators;
  } else {
    throw UsageError("no basis given (use --model, --basis, --table or --ops)");
  }
  if (out.basis.size() == 0)
    throw UsageError("empty basis");
  return out;
}

inline void print_op_line(std::ostream &os, const std::string &label, const DiffOperator &op,
                          const std::vector<std::string> &vars, Format f) {
  if (f == Format::Latex)
    os << label << " &= " << print_operator(op, vars, PrintStyle::Latex) << " \\\\\n";
  else
    os << label << " = " << print_operator(op, vars) << "\n";
}

inline void emit_operator(std::ostream &os, const DiffOperator &op, const std::vector<std::string> &vars,
                          Format f) {
  if (f == Format::Json)
    os << operator_to_json(op, vars).dump(2) << "\n";
  else
    os << print_operator(op, vars, style_of(f)) << "\n";
}

/// Combination sum_k c_k name_k in text or LaTeX.
inline std::string print_combination(const std::vector<GaussianRational> &coords, const OperatorBasis &b,
                                     PrintStyle style) {
  std::vector<symctr::detail::SignedText> parts;
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (!coords[k].is_zero())
      parts.push_back(symctr::detail::scalar_times(coords[k], b.name(k), style));
  return symctr::detail::join_signed(parts);
}

inline int emit_report(std::ostream &os, const ReportDocument &r, Format f) {
  if (f == Format::Json) {
    os << report_to_json(r).dump(2) << "\n";
  } else {
    os << "# " << r.title << "\n";
    for (const auto &[key, value] : r.metadata.items())
      os << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    for (const auto &c : r.checks) {
      os << (c.informational ? "INFO " : c.ok ? "PASS " : "FAIL ") << c.name << "\n";
      if (c.residual)
        os << "  residual: " << *c.residual << "\n";
      for (const auto &[key, value] : c.details.items())
        os << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
    std::size_t total = 0, failed = 0;
    for (const auto &c : r.checks)
      if (!c.informational) {
        ++total;
        failed += !c.ok;
      }
    os << "# " << total - failed << "/" << total << " checks passed\n";
  }
  return r.ok() ? Success : Residual;
}

inline ReportCheck residual_check(const std::string &name, const DiffOperator &residual,
                                  const std::vector<std::string> &vars, Format f) {
  ReportCheck c;
  c.name = name;
  c.ok = residual.is_zero();
  if (!c.ok)
    c.residual = print_operator(residual, vars, style_of(f));
  return c;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  ModelOptions model;
  std::string H, vars, laurent, exps;
  int order = 1;
  int maxDegree = -1;
  bool noLaurent = false;
  bool grow = false;
};

inline ExpArg parse_exp_arg(const std::string &text, const std::vector<std::string> &vars) {
  DiffOperator op = parse_operator(text, vars);
  const std::size_t d = vars.size();
  ExpArg arg(d, GaussianRational{});
  for (const auto &[alpha, c] : op.terms()) {
    if (alpha.order() != 0)
      throw UsageError("--exp expects a linear form, got '" + text + "'");
    for (const auto &t : c.terms()) {
      int deg = 0;
      std::size_t var = 0;
      for (std::size_t v = 0; v < d; ++v)
        if (t.powers[v] != 0) {
          deg += t.powers[v];
          var = v;
        }
      if (t.has_exp() || deg != 1 || std::count(t.powers.begin(), t.powers.end(), 0) != static_cast<long>(d - 1))
        throw UsageError("--exp expects a linear form without constant term, got '" + text + "'");
      arg[var] += t.scalar;
    }
  }
  return arg;
}

inline int cmd_solve(const SolveOptions &o, std::ostream &os, Format f) {
  DiffOperator H;
  std::vector<std::string> vars;
  std::optional<std::size_t> laurent;
  std::string label;
  if (!o.model.model.empty()) {
    if (!o.H.empty())
      throw UsageError("give either --model or --H, not both");
    ModelSpec m = make_model(o.model);
    H = m.H;
    vars = m.vars;
    laurent = m.laurentIndex;
    label = m.name;
  } else {
    if (o.H.empty() || o.vars.empty())
      throw UsageError("solve needs --model, or --H together with --vars");
    vars = parse_var_list(o.vars);
    H = load_operator(o.H, vars);
    label = print_operator(H, vars);
  }
  if (!o.laurent.empty()) {
    auto it = std::find(vars.begin(), vars.end(), o.laurent);
    if (it == vars.end())
      throw UsageError("--laurent names unknown variable '" + o.laurent + "'");
    laurent = static_cast<std::size_t>(it - vars.begin());
  }
  if (o.noLaurent)
    laurent.reset();
  if (o.order < 0)
    throw UsageError("--order must be non-negative");

  AnsatzSpec spec = default_ansatz(vars.size(), o.order, laurent);
  if (o.maxDegree >= 0)
    spec.maxDegree = o.maxDegree;
  if (!o.exps.empty())
    for (const auto &e : split(o.exps, ';'))
      spec.expArgs.push_back(parse_exp_arg(e, vars));

  CentralizerBasis cb = solve_centralizer(H, spec);
  OperatorBasis basis;
  basis.vars = vars;
  for (std::size_t k = 0; k < cb.operators.size(); ++k)
    basis.push_back(cb.operators[k], "Z" + std::to_string(k + 1));
  LinearSystemSummary summary{cb.order, cb.unknowns, cb.equations, cb.rank, cb.operators.size()};

  std::optional<std::size_t> grownDim;
  if (o.grow) {
    AnsatzSpec bigger = spec;
    bigger.maxDegree += 1;
    if (laurent)
      bigger.laurentMin.at(*laurent) -= 1;
    grownDim = solve_centralizer(H, bigger).operators.size();
  }

  if (f == Format::Json) {
    json j = basis_to_json(basis, summary);
    j["order"] = cb.order;
    j["canonical"] = cb.canonical;
    if (grownDim)
      j["grow"] = {{"dimension", *grownDim}, {"changed", *grownDim != basis.size()}};
    os << j.dump(2) << "\n";
  } else {
    std::string varlist;
    for (const auto &v : vars)
      varlist += (varlist.empty() ? "" : ", ") + v;
    os << "# centralizer of " << label << " over (" << varlist << "), order <= " << cb.order << "\n";
    os << "# unknowns " << cb.unknowns << ", equations " << cb.equations << ", rank " << cb.rank
       << ", dimension " << basis.size() << "\n";
    for (std::size_t k = 0; k < basis.size(); ++k)
      print_op_line(os, f == Format::Latex ? "Z_{" + std::to_string(k + 1) + "}" : basis.name(k), basis[k], vars, f);
    if (grownDim)
      os << "# grow: dimension " << basis.size() << " -> " << *grownDim
         << (*grownDim != basis.size() ? " (changed)" : " (unchanged)") << "\n";
  }
  return grownDim && *grownDim != basis.size() ? Residual : Success;
}

// ---------------------------------------------------------------------------
// structure / subalgebra / reduce / symmetrize

inline int cmd_structure(const BasisOptions &o, std::ostream &os, Format f) {
  LoadedBasis lb = load_basis(o);
  const OperatorBasis &b = lb.basis;
  StructureConstants C;
  try {
    C = structure_constants(b);
  } catch (const ClosureError &e) {
    ReportDocument r;
    r.title = "structure constants";
    r.vars = b.vars;
    ReportCheck c = residual_check("[" + b.name(e.i()) + ", " + b.name(e.j()) + "] lies in the span", e.residual(),
                                   b.vars, f);
    r.checks.push_back(c);
    return emit_report(os, r, f);
  }
  const bool anti = C.is_antisymmetric(), jac = C.satisfies_jacobi();
  if (f == Format::Json) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < b.size(); ++k)
      names.push_back(b.name(k));
    json j = structure_to_json(C, names);
    j["antisymmetric"] = anti;
    j["jacobi"] = jac;
    os << j.dump(2) << "\n";
  } else {
    const PrintStyle st = style_of(f);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        auto coords = C.product_coords(i, j);
        if (std::all_of(coords.begin(), coords.end(), [](const auto &q) { return q.is_zero(); }))
          continue;
        os << "[" << b.name(i) << ", " << b.name(j) << "] = " << print_combination(coords, b, st) << "\n";
      }
    os << "# antisymmetry: " << (anti ? "exact" : "FAILS") << "\n";
    os << "# jacobi: " << (jac ? "exact" : "FAILS") << "\n";
  }
  return anti && jac ? Success : Residual;
}

inline int cmd_subalgebra(const BasisOptions &o, const std::string &subsetText, std::ostream &os, Format f) {
  LoadedBasis lb = load_basis(o);
  const OperatorBasis &b = lb.basis;
  auto subset = parse_indices(subsetText, b.size());
  SubalgebraReport rep = check_subalgebra_closed(b, subset);
  ReportDocument r;
  r.title = "subalgebra closure";
  r.vars = b.vars;
  std::string members;
  for (auto k : subset)
    members += (members.empty() ? "" : ", ") + b.name(k);
  ReportCheck c;
  c.name = "{" + members + "} is closed under the bracket";
  c.ok = rep.closed;
  if (!rep.closed) {
    c.residual = print_operator(rep.residual, b.vars, style_of(f));
    c.details["violating pair"] = "[" + b.name(rep.violatingPair->first) + ", " + b.name(rep.violatingPair->second) + "]";
  }
  r.checks.push_back(c);
  return emit_report(os, r, f);
}

inline std::string print_ncpoly(const NCPolynomial &p, PrintStyle style) {
  std::vector<symctr::detail::SignedText> parts;
  for (const auto &[m, q] : p.terms()) {
    std::string f;
    for (std::size_t k = 0; k < m.size(); ++k)
      f += (k ? (style == PrintStyle::Text ? "*" : " ") : "") +
           (style == PrintStyle::Text ? "e" + std::to_string(m[k] + 1) : "e_{" + std::to_string(m[k] + 1) + "}");
    parts.push_back(symctr::detail::scalar_times(q, f, style));
  }
  return symctr::detail::join_signed(parts);
}

struct ReduceOptions {
  BasisOptions basis;
  std::string word;
  int power = -1;
};

inline int cmd_reduce(const ReduceOptions &o, std::ostream &os, Format f) {
  if ((o.power >= 0) == !o.word.empty())
    throw UsageError("reduce needs exactly one of --word or --power");
  LoadedBasis lb = load_basis(o.basis);
  const OperatorBasis &b = lb.basis;
  StructureConstants C;
  try {
    C = structure_constants(b);
  } catch (const ClosureError &e) {
    ReportDocument r;
    r.title = "lie reduction";
    r.vars = b.vars;
    r.checks.push_back(residual_check("basis closes under the bracket", e.residual(), b.vars, f));
    return emit_report(os, r, f);
  }
  const PrintStyle st = style_of(f);
  ReportDocument r;
  r.title = "lie reduction";
  r.vars = b.vars;

  if (!o.word.empty()) {
    WordSum<GaussianRational> in;
    for (const auto &w : split(o.word, ';'))
      symctr::detail::accumulate(in, parse_indices(w, b.size()), GaussianRational(1));
    auto out = lie_reduce(in, C, b.unitIndex);
    std::vector<symctr::detail::SignedText> parts;
    for (const auto &[w, q] : out)
      parts.push_back(symctr::detail::scalar_times(q, word_to_string(w, &b), st));
    r.metadata["normal form"] = symctr::detail::join_signed(parts);
    r.metadata["words"] = out.size();
    r.checks.push_back(residual_check("normal form evaluates to the input", evaluate(b, in) - evaluate(b, out), b.vars, f));
    return emit_report(os, r, f);
  }

  // (sum_i e_i D_i)^n with symbolic noncommuting e_i, then a concrete check at e_i = i.
  const unsigned n = static_cast<unsigned>(o.power);
  auto sum = generic_power(b.size(), n);
  auto out = lie_reduce(sum, C, b.unitIndex);
  json words = json::array();
  for (const auto &[w, p] : out)
    words.push_back({{"word", word_to_string(w, &b)}, {"coefficient", print_ncpoly(p, st)}});
  r.metadata["power"] = n;
  r.metadata["normal-form words"] = out.size();

  DiffOperator L(b.dim());
  for (std::size_t k = 0; k < b.size(); ++k)
    L += GaussianRational(static_cast<long>(k + 1)) * b[k];
  DiffOperator reduced(b.dim());
  for (const auto &[w, p] : out) {
    GaussianRational v;
    for (const auto &[m, q] : p.terms()) {
      GaussianRational t = q;
      for (auto s : m)
        t *= GaussianRational(static_cast<long>(s + 1));
      v += t;
    }
    reduced += v * evaluate_word(b, w);
  }
  ReportCheck c = residual_check("normal form evaluates to L^" + std::to_string(n) + " at e_k = k",
                                 power(L, n) - reduced, b.vars, f);
  if (f == Format::Json)
    c.details["words"] = words;
  r.checks.push_back(c);
  int code = emit_report(os, r, f);
  if (f != Format::Json)
    for (const auto &w : words)
      os << w["word"].get<std::string>() << " : " << w["coefficient"].get<std::string>() << "\n";
  return code;
}

inline int cmd_symmetrize(const BasisOptions &o, const std::string &indicesText, std::ostream &os, Format f) {
  LoadedBasis lb = load_basis(o);
  const OperatorBasis &b = lb.basis;
  DiffOperator s = symmetrize(b, parse_indices(indicesText, b.size()));
  if (!lb.model) {
    emit_operator(os, s, b.vars, f);
    return Success;
  }
  ReportDocument r;
  r.title = "symmetrized product";
  r.vars = b.vars;
  r.metadata["operator"] = print_operator(s, b.vars, style_of(f));
  r.checks.push_back(residual_check("commutes with " + lb.model->name + " H", commutator(lb.model->H, s), b.vars, f));
  return emit_report(os, r, f);
}

// ---------------------------------------------------------------------------
// fracpow

struct FracOptions {
  long p = 1, m = 2;
  unsigned K = 2;
  std::string tau = "1";
  std::string algebraFile;
  std::string unit, element;
  unsigned cap = 64;
};

/// Truncated polynomial algebra Q[G]/(G^K) on the basis {1, G, ..., G^(K-1)}.
inline AbstractAlgebra truncated_polynomial_algebra(unsigned K) {
  AbstractAlgebra alg{StructureConstants(K), 0};
  for (unsigned i = 0; i < K; ++i)
    for (unsigned j = 0; i + j < K; ++j)
      alg.mult(i, j, i + j) = 1;
  return alg;
}

inline int cmd_fracpow(const FracOptions &o, std::ostream &os, Format f) {
  AbstractAlgebra alg;
  AbstractElement L;
  if (!o.algebraFile.empty()) {
    alg.mult = structure_from_json(read_json_file(o.algebraFile));
    if (o.unit.empty() || o.element.empty())
      throw UsageError("--algebra needs --unit and --element");
    alg.unitIndex = parse_indices(o.unit, alg.size()).at(0);
    if (!alg.unit_is_valid())
      throw UsageError("declared unit is not a two-sided identity of the table");
    auto coords = split(o.element, ',');
    if (coords.size() != alg.size())
      throw UsageError("--element needs " + std::to_string(alg.size()) + " coordinates");
    for (const auto &c : coords)
      L.coords.push_back(parse_scalar(c));
  } else {
    if (o.K < 1)
      throw UsageError("--K must be at least 1");
    alg = truncated_polynomial_algebra(o.K);
    L = AbstractElement::zero(o.K);
    L.coords[0] = parse_scalar(o.tau);
    if (o.K > 1)
      L.coords[1] = 1;
  }
  FracPowerResult res = frac_power(alg, L, o.p, o.m, o.cap);
  auto verified = verify_frac_power(alg, L, res);

  ReportDocument r;
  r.title = "fractional power L^(" + std::to_string(o.p) + "/" + std::to_string(o.m) + ")";
  r.metadata["exponent"] = res.tauExponent.get_str();
  r.metadata["tau"] = res.tau.to_string();
  r.metadata["nilpotency degree"] = res.nilpotencyDegree;
  json coeffs = json::array();
  for (const auto &c : res.gCoefficients)
    coeffs.push_back(c.get_str());
  r.metadata["coefficients"] = coeffs;
  if (verified) {
    ReportCheck c;
    c.name = "(sum_k c_k G^k)^m = L^p";
    c.ok = *verified;
    r.checks.push_back(c);
  }
  return emit_report(os, r, f);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  ModelOptions model;
  std::string check;
  unsigned n = 0;
  std::string alpha;
};

inline AlphaMatrix parse_alpha(const std::string &text, std::size_t dim) {
  if (text.empty())
    return AlphaMatrix::ones(dim);
  AlphaMatrix A;
  for (const auto &row : split(text, ';')) {
    std::vector<GaussianRational> r;
    for (const auto &e : split(row, ','))
      r.push_back(parse_scalar(e));
    A.a.push_back(std::move(r));
  }
  if (A.size() != dim)
    throw UsageError("--alpha must be " + std::to_string(dim) + "x" + std::to_string(dim));
  try {
    A.validate();
  } catch (const Error &e) {
    throw UsageError(e.what());
  }
  return A;
}

inline void add_entry_checks(ReportDocument &r, const ModelSpec &m, const std::vector<std::pair<std::string, std::string>> &entries,
                             int order, Format f) {
  CentralizerBasis cb = solve_centralizer(m.H, default_ansatz(m.dim(), order, m.laurentIndex));
  const std::size_t expected = count_formula(4, static_cast<unsigned long>(order)).get_ui();
  ReportCheck dim;
  dim.name = "order-" + std::to_string(order) + " centralizer dimension is " + std::to_string(expected);
  dim.ok = cb.operators.size() == expected;
  dim.details["dimension"] = cb.operators.size();
  r.checks.push_back(dim);
  ReportCheck rec;
  rec.name = "computed basis recommutes with H";
  rec.ok = std::all_of(cb.operators.begin(), cb.operators.end(),
                       [&](const auto &op) { return commutator(m.H, op).is_zero(); });
  r.checks.push_back(rec);
  OperatorBasis printed = entries_basis(entries, m.vars);
  for (const auto &e : cross_check_entries(m.H, printed, cb.operators)) {
    r.checks.push_back(residual_check(e.name + " commutes with H", e.commutator, m.vars, f));
    r.checks.push_back(residual_check(e.name + " lies in the computed span", e.spanResidual, m.vars, f));
  }
}

inline void add_generator_checks(ReportDocument &r, const ModelSpec &m, Format f) {
  const OperatorBasis &g = m.knownGenerators;
  for (std::size_t k = 0; k < g.size(); ++k)
    r.checks.push_back(residual_check(g.name(k) + " commutes with H", commutator(m.H, g[k]), m.vars, f));
  CentralizerBasis cb = solve_centralizer(m.H, default_ansatz(m.dim(), 1, m.laurentIndex));
  OperatorBasis span;
  span.vars = m.vars;
  span.ops = cb.operators;
  for (std::size_t k = 0; k < g.size(); ++k)
    r.checks.push_back(residual_check(g.name(k) + " lies in the order-1 span", span_residual(g[k], span), m.vars, f));
  ReportCheck dim;
  dim.name = "order-1 centralizer dimension equals the generator count";
  dim.ok = cb.operators.size() == g.size();
  dim.details["dimension"] = cb.operators.size();
  dim.details["generators"] = g.size();
  r.checks.push_back(dim);
  ReportCheck sc;
  sc.name = "structure constants are antisymmetric and satisfy Jacobi";
  try {
    StructureConstants C = structure_constants(g);
    sc.ok = C.is_lie_valid();
  } catch (const ClosureError &e) {
    sc.ok = false;
    sc.residual = print_operator(e.residual(), m.vars, style_of(f));
  }
  r.checks.push_back(sc);
}

inline int cmd_verify(const VerifyOptions &o, std::ostream &os, Format f) {
  ReportDocument r;
  const std::string &chk = o.check;
  if (chk == "clifford") {
    r.title = "Clifford condition on the Dirac shadow algebra";
    r.metadata["signature"] = "(+,-,-,-)";
    AbstractAlgebra alg = dirac_shadow_algebra();
    std::vector<GaussianRational> eta;
    for (std::size_t mu = 0; mu < 4; ++mu)
      eta.push_back(minkowski_eta(mu));
    ReportCheck c;
    c.name = "{K^mu, K^nu} = 8 eta^{mu nu} unit";
    c.ok = clifford_condition_check(alg, {0, 1, 2, 3}, eta, 8);
    r.checks.push_back(c);
    return emit_report(os, r, f);
  }
  if (o.model.model.empty())
    throw UsageError("verify --check " + chk + " needs --model");
  ModelOptions mo = o.model;
  if (chk == "solve" && mo.d == 0)
    mo.d = 1;
  ModelSpec m = make_model(mo);
  r.vars = m.vars;
  r.metadata["model"] = m.name;
  if (!m.signature.empty())
    r.metadata["signature"] = m.signature;
  for (const auto &[k, v] : m.parameters)
    r.metadata[k] = v.to_string();

  auto need = [&](std::initializer_list<const char *> models) {
    for (const char *name : models)
      if (m.name == name)
        return;
    throw UsageError("check '" + chk + "' is not available for model " + m.name);
  };

  if (chk == "generators") {
    r.title = "known generators of " + m.name;
    add_generator_checks(r, m, f);
  } else if (chk == "order2") {
    need({"schrodinger1d"});
    r.title = "second-order basis cross-check";
    add_entry_checks(r, m, printed_order2_entries(), 2, f);
  } else if (chk == "order3") {
    need({"schrodinger1d"});
    r.title = "third-order basis cross-check";
    add_entry_checks(r, m, printed_order3_entries(), 3, f);
  } else if (chk == "dimensions") {
    need({"schrodinger1d"});
    r.title = "centralizer dimensions";
    const unsigned nMax = o.n ? o.n : 3;
    for (unsigned n = 1; n <= nMax; ++n) {
      auto cb = solve_centralizer(m.H, default_ansatz(m.dim(), static_cast<int>(n), m.laurentIndex));
      const std::size_t expected = count_formula(4, n).get_ui();
      ReportCheck c;
      c.name = "order " + std::to_string(n) + " dimension is " + std::to_string(expected);
      c.ok = cb.operators.size() == expected;
      c.details["dimension"] = cb.operators.size();
      r.checks.push_back(c);
    }
  } else if (chk == "solve") {
    need({"kg"});
    r.title = "order-1 centralizer of the box operator";
    auto cb = solve_centralizer(m.H, default_ansatz(m.dim(), 1, m.laurentIndex));
    ReportCheck c;
    c.name = "dimension equals 1 + (d+1) + (d+1)d/2";
    c.ok = cb.operators.size() == m.knownGenerators.size();
    c.details["dimension"] = cb.operators.size();
    c.details["expected"] = m.knownGenerators.size();
    r.checks.push_back(c);
  } else if (chk == "brackets") {
    need({"kg", "kg4th", "harmonic-pert"});
    r.title = "deformed generator brackets";
    AlphaMatrix A = parse_alpha(o.alpha, m.dim());
    DeformedBracketReport rep = check_deformed_brackets(A);
    for (const auto &g : rep.groups) {
      ReportCheck c;
      c.name = g.name;
      c.ok = g.holds();
      c.informational = !g.claim;
      c.details["instances"] = g.instances;
      c.details["nonzero"] = g.failures.size();
      if (!g.failures.empty()) {
        c.details["first"] = g.failures.front().name;
        c.residual = print_operator(g.failures.front().residual, m.vars, style_of(f));
      }
      r.checks.push_back(c);
    }
  } else if (chk == "dilation") {
    need({"kg", "kg4th"});
    r.title = "dilation tower";
    for (const auto &s : verify_dilation_tower(o.n ? o.n : 2, m.dim())) {
      r.checks.push_back(residual_check(s.scaling.name, s.scaling.residual, m.vars, f));
      r.checks.push_back(residual_check(s.comparison.name, s.comparison.residual, m.vars, f));
    }
  } else if (chk == "harmonic") {
    need({"harmonic-pert"});
    r.title = "harmonic perturbation brackets";
    HarmonicReport h = verify_harmonic_perturbation(m.parameters.at("c1"), m.parameters.at("K"), m.parameters.at("k"),
                                                    parse_alpha(o.alpha, 2));
    r.metadata["D_eps"] = print_operator(h.Deps, m.vars, style_of(f));
    r.checks.push_back(residual_check(h.translation.name, h.translation.residual, m.vars, f));
    r.checks.push_back(residual_check(h.rotation.name, h.rotation.residual, m.vars, f));
    ReportCheck dec;
    dec.name = "[H0 + k x^2, D_eps] decomposes over the dictionary";
    dec.ok = h.decomposition.has_value();
    dec.details["bracket"] = print_operator(h.potentialBracket, m.vars, style_of(f));
    if (h.decomposition) {
      OperatorBasis names;
      names.vars = m.vars;
      names.names = h.dictionaryNames;
      names.ops = h.dictionary;
      dec.details["decomposition"] = print_combination(*h.decomposition, names, PrintStyle::Text);
    } else {
      dec.residual = print_operator(h.decompositionResidual, m.vars, style_of(f));
    }
    r.checks.push_back(dec);
  } else {
    throw UsageError("unknown check '" + chk +
                     "' (available: generators, order2, order3, dimensions, solve, brackets, dilation, harmonic, "
                     "clifford)");
  }
  return emit_report(os, r, f);
}

} // namespace detail

/// Runs one command line (without the program name); output goes to `out`,
/// diagnostics to `err`. Returns the process exit code.
inline int run(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
  using namespace detail;
  CLI::App app{"Exact centralizers and symmetry algebras of differential operators", "symctr"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string formatText = "text";
  app.add_option("--format", formatText, "Output format")
      ->check(CLI::IsMember({"text", "json", "latex"}))
      ->capture_default_str();

  auto add_model = [](CLI::App *sub, ModelOptions &m) {
    sub->add_option("--model", m.model, "Built-in model: schrodinger1d, kg, kg4th, harmonic-pert");
    sub->add_option("--d", m.d, "Spatial dimension for kg/kg4th");
    sub->add_option("--a", m.a, "kg4th parameter a");
    sub->add_option("--c1", m.c1, "harmonic-pert parameter c1");
    sub->add_option("--K", m.K, "harmonic-pert parameter K");
    sub->add_option("--k", m.k, "harmonic-pert potential strength k");
  };
  auto add_basis = [&](CLI::App *sub, BasisOptions &b) {
    add_model(sub, b.model);
    sub->add_option("--basis", b.basisFile, "Basis document (JSON)");
    sub->add_option("--table", b.table, "Printed basis: order2 or order3");
    sub->add_option("--ops", b.ops, "Semicolon-separated operator expressions");
    sub->add_option("--vars", b.vars, "Comma-separated variable names");
  };

  SolveOptions solveOpt;
  auto *solve = app.add_subcommand("solve", "Centralizer basis of a central operator up to a given order");
  add_model(solve, solveOpt.model);
  solve->add_option("--H", solveOpt.H, "Central operator expression");
  solve->add_option("--vars", solveOpt.vars, "Comma-separated variable names");
  solve->add_option("--order", solveOpt.order, "Maximal operator order")->required();
  solve->add_option("--max-degree", solveOpt.maxDegree, "Total degree bound of coefficient monomials");
  solve->add_option("--laurent", solveOpt.laurent, "Variable admitting a negative power");
  solve->add_flag("--no-laurent", solveOpt.noLaurent, "Polynomial coefficients only");
  solve->add_option("--exp", solveOpt.exps, "Semicolon-separated exponential arguments");
  solve->add_flag("--grow", solveOpt.grow, "Re-solve with larger bounds and compare dimensions");

  std::string A, B, vars;
  auto *commute = app.add_subcommand("commute", "Commutator [A, B]");
  auto *composeCmd = app.add_subcommand("compose", "Composition A o B");
  for (auto *sub : {commute, composeCmd}) {
    sub->add_option("--vars", vars, "Comma-separated variable names")->required();
    sub->add_option("--A", A, "First operator (expression or @file.json)")->required();
    sub->add_option("--B", B, "Second operator (expression or @file.json)")->required();
  }

  BasisOptions basisOpt;
  auto *structure = app.add_subcommand("structure", "Structure constants of a Lie-closed basis");
  add_basis(structure, basisOpt);

  std::string subsetText;
  auto *subalgebra = app.add_subcommand("subalgebra", "Closure test for a subset of a basis");
  add_basis(subalgebra, basisOpt);
  subalgebra->add_option("--subset", subsetText, "1-based member indices, e.g. 1,4,5")->required();

  ReduceOptions reduceOpt;
  auto *reduce = app.add_subcommand("reduce", "Lie reduction of operator words to normal form");
  add_basis(reduce, reduceOpt.basis);
  reduce->add_option("--word", reduceOpt.word, "Words as 1-based index lists, separated by ';'");
  reduce->add_option("--power", reduceOpt.power, "Expand the generic first-order element to this power");

  std::string indicesText;
  auto *symm = app.add_subcommand("symmetrize", "Cyclically symmetrized product of basis members");
  add_basis(symm, basisOpt);
  symm->add_option("--indices", indicesText, "1-based member indices")->required();

  FracOptions fracOpt;
  auto *frac = app.add_subcommand("fracpow", "Fractional power of tau*unit + nilpotent");
  frac->add_option("--p", fracOpt.p, "Numerator of the exponent");
  frac->add_option("--m", fracOpt.m, "Denominator of the exponent");
  frac->add_option("--K", fracOpt.K, "Nilpotency degree of the built-in truncated algebra");
  frac->add_option("--tau", fracOpt.tau, "Unit coordinate of L");
  frac->add_option("--algebra", fracOpt.algebraFile, "Multiplication table (structure-constants JSON)");
  frac->add_option("--unit", fracOpt.unit, "1-based index of the unit in --algebra");
  frac->add_option("--element", fracOpt.element, "Comma-separated coordinates of L in --algebra");

  VerifyOptions verifyOpt;
  auto *verify = app.add_subcommand("verify", "Run a model verification suite");
  add_model(verify, verifyOpt.model);
  verify->add_option("--check", verifyOpt.check, "generators, order2, order3, dimensions, solve, brackets, "
                                                 "dilation, harmonic or clifford")
      ->required();
  verify->add_option("--n", verifyOpt.n, "Order or tower height");
  verify->add_option("--alpha", verifyOpt.alpha, "Alpha matrix rows separated by ';'");

  unsigned long countN = 0, countn = 0;
  auto *count = app.add_subcommand("count", "Counting formula (n+N-1)!/((N-1)! n!)");
  count->add_option("--N", countN, "Number of first-order generators")->required();
  count->add_option("--n", countn, "Order")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return Success;
  } catch (const CLI::CallForAllHelp &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return Success;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  }

  const Format f = formatText == "json" ? Format::Json : formatText == "latex" ? Format::Latex : Format::Text;
  try {
    if (solve->parsed())
      return cmd_solve(solveOpt, out, f);
    if (commute->parsed() || composeCmd->parsed()) {
      auto v = parse_var_list(vars);
      DiffOperator a = load_operator(A, v), b = load_operator(B, v);
      emit_operator(out, commute->parsed() ? commutator(a, b) : symctr::compose(a, b), v, f);
      return Success;
    }
    if (structure->parsed())
      return cmd_structure(basisOpt, out, f);
    if (subalgebra->parsed())
      return cmd_subalgebra(basisOpt, subsetText, out, f);
    if (reduce->parsed())
      return cmd_reduce(reduceOpt, out, f);
    if (symm->parsed())
      return cmd_symmetrize(basisOpt, indicesText, out, f);
    if (frac->parsed())
      return cmd_fracpow(fracOpt, out, f);
    if (verify->parsed())
      return cmd_verify(verifyOpt, out, f);
    if (count->parsed()) {
      mpz_class c = count_formula(countN, countn);
      if (f == Format::Json)
        out << json{{"schema", kSchemaVersion}, {"N", countN}, {"n", countn}, {"count", c.get_str()}}.dump(2) << "\n";
      else
        out << c.get_str() << "\n";
      return Success;
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  }
  return Usage;
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k)
    args.emplace_back(argv[k]);
  return run(std::move(args), out, err);
}

} // namespace symctr::cli
