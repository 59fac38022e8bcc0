#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "symctr/operator.hpp"

namespace symctr {

enum class PrintStyle { Text, Latex };

namespace detail {

/// A summand split into its sign and magnitude text, so callers can join
/// terms with ` + ` / ` - `.
struct SignedText {
  bool negative = false;
  std::string body;
};

inline std::string latex_rational(const mpq_class &q) {
  if (q.get_den() == 1)
    return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

/// Scalar factor multiplying `factors` (which may be empty).
inline SignedText scalar_times(const GaussianRational &q, const std::string &factors, PrintStyle style) {
  const std::string times = style == PrintStyle::Text ? "*" : " ";
  auto rat = [&](const mpq_class &r) { return style == PrintStyle::Text ? r.get_str() : latex_rational(r); };
  auto join = [&](std::string s) {
    if (factors.empty())
      return s;
    return s + times + factors;
  };
  SignedText out;
  if (q.is_real()) {
    out.negative = q.re() < 0;
    mpq_class a = abs(q.re());
    out.body = a == 1 && !factors.empty() ? factors : join(rat(a));
  } else if (q.is_imaginary()) {
    out.negative = q.im() < 0;
    mpq_class b = abs(q.im());
    std::string s = b == 1 ? "i" : rat(b) + times + "i";
    out.body = join(s);
  } else {
    std::string s = style == PrintStyle::Text ? "(" + q.to_string() + ")"
                                              : "\\left(" + rat(q.re()) + (q.im() > 0 ? " + " : " - ") +
                                                    (abs(q.im()) == 1 ? "" : rat(abs(q.im())) + " ") + "i\\right)";
    out.body = join(s);
  }
  return out;
}

inline std::string join_signed(const std::vector<SignedText> &parts) {
  if (parts.empty())
    return "0";
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k == 0)
      out += parts[k].negative ? "-" : "";
    else
      out += parts[k].negative ? " - " : " + ";
    out += parts[k].body;
  }
  return out;
}

inline std::string exp_argument(const ExpArg &lambda, const std::vector<std::string> &vars, PrintStyle style) {
  std::vector<SignedText> parts;
  for (std::size_t v = 0; v < lambda.size(); ++v)
    if (!lambda[v].is_zero())
      parts.push_back(scalar_times(lambda[v], vars[v], style));
  return join_signed(parts);
}

inline std::string monomial_factors(const CoeffTerm &t, const std::vector<std::string> &vars, PrintStyle style) {
  std::vector<std::string> f;
  for (std::size_t v = 0; v < t.powers.size(); ++v) {
    int p = t.powers[v];
    if (p == 0)
      continue;
    if (p == 1)
      f.push_back(vars[v]);
    else if (style == PrintStyle::Text)
      f.push_back(vars[v] + "^" + std::to_string(p));
    else
      f.push_back(vars[v] + "^{" + std::to_string(p) + "}");
  }
  if (t.has_exp()) {
    std::string arg = exp_argument(t.expArg, vars, style);
    f.push_back(style == PrintStyle::Text ? "exp(" + arg + ")" : "e^{" + arg + "}");
  }
  std::string out;
  for (std::size_t k = 0; k < f.size(); ++k)
    out += (k ? (style == PrintStyle::Text ? "*" : " ") : "") + f[k];
  return out;
}

inline std::string deriv_token(const DerivIndex &alpha, const std::vector<std::string> &vars, PrintStyle style) {
  if (style == PrintStyle::Text) {
    std::string s = "d[";
    bool first = true;
    for (std::size_t v = 0; v < alpha.alpha.size(); ++v)
      for (int k = 0; k < alpha.alpha[v]; ++k) {
        s += (first ? "" : ",") + vars[v];
        first = false;
      }
    return s + "]";
  }
  std::string s;
  for (std::size_t v = 0; v < alpha.alpha.size(); ++v) {
    int k = alpha.alpha[v];
    if (k == 0)
      continue;
    if (!s.empty())
      s += " ";
    s += "\\partial_{" + vars[v] + "}";
    if (k > 1)
      s += "^{" + std::to_string(k) + "}";
  }
  return s;
}

inline void check_vars(std::size_t dim, const std::vector<std::string> &vars) {
  if (vars.size() != dim)
    throw DimensionMismatch(dim, vars.size());
}

} // namespace detail

inline std::string print_coefficient(const Coefficient &c, const std::vector<std::string> &vars,
                                     PrintStyle style = PrintStyle::Text) {
  detail::check_vars(c.dim(), vars);
  std::vector<detail::SignedText> parts;
  for (const auto &t : c.terms())
    parts.push_back(detail::scalar_times(t.scalar, detail::monomial_factors(t, vars, style), style));
  return detail::join_signed(parts);
}

/// One summand per (derivative index, coefficient term), in canonical order,
/// e.g. `d[x,x] - i*d[t]`. The text style parses back to the same operator.
inline std::string print_operator(const DiffOperator &op, const std::vector<std::string> &vars,
                                  PrintStyle style = PrintStyle::Text) {
  detail::check_vars(op.dim(), vars);
  const std::string times = style == PrintStyle::Text ? "*" : " ";
  std::vector<detail::SignedText> parts;
  for (const auto &[alpha, c] : op.terms()) {
    std::string d = alpha.order() == 0 ? std::string{} : detail::deriv_token(alpha, vars, style);
    for (const auto &t : c.terms()) {
      std::string mono = detail::monomial_factors(t, vars, style);
      std::string factors = mono.empty() ? d : (d.empty() ? mono : mono + times + d);
      parts.push_back(detail::scalar_times(t.scalar, factors, style));
    }
  }
  return detail::join_signed(parts);
}

} // namespace symctr
