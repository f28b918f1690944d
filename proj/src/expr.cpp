#include "multfun/expr.hpp"

#include <cctype>
#include <optional>

#include "multfun/catalog.hpp"
#include "multfun/convolute.hpp"
#include "multfun/convolution.hpp"

namespace multfun {

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  int r;

  explicit Parser(const std::string& text, int ambient) : s(text), r(ambient) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (start == pos) throw ParseError("expected a name", pos);
    return s.substr(start, pos - start);
  }

  std::vector<FnR> args(const std::string& op) {
    std::vector<FnR> out;
    if (!eat('(')) throw ParseError("expected '(' after " + op, pos);
    out.push_back(expr());
    while (eat(',')) out.push_back(expr());
    if (!eat(')')) throw ParseError("expected ')' closing " + op, pos);
    return out;
  }

  FnR expect_n(const std::string& op, std::vector<FnR> a, size_t n) {
    if (a.size() != n)
      throw ParseError(op + " takes " + std::to_string(n) + " argument(s)", pos);
    return a[0];
  }

  std::optional<ConvKind> conv_kind(const std::string& name) {
    if (name == "dir") return ConvKind::dirichlet;
    if (name == "unit") return ConvKind::unitary;
    if (name == "gcd") return ConvKind::gcd;
    if (name == "lcm") return ConvKind::lcm;
    if (name == "binom") return ConvKind::binomial;
    return std::nullopt;
  }

  std::optional<ConvoluteKind> convolute_kind(const std::string& name) {
    if (name == "conv_dir") return ConvoluteKind::dir;
    if (name == "conv_unit") return ConvoluteKind::unit;
    if (name == "conv_gcd") return ConvoluteKind::gcd;
    if (name == "conv_lcm") return ConvoluteKind::lcm;
    if (name == "conv_binom") return ConvoluteKind::binom;
    return std::nullopt;
  }

  std::optional<ConvKind> inverse_kind(const std::string& name) {
    if (name == "inv_dir") return ConvKind::dirichlet;
    if (name == "inv_unit") return ConvKind::unitary;
    if (name == "inv_gcd") return ConvKind::gcd;
    if (name == "inv_lcm") return ConvKind::lcm;
    if (name == "inv_binom") return ConvKind::binomial;
    return std::nullopt;
  }

  FnR atom(const std::string& name, size_t at) {
    bool needs_param = false;
    FnR f = catalog::by_name(name, r, &needs_param);
    if (f) return f;
    // named one-variable convolutes
    if (name == "a_ram") return ramanujan_dir_fn();
    if (name == "b_ram") return ramanujan_unit_fn();
    if (name == "h_ram") return ramanujan_lcm_fn();
    if (name == "parab") return parabolic_fn();
    if (name == "ccyc") return cyclic_diag_fn();
    // k-families carry their parameter as a trailing _<int>
    auto us = name.rfind('_');
    if (us != std::string::npos && us + 1 < name.size()) {
      std::string head = name.substr(0, us);
      std::string tail = name.substr(us + 1);
      bool digits = !tail.empty() &&
                    std::all_of(tail.begin(), tail.end(),
                                [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
      if (digits) {
        long k = std::stol(tail);
        FnR g = catalog::by_name_param(head, k, r);
        if (g) return g;
        int ki = static_cast<int>(k);
        if (head == "g" && ki >= 2) return g_r_fn(ki);
        if (head == "ell" && ki >= 2) return ell_r_fn(ki);
        if (head == "hr" && ki >= 1) return h_r_closed(ki);
        if (head == "nr" && ki >= 1) return n_r_closed(ki);
        if (head == "mr" && ki >= 1) return m_r_closed(ki);
        if (head == "qr" && ki >= 1) return q_r_closed(ki);
      }
    }
    throw ParseError("unknown function name '" + name + "'", at);
  }

  void require_arity(const FnR& f, int want, const std::string& op) {
    if (f.arity() != want)
      throw ParseError(op + ": operand has arity " + std::to_string(f.arity()) +
                           ", expected " + std::to_string(want),
                       pos);
  }

  FnR expr() {
    skip_ws();
    size_t at = pos;
    std::string name = ident();
    skip_ws();
    bool call = pos < s.size() && s[pos] == '(';
    if (!call) return atom(name, at);

    if (auto k = conv_kind(name)) {
      auto a = args(name);
      if (a.size() != 2) throw ParseError(name + " convolution takes 2 arguments", at);
      if (a[0].arity() != a[1].arity())
        throw ParseError(name + ": operands have different arities", at);
      return convolve(*k, a[0], a[1]);
    }
    if (auto k = inverse_kind(name)) {
      auto a = args(name);
      return inverse(*k, expect_n(name, a, 1));
    }
    if (auto k = convolute_kind(name)) {
      auto a = args(name);
      return convolute(*k, expect_n(name, a, 1));
    }
    if (name == "lift") {
      auto a = args(name);
      for (const auto& g : a) require_arity(g, 1, name);
      return from_one_variable_product(a);
    }
    if (name == "of_gcd") {
      auto a = args(name);
      FnR g = expect_n(name, a, 1);
      require_arity(g, 1, name);
      return catalog::g_of_gcd(g, r);
    }
    if (name == "of_lcm") {
      auto a = args(name);
      FnR g = expect_n(name, a, 1);
      require_arity(g, 1, name);
      return catalog::g_of_lcm(g, r);
    }
    if (name == "embed") {
      auto a = args(name);
      FnR g = expect_n(name, a, 1);
      require_arity(g, 1, name);
      return embed_first(g, r);
    }
    if (name == "mul" || name == "add") {
      auto a = args(name);
      if (a.size() != 2) throw ParseError(name + " takes 2 arguments", at);
      if (a[0].arity() != a[1].arity())
        throw ParseError(name + ": operands have different arities", at);
      return name == "mul" ? pointwise_mul(a[0], a[1]) : pointwise_add(a[0], a[1]);
    }
    if (name == "diag") {
      auto a = args(name);
      return diagonal(expect_n(name, a, 1));
    }
    throw ParseError("unknown operator '" + name + "'", at);
  }
};

}  // namespace

FnR parse_function_expr(const std::string& text, int ambient_arity) {
  Parser p(text, ambient_arity);
  FnR f = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return f;
}

}  // namespace multfun
