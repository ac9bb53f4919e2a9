// Command-line front end for the bigeo library.
//
// Subcommands: gderiv, table, ops, taylor, diff, triplet, elasticity.
// Exit codes: 0 success, 2 expression/usage error, 3 domain or convergence
// failure, 4 I/O failure.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bigeo/bigeo.hpp"

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string short_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Values print as "<value> = e^<log>"; once the value itself would overflow
// a sane decimal rendering only the exponent form is kept.
std::string show(const bigeo::GReal& v) {
  const double lg = v.log_value();
  if (std::fabs(lg) > 20.0) return "e^" + short_g(lg);
  return fixed6(v.value()) + " = e^" + short_g(lg);
}

double comparison_tolerance() {
  if (const char* env = std::getenv("BIGEO_TOL")) {
    char* end = nullptr;
    double tol = std::strtod(env, &end);
    if (end != env && tol > 0.0) return tol;
  }
  return 1e-6;
}

bigeo::GFunction fn_from_text(const std::string& text) {
  return bigeo::make_gfunction(text, 0.0,
                               std::numeric_limits<double>::infinity());
}

// Tiny evaluator for infix geometric arithmetic: literals, parentheses and
// the four operators +g -g *g /g, with *g//g binding tighter.
struct GeoToken {
  enum Kind { number, plus, minus, times, divide, lparen, rparen, end } kind;
  bigeo::GReal value = bigeo::geometric_zero();
  int col = 0;
};

std::vector<GeoToken> geo_lex(const std::string& s) {
  std::vector<GeoToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    const char c = s[i];
    if (c == '(') {
      out.push_back({GeoToken::lparen, bigeo::geometric_zero(), col});
      ++i;
      continue;
    }
    if (c == ')') {
      out.push_back({GeoToken::rparen, bigeo::geometric_zero(), col});
      ++i;
      continue;
    }
    const bool is_op = (c == '+' || c == '-' || c == '*' || c == '/') &&
                       i + 1 < s.size() && s[i + 1] == 'g';
    if (is_op) {
      GeoToken::Kind k = c == '+'   ? GeoToken::plus
                         : c == '-' ? GeoToken::minus
                         : c == '*' ? GeoToken::times
                                    : GeoToken::divide;
      out.push_back({k, bigeo::geometric_zero(), col});
      i += 2;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
        c == '+') {
      char* endp = nullptr;
      double v = std::strtod(s.c_str() + i, &endp);
      if (endp == s.c_str() + i) {
        throw bigeo::parse_error(col, "unexpected character");
      }
      // from_value rejects non-positive literals with a sign error.
      out.push_back({GeoToken::number, bigeo::GReal::from_value(v), col});
      i = static_cast<std::size_t>(endp - s.c_str());
      continue;
    }
    throw bigeo::parse_error(col, "unexpected character");
  }
  out.push_back({GeoToken::end, bigeo::geometric_zero(),
                 static_cast<int>(s.size()) + 1});
  return out;
}

class GeoParser {
 public:
  explicit GeoParser(std::vector<GeoToken> toks) : toks_(std::move(toks)) {}

  bigeo::GReal parse() {
    bigeo::GReal v = expr();
    if (peek().kind != GeoToken::end) {
      throw bigeo::parse_error(peek().col, "unexpected trailing input");
    }
    return v;
  }

 private:
  const GeoToken& peek() const { return toks_[pos_]; }
  const GeoToken& take() { return toks_[pos_++]; }

  bigeo::GReal expr() {
    bigeo::GReal v = term();
    while (peek().kind == GeoToken::plus || peek().kind == GeoToken::minus) {
      const GeoToken& op = take();
      bigeo::GReal rhs = term();
      v = op.kind == GeoToken::plus ? bigeo::g_add(v, rhs)
                                    : bigeo::g_sub(v, rhs);
    }
    return v;
  }

  bigeo::GReal term() {
    bigeo::GReal v = atom();
    while (peek().kind == GeoToken::times || peek().kind == GeoToken::divide) {
      const GeoToken& op = take();
      bigeo::GReal rhs = atom();
      v = op.kind == GeoToken::times ? bigeo::g_mul(v, rhs)
                                     : bigeo::g_div(v, rhs);
    }
    return v;
  }

  bigeo::GReal atom() {
    const GeoToken& t = take();
    if (t.kind == GeoToken::number) return t.value;
    if (t.kind == GeoToken::lparen) {
      bigeo::GReal v = expr();
      if (peek().kind != GeoToken::rparen) {
        throw bigeo::parse_error(peek().col, "expected ')'");
      }
      take();
      return v;
    }
    throw bigeo::parse_error(t.col, "expected a number or '('");
  }

  std::vector<GeoToken> toks_;
  std::size_t pos_ = 0;
};

int cmd_gderiv(const std::string& fn_text, double at, int order,
               const std::string& method) {
  bigeo::GFunction f = fn_from_text(fn_text);

  bool have_analytic = false, have_numeric = false;
  bigeo::GReal analytic = bigeo::geometric_zero();
  bigeo::GReal numeric = bigeo::geometric_zero();

  if (method == "analytic" || method == "both") {
    analytic = bigeo::g_derivative_n_analytic(f.expr(), at, order);
    std::cout << "analytic: " << show(analytic) << "\n";
    have_analytic = true;
  }
  if (method == "numeric" || method == "both") {
    if (order == 1) {
      bigeo::GDerivativeResult res = bigeo::g_derivative_numeric(f, at);
      if (!res.value) {
        std::cout << "numeric: one-sided only: left "
                  << show(res.one_sided->first) << ", right "
                  << show(res.one_sided->second) << "\n";
        std::cerr << "no two-sided limit at " << short_g(at) << "\n";
        return 3;
      }
      numeric = *res.value;
    } else {
      numeric = bigeo::g_derivative_n_numeric(f, at, order);
    }
    std::cout << "numeric: " << show(numeric) << "\n";
    have_numeric = true;
  }
  if (have_analytic && have_numeric) {
    const double gap = std::fabs(analytic.log_value() - numeric.log_value());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", gap);
    std::cout << "discrepancy: " << buf << "\n";
    const double tol = comparison_tolerance();
    if (gap > tol) {
      std::cerr << "methods disagree beyond tolerance " << short_g(tol)
                << "\n";
      return 3;
    }
  }
  return 0;
}

int cmd_table(const std::string& fn_text, double base, double from, double to,
              double step, const std::string& out) {
  bigeo::GFunction f = fn_from_text(fn_text);
  std::vector<bigeo::TableRow> rows =
      bigeo::build_table(f, base, from, to, step);
  if (out.empty()) {
    bigeo::write_table_csv(rows, std::cout);
  } else {
    bigeo::write_table_csv(rows, out);
  }
  return 0;
}

int cmd_ops(const std::string& text) {
  bigeo::GReal v = GeoParser(geo_lex(text)).parse();
  std::cout << show(v) << "\n";
  return 0;
}

int cmd_taylor(const std::string& fn_text, double base, int order, double at) {
  bigeo::GFunction f = fn_from_text(fn_text);
  bigeo::TaylorExpansion t = bigeo::taylor_factors(f, base, order);
  const double lg = bigeo::taylor_eval_log(t, at);
  std::cout << "approx: " << show(bigeo::GReal::from_log(lg)) << "\n";
  return 0;
}

int cmd_diff(const std::string& fn_text, double base, double step, int order,
             const std::string& method) {
  bigeo::GFunction f = fn_from_text(fn_text);
  bigeo::GReal h = bigeo::GReal::from_value(step);
  bigeo::GReal d = method == "backward"
                       ? bigeo::backward_diff(f, base, h, order)
                       : bigeo::forward_diff(f, base, h, order);
  std::cout << method << " difference of order " << order << ": " << show(d)
            << "\n";
  return 0;
}

int cmd_triplet(long long m) {
  bigeo::GTriplet t = bigeo::triplet_generate(m);
  std::cout << "e^" << short_g(t.hyp().log_value()) << ", e^"
            << short_g(t.opp().log_value()) << ", e^"
            << short_g(t.adj().log_value()) << "\n";
  return 0;
}

int cmd_elasticity(const std::string& fn_text, double at) {
  bigeo::ElasticityReport rep =
      bigeo::price_elasticity(fn_from_text(fn_text), at);
  std::cout << "E_p=" << fixed6(rep.elasticity)
            << ", resiliency=" << fixed6(rep.resiliency.value()) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bigeometric calculus toolkit"};
  app.require_subcommand(1);

  std::string gd_fn, gd_method = "analytic";
  double gd_at = 1.0;
  int gd_order = 1;
  CLI::App* gd = app.add_subcommand(
      "gderiv", "multiplicative derivative of an expression at a point");
  gd->add_option("fn", gd_fn, "expression in x")->required();
  gd->add_option("--at", gd_at, "evaluation point")->required();
  gd->add_option("--order", gd_order, "derivative order (default 1)");
  gd->add_option("--method", gd_method, "analytic, numeric or both")
      ->check(CLI::IsMember({"analytic", "numeric", "both"}));

  std::string tb_fn = "sin(x)", tb_out;
  double tb_base = std::numbers::pi / 6.0;
  double tb_from = -2.0, tb_to = 5.2, tb_step = 0.4;
  CLI::App* tb = app.add_subcommand(
      "table", "tangent-line vs exponential approximation table (CSV)");
  tb->add_option("--fn", tb_fn, "expression in x (default sin(x))");
  tb->add_option("--base", tb_base, "expansion point (default pi/6)");
  tb->add_option("--from", tb_from, "first x (default -2)");
  tb->add_option("--to", tb_to, "last x (default 5.2)");
  tb->add_option("--step", tb_step, "grid step (default 0.4)");
  tb->add_option("--out", tb_out, "output path (default stdout)");

  std::string ops_text;
  CLI::App* ops = app.add_subcommand(
      "ops", "evaluate infix geometric arithmetic (+g -g *g /g)");
  ops->add_option("expr", ops_text, "expression over positive literals")
      ->required();

  std::string ty_fn;
  double ty_base = 1.0, ty_at = 1.0;
  int ty_order = 1;
  CLI::App* ty = app.add_subcommand(
      "taylor", "multiplicative Taylor approximation of an expression");
  ty->add_option("fn", ty_fn, "expression in x")->required();
  ty->add_option("--base", ty_base, "expansion point")->required();
  ty->add_option("--order", ty_order, "truncation order (default 1)");
  ty->add_option("--at", ty_at, "evaluation point")->required();

  std::string df_fn, df_method = "forward";
  double df_base = 1.0, df_step = std::numbers::e;
  int df_order = 1;
  CLI::App* df = app.add_subcommand(
      "diff", "geometric finite difference of an expression");
  df->add_option("fn", df_fn, "expression in x")->required();
  df->add_option("--base", df_base, "base point")->required();
  df->add_option("--step", df_step, "geometric step h > 0, h != 1");
  df->add_option("--order", df_order, "difference order (default 1)");
  df->add_option("--method", df_method, "forward or backward")
      ->check(CLI::IsMember({"forward", "backward"}));

  long long tp_m = 2;
  CLI::App* tp =
      app.add_subcommand("triplet", "geometric Pythagorean triplet from m");
  tp->add_option("--m", tp_m, "generator m >= 2")->required();

  std::string el_fn;
  double el_at = 1.0;
  CLI::App* el = app.add_subcommand(
      "elasticity", "price elasticity and resiliency of a demand curve");
  el->add_option("fn", el_fn, "demand expression in x (price)")->required();
  el->add_option("--at", el_at, "price point")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gd->parsed()) return cmd_gderiv(gd_fn, gd_at, gd_order, gd_method);
    if (tb->parsed())
      return cmd_table(tb_fn, tb_base, tb_from, tb_to, tb_step, tb_out);
    if (ops->parsed()) return cmd_ops(ops_text);
    if (ty->parsed()) return cmd_taylor(ty_fn, ty_base, ty_order, ty_at);
    if (df->parsed())
      return cmd_diff(df_fn, df_base, df_step, df_order, df_method);
    if (tp->parsed()) return cmd_triplet(tp_m);
    if (el->parsed()) return cmd_elasticity(el_fn, el_at);
  } catch (const bigeo::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const bigeo::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
