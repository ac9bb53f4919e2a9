#pragma once

// Side-by-side approximation table for a function around a base point:
// the sampled value f(x), the tangent-line approximation L(x), and the
// first-order multiplicative approximation E(x) = f(a) * (f^G(a))^{ln(x/a)}.
// E is only defined for x > 0, so rows at x <= 0 leave that column empty.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bigeo/derivative.hpp"
#include "bigeo/errors.hpp"
#include "bigeo/gfunction.hpp"
#include "bigeo/taylor.hpp"

namespace bigeo {

struct TableRow {
  double x = 0.0;
  double f = 0.0;
  double linear = 0.0;
  std::optional<double> exponential;  // present iff x > 0
};

inline std::vector<TableRow> build_table(const GFunction& f, double base,
                                         double from, double to, double step) {
  if (!(step > 0.0)) throw domain_error("build_table: step must be positive");
  if (!(from < to)) throw domain_error("build_table: from must be below to");

  // The slope and the order-1 expansion depend only on the base point, so
  // compute them once and reuse them for every row.
  const double fa = f(base);
  double slope;
  if (f.has_expr()) {
    slope = evaluate(differentiate(f.expr()), base);
  } else {
    slope = ordinary_from_g(f, base);
  }
  const TaylorExpansion exp1 = taylor_factors(f, base, 1);

  std::vector<TableRow> rows;
  const double snap = 1e-12 * std::max({std::fabs(from), std::fabs(to), 1.0});
  for (int i = 0;; ++i) {
    double x = from + i * step;
    if (x > to + step * 1e-9) break;
    if (std::fabs(x) <= snap) x = 0.0;  // keep grid hits on zero exact
    TableRow row;
    row.x = x;
    row.f = f(x);
    row.linear = fa + (x - base) * slope;
    if (x > 0.0) row.exponential = taylor_eval(exp1, x);
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace detail

inline void write_table_csv(const std::vector<TableRow>& rows,
                            std::ostream& os) {
  os << "x,f,L,E\n";
  for (const TableRow& row : rows) {
    os << detail::fixed6(row.x) << ',' << detail::fixed6(row.f) << ','
       << detail::fixed6(row.linear) << ',';
    if (row.exponential) os << detail::fixed6(*row.exponential);
    os << '\n';
  }
}

inline void write_table_csv(const std::vector<TableRow>& rows,
                            const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) throw io_error("cannot open for writing: " + path);
  write_table_csv(rows, out);
  out.flush();
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace bigeo
