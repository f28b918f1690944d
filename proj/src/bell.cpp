#include "multfun/bell.hpp"

#include <stdexcept>

#include "multfun/convolution.hpp"

namespace multfun {

size_t BellSeries::index_of(const Exps& e) const {
  size_t idx = 0;
  size_t stride = 1;
  for (int i = 0; i < arity; ++i) {
    idx += e[static_cast<size_t>(i)] * stride;
    stride *= static_cast<size_t>(degree) + 1;
  }
  return idx;
}

const Rat& BellSeries::at(const Exps& e) const { return coef[index_of(e)]; }
Rat& BellSeries::at(const Exps& e) { return coef[index_of(e)]; }

namespace {

void for_each_exps(int r, int degree, const std::function<void(const Exps&)>& fn) {
  Exps e(static_cast<size_t>(r), 0);
  while (true) {
    fn(e);
    size_t i = 0;
    while (i < e.size() && e[i] == static_cast<std::uint32_t>(degree)) e[i++] = 0;
    if (i == e.size()) break;
    ++e[i];
  }
}

}  // namespace

BellSeries bell_series(const FnR& f, u64 p, int degree) {
  if (!at_least_multiplicative(f.fn_class()) || !f.has_local())
    throw std::invalid_argument("bell_series: needs a multiplicative function with local data");
  BellSeries b;
  b.p = p;
  b.arity = f.arity();
  b.degree = degree;
  size_t total = 1;
  for (int i = 0; i < b.arity; ++i) total *= static_cast<size_t>(degree) + 1;
  b.coef.resize(total);
  for_each_exps(b.arity, degree, [&](const Exps& e) { b.at(e) = f.local(p, e); });
  return b;
}

BellSeries bell_multiply(const BellSeries& a, const BellSeries& b) {
  if (a.p != b.p || a.arity != b.arity || a.degree != b.degree)
    throw std::invalid_argument("bell_multiply: mismatched base, arity or degree");
  BellSeries out;
  out.p = a.p;
  out.arity = a.arity;
  out.degree = a.degree;
  out.coef.assign(a.coef.size(), rat(0));
  for_each_exps(a.arity, a.degree, [&](const Exps& e) {
    // sum over u <= e of a[u] * b[e-u]
    Exps u(e.size(), 0), v(e.size(), 0);
    while (true) {
      for (size_t i = 0; i < e.size(); ++i) v[i] = e[i] - u[i];
      out.at(e) += a.at(u) * b.at(v);
      size_t i = 0;
      while (i < e.size() && u[i] == e[i]) u[i++] = 0;
      if (i == e.size()) break;
      ++u[i];
    }
  });
  return out;
}

bool unitary_bell_sum_check(const FnR& f, const FnR& g, u64 p, int degree) {
  if (f.arity() != 1 || g.arity() != 1)
    throw std::invalid_argument("unitary_bell_sum_check: one-variable rule");
  FnR conv = convolve(ConvKind::unitary, f, g);
  BellSeries bc = bell_series(conv, p, degree);
  BellSeries bf = bell_series(f, p, degree);
  BellSeries bg = bell_series(g, p, degree);
  for (int e = 1; e <= degree; ++e) {
    Exps ee{static_cast<std::uint32_t>(e)};
    if (bc.at(ee) != bf.at(ee) + bg.at(ee)) return false;
  }
  return true;
}

}  // namespace multfun
