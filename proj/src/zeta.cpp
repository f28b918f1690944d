#include "multfun/zeta.hpp"

#include <mutex>
#include <stdexcept>

namespace multfun {

namespace {

std::mutex bern_mutex;
std::vector<Rat> bern_all;  // B_0, B_1, B_2, ...

void extend_bernoulli(size_t upto) {
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
  if (bern_all.empty()) {
    bern_all.push_back(rat(1));
    bern_all.push_back(rat(-1, 2));
  }
  while (bern_all.size() <= upto) {
    size_t m = bern_all.size();
    Rat acc(0);
    for (size_t j = 0; j < m; ++j) acc += Rat(binomial_int(m + 1, j)) * bern_all[j];
    bern_all.push_back(-acc / Rat(static_cast<long>(m) + 1));
  }
}

}  // namespace

const std::vector<Rat>& bernoulli_even(int count) {
  static std::vector<Rat> evens;
  std::lock_guard lk(bern_mutex);
  if (static_cast<int>(evens.size()) < count) {
    extend_bernoulli(2 * static_cast<size_t>(count));
    evens.clear();
    for (int k = 0; k < count; ++k) evens.push_back(bern_all[2 * static_cast<size_t>(k)]);
  }
  return evens;
}

Real zeta_eval(const Real& s, int digits) {
  if (s <= 1) throw std::invalid_argument("zeta_eval: needs s > 1");
  int N = std::max(20, 2 * digits);
  Real eps = pow(Real(10), -(digits + 6));
  Real acc = 0;
  for (int n = 1; n < N; ++n) acc += pow(Real(n), -s);
  Real Ns = pow(Real(N), -s);
  acc += Real(N) * Ns / (s - 1);  // N^{1-s}/(s-1)
  acc += Ns / 2;
  const auto& B = bernoulli_even(80);
  Rat fact(1);
  Real poch = s;  // s(s+1)...(s+2k-2), built incrementally
  for (int k = 1; k < 80; ++k) {
    fact *= rat(2 * k - 1) * rat(2 * k);  // (2k)!
    Real npow = Ns * Real(N) * pow(Real(N), -2 * k);  // N^{-s-2k+1}
    Real term = to_real(B[static_cast<size_t>(k)] / fact) * poch * npow;
    acc += term;
    if (abs(term) < eps) break;
    poch *= (s + (2 * k - 1)) * (s + 2 * k);
  }
  return acc;
}

Real zeta_deriv(const Real& s, int digits) {
  if (s <= 1) throw std::invalid_argument("zeta_deriv: needs s > 1");
  int N = std::max(20, 2 * digits);
  Real eps = pow(Real(10), -(digits + 6));
  Real lnN = log(Real(N));
  Real acc = 0;
  for (int n = 2; n < N; ++n) acc -= log(Real(n)) * pow(Real(n), -s);
  Real Ns = pow(Real(N), -s);
  // d/ds [N^{1-s}/(s-1)] and d/ds [N^{-s}/2]
  acc += Real(N) * Ns * (-lnN / (s - 1) - 1 / ((s - 1) * (s - 1)));
  acc -= lnN * Ns / 2;
  const auto& B = bernoulli_even(80);
  Rat fact(1);
  Real poch = s;          // P_k(s) = s(s+1)...(s+2k-2)
  Real dpoch_over = 1 / s;  // P_k'(s)/P_k(s) = sum 1/(s+j)
  for (int k = 1; k < 80; ++k) {
    fact *= rat(2 * k - 1) * rat(2 * k);
    Real npow = Ns * Real(N) * pow(Real(N), -2 * k);  // N^{-s-2k+1}
    Real term = to_real(B[static_cast<size_t>(k)] / fact) * npow *
                (poch * dpoch_over - poch * lnN);
    acc += term;
    if (abs(term) < eps && k > 2) break;
    poch *= (s + (2 * k - 1)) * (s + 2 * k);
    dpoch_over += 1 / (s + (2 * k - 1)) + 1 / (s + 2 * k);
  }
  return acc;
}

}  // namespace multfun
