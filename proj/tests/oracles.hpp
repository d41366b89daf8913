#pragma once

#include <gmpxx.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testing_support {

using QMatrix = std::vector<std::vector<mpq_class>>;

inline QMatrix inverse(QMatrix a) {
  std::size_t n = a.size();
  QMatrix inv(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    mpq_class d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

struct RegularQuadratic {
  std::string toml;
  std::string hamiltonian;
};

// L = 1/2 qdot.A.qdot + b.qdot - 1/2 q.C.q with A = B^T B + I.
inline RegularQuadratic random_regular(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-2, 2);
  const int n = 3;
  QMatrix b(n, std::vector<mpq_class>(n)), a(n, std::vector<mpq_class>(n, 0)), c(n, std::vector<mpq_class>(n));
  for (auto& row : b)
    for (auto& v : row) v = d(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) a[i][j] += b[k][i] * b[k][j];
      if (i == j) a[i][j] += 1;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) c[i][j] = c[j][i] = d(rng);
  std::vector<int> lin(n);
  for (auto& v : lin) v = d(rng);
  auto q = [](int i) { return "q" + std::to_string(i + 1); };
  std::ostringstream l, h;
  l << "0";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      l << " + 1/2*(" << a[i][j] << ")*" << q(i) << "dot*" << q(j) << "dot";
      l << " - 1/2*(" << c[i][j] << ")*" << q(i) << "*" << q(j);
    }
    l << " + (" << lin[i] << ")*" << q(i) << "dot";
  }
  QMatrix ai = inverse(a);
  h << "0";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      h << " + 1/2*(" << ai[i][j] << ")*(p_" << q(i) << " - (" << lin[i] << "))*(p_" << q(j) << " - (" << lin[j]
        << "))";
      h << " + 1/2*(" << c[i][j] << ")*" << q(i) << "*" << q(j);
    }
  std::string toml = "name = \"random_regular\"\ncoordinates = [\"q1\", \"q2\", \"q3\"]\nlagrangian = \"" + l.str() + "\"\n";
  return {toml, h.str()};
}

// L = 1/2 exp(a w) (xdot + b ydot)^2 + c w xdot + d x y - 1/2 e w^2:
// Hessian of rank one, two kernel directions.
inline std::string random_singular(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(1, 3);
  std::ostringstream l;
  l << "1/2*exp(" << d(rng) << "*w)*(xdot + " << d(rng) << "*ydot)^2 + " << d(rng) << "*w*xdot + " << d(rng)
    << "*x*y - 1/2*" << d(rng) << "*w^2";
  return "name = \"random_singular\"\ncoordinates = [\"x\", \"y\", \"w\"]\nlagrangian = \"" + l.str() + "\"\n";
}

}  // namespace testing_support
