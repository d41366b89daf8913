#include "noether/symlinalg.hpp"

#include <map>

#include "noether/zero.hpp"

namespace noether {

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Expr(1);
  return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<ExprVector>& rows) {
  if (rows.empty()) return {};
  SymMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ExprVector SymMatrix::operator*(const ExprVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch in matrix-vector product");
  ExprVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::vector<Expr> parts;
    for (std::size_t j = 0; j < cols_; ++j) parts.push_back((*this)(i, j) * v[j]);
    out[i] = make_add(std::move(parts));
  }
  return out;
}

SymMatrix SymMatrix::transpose() const {
  SymMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

namespace {

// Products of numbers and exponentials never vanish.
bool manifestly_nonzero(const Expr& e) {
  if (e.is_number()) return !e.is_zero_literal();
  if (e.is_func(FuncKind::exp)) return true;
  if (e.is_mul()) {
    for (const auto& f : e.args())
      if (!manifestly_nonzero(f)) return false;
    return true;
  }
  if (e.is_pow() && e.base().is_number()) return true;
  return false;
}

struct Elimination {
  SymMatrix a;  // coefficient columns followed by right-hand-side columns
  std::size_t coef_cols;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::vector<std::string> warnings;
};

Elimination eliminate(SymMatrix a, std::size_t coef_cols) {
  Elimination out{std::move(a), coef_cols, {}, {}};
  SymMatrix& m = out.a;
  Expr prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < coef_cols && r < m.rows(); ++c) {
    std::optional<std::size_t> best;
    bool best_const = false;
    std::size_t best_size = 0;
    for (std::size_t i = r; i < m.rows(); ++i) {
      const Expr& x = m(i, c);
      if (is_zero(x)) continue;
      bool is_const = x.is_number();
      if (!best || (is_const && !best_const) || (is_const == best_const && x.size() < best_size)) {
        best = i;
        best_const = is_const;
        best_size = x.size();
      }
    }
    if (!best) continue;
    if (*best != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(*best, j));
    const Expr pivot = m(r, c);
    if (!manifestly_nonzero(pivot))
      out.warnings.push_back("constant-rank assumption: pivot " + to_string(pivot) +
                             " is not identically zero but may vanish on a sub-locus");
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const Expr lead = m(i, c);
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        Expr num = pivot * m(i, j) - lead * m(r, j);
        m(i, j) = prev.is_one() ? num : num / prev;
      }
      m(i, c) = Expr(0);
    }
    out.pivots.emplace_back(r, c);
    prev = pivot;
    ++r;
  }
  return out;
}

// Back substitution on the echelon form; `rhs` selects a right-hand-side
// column (or none), free columns are fixed by `free_values`.
ExprVector back_substitute(const Elimination& el, std::optional<std::size_t> rhs,
                           const std::map<std::size_t, Expr>& free_values) {
  ExprVector x(el.coef_cols, Expr(0));
  for (const auto& [c, v] : free_values) x[c] = v;
  for (auto it = el.pivots.rbegin(); it != el.pivots.rend(); ++it) {
    auto [r, c] = *it;
    std::vector<Expr> parts;
    if (rhs) parts.push_back(el.a(r, *rhs));
    for (std::size_t j = c + 1; j < el.coef_cols; ++j) parts.push_back(-(el.a(r, j) * x[j]));
    x[c] = make_add(std::move(parts)) / el.a(r, c);
  }
  return x;
}

NullBasis kernel_from(const Elimination& el) {
  NullBasis nb;
  nb.rank = el.pivots.size();
  nb.pivots = el.pivots;
  nb.warnings = el.warnings;
  std::vector<bool> is_pivot(el.coef_cols, false);
  for (auto [r, c] : el.pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < el.coef_cols; ++f) {
    if (is_pivot[f]) continue;
    std::map<std::size_t, Expr> free_values;
    for (std::size_t g = 0; g < el.coef_cols; ++g)
      if (!is_pivot[g]) free_values[g] = Expr(g == f ? 1 : 0);
    nb.vectors.push_back(clear_vector_denominators(back_substitute(el, std::nullopt, free_values)));
  }
  return nb;
}

SymMatrix augment(const SymMatrix& m, const ExprVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side has wrong length");
  SymMatrix a(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
    a(i, m.cols()) = b[i];
  }
  return a;
}

}  // namespace

ExprVector clear_vector_denominators(const ExprVector& v) {
  std::map<Expr, Rational, ExprLess> den;
  mpz_class lcm(1);
  for (const auto& x : v) {
    for (const auto& t : terms_of(x)) {
      auto [c, rest] = split_coefficient(t);
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
      std::vector<Expr> factors = rest.is_mul() ? std::vector<Expr>(rest.args().begin(), rest.args().end())
                                                : std::vector<Expr>{rest};
      for (const auto& f : factors) {
        if (f.is_pow() && f.exponent() < 0) {
          Rational need = -f.exponent();
          auto [it, inserted] = den.try_emplace(f.base(), need);
          if (!inserted && it->second < need) it->second = need;
        }
      }
    }
  }
  std::vector<Expr> scale{Expr(Rational(lcm))};
  for (const auto& [b, k] : den) scale.push_back(make_pow(b, k));
  Expr s = make_mul(std::move(scale));
  if (s.is_one()) return v;
  ExprVector out;
  for (const auto& x : v) out.push_back(x * s);
  return out;
}

NullBasis null_space(const SymMatrix& m) { return kernel_from(eliminate(m, m.cols())); }

std::size_t rank(const SymMatrix& m) { return eliminate(m, m.cols()).pivots.size(); }

LinearSolution solve_linear_modulo(const SymMatrix& m, const ExprVector& b,
                                   const std::function<bool(const Expr&)>& residue_vanishes) {
  Elimination el = eliminate(augment(m, b), m.cols());
  LinearSolution sol;
  for (std::size_t i = el.pivots.size(); i < m.rows(); ++i) {
    const Expr& res = el.a(i, m.cols());
    if (is_zero(res)) continue;
    if (!residue_vanishes || !residue_vanishes(res))
      throw InconsistentSystem("inconsistent linear system: eliminated row leaves residue " + to_string(res), res);
    sol.residues.push_back(res);
  }
  sol.particular = back_substitute(el, m.cols(), {});
  sol.homogeneous = kernel_from(el);
  return sol;
}

LinearSolution solve_linear(const SymMatrix& m, const ExprVector& b) { return solve_linear_modulo(m, b, nullptr); }

// ---------------------------------------------------------------------------

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < m[r].size(); ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < m[i].size(); ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<std::vector<Rational>> solve_rational(const RationalMatrix& a, const std::vector<Rational>& b,
                                                    std::size_t cols) {
  RationalMatrix m = a;
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i].resize(cols, Rational(0));
    m[i].push_back(b[i]);
  }
  auto pivots = rref(m, cols);
  for (std::size_t i = pivots.size(); i < m.size(); ++i)
    if (m[i][cols] != 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = m[k][cols];
  return x;
}

std::vector<std::vector<Rational>> rational_null_space(const RationalMatrix& a, std::size_t cols) {
  RationalMatrix m = a;
  for (auto& row : m) row.resize(cols, Rational(0));
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][f];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace noether
