#include "curenet/simplex.hpp"

#include <cmath>

#include "curenet/errors.hpp"

namespace curenet {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

template <class T>
std::size_t LinearProgram<T>::add_variable(T cost, T lo, std::optional<T> hi) {
  if (hi && *hi < lo) throw DomainError("variable upper bound below lower bound");
  objective.push_back(std::move(cost));
  lower.push_back(std::move(lo));
  upper.push_back(std::move(hi));
  return objective.size() - 1;
}

template <class T>
void LinearProgram<T>::add_row(std::vector<std::pair<std::size_t, T>> terms, RowSense sense,
                               T rhs) {
  for (const auto& [j, a] : terms) {
    if (j >= objective.size()) throw DomainError("row references an unknown variable");
  }
  rows.push_back(Row{std::move(terms), sense, std::move(rhs)});
}

namespace {

template <class T>
struct Tol;

template <>
struct Tol<Rational> {
  static bool pos(const Rational& v) { return sgn(v) > 0; }
  static bool neg(const Rational& v) { return sgn(v) < 0; }
};

template <>
struct Tol<double> {
  static constexpr double eps = 1e-9;
  static bool pos(double v) { return v > eps; }
  static bool neg(double v) { return v < -eps; }
};

template <class T>
class Tableau {
 public:
  // Columns: structural (shifted to lower bound 0), slacks, artificials.
  Tableau(const LinearProgram<T>& lp) : n_(lp.variable_count()), m_(lp.rows.size()) {
    std::size_t slacks = 0;
    for (const auto& row : lp.rows) slacks += row.sense != RowSense::Equal;
    cols_ = n_ + slacks + m_;
    artificial_ = n_ + slacks;
    upper_.assign(cols_, std::nullopt);
    for (std::size_t j = 0; j < n_; ++j) {
      if (lp.upper[j]) upper_[j] = *lp.upper[j] - lp.lower[j];
    }
    at_upper_.assign(cols_, false);
    tab_.assign(m_, std::vector<T>(cols_, T(0)));
    xb_.assign(m_, T(0));
    basis_.assign(m_, 0);
    is_basic_.assign(cols_, -1);

    std::size_t slack = n_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i];
      T rhs = row.rhs;
      for (const auto& [j, a] : row.terms) {
        tab_[i][j] += a;
        rhs -= a * lp.lower[j];
      }
      if (row.sense == RowSense::LessEqual) tab_[i][slack++] = T(1);
      if (row.sense == RowSense::GreaterEqual) tab_[i][slack++] = T(-1);
      if (rhs < T(0)) {
        for (auto& e : tab_[i]) e = -e;
        rhs = -rhs;
      }
      tab_[i][artificial_ + i] = T(1);
      xb_[i] = rhs;
      basis_[i] = artificial_ + i;
      is_basic_[artificial_ + i] = static_cast<long>(i);
    }
  }

  LpStatus run(const std::vector<T>& cost, std::size_t& iterations, std::size_t limit) {
    reduced_.assign(cols_, T(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      T d = cost[j];
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][j] != T(0)) d -= cost[basis_[i]] * tab_[i][j];
      }
      reduced_[j] = d;
    }
    while (true) {
      if (iterations >= limit) return LpStatus::IterationLimit;
      // Bland: smallest improving index.
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (is_basic_[j] >= 0 || fixed(j)) continue;
        if ((!at_upper_[j] && Tol<T>::neg(reduced_[j])) ||
            (at_upper_[j] && Tol<T>::pos(reduced_[j]))) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return LpStatus::Optimal;
      ++iterations;
      const int dir = at_upper_[enter] ? -1 : 1;

      std::optional<T> theta;
      std::size_t leave_row = m_;
      bool leave_to_upper = false;
      for (std::size_t i = 0; i < m_; ++i) {
        T coef = dir > 0 ? tab_[i][enter] : -tab_[i][enter];
        std::optional<T> limit_i;
        bool to_upper = false;
        if (Tol<T>::pos(coef)) {
          limit_i = xb_[i] / coef;
        } else if (Tol<T>::neg(coef) && upper_[basis_[i]]) {
          limit_i = (*upper_[basis_[i]] - xb_[i]) / (-coef);
          to_upper = true;
        }
        if (!limit_i) continue;
        if (*limit_i < T(0)) *limit_i = T(0);
        if (!theta || *limit_i < *theta ||
            (*limit_i == *theta && basis_[i] < basis_[leave_row])) {
          theta = *limit_i;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      const auto& span = upper_[enter];
      if (span && (!theta || *span <= *theta)) {
        // Bound flip, no basis change.
        for (std::size_t i = 0; i < m_; ++i) {
          if (tab_[i][enter] != T(0)) xb_[i] -= T(dir) * tab_[i][enter] * *span;
        }
        at_upper_[enter] = !at_upper_[enter];
        continue;
      }
      if (!theta) return LpStatus::Unbounded;

      T entering_value = (at_upper_[enter] ? *span : T(0)) + T(dir) * *theta;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter] != T(0)) xb_[i] -= T(dir) * tab_[i][enter] * *theta;
      }
      std::size_t leaving = basis_[leave_row];
      at_upper_[leaving] = leave_to_upper;
      is_basic_[leaving] = -1;
      at_upper_[enter] = false;
      pivot(leave_row, enter);
      xb_[leave_row] = entering_value;
    }
  }

  void pivot(std::size_t r, std::size_t j) {
    T p = tab_[r][j];
    for (auto& e : tab_[r]) {
      if (e != T(0)) e /= p;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || tab_[i][j] == T(0)) continue;
      T f = tab_[i][j];
      for (std::size_t c = 0; c < cols_; ++c) {
        if (tab_[r][c] != T(0)) tab_[i][c] -= f * tab_[r][c];
      }
      if constexpr (std::is_same_v<T, double>) tab_[i][j] = 0.0;
    }
    if (!reduced_.empty() && reduced_[j] != T(0)) {
      T f = reduced_[j];
      for (std::size_t c = 0; c < cols_; ++c) {
        if (tab_[r][c] != T(0)) reduced_[c] -= f * tab_[r][c];
      }
      if constexpr (std::is_same_v<T, double>) reduced_[j] = 0.0;
    }
    basis_[r] = j;
    is_basic_[j] = static_cast<long>(r);
  }

  // After phase 1: fix artificials at zero and drive basic ones out if possible.
  void retire_artificials() {
    for (std::size_t a = artificial_; a < cols_; ++a) upper_[a] = T(0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < artificial_) continue;
      for (std::size_t j = 0; j < artificial_; ++j) {
        if (is_basic_[j] < 0 && Tol<T>::pos(abs_value(tab_[i][j]))) {
          T value = at_upper_[j] ? *upper_[j] : T(0);
          std::size_t leaving = basis_[i];
          is_basic_[leaving] = -1;
          at_upper_[leaving] = false;
          at_upper_[j] = false;
          pivot(i, j);
          xb_[i] = value;
          break;
        }
      }
    }
  }

  std::vector<T> structural() const {
    std::vector<T> x(n_, T(0));
    for (std::size_t j = 0; j < n_; ++j) {
      if (is_basic_[j] >= 0) {
        x[j] = xb_[static_cast<std::size_t>(is_basic_[j])];
      } else if (at_upper_[j]) {
        x[j] = *upper_[j];
      }
    }
    return x;
  }

  T artificial_sum() const {
    T s(0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= artificial_) s += xb_[i];
    }
    return s;
  }

  std::size_t columns() const { return cols_; }
  std::size_t first_artificial() const { return artificial_; }

 private:
  static T abs_value(const T& v) { return v < T(0) ? T(-v) : v; }
  bool fixed(std::size_t j) const { return upper_[j] && *upper_[j] == T(0); }

  std::size_t n_;
  std::size_t m_;
  std::size_t cols_ = 0;
  std::size_t artificial_ = 0;
  std::vector<std::optional<T>> upper_;
  std::vector<bool> at_upper_;
  std::vector<std::vector<T>> tab_;
  std::vector<T> xb_;
  std::vector<std::size_t> basis_;
  std::vector<long> is_basic_;
  std::vector<T> reduced_;
};

}  // namespace

template <class T>
LpSolution<T> solve_lp(const LinearProgram<T>& lp, std::size_t iteration_limit) {
  const std::size_t n = lp.variable_count();
  if (lp.lower.size() != n || lp.upper.size() != n) {
    throw DomainError("linear program bound vectors do not match the variable count");
  }
  LpSolution<T> out;
  Tableau<T> tab(lp);

  std::vector<T> cost(tab.columns(), T(0));
  for (std::size_t a = tab.first_artificial(); a < tab.columns(); ++a) cost[a] = T(1);
  out.status = tab.run(cost, out.iterations, iteration_limit);
  if (out.status == LpStatus::IterationLimit) return out;
  if (Tol<T>::pos(tab.artificial_sum())) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  tab.retire_artificials();

  std::fill(cost.begin(), cost.end(), T(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
  out.status = tab.run(cost, out.iterations, iteration_limit);
  if (out.status != LpStatus::Optimal) return out;

  out.x = tab.structural();
  out.objective = T(0);
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] += lp.lower[j];
    out.objective += lp.objective[j] * out.x[j];
  }
  return out;
}

template struct LinearProgram<Rational>;
template struct LinearProgram<double>;
template LpSolution<Rational> solve_lp(const LinearProgram<Rational>&, std::size_t);
template LpSolution<double> solve_lp(const LinearProgram<double>&, std::size_t);

}  // namespace curenet
