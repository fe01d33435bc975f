#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "curenet/rational.hpp"

namespace curenet {

enum class RowSense { LessEqual, GreaterEqual, Equal };

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(LpStatus status);

/// minimize c^T x  subject to  rows,  lower <= x <= upper.
template <class T>
struct LinearProgram {
  struct Row {
    std::vector<std::pair<std::size_t, T>> terms;  ///< (variable, coefficient)
    RowSense sense = RowSense::LessEqual;
    T rhs{};
  };

  std::vector<T> objective;
  std::vector<T> lower;
  std::vector<std::optional<T>> upper;
  std::vector<Row> rows;

  /// Adds a variable with the given cost and bounds, returns its index.
  std::size_t add_variable(T cost, T lo, std::optional<T> hi);
  void add_row(std::vector<std::pair<std::size_t, T>> terms, RowSense sense, T rhs);
  std::size_t variable_count() const noexcept { return objective.size(); }
};

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<T> x;
  T objective{};
  std::size_t iterations = 0;
};

/// Dense-tableau bounded-variable primal simplex, two phases, Bland's rule.
/// Instantiated for Rational (exact) and double (tolerance 1e-9).
template <class T>
LpSolution<T> solve_lp(const LinearProgram<T>& lp, std::size_t iteration_limit = 200000);

extern template struct LinearProgram<Rational>;
extern template struct LinearProgram<double>;
extern template LpSolution<Rational> solve_lp(const LinearProgram<Rational>&, std::size_t);
extern template LpSolution<double> solve_lp(const LinearProgram<double>&, std::size_t);

}  // namespace curenet
