#pragma once

#include <gtest/gtest.h>

#include <initializer_list>

#include "algpaths/errors.hpp"
#include "algpaths/matkernel.hpp"

namespace algpaths::testing {

inline Matrix mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  Matrix a(m, m);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& v : row) a(i, j++) = v;
    ++i;
  }
  return a;
}

inline Matrix diag(std::initializer_list<Scalar> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (const auto& x : d) v(i++) = x;
  return v.asDiagonal();
}

inline double dist(const Matrix& a, const Matrix& b) { return operator_norm((a - b).eval()); }

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace algpaths::testing
