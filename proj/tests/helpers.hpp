#pragma once

#include <initializer_list>

#include <gtest/gtest.h>

#include "sympforge/error.hpp"
#include "sympforge/exact.hpp"
#include "sympforge/taming.hpp"

namespace testing_util {

using sympforge::Index;

template <typename M, typename T>
M rows_of(std::initializer_list<std::initializer_list<T>> rows) {
  M m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (const auto& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline sympforge::IntMatrix imat(std::initializer_list<std::initializer_list<int>> rows) {
  return rows_of<sympforge::IntMatrix>(rows);
}

inline sympforge::DenseMatrix<double> dmat(std::initializer_list<std::initializer_list<double>> rows) {
  return rows_of<sympforge::DenseMatrix<double>>(rows);
}

inline sympforge::Rational q(int num, int den = 1) { return sympforge::Rational(num, den); }

inline sympforge::RatMatrix rmat(std::initializer_list<std::initializer_list<sympforge::Rational>> rows) {
  return rows_of<sympforge::RatMatrix>(rows);
}

}  // namespace testing_util

#define EXPECT_ERROR_CODE(stmt, expected)                                      \
  do {                                                                         \
    try {                                                                      \
      (void)(stmt);                                                            \
      ADD_FAILURE() << "expected " #expected;                                  \
    } catch (const sympforge::Error& e__) {                                    \
      EXPECT_EQ(e__.code(), sympforge::ErrorCode::expected) << e__.what();     \
    }                                                                          \
  } while (0)
