#pragma once

// Shared fixtures for the unit and acceptance suites.

#include "toricpb/samples.hpp"

#include <initializer_list>
#include <memory>
#include <random>
#include <set>

namespace toricpb::testing {

using namespace toricpb::samples;

inline IntVector iv(std::initializer_list<Int> entries) {
  IntVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (Int e : entries) v(k++) = e;
  return v;
}

inline RowVectorX<Rational> qv(std::initializer_list<int> entries) {
  RowVectorX<Rational> v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (int e : entries) v(k++) = e;
  return v;
}

inline QMatrix qm(std::initializer_list<std::initializer_list<int>> entries) {
  const auto r = static_cast<Eigen::Index>(entries.size());
  const auto c = r ? static_cast<Eigen::Index>(entries.begin()->size()) : 0;
  QMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : entries) {
    Eigen::Index j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline QSubspace spanOf(std::initializer_list<std::initializer_list<int>> entries) { return QSubspace::span(qm(entries)); }

}  // namespace toricpb::testing
