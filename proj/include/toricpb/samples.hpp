#pragma once

// Sample fans and random instance generators shared by the test suites, the
// acceptance run and the selftest subcommand.

#include "toricpb/bundle.hpp"
#include "toricpb/fan.hpp"
#include "toricpb/klyachko.hpp"
#include "toricpb/linalg.hpp"

#include <initializer_list>
#include <memory>
#include <random>
#include <set>

namespace toricpb::samples {

inline IntVector vec(std::initializer_list<Int> entries) {
  IntVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (Int e : entries) v(k++) = e;
  return v;
}

inline QMatrix matrix(std::initializer_list<std::initializer_list<int>> entries) {
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

inline std::shared_ptr<const Fan> p1Fan() {
  auto fan = std::make_shared<Fan>();
  fan->rank = 1;
  fan->rays = {vec({1}), vec({-1})};
  fan->maximalCones = {{0}, {1}};
  return fan;
}

inline std::shared_ptr<const Fan> p2Fan() {
  auto fan = std::make_shared<Fan>();
  fan->rank = 2;
  fan->rays = {vec({1, 0}), vec({0, 1}), vec({-1, -1})};
  fan->maximalCones = {{0, 1}, {1, 2}, {0, 2}};
  return fan;
}

/// The cone over the unit square: a non-simplicial three-dimensional cone.
inline std::shared_ptr<const Fan> squareConeFan() {
  auto fan = std::make_shared<Fan>();
  fan->rank = 3;
  fan->rays = {vec({0, 0, 1}), vec({1, 0, 1}), vec({0, 1, 1}), vec({1, 1, 1})};
  fan->maximalCones = {{0, 1, 2, 3}};
  return fan;
}

/// Random element of a set of small integer matrices with nonzero determinant.
inline QMatrix randomInvertible(std::mt19937& rng, Eigen::Index n, int bound = 2) {
  std::uniform_int_distribution<int> entry(-bound, bound);
  while (true) {
    QMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = entry(rng);
    if (determinant(m) != 0) return m;
  }
}

inline QSubspace randomSubspace(std::mt19937& rng, Eigen::Index ambient, Eigen::Index maxRows, int bound = 2) {
  std::uniform_int_distribution<int> count(0, static_cast<int>(maxRows));
  std::uniform_int_distribution<int> entry(-bound, bound);
  QMatrix m(count(rng), ambient);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < ambient; ++j) m(i, j) = entry(rng);
  return QSubspace::span(m, ambient);
}

/// Each ray gets a random full flag: a random basis split into consecutive
/// blocks, block k entering at a random decreasing index.
inline FiltrationData randomFlags(std::mt19937& rng, std::shared_ptr<const Fan> fan, Eigen::Index dim, int bound = 2) {
  RawFiltration raw{fan, dim, {}};
  std::uniform_int_distribution<Int> index(-bound, bound);
  std::uniform_int_distribution<int> coin(0, 1);
  for (std::size_t ray = 0; ray < fan->rays.size(); ++ray) {
    const QMatrix basis = randomInvertible(rng, dim);
    std::vector<Jump> jumps;
    Int top = index(rng) + bound;
    for (Eigen::Index k = 1; k <= dim; ++k) {
      if (k < dim && coin(rng) == 0) continue;
      jumps.push_back({top, QSubspace::span(basis.topRows(k), dim)});
      top -= 1 + coin(rng);
    }
    raw.filtrations[static_cast<int>(ray)] = jumps;
  }
  return FiltrationData::fromRaw(raw);
}

/// Data split by a single frame: V^ρ(i) = span{frame column k : <u_k, v_ρ> >= i}.
inline FiltrationData splitData(std::shared_ptr<const Fan> fan, const QMatrix& frame, const std::vector<IntVector>& characters) {
  const Eigen::Index dim = frame.cols();
  RawFiltration raw{fan, dim, {}};
  for (std::size_t ray = 0; ray < fan->rays.size(); ++ray) {
    std::vector<Int> values;
    for (const auto& u : characters) values.push_back(dot(u, fan->rays[ray]));
    std::vector<Jump> jumps;
    for (Int i : std::set<Int>(values.begin(), values.end())) {
      QMatrix cols(0, dim);
      for (std::size_t k = 0; k < characters.size(); ++k)
        if (values[k] >= i) {
          cols.conservativeResize(cols.rows() + 1, Eigen::NoChange);
          cols.row(cols.rows() - 1) = frame.col(static_cast<Eigen::Index>(k)).transpose();
        }
      jumps.push_back({i, QSubspace::span(cols, dim)});
    }
    raw.filtrations[static_cast<int>(ray)] = jumps;
  }
  return FiltrationData::fromRaw(raw);
}

inline IntVector randomCharacter(std::mt19937& rng, int rank, Int bound = 2) {
  std::uniform_int_distribution<Int> entry(-bound, bound);
  IntVector u(rank);
  for (int k = 0; k < rank; ++k) u(k) = entry(rng);
  return u;
}

inline CocharBundleData bundleOf(std::shared_ptr<const Fan> fan, GroupKind kind, const std::vector<QMatrix>& frames,
                                 const std::vector<std::vector<IntVector>>& characters) {
  CocharBundleData d{{kind, frames.front().rows()}, fan, {}};
  for (std::size_t k = 0; k < frames.size(); ++k) d.cones.push_back({static_cast<int>(k), frames[k], characters[k]});
  return d;
}

/// GL(n) data with independent random frames (entries in [-frameBound, frameBound])
/// and characters (entries in [-charBound, charBound]) on every maximal cone.
inline CocharBundleData randomBundle(std::mt19937& rng, std::shared_ptr<const Fan> fan, Eigen::Index n,
                                    Int charBound = 3, int frameBound = 2) {
  CocharBundleData d{{GroupKind::GL, n}, fan, {}};
  for (std::size_t k = 0; k < fan->maximalCones.size(); ++k) {
    std::vector<IntVector> chars;
    for (Eigen::Index i = 0; i < n; ++i) chars.push_back(randomCharacter(rng, fan->rank, charBound));
    d.cones.push_back({static_cast<int>(k), randomInvertible(rng, n, frameBound), chars});
  }
  return d;
}

/// The tangent bundle of P^2 presented as GL(2) data.
inline CocharBundleData tangentBundleP2() {
  return bundleOf(p2Fan(), GroupKind::GL, {matrix({{1, 0}, {0, 1}}), matrix({{0, -1}, {1, -1}}), matrix({{1, -1}, {0, -1}})},
                  {{vec({1, 0}), vec({0, 1})}, {vec({-1, 1}), vec({-1, 0})}, {vec({1, -1}), vec({0, -1})}});
}

}  // namespace toricpb::samples
