#pragma once

#include "toricpb/bundle.hpp"
#include "toricpb/klyachko.hpp"

#include <optional>
#include <vector>

namespace toricpb {

/// Reduction of a GL(n) presentation to SL(n). A negative answer only says
/// that this presentation has a cone with nonzero character sum.
struct SlReduction {
  bool reduces = false;
  std::optional<CocharBundleData> presentation;  // SL data with rescaled frames
  int failingCone = -1;
  IntVector characterSum;
};

SlReduction checkSlReduction(const CocharBundleData& data);

/// Reduction to the diagonal torus: a splitting of the associated data into
/// n lines, each carrying rank-one data, whose direct sum is the original.
struct TorusReduction {
  bool found = false;
  std::vector<RowVectorX<Rational>> lines;
  std::vector<FiltrationData> summands;  // rank-one data of each line
  std::size_t candidateCount = 0;        // size of the searched line universe
};

/// Searches n-subsets of the lines that arise as intersections of two
/// filtration subspaces or as frame columns. Throws InputError for non-GL
/// data or data that does not glue.
TorusReduction checkTorusReduction(const CocharBundleData& data);

/// Re-checks a splitting against filtration data from scratch.
bool verifySplitting(const FiltrationData& data, const TorusReduction& splitting);

}  // namespace toricpb
