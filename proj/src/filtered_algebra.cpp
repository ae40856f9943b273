#include "toricpb/filtered_algebra.hpp"

#include "toricpb/errors.hpp"

#include <functional>
#include <set>

namespace toricpb {

namespace {

Int degreeOf(const Monomial& m) { return m.sum(); }

// Exponent vectors of length `vars` and total degree <= maxDegree, by degree
// then lexicographically descending.
std::vector<Monomial> monomialsUpTo(Eigen::Index vars, int maxDegree) {
  std::vector<Monomial> out;
  Monomial current = Monomial::Zero(vars);
  for (int d = 0; d <= maxDegree; ++d) {
    std::function<void(Eigen::Index, int)> fill = [&](Eigen::Index pos, int left) {
      if (pos == vars - 1) {
        current(pos) = left;
        out.push_back(current);
        return;
      }
      for (int e = left; e >= 0; --e) {
        current(pos) = e;
        fill(pos + 1, left - e);
      }
    };
    fill(0, d);
  }
  return out;
}

AlgebraCheck fail(std::vector<Monomial> monomials, int ray, std::string message) {
  return {false, AlgebraWitness{std::move(monomials), ray, std::move(message)}};
}

}  // namespace

std::string monomialText(const Monomial& m, Eigen::Index n) {
  std::string out;
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    if (m(k) == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(k / n + 1) + std::to_string(k % n + 1);
    if (m(k) > 1) out += "^" + std::to_string(m(k));
  }
  return out.empty() ? "1" : out;
}

std::optional<std::size_t> TruncatedAlgebra::indexOf(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> TruncatedAlgebra::product(std::size_t a, std::size_t b) const {
  return indexOf(Monomial(basis_[a] + basis_[b]));
}

std::vector<std::size_t> TruncatedAlgebra::filtration(std::size_t rayPosition, Int i) const {
  const IntVector& ray = coneData_.generators()[rayPosition];
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if (dot(weights_[k], ray) >= i) out.push_back(k);
  return out;
}

std::map<IntVector, std::vector<std::size_t>, LexLess> TruncatedAlgebra::pieces() const {
  std::map<IntVector, std::vector<std::size_t>, LexLess> out;
  for (std::size_t k = 0; k < basis_.size(); ++k) out[coneData_.classOf(weights_[k])].push_back(k);
  return out;
}

void TruncatedAlgebra::overrideWeight(std::size_t basisIndex, const IntVector& weight) {
  weights_.at(basisIndex) = weight;
}

TruncatedAlgebra buildTruncation(const CocharBundleData& data, std::size_t cone, int degree,
                                 WeightConvention convention) {
  if (data.group.kind != GroupKind::GL)
    throw InputError(std::string("unsupported group kind ") + groupKindName(data.group.kind) +
                     " for the filtered algebra");
  if (degree < 1) throw InputError("truncation degree must be at least 1");
  const BundleReport report = validateBundle(data);
  if (!report.valid) throw InputError("invalid bundle data: " + report.violations.front().message);
  const ConeFrame& frame = data.at(cone);

  TruncatedAlgebra alg;
  alg.n_ = data.group.n;
  alg.degree_ = degree;
  alg.cone_ = cone;
  alg.coneData_ = Cone::maximal(*data.fan, cone);
  alg.basis_ = monomialsUpTo(alg.n_ * alg.n_, degree);
  std::vector<IntVector> generatorWeight;
  for (Eigen::Index i = 0; i < alg.n_; ++i)
    for (Eigen::Index j = 0; j < alg.n_; ++j) {
      const auto owner = static_cast<std::size_t>(convention == WeightConvention::Row ? i : j);
      generatorWeight.push_back(-frame.characters[owner]);
    }
  for (std::size_t k = 0; k < alg.basis_.size(); ++k) {
    alg.index_.emplace(alg.basis_[k], k);
    IntVector w = IntVector::Zero(data.fan->rank);
    for (Eigen::Index g = 0; g < alg.basis_[k].size(); ++g)
      w += alg.basis_[k](g) * generatorWeight[static_cast<std::size_t>(g)];
    alg.weights_.push_back(w);
  }
  return alg;
}

AlgebraCheck checkMultiplicative(const TruncatedAlgebra& alg) {
  const auto& basis = alg.basis();
  const auto& w = alg.weights();
  const auto& gens = alg.cone().generators();
  for (std::size_t r = 0; r < gens.size(); ++r)
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = a; b < basis.size(); ++b) {
        const auto c = alg.product(a, b);
        if (!c) continue;
        // a ∈ A^ρ(w_a(ρ)) and b ∈ A^ρ(w_b(ρ)); their product must reach the sum.
        if (dot(w[*c], gens[r]) < dot(w[a], gens[r]) + dot(w[b], gens[r]))
          return fail({basis[a], basis[b]}, alg.cone().rayIndices()[r],
                      monomialText(basis[a], alg.n()) + " * " + monomialText(basis[b], alg.n()) +
                          " drops below the filtration level of its factors");
      }
  return {};
}

AlgebraCheck checkCompatibleAlgebra(const TruncatedAlgebra& alg) {
  const auto& basis = alg.basis();
  const auto& w = alg.weights();
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a; b < basis.size(); ++b) {
      const auto c = alg.product(a, b);
      if (!c) continue;
      if (!alg.cone().sameClass(w[*c], IntVector(w[a] + w[b])))
        return fail({basis[a], basis[b]}, -1,
                    monomialText(basis[a], alg.n()) + " * " + monomialText(basis[b], alg.n()) +
                        " leaves the graded piece of the summed class");
    }
  return {};
}

AlgebraCheck checkCoactionCommutes(const TruncatedAlgebra& alg) {
  const Eigen::Index n = alg.n();
  const auto& basis = alg.basis();
  for (std::size_t f = 0; f < basis.size(); ++f) {
    // Δ(x_{ij}) = Σ_k x_{ik} ⊗ x_{kj}: a left factor replaces each
    // occurrence of x_{ij} in f by some x_{ik}.
    std::vector<Eigen::Index> occurrences;
    for (Eigen::Index g = 0; g < basis[f].size(); ++g)
      for (Int e = 0; e < basis[f](g); ++e) occurrences.push_back(g);
    std::set<Monomial, LexLess> lefts;
    std::function<void(std::size_t, Monomial&)> expand = [&](std::size_t pos, Monomial& left) {
      if (pos == occurrences.size()) {
        lefts.insert(left);
        return;
      }
      const Eigen::Index i = occurrences[pos] / n;
      for (Eigen::Index k = 0; k < n; ++k) {
        ++left(i * n + k);
        expand(pos + 1, left);
        --left(i * n + k);
      }
    };
    Monomial left = Monomial::Zero(n * n);
    expand(0, left);
    for (const auto& l : lefts) {
      const auto idx = alg.indexOf(l);
      if (!idx) continue;
      if (alg.weights()[*idx] != alg.weights()[f])
        return fail({basis[f], l}, -1,
                    "the coproduct of " + monomialText(basis[f], n) + " has left factor " + monomialText(l, n) +
                        " of a different weight");
    }
  }
  return {};
}

}  // namespace toricpb
