#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crep/algebra.hpp"

namespace crep {

/// Unital *-representation pi(x) = U (m_1 (.) x_1 (+) ... (+) m_k (.) x_k) U*
/// on C^{ambient_dim}, where m_i (.) x_i is the m_i-fold block diagonal copy.
class Representation {
 public:
  Representation(FdAlgebra algebra, std::vector<std::size_t> multiplicities, Unitary conjugator);

  /// Block-diagonal representation with identity conjugator.
  static Representation canonical(FdAlgebra algebra, std::vector<std::size_t> multiplicities);

  const FdAlgebra& algebra() const noexcept { return algebra_; }
  std::span<const std::size_t> multiplicities() const noexcept { return mult_; }
  std::size_t ambient_dim() const noexcept { return conjugator_.dim(); }
  const Unitary& conjugator() const noexcept { return conjugator_; }

  /// Ad_W o pi, i.e. the same representation with conjugator W U.
  Representation conjugated_by(const Unitary& w) const;

 private:
  FdAlgebra algebra_;
  std::vector<std::size_t> mult_;
  Unitary conjugator_;
};

/// sum_i m_i n_i for the given multiplicities.
std::size_t ambient_dimension(const FdAlgebra& algebra, std::span<const std::size_t> multiplicities);

ComplexMatrix eval_rep(const Representation& pi, const AlgebraElement& x);

/// d_K(pi, pi') = max_{a in K} ||pi(a) - pi'(a)||.
double rep_distance(const Representation& pi, const Representation& pi2, const GeneratingSet& k);

/// Same metric with K given as a bare element list.
double rep_distance(const Representation& pi, const Representation& pi2,
                    std::span<const AlgebraElement> k);

/// One canonical irreducible representation per block.
std::vector<Representation> enumerate_irreps(const FdAlgebra& algebra);

struct RepPair {
  Representation first;
  Representation second;
};

/// Pairs (Ad_U o rho, Ad_U' o rho) for rho = canonical(A, multiplicities).
/// Even-indexed pairs draw U' independently from Haar measure; odd-indexed pairs use
/// U' = U exp(i eps H) with H Gaussian Hermitian and eps uniform in
/// [0, perturbation_scale]. Deterministic in seed.
std::vector<RepPair> sample_rep_pairs(const FdAlgebra& algebra,
                                      std::span<const std::size_t> multiplicities,
                                      std::size_t count, Seed seed, double perturbation_scale);

/// Unital *-homomorphism alpha: source -> target. Target block j receives
/// W_j (c_{j1} (.) x_1 (+) ... (+) c_{jk} (.) x_k) W_j*.
class Homomorphism {
 public:
  Homomorphism(FdAlgebra source, FdAlgebra target,
               std::vector<std::vector<std::size_t>> multiplicity_matrix,
               std::vector<Unitary> conjugators);

  static Homomorphism identity(const FdAlgebra& algebra);

  const FdAlgebra& source() const noexcept { return source_; }
  const FdAlgebra& target() const noexcept { return target_; }
  /// c_{ji}: rows indexed by target blocks, columns by source blocks.
  const std::vector<std::vector<std::size_t>>& multiplicity_matrix() const noexcept {
    return c_;
  }
  const std::vector<Unitary>& conjugators() const noexcept { return w_; }

 private:
  FdAlgebra source_;
  FdAlgebra target_;
  std::vector<std::vector<std::size_t>> c_;
  std::vector<Unitary> w_;
};

AlgebraElement hom_apply(const Homomorphism& alpha, const AlgebraElement& x);

/// alpha* rho = rho o alpha as a representation of the source algebra.
Representation pullback(const Homomorphism& alpha, const Representation& rho);

/// Elementwise image alpha(K); flagged verified only if it generates the target.
GeneratingSet pushforward_set(const Homomorphism& alpha, const GeneratingSet& k,
                              std::size_t max_word_len = kDefaultMaxWordLength);

}  // namespace crep
