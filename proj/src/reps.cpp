#include "crep/reps.hpp"

#include <algorithm>
#include <string>

namespace crep {

namespace {

void require_algebra(const FdAlgebra& expected, const FdAlgebra& got, const char* what) {
  if (!(expected == got)) throw Error(ErrorKind::AlgebraMismatch, what);
}

// Offsets of the canonical block copies in the ambient space, indexed [i][copy].
std::vector<std::vector<std::size_t>> copy_offsets(const FdAlgebra& algebra,
                                                   std::span<const std::size_t> mult) {
  std::vector<std::vector<std::size_t>> offs(algebra.block_count());
  std::size_t off = 0;
  for (std::size_t i = 0; i < algebra.block_count(); ++i) {
    for (std::size_t c = 0; c < mult[i]; ++c) {
      offs[i].push_back(off);
      off += algebra.block_dim(i);
    }
  }
  return offs;
}

ComplexMatrix block_assembly(const AlgebraElement& x, std::span<const std::size_t> mult,
                             std::size_t ambient) {
  const auto n = static_cast<Eigen::Index>(ambient);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index off = 0;
  for (std::size_t i = 0; i < mult.size(); ++i) {
    const auto d = static_cast<Eigen::Index>(x.block(i).dim());
    for (std::size_t c = 0; c < mult[i]; ++c) {
      m.block(off, off, d, d) = x.block(i).eigen();
      off += d;
    }
  }
  return ComplexMatrix(std::move(m));
}

}  // namespace

std::size_t ambient_dimension(const FdAlgebra& algebra,
                              std::span<const std::size_t> multiplicities) {
  if (multiplicities.size() != algebra.block_count()) {
    throw Error(ErrorKind::DimensionMismatch, "multiplicity vector length " +
                                                  std::to_string(multiplicities.size()) +
                                                  " vs " + std::to_string(algebra.block_count()) +
                                                  " blocks");
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < multiplicities.size(); ++i)
    total += multiplicities[i] * algebra.block_dim(i);
  return total;
}

Representation::Representation(FdAlgebra algebra, std::vector<std::size_t> multiplicities,
                               Unitary conjugator)
    : algebra_(std::move(algebra)), mult_(std::move(multiplicities)),
      conjugator_(std::move(conjugator)) {
  const std::size_t ambient = ambient_dimension(algebra_, mult_);
  if (ambient == 0) {
    throw Error(ErrorKind::InvalidArgument, "representation needs a positive multiplicity");
  }
  if (ambient != conjugator_.dim()) {
    throw Error(ErrorKind::AmbientMismatch, "multiplicities give ambient dim " +
                                                std::to_string(ambient) + ", conjugator is " +
                                                std::to_string(conjugator_.dim()));
  }
}

Representation Representation::canonical(FdAlgebra algebra,
                                         std::vector<std::size_t> multiplicities) {
  const std::size_t ambient = ambient_dimension(algebra, multiplicities);
  if (ambient == 0) {
    throw Error(ErrorKind::InvalidArgument, "representation needs a positive multiplicity");
  }
  return Representation(std::move(algebra), std::move(multiplicities), Unitary::identity(ambient));
}

Representation Representation::conjugated_by(const Unitary& w) const {
  return Representation(algebra_, mult_, w * conjugator_);
}

ComplexMatrix eval_rep(const Representation& pi, const AlgebraElement& x) {
  require_algebra(pi.algebra(), x.algebra(), "eval_rep: element from another algebra");
  const ComplexMatrix d = block_assembly(x, pi.multiplicities(), pi.ambient_dim());
  return conjugate(pi.conjugator(), d);
}

double rep_distance(const Representation& pi, const Representation& pi2,
                    std::span<const AlgebraElement> k) {
  require_algebra(pi.algebra(), pi2.algebra(), "rep_distance: representations of different algebras");
  if (pi.ambient_dim() != pi2.ambient_dim()) {
    throw Error(ErrorKind::AmbientMismatch, "rep_distance: ambient dims " +
                                                std::to_string(pi.ambient_dim()) + " and " +
                                                std::to_string(pi2.ambient_dim()));
  }
  double best = 0.0;
  for (const auto& a : k) best = std::max(best, op_norm(eval_rep(pi, a) - eval_rep(pi2, a)));
  return best;
}

double rep_distance(const Representation& pi, const Representation& pi2, const GeneratingSet& k) {
  require_algebra(pi.algebra(), k.algebra(), "rep_distance: generating set from another algebra");
  return rep_distance(pi, pi2, k.elements());
}

std::vector<Representation> enumerate_irreps(const FdAlgebra& algebra) {
  std::vector<Representation> out;
  for (std::size_t i = 0; i < algebra.block_count(); ++i) {
    std::vector<std::size_t> mult(algebra.block_count(), 0);
    mult[i] = 1;
    out.push_back(Representation::canonical(algebra, std::move(mult)));
  }
  return out;
}

std::vector<RepPair> sample_rep_pairs(const FdAlgebra& algebra,
                                      std::span<const std::size_t> multiplicities,
                                      std::size_t count, Seed seed, double perturbation_scale) {
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "sample_rep_pairs: count must be >= 1");
  if (!(perturbation_scale >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "perturbation_scale must be nonnegative");
  }
  const Representation rho =
      Representation::canonical(algebra, {multiplicities.begin(), multiplicities.end()});
  const std::size_t m = rho.ambient_dim();
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<RepPair> pairs;
  pairs.reserve(count);
  for (std::size_t p = 0; p < count; ++p) {
    const Unitary u = haar_unitary(m, rng);
    if (p % 2 == 0) {
      const Unitary u2 = haar_unitary(m, rng);
      pairs.push_back({rho.conjugated_by(u), rho.conjugated_by(u2)});
    } else {
      const ComplexMatrix h = gaussian_hermitian(m, rng);
      const double eps = perturbation_scale * unif(rng);
      const Unitary u2 = u * exp_i_hermitian(h, eps);
      pairs.push_back({rho.conjugated_by(u), rho.conjugated_by(u2)});
    }
  }
  return pairs;
}

Homomorphism::Homomorphism(FdAlgebra source, FdAlgebra target,
                           std::vector<std::vector<std::size_t>> multiplicity_matrix,
                           std::vector<Unitary> conjugators)
    : source_(std::move(source)), target_(std::move(target)), c_(std::move(multiplicity_matrix)),
      w_(std::move(conjugators)) {
  if (c_.size() != target_.block_count() || w_.size() != target_.block_count()) {
    throw Error(ErrorKind::DimensionMismatch,
                "homomorphism needs one multiplicity row and one conjugator per target block");
  }
  for (std::size_t j = 0; j < c_.size(); ++j) {
    const std::size_t p = ambient_dimension(source_, c_[j]);
    if (p != target_.block_dim(j)) {
      throw Error(ErrorKind::InvalidArgument, "homomorphism is not unital on target block " +
                                                  std::to_string(j) + ": sum c_ji n_i = " +
                                                  std::to_string(p) + ", block dim " +
                                                  std::to_string(target_.block_dim(j)));
    }
    if (w_[j].dim() != p) {
      throw Error(ErrorKind::DimensionMismatch,
                  "conjugator for target block " + std::to_string(j) + " has wrong dimension");
    }
  }
}

Homomorphism Homomorphism::identity(const FdAlgebra& algebra) {
  std::vector<std::vector<std::size_t>> c(algebra.block_count(),
                                          std::vector<std::size_t>(algebra.block_count(), 0));
  std::vector<Unitary> w;
  for (std::size_t j = 0; j < algebra.block_count(); ++j) {
    c[j][j] = 1;
    w.push_back(Unitary::identity(algebra.block_dim(j)));
  }
  return Homomorphism(algebra, algebra, std::move(c), std::move(w));
}

AlgebraElement hom_apply(const Homomorphism& alpha, const AlgebraElement& x) {
  require_algebra(alpha.source(), x.algebra(), "hom_apply: element not in the source algebra");
  std::vector<ComplexMatrix> blocks;
  for (std::size_t j = 0; j < alpha.target().block_count(); ++j) {
    const auto& row = alpha.multiplicity_matrix()[j];
    blocks.push_back(conjugate(alpha.conjugators()[j],
                               block_assembly(x, row, alpha.target().block_dim(j))));
  }
  return AlgebraElement(alpha.target(), std::move(blocks));
}

Representation pullback(const Homomorphism& alpha, const Representation& rho) {
  require_algebra(alpha.target(), rho.algebra(), "pullback: representation not of the target");
  const FdAlgebra& src = alpha.source();
  const auto& c = alpha.multiplicity_matrix();
  const auto r = rho.multiplicities();

  std::vector<std::size_t> mult(src.block_count(), 0);
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t i = 0; i < src.block_count(); ++i) mult[i] += r[j] * c[j][i];

  // rho(alpha(x)) = U D_W (target-ordered copies of x_i) D_W* U*. The permutation P
  // carries each canonical copy of x_i to its slot in the target ordering.
  const auto canon = copy_offsets(src, mult);
  std::vector<std::size_t> used(src.block_count(), 0);
  std::vector<std::size_t> perm(rho.ambient_dim());
  std::vector<Unitary> dw;
  std::size_t off = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (std::size_t copy = 0; copy < r[j]; ++copy) {
      dw.push_back(alpha.conjugators()[j]);
      for (std::size_t i = 0; i < src.block_count(); ++i) {
        for (std::size_t t = 0; t < c[j][i]; ++t) {
          const std::size_t from = canon[i][used[i]++];
          for (std::size_t e = 0; e < src.block_dim(i); ++e) perm[from + e] = off + e;
          off += src.block_dim(i);
        }
      }
    }
  }
  const Unitary p = permutation_unitary(perm);
  const Unitary d = direct_sum(std::span<const Unitary>(dw));
  return Representation(src, std::move(mult), rho.conjugator() * d * p);
}

GeneratingSet pushforward_set(const Homomorphism& alpha, const GeneratingSet& k,
                              std::size_t max_word_len) {
  require_algebra(alpha.source(), k.algebra(), "pushforward_set: set not in the source algebra");
  std::vector<AlgebraElement> image;
  image.reserve(k.size());
  for (const auto& x : k.elements()) image.push_back(hom_apply(alpha, x));
  GeneratingSet unverified(alpha.target(), image, false);
  const bool ok = verify_generates(unverified, max_word_len).generates;
  return GeneratingSet(alpha.target(), std::move(image), ok);
}

}  // namespace crep
