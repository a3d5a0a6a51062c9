#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "crep/linalg.hpp"

namespace crep {

/// Finite direct sum of full matrix blocks M_{n_1} (+) ... (+) M_{n_k}.
class FdAlgebra {
 public:
  explicit FdAlgebra(std::vector<std::size_t> block_dims);

  std::size_t block_count() const noexcept { return dims_.size(); }
  std::size_t block_dim(std::size_t i) const { return dims_.at(i); }
  std::span<const std::size_t> block_dims() const noexcept { return dims_; }
  /// Sum of n_i^2, the complex dimension of the algebra.
  std::size_t linear_dimension() const noexcept;

  /// The unitization A (+) C realized by appending a 1x1 block.
  FdAlgebra unitization() const;

  friend bool operator==(const FdAlgebra&, const FdAlgebra&) = default;

 private:
  std::vector<std::size_t> dims_;
};

class AlgebraElement {
 public:
  AlgebraElement(FdAlgebra algebra, std::vector<ComplexMatrix> blocks);

  static AlgebraElement unit(const FdAlgebra& algebra);
  static AlgebraElement zero(const FdAlgebra& algebra);
  static AlgebraElement scalar(const FdAlgebra& algebra, Complex lambda);
  /// Independent complex Gaussian entries in every block.
  static AlgebraElement random(const FdAlgebra& algebra, Rng& rng);

  const FdAlgebra& algebra() const noexcept { return algebra_; }
  std::span<const ComplexMatrix> blocks() const noexcept { return blocks_; }
  const ComplexMatrix& block(std::size_t i) const { return blocks_.at(i); }

  AlgebraElement adjoint() const;

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(Complex s, const AlgebraElement& a);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.algebra_ == b.algebra_ && a.blocks_ == b.blocks_;
  }

 private:
  FdAlgebra algebra_;
  std::vector<ComplexMatrix> blocks_;
};

/// C*-norm: the maximum of the block operator norms, which is the supremum of
/// ||pi(x)|| over the irreducible representations.
double element_norm(const AlgebraElement& x);

/// Finite (hence compact) candidate generating set. `verified` is set only by
/// certify() or by construction sites that ran verify_generates.
class GeneratingSet {
 public:
  GeneratingSet(FdAlgebra algebra, std::vector<AlgebraElement> elements, bool verified = false);

  const FdAlgebra& algebra() const noexcept { return algebra_; }
  std::span<const AlgebraElement> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool verified() const noexcept { return verified_; }

  /// Union with another set over the same algebra; verified if either is.
  GeneratingSet united(const GeneratingSet& other) const;

 private:
  FdAlgebra algebra_;
  std::vector<AlgebraElement> elements_;
  bool verified_;
};

struct Letter {
  std::size_t index;
  bool adjoint;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Product of generator letters; the empty word is the unit.
using Word = std::vector<Letter>;

/// Parses whitespace-separated letters such as "0 0* 1"; "" is the unit.
Word parse_word(std::string_view text);

/// sum_k coeffs[k] * word_k(K), evaluated blockwise.
AlgebraElement star_polynomial(std::span<const Word> words, std::span<const Complex> coeffs,
                               const GeneratingSet& k);

struct GenerationCheck {
  bool generates;
  std::size_t span_dimension;
  std::size_t target_dimension;
};

inline constexpr std::size_t kDefaultMaxWordLength = 4;
inline constexpr double kRankTolerance = 1e-8;

/// Decides whether *-words of length <= max_word_len in K u {1} span the algebra.
GenerationCheck verify_generates(const GeneratingSet& k,
                                 std::size_t max_word_len = kDefaultMaxWordLength);

/// Returns a copy flagged verified, or throws InvalidArgument if K does not generate.
GeneratingSet certify(const GeneratingSet& k, std::size_t max_word_len = kDefaultMaxWordLength);

}  // namespace crep
