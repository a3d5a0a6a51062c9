#include "crep/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <string>

namespace crep {

namespace {

void require_same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.algebra() == b.algebra())) {
    throw Error(ErrorKind::AlgebraMismatch, "elements live in different algebras");
  }
}

template <typename Op>
AlgebraElement blockwise(const AlgebraElement& a, const AlgebraElement& b, Op op) {
  require_same_algebra(a, b);
  std::vector<ComplexMatrix> out;
  out.reserve(a.blocks().size());
  for (std::size_t i = 0; i < a.blocks().size(); ++i) out.push_back(op(a.block(i), b.block(i)));
  return AlgebraElement(a.algebra(), std::move(out));
}

// Vectorizes an element into C^{sum n_i^2}.
Eigen::VectorXcd flatten(const AlgebraElement& x) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(x.algebra().linear_dimension()));
  Eigen::Index off = 0;
  for (const auto& b : x.blocks()) {
    const auto& m = b.eigen();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) v(off++) = m(i, j);
  }
  return v;
}

AlgebraElement letter_value(const GeneratingSet& k, const Letter& l) {
  const auto& x = k.elements()[l.index];
  return l.adjoint ? x.adjoint() : x;
}

// Incremental orthonormal basis with a relative rank tolerance.
class SpanBasis {
 public:
  explicit SpanBasis(double tol) : tol_(tol) {}

  bool try_add(Eigen::VectorXcd v) {
    const double n0 = v.norm();
    if (n0 == 0.0) return false;
    v /= n0;
    // Two passes of modified Gram-Schmidt keep the basis orthonormal to ~eps.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis_) v -= q.dot(v) * q;
    }
    const double r = v.norm();
    if (r <= tol_) return false;
    basis_.push_back(v / r);
    return true;
  }

  std::size_t size() const noexcept { return basis_.size(); }

 private:
  double tol_;
  std::vector<Eigen::VectorXcd> basis_;
};

}  // namespace

FdAlgebra::FdAlgebra(std::vector<std::size_t> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw Error(ErrorKind::InvalidArgument, "FdAlgebra needs at least one block");
  for (auto n : dims_) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "FdAlgebra block dimensions must be >= 1");
  }
}

std::size_t FdAlgebra::linear_dimension() const noexcept {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0},
                         [](std::size_t acc, std::size_t n) { return acc + n * n; });
}

FdAlgebra FdAlgebra::unitization() const {
  auto dims = dims_;
  dims.push_back(1);
  return FdAlgebra(std::move(dims));
}

AlgebraElement::AlgebraElement(FdAlgebra algebra, std::vector<ComplexMatrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (blocks_.size() != algebra_.block_count()) {
    throw Error(ErrorKind::DimensionMismatch, "element has " + std::to_string(blocks_.size()) +
                                                  " blocks, algebra has " +
                                                  std::to_string(algebra_.block_count()));
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].dim() != algebra_.block_dim(i)) {
      throw Error(ErrorKind::DimensionMismatch,
                  "block " + std::to_string(i) + " has dim " + std::to_string(blocks_[i].dim()) +
                      ", expected " + std::to_string(algebra_.block_dim(i)));
    }
  }
}

AlgebraElement AlgebraElement::unit(const FdAlgebra& algebra) {
  return scalar(algebra, Complex(1.0, 0.0));
}

AlgebraElement AlgebraElement::zero(const FdAlgebra& algebra) {
  return scalar(algebra, Complex(0.0, 0.0));
}

AlgebraElement AlgebraElement::scalar(const FdAlgebra& algebra, Complex lambda) {
  std::vector<ComplexMatrix> blocks;
  for (auto n : algebra.block_dims()) blocks.push_back(lambda * ComplexMatrix::identity(n));
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::random(const FdAlgebra& algebra, Rng& rng) {
  std::vector<ComplexMatrix> blocks;
  for (auto n : algebra.block_dims()) blocks.push_back(gaussian_matrix(n, rng));
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<ComplexMatrix> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.adjoint());
  return AlgebraElement(algebra_, std::move(out));
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  return blockwise(a, b, [](const ComplexMatrix& x, const ComplexMatrix& y) { return x + y; });
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return blockwise(a, b, [](const ComplexMatrix& x, const ComplexMatrix& y) { return x - y; });
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  return blockwise(a, b, [](const ComplexMatrix& x, const ComplexMatrix& y) { return x * y; });
}

AlgebraElement operator*(Complex s, const AlgebraElement& a) {
  std::vector<ComplexMatrix> out;
  out.reserve(a.blocks_.size());
  for (const auto& b : a.blocks_) out.push_back(s * b);
  return AlgebraElement(a.algebra_, std::move(out));
}

double element_norm(const AlgebraElement& x) {
  double best = 0.0;
  for (const auto& b : x.blocks()) best = std::max(best, op_norm(b));
  return best;
}

GeneratingSet::GeneratingSet(FdAlgebra algebra, std::vector<AlgebraElement> elements,
                             bool verified)
    : algebra_(std::move(algebra)), elements_(std::move(elements)), verified_(verified) {
  if (elements_.empty()) throw Error(ErrorKind::InvalidArgument, "generating set is empty");
  for (const auto& e : elements_) {
    if (!(e.algebra() == algebra_)) {
      throw Error(ErrorKind::AlgebraMismatch, "generating set element from another algebra");
    }
  }
}

GeneratingSet GeneratingSet::united(const GeneratingSet& other) const {
  if (!(other.algebra_ == algebra_)) {
    throw Error(ErrorKind::AlgebraMismatch, "union of generating sets over different algebras");
  }
  auto elems = elements_;
  elems.insert(elems.end(), other.elements_.begin(), other.elements_.end());
  return GeneratingSet(algebra_, std::move(elems), verified_ || other.verified_);
}

Word parse_word(std::string_view text) {
  Word word;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view tok = text.substr(pos, end - pos);
    bool adj = false;
    if (tok.back() == '*') {
      adj = true;
      tok.remove_suffix(1);
    }
    std::size_t idx = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), idx);
    if (tok.empty() || ec != std::errc{} || p != tok.data() + tok.size()) {
      throw Error(ErrorKind::BadWord, "malformed letter '" + std::string(text.substr(pos, end - pos)) +
                                          "'");
    }
    word.push_back(Letter{idx, adj});
    pos = end;
  }
  return word;
}

AlgebraElement star_polynomial(std::span<const Word> words, std::span<const Complex> coeffs,
                               const GeneratingSet& k) {
  if (words.size() != coeffs.size()) {
    throw Error(ErrorKind::InvalidArgument, "star_polynomial: words and coeffs differ in length");
  }
  AlgebraElement acc = AlgebraElement::zero(k.algebra());
  for (std::size_t w = 0; w < words.size(); ++w) {
    AlgebraElement term = AlgebraElement::unit(k.algebra());
    for (const auto& l : words[w]) {
      if (l.index >= k.size()) {
        throw Error(ErrorKind::BadWord, "letter index " + std::to_string(l.index) +
                                            " outside generating set of size " +
                                            std::to_string(k.size()));
      }
      term = term * letter_value(k, l);
    }
    acc = acc + coeffs[w] * term;
  }
  return acc;
}

GenerationCheck verify_generates(const GeneratingSet& k, std::size_t max_word_len) {
  if (max_word_len == 0) throw Error(ErrorKind::InvalidArgument, "max_word_len must be >= 1");
  const FdAlgebra& alg = k.algebra();
  const std::size_t target = alg.linear_dimension();

  std::vector<AlgebraElement> letters;
  for (const auto& x : k.elements()) {
    letters.push_back(x);
    letters.push_back(x.adjoint());
  }

  // span(words of length <= L) = span(words <= L-1) + span(words <= L-1) * letters,
  // so it suffices to extend the basis elements found at the previous level.
  SpanBasis basis(kRankTolerance);
  std::vector<AlgebraElement> frontier{AlgebraElement::unit(alg)};
  basis.try_add(flatten(frontier.front()));
  for (std::size_t len = 1; len <= max_word_len && basis.size() < target; ++len) {
    std::vector<AlgebraElement> next;
    for (const auto& w : frontier) {
      for (const auto& l : letters) {
        AlgebraElement p = w * l;
        if (basis.try_add(flatten(p))) next.push_back(std::move(p));
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }
  return GenerationCheck{basis.size() == target, basis.size(), target};
}

GeneratingSet certify(const GeneratingSet& k, std::size_t max_word_len) {
  const auto check = verify_generates(k, max_word_len);
  if (!check.generates) {
    throw Error(ErrorKind::InvalidArgument,
                "set does not generate: span dimension " + std::to_string(check.span_dimension) +
                    " of " + std::to_string(check.target_dimension));
  }
  return GeneratingSet(k.algebra(), {k.elements().begin(), k.elements().end()}, true);
}

}  // namespace crep
