#pragma once

// Truncated multivariate Taylor jets.
//
// A MultiJet of order k in m variables stores the Taylor coefficients
// c_alpha (partial derivative divided by alpha!) for every multi-index with
// |alpha| <= k. Coefficients are laid out in graded-lexicographic order, so
// the coefficients of a lower-order truncation form a prefix of the table.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace minlag {

inline constexpr int kMaxJetOrder = 4;

using MultiIndex = std::vector<int>;

/// Shared, immutable index tables for one (num_vars, order) pair.
class JetLayout {
 public:
  static std::shared_ptr<const JetLayout> get(int num_vars, int order);

  int num_vars() const { return num_vars_; }
  int order() const { return order_; }
  std::size_t size() const { return indices_.size(); }

  const std::vector<std::uint8_t>& exponents(std::size_t pos) const {
    return indices_[pos];
  }
  int degree(std::size_t pos) const { return degrees_[pos]; }

  /// Position of alpha in the table; alpha.size() must equal num_vars.
  std::size_t position(std::span<const int> alpha) const;

  /// Number of coefficients with |alpha| <= order (prefix length).
  std::size_t prefix_size(int order) const { return prefix_[order]; }

  struct Term {
    std::uint32_t lhs;
    std::uint32_t rhs;
  };
  /// All (i, j) with alpha_i + alpha_j = alpha_out.
  std::span<const Term> product_terms(std::size_t out) const {
    return {terms_.data() + term_offsets_[out],
            terms_.data() + term_offsets_[out + 1]};
  }

  /// Position of alpha + e_var, or npos when that exceeds the order.
  std::size_t raise(std::size_t pos, int var) const {
    return raise_[pos * num_vars_ + var];
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  JetLayout(int num_vars, int order);

 private:
  int num_vars_;
  int order_;
  std::vector<std::vector<std::uint8_t>> indices_;
  std::vector<int> degrees_;
  std::vector<std::size_t> prefix_;
  std::vector<Term> terms_;
  std::vector<std::size_t> term_offsets_;
  std::vector<std::size_t> raise_;
};

class MultiJet {
 public:
  MultiJet() = default;
  /// Zero jet.
  MultiJet(int num_vars, int order);

  static MultiJet constant(double value, int num_vars, int order);
  /// Jet of the coordinate function x_var based at `value`.
  static MultiJet seed(int var, double value, int num_vars, int order);

  int num_vars() const { return layout_->num_vars(); }
  int order() const { return layout_->order(); }
  const JetLayout& layout() const { return *layout_; }
  bool same_shape(const MultiJet& other) const {
    return layout_ == other.layout_;
  }

  double value() const { return coeffs_[0]; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }

  /// Taylor coefficient of the multi-index alpha (exponent vector).
  double coeff(std::span<const int> alpha) const;
  /// alpha! * coeff(alpha), the partial derivative at the base point.
  double partial(std::span<const int> alpha) const;
  /// First partial derivative along one variable.
  double first(int var) const;

  /// Jet of the partial derivative along `var`, one order lower.
  MultiJet derivative(int var) const;
  MultiJet truncated(int order) const;

  MultiJet& operator+=(const MultiJet& rhs);
  MultiJet& operator-=(const MultiJet& rhs);
  MultiJet& operator*=(double s);
  MultiJet& operator+=(double s) {
    coeffs_[0] += s;
    return *this;
  }

  friend MultiJet operator+(MultiJet a, const MultiJet& b) { return a += b; }
  friend MultiJet operator-(MultiJet a, const MultiJet& b) { return a -= b; }
  friend MultiJet operator*(const MultiJet& a, const MultiJet& b);
  friend MultiJet operator/(const MultiJet& a, const MultiJet& b);
  friend MultiJet operator*(MultiJet a, double s) { return a *= s; }
  friend MultiJet operator*(double s, MultiJet a) { return a *= s; }
  friend MultiJet operator/(MultiJet a, double s) { return a *= 1.0 / s; }
  friend MultiJet operator+(MultiJet a, double s) { return a += s; }
  friend MultiJet operator+(double s, MultiJet a) { return a += s; }
  friend MultiJet operator-(MultiJet a, double s) { return a += -s; }
  friend MultiJet operator-(double s, const MultiJet& a) { return -a + s; }
  friend MultiJet operator-(MultiJet a) { return a *= -1.0; }

  /// Accumulates a * b into this jet without allocating.
  void add_product(const MultiJet& a, const MultiJet& b, double scale = 1.0);

 private:
  std::shared_ptr<const JetLayout> layout_;
  std::vector<double> coeffs_;
};

MultiJet sin(const MultiJet& a);
MultiJet cos(const MultiJet& a);
MultiJet exp(const MultiJet& a);
MultiJet sqrt(const MultiJet& a);
MultiJet recip(const MultiJet& a);

/// Complex-valued jet stored as a pair of real jets.
struct ComplexJet {
  MultiJet re;
  MultiJet im;

  ComplexJet() = default;
  ComplexJet(MultiJet r, MultiJet i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexJet constant(std::complex<double> value, int num_vars,
                             int order);

  std::complex<double> value() const { return {re.value(), im.value()}; }
  ComplexJet conj() const { return {re, -im}; }
  /// Multiplication by i.
  ComplexJet times_i() const { return {-im, re}; }
  ComplexJet derivative(int var) const {
    return {re.derivative(var), im.derivative(var)};
  }
  ComplexJet truncated(int order) const {
    return {re.truncated(order), im.truncated(order)};
  }

  ComplexJet& operator+=(const ComplexJet& rhs) {
    re += rhs.re;
    im += rhs.im;
    return *this;
  }
  ComplexJet& operator*=(double s) {
    re *= s;
    im *= s;
    return *this;
  }
  friend ComplexJet operator+(ComplexJet a, const ComplexJet& b) {
    return a += b;
  }
  friend ComplexJet operator-(const ComplexJet& a, const ComplexJet& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexJet operator*(const ComplexJet& a, const ComplexJet& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexJet operator*(const MultiJet& a, const ComplexJet& b) {
    return {a * b.re, a * b.im};
  }
  friend ComplexJet operator*(ComplexJet a, double s) { return a *= s; }
  friend ComplexJet operator*(double s, ComplexJet a) { return a *= s; }
};

/// e^{i angle} as the pair (cos angle, sin angle).
ComplexJet exp_i_angle(const MultiJet& angle);

/// Re(a * conj(b)), the real inner product on the realification.
MultiJet real_inner(const ComplexJet& a, const ComplexJet& b);

/// A point of C^{N+1} whose entries are jets sharing one layout.
class ComplexJetVector {
 public:
  ComplexJetVector() = default;
  explicit ComplexJetVector(std::vector<ComplexJet> entries);

  std::size_t dim() const { return entries_.size(); }
  int num_vars() const { return entries_.front().re.num_vars(); }
  int order() const { return entries_.front().re.order(); }

  const ComplexJet& operator[](std::size_t i) const { return entries_[i]; }
  ComplexJet& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<ComplexJet>& entries() const { return entries_; }

  /// Complex structure J: entrywise multiplication by i.
  ComplexJetVector apply_j() const;
  ComplexJetVector conj() const;
  ComplexJetVector derivative(int var) const;
  ComplexJetVector truncated(int order) const;
  ComplexJetVector scaled(double s) const;

  std::vector<std::complex<double>> value() const;
  /// Partial derivative of every entry at the base point.
  std::vector<std::complex<double>> partial(std::span<const int> alpha) const;

  /// Sum over entries of Re(a_k conj(b_k)).
  friend MultiJet real_inner(const ComplexJetVector& a,
                             const ComplexJetVector& b);

 private:
  std::vector<ComplexJet> entries_;
};

}  // namespace minlag
