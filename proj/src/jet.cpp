#include "minlag/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

#include "minlag/error.hpp"

namespace minlag {

namespace {

void enumerate_degree(int num_vars, int degree, int var,
                      std::vector<std::uint8_t>& current,
                      std::vector<std::vector<std::uint8_t>>& out) {
  if (var == num_vars - 1) {
    current[var] = static_cast<std::uint8_t>(degree);
    out.push_back(current);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current[var] = static_cast<std::uint8_t>(e);
    enumerate_degree(num_vars, degree - e, var + 1, current, out);
  }
  current[var] = 0;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void require_same_shape(const MultiJet& a, const MultiJet& b) {
  if (!a.same_shape(b)) {
    fail(ErrorCode::shape_mismatch,
         "jet operands differ in variable count or order");
  }
}

// Evaluates sum_j taylor[j] * (a - a0)^j, where taylor[j] = f^{(j)}(a0) / j!.
MultiJet compose(const MultiJet& a, std::span<const double> taylor) {
  MultiJet delta = a;
  delta.coeffs()[0] = 0.0;
  MultiJet result = MultiJet::constant(taylor[0], a.num_vars(), a.order());
  MultiJet power = delta;
  for (int j = 1; j <= a.order(); ++j) {
    result += power * taylor[j];
    if (j < a.order()) power = power * delta;
  }
  return result;
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::argument: return "argument";
    case ErrorCode::shape_mismatch: return "shape_mismatch";
    case ErrorCode::singularity: return "singularity";
    case ErrorCode::truncation: return "truncation";
    case ErrorCode::degenerate_parametrization: return "degenerate_parametrization";
    case ErrorCode::inconsistency: return "inconsistency";
    case ErrorCode::structure_violation: return "structure_violation";
    case ErrorCode::not_space_form_product: return "not_space_form_product";
    case ErrorCode::parse: return "parse";
    case ErrorCode::validation: return "validation";
  }
  return "unknown";
}

JetLayout::JetLayout(int num_vars, int order)
    : num_vars_(num_vars), order_(order) {
  std::vector<std::uint8_t> current(num_vars, 0);
  prefix_.assign(order + 1, 0);
  for (int d = 0; d <= order; ++d) {
    if (num_vars == 0) {
      if (d == 0) indices_.emplace_back();
    } else {
      enumerate_degree(num_vars, d, 0, current, indices_);
    }
    prefix_[d] = indices_.size();
  }
  degrees_.reserve(indices_.size());
  std::map<std::vector<std::uint8_t>, std::size_t> lookup;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    degrees_.push_back(std::accumulate(indices_[i].begin(), indices_[i].end(), 0));
    lookup.emplace(indices_[i], i);
  }

  raise_.assign(indices_.size() * num_vars, npos);
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (degrees_[i] == order) continue;
    for (int v = 0; v < num_vars; ++v) {
      auto raised = indices_[i];
      ++raised[v];
      raise_[i * num_vars + v] = lookup.at(raised);
    }
  }

  term_offsets_.reserve(indices_.size() + 1);
  term_offsets_.push_back(0);
  std::vector<std::uint8_t> rest(num_vars);
  for (std::size_t out = 0; out < indices_.size(); ++out) {
    const auto& gamma = indices_[out];
    for (std::size_t i = 0; i < indices_.size() && degrees_[i] <= degrees_[out]; ++i) {
      const auto& alpha = indices_[i];
      bool divides = true;
      for (int v = 0; v < num_vars; ++v) {
        if (alpha[v] > gamma[v]) {
          divides = false;
          break;
        }
        rest[v] = static_cast<std::uint8_t>(gamma[v] - alpha[v]);
      }
      if (!divides) continue;
      terms_.push_back({static_cast<std::uint32_t>(i),
                        static_cast<std::uint32_t>(lookup.at(rest))});
    }
    term_offsets_.push_back(terms_.size());
  }
}

std::shared_ptr<const JetLayout> JetLayout::get(int num_vars, int order) {
  if (num_vars < 0) fail(ErrorCode::argument, "negative jet variable count");
  if (order < 0 || order > kMaxJetOrder) {
    fail(ErrorCode::argument, "jet order must lie in [0, 4], got " + std::to_string(order));
  }
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{num_vars, order}];
  if (!slot) slot = std::make_shared<const JetLayout>(num_vars, order);
  return slot;
}

std::size_t JetLayout::position(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != num_vars_) {
    fail(ErrorCode::argument, "multi-index length does not match variable count");
  }
  int total = 0;
  for (int a : alpha) {
    if (a < 0) fail(ErrorCode::argument, "negative multi-index entry");
    total += a;
  }
  if (total > order_) {
    fail(ErrorCode::truncation, "multi-index of degree " + std::to_string(total) +
                                    " exceeds jet order " + std::to_string(order_));
  }
  std::size_t pos = 0;
  for (int v = 0; v < num_vars_; ++v) {
    for (int e = 0; e < alpha[v]; ++e) pos = raise(pos, v);
  }
  return pos;
}

MultiJet::MultiJet(int num_vars, int order)
    : layout_(JetLayout::get(num_vars, order)), coeffs_(layout_->size(), 0.0) {}

MultiJet MultiJet::constant(double value, int num_vars, int order) {
  MultiJet j(num_vars, order);
  j.coeffs_[0] = value;
  return j;
}

MultiJet MultiJet::seed(int var, double value, int num_vars, int order) {
  if (order < 1 || order > kMaxJetOrder) {
    fail(ErrorCode::argument, "seed order must lie in [1, 4]");
  }
  if (var < 0 || var >= num_vars) {
    fail(ErrorCode::argument, "seed variable index " + std::to_string(var) +
                                  " out of range for " + std::to_string(num_vars) +
                                  " variables");
  }
  MultiJet j = constant(value, num_vars, order);
  j.coeffs_[j.layout_->raise(0, var)] = 1.0;
  return j;
}

double MultiJet::coeff(std::span<const int> alpha) const {
  return coeffs_[layout_->position(alpha)];
}

double MultiJet::partial(std::span<const int> alpha) const {
  double scale = 1.0;
  for (int a : alpha) scale *= factorial(a);
  return scale * coeff(alpha);
}

double MultiJet::first(int var) const {
  if (order() < 1) fail(ErrorCode::truncation, "first derivative of an order-0 jet");
  return coeffs_[layout_->raise(0, var)];
}

MultiJet MultiJet::derivative(int var) const {
  if (order() < 1) fail(ErrorCode::truncation, "derivative of an order-0 jet");
  if (var < 0 || var >= num_vars()) fail(ErrorCode::argument, "derivative variable out of range");
  MultiJet d(num_vars(), order() - 1);
  for (std::size_t i = 0; i < d.coeffs_.size(); ++i) {
    const std::size_t src = layout_->raise(i, var);
    d.coeffs_[i] = (layout_->exponents(i)[var] + 1) * coeffs_[src];
  }
  return d;
}

MultiJet MultiJet::truncated(int order) const {
  if (order > this->order()) {
    fail(ErrorCode::truncation, "cannot raise jet order by truncation");
  }
  if (order == this->order()) return *this;
  MultiJet t(num_vars(), order);
  std::copy_n(coeffs_.begin(), t.coeffs_.size(), t.coeffs_.begin());
  return t;
}

MultiJet& MultiJet::operator+=(const MultiJet& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

MultiJet& MultiJet::operator-=(const MultiJet& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

MultiJet& MultiJet::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

void MultiJet::add_product(const MultiJet& a, const MultiJet& b, double scale) {
  require_same_shape(a, b);
  require_same_shape(*this, a);
  const double* pa = a.coeffs_.data();
  const double* pb = b.coeffs_.data();
  for (std::size_t out = 0; out < coeffs_.size(); ++out) {
    double acc = 0.0;
    for (const auto& t : layout_->product_terms(out)) acc += pa[t.lhs] * pb[t.rhs];
    coeffs_[out] += scale * acc;
  }
}

MultiJet operator*(const MultiJet& a, const MultiJet& b) {
  require_same_shape(a, b);
  MultiJet out(a.num_vars(), a.order());
  out.add_product(a, b);
  return out;
}

MultiJet operator/(const MultiJet& a, const MultiJet& b) {
  require_same_shape(a, b);
  return a * recip(b);
}

MultiJet sin(const MultiJet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  const double derivs[5] = {s, c, -s, -c, s};
  double taylor[kMaxJetOrder + 1];
  for (int j = 0; j <= a.order(); ++j) taylor[j] = derivs[j] / factorial(j);
  return compose(a, {taylor, static_cast<std::size_t>(a.order() + 1)});
}

MultiJet cos(const MultiJet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  const double derivs[5] = {c, -s, -c, s, c};
  double taylor[kMaxJetOrder + 1];
  for (int j = 0; j <= a.order(); ++j) taylor[j] = derivs[j] / factorial(j);
  return compose(a, {taylor, static_cast<std::size_t>(a.order() + 1)});
}

MultiJet exp(const MultiJet& a) {
  const double e = std::exp(a.value());
  double taylor[kMaxJetOrder + 1];
  for (int j = 0; j <= a.order(); ++j) taylor[j] = e / factorial(j);
  return compose(a, {taylor, static_cast<std::size_t>(a.order() + 1)});
}

MultiJet sqrt(const MultiJet& a) {
  const double x = a.value();
  if (!(x > 0.0)) {
    fail(ErrorCode::singularity, "sqrt of a jet requires a positive constant term");
  }
  // Binomial series of (x + d)^{1/2}.
  double taylor[kMaxJetOrder + 1];
  double coeff = 1.0;
  for (int j = 0; j <= a.order(); ++j) {
    taylor[j] = coeff * std::pow(x, 0.5 - j);
    coeff *= (0.5 - j) / (j + 1);
  }
  return compose(a, {taylor, static_cast<std::size_t>(a.order() + 1)});
}

MultiJet recip(const MultiJet& a) {
  const double x = a.value();
  if (x == 0.0) fail(ErrorCode::singularity, "reciprocal of a jet with zero constant term");
  double taylor[kMaxJetOrder + 1];
  double p = 1.0 / x;
  for (int j = 0; j <= a.order(); ++j) {
    taylor[j] = p;
    p *= -1.0 / x;
  }
  return compose(a, {taylor, static_cast<std::size_t>(a.order() + 1)});
}

ComplexJet ComplexJet::constant(std::complex<double> value, int num_vars, int order) {
  return {MultiJet::constant(value.real(), num_vars, order),
          MultiJet::constant(value.imag(), num_vars, order)};
}

ComplexJet exp_i_angle(const MultiJet& angle) { return {cos(angle), sin(angle)}; }

MultiJet real_inner(const ComplexJet& a, const ComplexJet& b) {
  MultiJet out(a.re.num_vars(), a.re.order());
  out.add_product(a.re, b.re);
  out.add_product(a.im, b.im);
  return out;
}

ComplexJetVector::ComplexJetVector(std::vector<ComplexJet> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) fail(ErrorCode::argument, "empty complex jet vector");
  for (const auto& e : entries_) {
    if (!e.re.same_shape(entries_.front().re) || !e.im.same_shape(entries_.front().re)) {
      fail(ErrorCode::shape_mismatch, "complex jet vector entries differ in shape");
    }
  }
}

ComplexJetVector ComplexJetVector::apply_j() const {
  std::vector<ComplexJet> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.times_i());
  return ComplexJetVector(std::move(out));
}

ComplexJetVector ComplexJetVector::conj() const {
  std::vector<ComplexJet> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.conj());
  return ComplexJetVector(std::move(out));
}

ComplexJetVector ComplexJetVector::derivative(int var) const {
  std::vector<ComplexJet> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.derivative(var));
  return ComplexJetVector(std::move(out));
}

ComplexJetVector ComplexJetVector::truncated(int order) const {
  std::vector<ComplexJet> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.truncated(order));
  return ComplexJetVector(std::move(out));
}

ComplexJetVector ComplexJetVector::scaled(double s) const {
  std::vector<ComplexJet> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e * s);
  return ComplexJetVector(std::move(out));
}

std::vector<std::complex<double>> ComplexJetVector::value() const {
  std::vector<std::complex<double>> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.value());
  return out;
}

std::vector<std::complex<double>> ComplexJetVector::partial(std::span<const int> alpha) const {
  std::vector<std::complex<double>> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.emplace_back(e.re.partial(alpha), e.im.partial(alpha));
  return out;
}

MultiJet real_inner(const ComplexJetVector& a, const ComplexJetVector& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::shape_mismatch, "complex jet vectors differ in dimension");
  MultiJet out(a.num_vars(), a.order());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    out.add_product(a[k].re, b[k].re);
    out.add_product(a[k].im, b[k].im);
  }
  return out;
}

}  // namespace minlag
