#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace minlag {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Cubical tensor: `rank` indices each ranging over [0, dim).
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(int rank, int dim)
      : rank_(rank), dim_(dim), data_(ipow(dim, rank), 0.0) {}

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::initializer_list<int> idx) { return data_[offset(idx)]; }
  double operator()(std::initializer_list<int> idx) const { return data_[offset(idx)]; }
  double& at(std::size_t flat) { return data_[flat]; }
  double at(std::size_t flat) const { return data_[flat]; }

  /// Decomposes a flat offset into its multi-index (first index slowest).
  void unflatten(std::size_t flat, int* idx) const {
    for (int r = rank_ - 1; r >= 0; --r) {
      idx[r] = static_cast<int>(flat % dim_);
      flat /= dim_;
    }
  }
  std::size_t flatten(const int* idx) const {
    std::size_t off = 0;
    for (int r = 0; r < rank_; ++r) off = off * dim_ + idx[r];
    return off;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  const std::vector<double>& data() const { return data_; }

  /// Applies `m` to every slot: out_{a...} = m_{a i} ... m_{d l} t_{i...l}.
  DenseTensor transformed(const Matrix& m) const {
    DenseTensor cur = *this;
    for (int slot = 0; slot < rank_; ++slot) {
      DenseTensor next(rank_, dim_);
      int idx[8];
      for (std::size_t f = 0; f < next.size(); ++f) {
        next.unflatten(f, idx);
        const int a = idx[slot];
        double acc = 0.0;
        for (int i = 0; i < dim_; ++i) {
          idx[slot] = i;
          acc += m(a, i) * cur.data_[cur.flatten(idx)];
        }
        next.data_[f] = acc;
      }
      cur = std::move(next);
    }
    return cur;
  }

 private:
  static std::size_t ipow(int base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
    return r;
  }
  std::size_t offset(std::initializer_list<int> idx) const {
    std::size_t off = 0;
    for (int i : idx) off = off * dim_ + i;
    return off;
  }

  int rank_ = 0;
  int dim_ = 0;
  std::vector<double> data_;
};

}  // namespace minlag
