#pragma once

#include <cstddef>
#include <vector>

#include "symctr/scalar.hpp"

namespace symctr {

/// Table C[i][j][k] of a bilinear product over a basis of size N:
/// b_i * b_j = sum_k C[i][j][k] b_k. For a Lie bracket the table is
/// antisymmetric in (i, j).
class StructureConstants {
public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t n) : n_(n), table_(n * n * n) {}

  std::size_t size() const { return n_; }
  const GaussianRational &operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return table_.at((i * n_ + j) * n_ + k);
  }
  GaussianRational &operator()(std::size_t i, std::size_t j, std::size_t k) {
    return table_.at((i * n_ + j) * n_ + k);
  }

  std::vector<GaussianRational> product_coords(std::size_t i, std::size_t j) const {
    std::vector<GaussianRational> v(n_);
    for (std::size_t k = 0; k < n_; ++k)
      v[k] = (*this)(i, j, k);
    return v;
  }

  bool is_antisymmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          if (!((*this)(i, j, k) == -(*this)(j, i, k)))
            return false;
    return true;
  }

  /// sum_m (C^m_ij C^l_mk + C^m_jk C^l_mi + C^m_ki C^l_mj) for one (i,j,k,l).
  GaussianRational jacobi_residual(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    GaussianRational s;
    for (std::size_t m = 0; m < n_; ++m) {
      s += (*this)(i, j, m) * (*this)(m, k, l);
      s += (*this)(j, k, m) * (*this)(m, i, l);
      s += (*this)(k, i, m) * (*this)(m, j, l);
    }
    return s;
  }

  bool satisfies_jacobi() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          for (std::size_t l = 0; l < n_; ++l)
            if (!jacobi_residual(i, j, k, l).is_zero())
              return false;
    return true;
  }

  bool is_lie_valid() const { return is_antisymmetric() && satisfies_jacobi(); }

  friend bool operator==(const StructureConstants &, const StructureConstants &) = default;

private:
  std::size_t n_ = 0;
  std::vector<GaussianRational> table_;
};

} // namespace symctr
