#ifndef SPRAYLIE_TENSOR_HPP
#define SPRAYLIE_TENSOR_HPP

#include "spraylie/symexpr.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace spraylie {

/// Dense n x ... x n array of expressions, indices 0-based.
template <std::size_t Rank>
class ExprTensor {
public:
  ExprTensor() = default;
  explicit ExprTensor(int dim) : dim_(dim), data_(size_for(dim)) {}

  int dim() const { return dim_; }

  template <class... I>
    requires(sizeof...(I) == Rank)
  Expr& operator()(I... idx)
  {
    return data_[offset({static_cast<int>(idx)...})];
  }

  template <class... I>
    requires(sizeof...(I) == Rank)
  const Expr& operator()(I... idx) const
  {
    return data_[offset({static_cast<int>(idx)...})];
  }

  const std::vector<Expr>& flat() const { return data_; }

  bool is_zero() const
  {
    for (const auto& e : data_)
      if (!e.is_zero()) return false;
    return true;
  }

  friend bool operator==(const ExprTensor&, const ExprTensor&) = default;

private:
  static std::size_t size_for(int dim)
  {
    std::size_t s = 1;
    for (std::size_t r = 0; r < Rank; ++r) s *= static_cast<std::size_t>(dim);
    return s;
  }

  std::size_t offset(std::array<int, Rank> idx) const
  {
    std::size_t off = 0;
    for (int i : idx) off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return off;
  }

  int dim_ = 0;
  std::vector<Expr> data_;
};

using ExprMatrix = ExprTensor<2>;

} // namespace spraylie

#endif // SPRAYLIE_TENSOR_HPP
