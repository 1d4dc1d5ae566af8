#ifndef SPRAYLIE_FLATTEN_HPP
#define SPRAYLIE_FLATTEN_HPP

// Coefficient flattening: a field is a finite Q-combination of
// (component, term key) atoms, and distinct atoms are linearly independent
// functions, so linear relations between fields are exact rational systems.

#include "spraylie/linalg.hpp"
#include "spraylie/vector_fields.hpp"

#include <map>
#include <span>
#include <utility>
#include <vector>

namespace spraylie {

using FlatKey = std::pair<int, TermKey>;
using FlatVector = std::map<FlatKey, Rational>;

inline FlatVector flatten(std::span<const Expr> comps)
{
  FlatVector out;
  for (int i = 0; i < static_cast<int>(comps.size()); ++i)
    for (const auto& [k, c] : comps[i].terms()) out.emplace(FlatKey{i, k}, c);
  return out;
}

inline FlatVector flatten(const BaseField& X) { return flatten(std::span<const Expr>(X.components())); }
inline FlatVector flatten(const TMField& X) { return flatten(std::span<const Expr>(X.components())); }

/// Columns are the flattened inputs; rows are the union of their atoms in canonical order.
inline RationalMatrix coefficient_matrix(const std::vector<FlatVector>& columns)
{
  std::map<FlatKey, std::size_t> rows;
  for (const auto& col : columns)
    for (const auto& [k, c] : col) rows.emplace(k, 0);
  std::size_t r = 0;
  for (auto& [k, idx] : rows) idx = r++;
  RationalMatrix m(rows.size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [k, c] : columns[j]) m(rows.at(k), j) = c;
  return m;
}

} // namespace spraylie

#endif // SPRAYLIE_FLATTEN_HPP
