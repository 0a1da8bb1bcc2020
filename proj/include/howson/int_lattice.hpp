#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace howson {

using IntVec = std::vector<std::int64_t>;
using IntMat = std::vector<IntVec>;

/// Row Hermite normal form of an integer matrix together with the unimodular
/// transform: transform * input = [basis; 0], and the trailing rows of the
/// transform span the left kernel of the input.
struct RowHermite {
  IntMat basis;      // nonzero rows, positive pivots, entries above reduced
  IntMat transform;  // rows of U matching `basis`
  IntMat kernel;     // remaining rows of U; kernel * input = 0
  std::vector<std::size_t> pivots;
};

RowHermite hermite_rows(const IntMat& rows, std::size_t cols);

/// Coefficients c with c * basis = target for a basis in Hermite form, or
/// nullopt when target is outside the lattice.
std::optional<IntVec> solve_in_lattice(const RowHermite& h, const IntVec& target);

/// c * m (row vector times matrix).
IntVec row_times(const IntVec& c, const IntMat& m, std::size_t cols);

}  // namespace howson
