#pragma once

#include <vector>

#include "msym/matrix.hpp"

namespace msym {

struct SymmetricEigen {
  std::vector<double> values;  // decreasing |lambda|, ties by decreasing lambda
  DenseMatrix vectors;         // orthogonal; column k pairs with values[k]
};

/// Cyclic threshold Jacobi. Stops when the off-diagonal Frobenius norm drops
/// below 1e-13 * ||M||_F; gives up after 30 sweeps.
SymmetricEigen symmetric_eig(const DenseMatrix& M);

}  // namespace msym
