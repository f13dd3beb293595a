#pragma once

#include "scv/formats.hpp"
#include "scv/schedule.hpp"

namespace scv {

/// Reference product PS = A * Z iterated straight off the triplets.
DenseMatrix dense_spmm(const CooMatrix& a, const DenseMatrix& z);

/// Applies every item in order: PS[a_row, :] += a_value * Z[a_col, :].
/// Padding items perform no arithmetic. ps must be pre-sized n_rows x F.
void execute_schedule(const Schedule& s, const DenseMatrix& z, DenseMatrix& ps);

/// Convenience wrapper allocating the zero-initialized output.
DenseMatrix execute_schedule(const Schedule& s, const DenseMatrix& z);

/// Feature combination H * W iterated over the sparse H exactly as stored.
DenseMatrix combination(const ScvMatrix& h, const DenseMatrix& w);

/// Symmetric degree normalization with self-loops: adds 1 to each diagonal
/// entry, then scales a_ij by 1/sqrt(deg_i * deg_j) where deg counts the row's
/// stored entries after the addition. Requires a square matrix.
CooMatrix gcn_normalize(const CooMatrix& a);

/// Elementwise max(x, 0) pass.
void relu(DenseMatrix& m);

}  // namespace scv
