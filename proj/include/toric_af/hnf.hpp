#pragma once

#include "toric_af/int_matrix.hpp"

namespace toric_af {

/// Row-style Hermite normal form: the nonzero rows of the echelon form with
/// positive pivots and entries above each pivot reduced into [0, pivot).
/// Zero rows are dropped, so two matrices generate the same row lattice
/// exactly when their forms are equal.
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Rank of the row lattice.
std::size_t lattice_rank(const IntMatrix& m);

bool same_row_lattice(const IntMatrix& a, const IntMatrix& b);

}  // namespace toric_af
