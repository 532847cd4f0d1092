#pragma once

#include "conekit/matrix.hpp"

namespace conekit {

struct SymEig {
  DVec eigenvalues;   // ascending
  DMat eigenvectors;  // orthonormal columns, aligned with eigenvalues
};

// Float symmetric eigensolver. Input must be symmetric within 1e-12
// entrywise; the result satisfies ||M V - V diag(w)||_inf <= 1e-9 (1 +
// ||M||_inf).
SymEig sym_eig(const DMat& m);

double min_eigenvalue(const DMat& m);

}  // namespace conekit
