#pragma once

// Seeded generators for property sweeps.

#include <cstdint>
#include <random>
#include <vector>

#include "sympforge/exact.hpp"
#include "sympforge/forms4d.hpp"
#include "sympforge/symplattice.hpp"
#include "sympforge/taming.hpp"

namespace sympforge::gen {

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi);
double uniform_real(Rng& rng, double lo, double hi);

/// Antisymmetric integer matrix with entries in [-bound, bound] and det != 0.
IntMatrix antisymmetric_nondegenerate(Rng& rng, Index n, int bound);
/// Product of `steps` elementary integer row operations and sign flips.
IntMatrix unimodular(Rng& rng, Index dim, int steps = 6, int bound = 2);
/// Divisibility chain of length n; each ratio t_{i+1}/t_i is in [1, max_ratio].
TypeVector type_vector(Rng& rng, std::size_t n, int max_ratio = 3);
/// Product of `steps` random generators of Sp_t(2n, Z) in the Z^{2n} picture.
IntMatrix siegel_member(Rng& rng, const TypeVector& t, int steps = 4, int bound = 2);
/// Rational vector with denominators up to max_den.
RatVector rational_vector(Rng& rng, Index dim, int max_den = 6);

DenseMatrix<double> symmetric(Rng& rng, Index n, double scale = 1.0);
DenseMatrix<double> positive_definite(Rng& rng, Index n);
PeriodMatrix<double> period_matrix(Rng& rng, Index n);
/// Real symplectic matrix of moderate condition number.
DenseMatrix<double> real_symplectic(Rng& rng, Index n);
/// Congruence P^T eta P of Minkowski space, with a random orientation if requested.
LorentzPoint<double> lorentz_point(Rng& rng, bool random_orientation = true);
/// -dt^2 + h with h random positive-definite.
LorentzPoint<double> static_lorentz_point(Rng& rng, bool random_orientation = true);
VectorTwoForm<double> two_form(Rng& rng, Index rank);

}  // namespace sympforge::gen
