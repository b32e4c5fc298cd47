#pragma once

// Monodromy representations of finitely presented groups into Sp_t(2n, Z),
// Dirac-system witnesses and bounded conjugacy search. All arithmetic is exact.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sympforge/exact.hpp"
#include "sympforge/symplattice.hpp"

namespace sympforge {

/// Generators 1..k; a relator is a word of signed generator indices (-i is the inverse).
struct Presentation {
  int generators = 0;
  std::vector<std::vector<int>> relators;
};

/// Throws ShapeMismatch on out-of-range relator letters.
void validate_presentation(const Presentation& pres);

struct Representation {
  std::vector<IntMatrix> images;
  TypeVector type;
};

/// True iff every image lies in Sp_t(2n, Z) and every relator evaluates to
/// the identity. Throws ShapeMismatch on count or size disagreement.
bool validate_representation(const Presentation& pres, const Representation& rep);

/// Product of the images along a word; inverses via the exact group inverse.
IntMatrix evaluate_word(const Representation& rep, const std::vector<int>& word);

bool is_holonomy_trivial(const Representation& rep);

/// gamma rep gamma^{-1}, gamma a member of Sp_t(2n, Z). Throws NotAMember.
Representation conjugate(const Representation& rep, const IntMatrix& gamma);

struct DiracReport {
  bool ok = false;
  std::optional<TypeVector> type;
  std::string reason;
};

/// Checks that the column lattice of `basis` is preserved by every image and
/// that omega_{2n} is integral on it. Throws DegenerateLattice, NotSymplectic.
DiracReport verify_dirac_system(const std::vector<RatMatrix>& images, const RatMatrix& basis);

struct ConjugacyResult {
  std::optional<IntMatrix> conjugator;
  /// Why nothing was found: "trace mismatch", "characteristic polynomial
  /// mismatch" or "exhausted"; empty on success.
  std::string certificate;
  std::uint64_t candidates = 0;
};

/// Lexicographic search over integer gamma with |entries| <= bound for a
/// member of Sp_t(2n, Z) with gamma rep1(g) gamma^{-1} = rep2(g) for all g.
/// A negative answer says nothing beyond the bound. Throws ShapeMismatch and
/// BoundTooLargeForBudget when (2 bound + 1)^{(2n)^2} exceeds `budget`.
ConjugacyResult conjugacy_test_bounded(const Representation& rep1, const Representation& rep2,
                                       int bound, std::uint64_t budget = 10'000'000);

}  // namespace sympforge
