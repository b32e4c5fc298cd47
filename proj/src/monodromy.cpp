#include "sympforge/monodromy.hpp"

#include <cstdlib>
#include <string>

#include "sympforge/error.hpp"
#include "sympforge/siegel_group.hpp"

namespace sympforge {

void validate_presentation(const Presentation& pres) {
  if (pres.generators < 0) fail(ErrorCode::ShapeMismatch, "generator count must be non-negative");
  for (const auto& word : pres.relators)
    for (int letter : word)
      if (letter == 0 || std::abs(letter) > pres.generators)
        fail(ErrorCode::ShapeMismatch,
             "relator letter " + std::to_string(letter) + " is out of range");
}

namespace {

void require_shapes(const Representation& rep) {
  const Index dim = 2 * static_cast<Index>(rep.type.size());
  for (const auto& m : rep.images)
    if (m.rows() != dim || m.cols() != dim)
      fail(ErrorCode::ShapeMismatch, "every image must be 2n x 2n for the type context");
}

}  // namespace

IntMatrix evaluate_word(const Representation& rep, const std::vector<int>& word) {
  const Index dim = 2 * static_cast<Index>(rep.type.size());
  IntMatrix out = int_identity(dim);
  for (int letter : word) {
    if (letter == 0 || std::abs(letter) > static_cast<int>(rep.images.size()))
      fail(ErrorCode::ShapeMismatch, "word letter out of range");
    const IntMatrix& g = rep.images[static_cast<std::size_t>(std::abs(letter) - 1)];
    out = letter > 0 ? IntMatrix(out * g) : IntMatrix(out * siegel_inverse(g, rep.type));
  }
  return out;
}

bool validate_representation(const Presentation& pres, const Representation& rep) {
  validate_presentation(pres);
  if (static_cast<int>(rep.images.size()) != pres.generators)
    fail(ErrorCode::ShapeMismatch, "one image per generator is required");
  require_shapes(rep);
  for (const auto& m : rep.images)
    if (!is_member(m, rep.type)) return false;
  const IntMatrix identity = int_identity(2 * static_cast<Index>(rep.type.size()));
  for (const auto& word : pres.relators)
    if (evaluate_word(rep, word) != identity) return false;
  return true;
}

bool is_holonomy_trivial(const Representation& rep) {
  require_shapes(rep);
  const IntMatrix identity = int_identity(2 * static_cast<Index>(rep.type.size()));
  for (const auto& m : rep.images)
    if (m != identity) return false;
  return true;
}

Representation conjugate(const Representation& rep, const IntMatrix& gamma) {
  require_shapes(rep);
  const SiegelElement g(gamma, rep.type);
  const IntMatrix g_inv = g.inverse().matrix();
  Representation out{{}, rep.type};
  for (const auto& m : rep.images) out.images.push_back(gamma * m * g_inv);
  return out;
}

DiracReport verify_dirac_system(const std::vector<RatMatrix>& images, const RatMatrix& basis) {
  const Index dim = basis.rows();
  if (dim != basis.cols() || dim == 0 || dim % 2 != 0)
    fail(ErrorCode::DegenerateLattice, "lattice basis must be a square matrix of even size");
  const auto basis_inv = inverse(basis);
  if (!basis_inv) fail(ErrorCode::DegenerateLattice, "lattice basis is singular");
  for (const auto& t : images) {
    if (t.rows() != dim || t.cols() != dim)
      fail(ErrorCode::ShapeMismatch, "image size differs from the lattice dimension");
    if (!is_symplectic(t)) fail(ErrorCode::NotSymplectic, "image is not symplectic over Q");
  }

  DiracReport report;
  for (std::size_t k = 0; k < images.size(); ++k) {
    const RatMatrix c = *basis_inv * images[k] * basis;
    const RatMatrix c_inv = *basis_inv * *inverse(images[k]) * basis;
    if (!is_integral(c) || !is_integral(c_inv)) {
      report.reason = "image " + std::to_string(k + 1) + " does not preserve the lattice";
      return report;
    }
  }
  const RatMatrix omega = to_rational(
      standard_gram(TypeVector::principal(static_cast<std::size_t>(dim / 2))).matrix());
  const RatMatrix gram = basis.transpose() * omega * basis;
  if (!is_integral(gram)) {
    report.reason = "the symplectic form is not integral on the lattice";
    return report;
  }
  report.ok = true;
  report.type = space_type(GramMatrix(to_integer(gram)));
  return report;
}

namespace {

Rational trace_of(const IntMatrix& m) { return trace(to_rational(m)); }

}  // namespace

ConjugacyResult conjugacy_test_bounded(const Representation& rep1, const Representation& rep2,
                                       int bound, std::uint64_t budget) {
  if (rep1.images.size() != rep2.images.size() || !(rep1.type == rep2.type))
    fail(ErrorCode::ShapeMismatch, "representations must share generators and type context");
  require_shapes(rep1);
  require_shapes(rep2);
  if (bound < 0) fail(ErrorCode::InvalidInput, "entry bound must be non-negative");
  const TypeVector& t = rep1.type;
  const Index dim = 2 * static_cast<Index>(t.size());

  const std::uint64_t base = 2 * static_cast<std::uint64_t>(bound) + 1;
  const Index digits = dim * dim;
  std::uint64_t total = 1;
  for (Index i = 0; i < digits; ++i) {
    if (total > budget / base + 1) fail(ErrorCode::BoundTooLargeForBudget,
                                        "candidate count exceeds the search budget");
    total *= base;
  }
  if (total > budget)
    fail(ErrorCode::BoundTooLargeForBudget,
         "candidate count " + std::to_string(total) + " exceeds the budget " +
             std::to_string(budget));

  ConjugacyResult result;
  for (std::size_t i = 0; i < rep1.images.size(); ++i) {
    if (trace_of(rep1.images[i]) != trace_of(rep2.images[i])) {
      result.certificate = "trace mismatch";
      return result;
    }
    if (characteristic_polynomial(to_rational(rep1.images[i])) !=
        characteristic_polynomial(to_rational(rep2.images[i]))) {
      result.certificate = "characteristic polynomial mismatch";
      return result;
    }
  }

  const auto conjugates = [&](const IntMatrix& gamma) {
    for (std::size_t i = 0; i < rep1.images.size(); ++i)
      if (IntMatrix(gamma * rep1.images[i]) != IntMatrix(rep2.images[i] * gamma)) return false;
    return is_member(gamma, t);
  };

  // The identity is tried first so equal representations return it.
  const IntMatrix identity = int_identity(dim);
  ++result.candidates;
  if (conjugates(identity)) {
    result.conjugator = identity;
    return result;
  }

  // Odometer over row-major entries, first entry most significant, from -bound to bound.
  std::vector<int> entry(static_cast<std::size_t>(digits), -bound);
  IntMatrix gamma(dim, dim);
  for (std::uint64_t c = 0; c < total; ++c) {
    for (Index k = 0; k < digits; ++k) gamma(k / dim, k % dim) = entry[static_cast<std::size_t>(k)];
    ++result.candidates;
    if (conjugates(gamma)) {
      result.conjugator = gamma;
      return result;
    }
    for (Index k = digits - 1; k >= 0; --k) {
      auto& e = entry[static_cast<std::size_t>(k)];
      if (e < bound) {
        ++e;
        break;
      }
      e = -bound;
    }
  }
  result.certificate = "exhausted";
  return result;
}

}  // namespace sympforge
