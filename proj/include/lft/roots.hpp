#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lft/moebius.hpp"
#include "lft/tolerances.hpp"

namespace lft {

/// The unique n-th iteration root of a hyperbolic or parabolic self-map:
/// w -> alpha w + B / (1 + alpha + ... + alpha^{n-1}) with alpha = A^{1/n}
/// in half-plane form. Throws WrongClass otherwise.
Moebius root_nonelliptic(const Moebius& phi, int n, const Tolerances& tol = {});

/// conjugator o phi o conjugator = A z / (C z + 1), conjugator the disk
/// involution at the interior fixed point p.
struct EllipticNormalForm {
  Complex A;
  Complex C;
  Complex p;
  Moebius conjugator = Moebius::identity();
};

/// Throws WrongClass unless phi is elliptic (identity excluded).
EllipticNormalForm elliptic_normal_form(const Moebius& phi, const Tolerances& tol = {});

/// The n n-th roots of A, principal first, by increasing argument offset.
std::vector<Complex> nth_roots(Complex A, int n);

/// |C (1 - a)| <= (1 - |a|) |1 - A| + slack
bool elliptic_root_admissible(const EllipticNormalForm& nf, Complex a, double slack);

/// z -> a z / ((C (1 - a) / (1 - A)) z + 1), conjugated back.
Moebius elliptic_root_from(const EllipticNormalForm& nf, Complex a);

/// All self-map n-th roots of an elliptic map, in the order of nth_roots.
/// Throws WrongClass for the identity (see identity_roots) and non-elliptic
/// maps.
std::vector<Moebius> roots_elliptic(const Moebius& phi, int n, const Tolerances& tol = {});

/// phi_p o (lambda z) o phi_p. Throws InvalidUnitRoot unless lambda^n = 1
/// and lambda != 1; OutsideDisk unless |p| < 1.
Moebius identity_roots(Complex p, Complex lambda, int n, const Tolerances& tol = {});

/// A branch of repeated square roots a_0 = A, a_{k+1}^2 = a_k.
struct RootSequence {
  double kappa = 0.0;
  std::vector<Complex> entries;
  // log a_k; kept because 1 - |a_k| and 1 - a_k cancel badly near a_k = 1.
  std::vector<Complex> logs;
  // (1 - |a_k|) - kappa |1 - a_k|
  std::vector<double> margins;
  // (1 - |a_k|) / |1 - a_k|, nonincreasing along any branch
  std::vector<double> ratios;
  // 0 for the principal square root, 1 for its negative; none for a_0.
  std::vector<int> branches;
};

enum class EmbedStatus { Embeddable, NotEmbeddable, InconclusiveAtDepth };

const char* to_string(EmbedStatus s);

struct EmbedVerdict {
  EmbedStatus status = EmbedStatus::InconclusiveAtDepth;
  // Present for elliptic inputs with a surviving branch.
  std::optional<RootSequence> witness;
  // Deepest level of the square-root tree that was examined.
  int depth = 0;
  // The surviving margin is within tolerance of zero.
  bool boundary = false;
  std::string note;
  std::uint64_t nodes = 0;
  // Ratio increases seen along explored branches; always 0 in exact arithmetic.
  int monotonicity_violations = 0;
};

/// Decides membership in a continuous semigroup. Non-elliptic maps and
/// elliptic automorphisms always embed; elliptic non-automorphisms are
/// searched depth-first over square-root branches with pruning.
EmbedVerdict embeddable(const Moebius& phi, int max_depth = 64, const Tolerances& tol = {},
                        std::uint64_t node_budget = 1u << 20);

/// t = m / 2^k
struct DyadicTime {
  std::uint64_t m = 1;
  int k = 0;
  double value() const;
};

/// Accepts "m/2^k", "m/d" with d a power of two, or "m". Throws ParseError.
DyadicTime parse_dyadic(std::string_view text);

/// g_t of the semigroup through phi. Elliptic non-automorphisms follow the
/// witness branch of embeddable(phi, max_depth); automorphisms use principal
/// roots. Throws NotEmbeddable or InconclusiveAtDepth from the search.
Moebius dyadic_element(const Moebius& phi, DyadicTime t, int max_depth = 64,
                       const Tolerances& tol = {});

}  // namespace lft
