#pragma once
// Constructors for the extremal families attaining the theta bound, their
// validity checks, and the maximizer classifier.

#include "fqhb/forms.hpp"
#include "fqhb/locus.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fqhb {

// Square matrix with transpose equal to its negation and zero diagonal.
// Both conditions are checked explicitly so the convention stays meaningful
// in characteristic 2.
struct AntisymMatrix {
    std::uint32_t m = 0;
    std::vector<Fe> a; // row-major, m*m entries

    Fe at(std::uint32_t i, std::uint32_t j) const { return a[std::size_t(i) * m + j]; }
};

// Builds the matrix from its strict upper triangle, row-major:
// a01, a02, ..., a0{m-1}, a12, ..., a{m-2},{m-1}.
AntisymMatrix antisym_from_upper(const FieldCtx& F, std::uint32_t m,
                                 const std::vector<Fe>& upper);
void validate_antisym(const FieldCtx& F, const AntisymMatrix& A);
Fe matrix_det(const FieldCtx& F, const AntisymMatrix& A);

enum class FamilyLabel {
    HYPERPLANES_I,
    SPACE_FILLING_II1,
    HERMITIAN_II2a,
    HERMITIAN_CONE_II2,
    HYPERBOLIC_CONE_II3,
    CONIC_T2,
    ELLIPTIC_T2,
    NON_MAXIMIZER,
    UNRECOGNIZED_MAXIMIZER,
};

std::string family_label_name(FamilyLabel label);

// Product of d pairwise independent linear forms all vanishing on a common
// codimension-2 flat: d concurrent hyperplanes in P^{n+1}.  Each entry of
// `hyperplanes` is a coefficient vector of length n+2.
HomogPoly concurrent_hyperplanes(const FieldCtx& F, std::uint32_t d, std::uint32_t n,
                                 const std::vector<std::vector<Fe>>& hyperplanes);

// sum_{i,j} a_ij X_i X_j^q for an antisymmetric zero-diagonal A of size
// n+2: a degree q+1 hypersurface passing through every rational point of
// P^{n+1}.  Nonsingular exactly when matrix_det(A) != 0; for odd n the
// determinant vanishes identically, so those hypersurfaces are singular.
HomogPoly space_filling(const FieldCtx& F, const AntisymMatrix& A);

// The diagonal Hermitian hypersurface of dimension m: sum of
// X_i^{sqrt(q)+1} over m+2 variables.  Requires q to be a square.
HomogPoly hermitian(const FieldCtx& F, std::uint32_t m);

// The same form read in m+l+3 variables: the cone whose l-dimensional
// vertex is spanned by the new coordinates, over the base hypersurface.
HomogPoly cone(std::uint32_t l, const HomogPoly& base);

// X0 X1 + X2 X3 + ... + X_{2s} X_{2s+1}: the split quadric in P^{2s+1}.
HomogPoly hyperbolic_quadric(const FieldCtx& F, std::uint32_t s);

// alpha X0^2 + X0 X1 + X1^2 + X2 X3 with the binary part irreducible over
// F_q: requires abs_trace(alpha) = 1 in characteristic 2, and 1 - 4 alpha
// a nonsquare for odd p.
HomogPoly elliptic_surface(const FieldCtx& F, Fe alpha);

// A smooth plane conic: X0^2 + X1^2 + X2^2 for odd p; in characteristic 2
// that diagonal form degenerates to a double line, so X0^2 + X1 X2 is
// returned instead.
HomogPoly conic(const FieldCtx& F);

// Exact division of f by a nonzero linear form; nullopt when f is not
// divisible.  f must be nonzero of positive degree.
std::optional<HomogPoly> divide_by_linear(const FieldCtx& F, const HomogPoly& f,
                                          const std::vector<Fe>& lin);

// Decides which extremal family a form with the given report belongs to.
// The tests are structural: trial division by rational linear forms for
// the hyperplane case, apex elimination for the cone cases, counting
// signatures otherwise.  Non-maximizers get NON_MAXIMIZER; a maximizer
// matching no family gets UNRECOGNIZED_MAXIMIZER.
FamilyLabel classify_maximizer(const FieldCtx& F, const HomogPoly& f,
                               const InvariantReport& report);

} // namespace fqhb
