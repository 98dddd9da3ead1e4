#pragma once
// Points and flats of P^N(F_q): canonical representations, deterministic
// enumeration, spans, incidence, and the standard counting formulas.
//
// Points are normalized so the first nonzero coordinate is 1; flats carry
// their basis as a reduced row-echelon matrix, so equality of flats is
// equality of representations.  All enumerations are in lexicographic order
// of the canonical form and are restartable by index, which is what makes
// sharded runs reproducible.

#include "fqhb/gf.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace fqhb {

struct ProjPoint {
    std::vector<Fe> c; // normalized homogeneous coordinates, length N+1
    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

// A k-dimensional linear subspace of P^{N}, stored as a (k+1) x (N+1) basis
// matrix in reduced row-echelon form (row-major).  dim = -1 with an empty
// matrix represents the empty flat P^{-1}.
struct Flat {
    int dim = -1;
    std::uint32_t ncols = 0;
    std::vector<Fe> a;

    static Flat empty(std::uint32_t ncols) { return Flat{-1, ncols, {}}; }
    std::uint32_t nrows() const { return static_cast<std::uint32_t>(dim + 1); }
    const Fe* row(std::uint32_t i) const { return a.data() + std::size_t(i) * ncols; }

    friend bool operator==(const Flat&, const Flat&) = default;
    friend auto operator<=>(const Flat&, const Flat&) = default;
};

struct FlatHash {
    std::size_t operator()(const Flat& f) const {
        std::size_t h = 1469598103934665603ull ^ std::size_t(f.dim + 2);
        for (Fe v : f.a) { h ^= v; h *= 1099511628211ull; }
        return h;
    }
};

// q^N + ... + q + 1; 0 for N = -1.  Throws std::invalid_argument for N < -1
// and std::overflow_error if the count does not fit in 64 bits.
std::uint64_t proj_count(std::int64_t N, std::uint64_t q);
unsigned __int128 proj_count128(std::int64_t N, unsigned __int128 q);

// Number of j-dimensional linear subspaces of an m-dimensional vector space
// over F_q (so flats: gaussian_binomial(N+1, k+1, q) counts k-flats of P^N).
std::uint64_t gaussian_binomial(std::uint32_t m, std::uint32_t j, std::uint64_t q);

// Normalizes a nonzero coordinate vector; throws on the zero vector.
ProjPoint normalize_point(const FieldCtx& F, const std::vector<Fe>& v);

// The idx-th point of P^N(F_q) in lexicographic order of normalized
// coordinates; point_index is its inverse.
ProjPoint point_at(const FieldCtx& F, std::uint32_t N, std::uint64_t idx);
std::uint64_t point_index(const FieldCtx& F, const ProjPoint& pt);
std::vector<ProjPoint> all_points(const FieldCtx& F, std::uint32_t N);

// Reduced row echelon form of the span of the given vectors; rows of the
// result are the canonical basis.  Throws on an empty list.
Flat span(const FieldCtx& F, const std::vector<ProjPoint>& pts);
// span of an existing flat and one more point (the frequent case).
Flat span_with(const FieldCtx& F, const Flat& L, const ProjPoint& p);

bool flat_contains_point(const FieldCtx& F, const Flat& L, const ProjPoint& p);

// All rational points of the flat, in lexicographic order; size
// proj_count(dim, q).
std::vector<ProjPoint> flat_points(const FieldCtx& F, const Flat& L);

// All k-flats of P^N, sorted lexicographically on the canonical matrix.
std::vector<Flat> enumerate_flats(const FieldCtx& F, std::uint32_t N, std::uint32_t k);

// All flats of dimension dim L + 1 containing L, sorted; requires dim L < N.
std::vector<Flat> flats_through(const FieldCtx& F, const Flat& L, std::uint32_t N);

// Serialization: rows separated by ';', coordinates by ',', e.g.
// "1,0,0,0;0,1,0,0".  The empty flat serializes as "-".
std::string flat_to_string(const Flat& L);
Flat flat_from_string(const FieldCtx& F, const std::string& s, std::uint32_t ncols);
std::string point_to_string(const ProjPoint& p); // "(a:b:c)" display form
std::string point_to_csv(const ProjPoint& p);    // "a,b,c" machine form

} // namespace fqhb
