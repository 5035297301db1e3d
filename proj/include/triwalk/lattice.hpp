#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace triwalk {

// sqrt(N) x sqrt(N) triangular Bravais lattice with periodic boundaries.
// All geometry is integer index arithmetic on the (n1, n2) coordinates;
// the basis vectors never appear explicitly.
struct LatticeSpec {
    int side = 0;     // sites per axis, >= 2
    int n_sites = 0;  // side * side

    LatticeSpec() = default;
    explicit LatticeSpec(int side_) : side(side_), n_sites(side_ * side_) {
        if (side_ < 2) throw std::invalid_argument("side must be >= 2");
    }
};

// Site addressed both by coordinates and by the flat row-major index
// flat = n1 * side + n2. The flat layout is part of the file formats and
// must not change.
struct SiteIndex {
    int n1 = 0;
    int n2 = 0;
    int flat = 0;
};

inline SiteIndex make_site(const LatticeSpec& spec, int n1, int n2) {
    if (n1 < 0 || n1 >= spec.side || n2 < 0 || n2 >= spec.side)
        throw std::out_of_range("site coordinates outside lattice");
    return SiteIndex{n1, n2, n1 * spec.side + n2};
}

inline SiteIndex site_from_flat(const LatticeSpec& spec, int flat) {
    if (flat < 0 || flat >= spec.n_sites)
        throw std::out_of_range("flat site index outside lattice");
    return SiteIndex{flat / spec.side, flat % spec.side, flat};
}

inline constexpr int kNumDirections = 6;

// Directions j and j+3 are mutual inverses.
inline constexpr int opposite_direction(int j) { return (j + 3) % 6; }

// Per-direction displacement of (n1, n2), one slot per direction label.
inline constexpr std::array<std::array<int, 2>, 6> kDisplacement{
    {{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};

inline constexpr int wrap_coord(int x, int side) {
    x %= side;
    return x < 0 ? x + side : x;
}

inline SiteIndex neighbor(const LatticeSpec& spec, const SiteIndex& s, int j) {
    const int n1 = wrap_coord(s.n1 + kDisplacement[j][0], spec.side);
    const int n2 = wrap_coord(s.n2 + kDisplacement[j][1], spec.side);
    return SiteIndex{n1, n2, n1 * spec.side + n2};
}

// Reciprocal-lattice mode (k1, k2) with ktilde_i = 2*pi*k_i / side.
struct WaveVector {
    int k1 = 0;
    int k2 = 0;
    double ktilde1 = 0.0;
    double ktilde2 = 0.0;
};

WaveVector make_wavevector(const LatticeSpec& spec, int k1, int k2);

// All N wavevectors, (0,0) first, then row-major in (k1, k2).
std::vector<WaveVector> enumerate_wavevectors(const LatticeSpec& spec);

}  // namespace triwalk
