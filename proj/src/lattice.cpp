#include "triwalk/lattice.hpp"

#include <cmath>
#include <numbers>

namespace triwalk {

WaveVector make_wavevector(const LatticeSpec& spec, int k1, int k2) {
    if (k1 < 0 || k1 >= spec.side || k2 < 0 || k2 >= spec.side)
        throw std::out_of_range("wavevector components outside [0, side)");
    const double unit = 2.0 * std::numbers::pi / spec.side;
    return WaveVector{k1, k2, unit * k1, unit * k2};
}

std::vector<WaveVector> enumerate_wavevectors(const LatticeSpec& spec) {
    std::vector<WaveVector> out;
    out.reserve(spec.n_sites);
    for (int k1 = 0; k1 < spec.side; ++k1)
        for (int k2 = 0; k2 < spec.side; ++k2)
            out.push_back(make_wavevector(spec, k1, k2));
    return out;
}

}  // namespace triwalk
