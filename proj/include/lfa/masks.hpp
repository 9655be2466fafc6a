#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace lfa {

using cplx = std::complex<double>;

struct ParameterSet;

/// Hard cap on the number of variables; the system rank 2^m stays addressable.
inline constexpr int kMaxVariables = 12;

/// Element of F_2^m stored little-endian: coordinate j (0-based) sits in bit j,
/// so v_1 of the mathematical tuple (v_1,...,v_m) is the least significant bit.
class Mask {
public:
    Mask() = default;
    Mask(int m, std::uint32_t bits);

    int m() const { return m_; }
    std::uint32_t bits() const { return bits_; }
    int weight() const;            // number of set coordinates |v|
    bool bit(int j) const;         // coordinate j, 0 <= j < m
    Mask flipped(int j) const;     // toggle coordinate j
    std::string str() const;       // "(1,0,1)"

    friend bool operator==(const Mask&, const Mask&) = default;

private:
    int m_ = 0;
    std::uint32_t bits_ = 0;
};

/// Coordinatewise containment v >= w (every set bit of w is set in v).
bool partial_geq(const Mask& v, const Mask& w);

/// Strict containment v > w.
bool partial_gt(const Mask& v, const Mask& w);

/// Strict total order refining weight: lower weight comes first; at equal
/// weight the mask with a set bit at the leftmost differing coordinate comes
/// first.  For m = 2 this sorts (0,0), (1,0), (0,1), (1,1).
bool total_less(const Mask& v, const Mask& w);

/// All 2^m masks sorted ascending by total_less.  The position in this list is
/// the canonical row/column index used by every matrix in the library.
std::vector<Mask> enumerate_masks(int m);

/// Basis bookkeeping: the sorted masks plus the inverse lookup bits -> position.
struct MaskBasis {
    int m = 0;
    std::vector<Mask> order;
    std::vector<int> position;  // indexed by mask bits

    int dim() const { return static_cast<int>(order.size()); }
    int pos(const Mask& v) const { return position[v.bits()]; }
    const Mask& at(int i) const { return order[i]; }
};

MaskBasis make_basis(int m);

/// A_w: sum over all maximal descending chains from w to a weight-1 mask of
/// the reciprocal product of gamma over the chain, computed by the
/// subset-lattice recursion A_0 = 1, A_w = (sum of A over weight-(|w|-1)
/// submasks) / gamma_w.  Throws singular_parameter_error when some gamma
/// below w vanishes.
cplx a_coefficient(const Mask& w, const ParameterSet& p);

}  // namespace lfa
