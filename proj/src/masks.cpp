#include "lfa/masks.hpp"

#include <algorithm>
#include <bit>

#include "lfa/errors.hpp"
#include "lfa/parameters.hpp"

namespace lfa {

Mask::Mask(int m, std::uint32_t bits) : m_(m), bits_(bits) {
    if (m < 1 || m > kMaxVariables)
        throw dimension_error("mask dimension " + std::to_string(m) + " outside [1, " +
                              std::to_string(kMaxVariables) + "]");
    if (bits >> m)
        throw dimension_error("mask bits exceed dimension " + std::to_string(m));
}

int Mask::weight() const { return std::popcount(bits_); }

bool Mask::bit(int j) const {
    if (j < 0 || j >= m_) throw dimension_error("mask coordinate out of range");
    return (bits_ >> j) & 1u;
}

Mask Mask::flipped(int j) const {
    if (j < 0 || j >= m_) throw dimension_error("mask coordinate out of range");
    return Mask(m_, bits_ ^ (1u << j));
}

std::string Mask::str() const {
    std::string s = "(";
    for (int j = 0; j < m_; ++j) {
        if (j) s += ',';
        s += bit(j) ? '1' : '0';
    }
    s += ')';
    return s;
}

namespace {
void require_same_m(const Mask& v, const Mask& w) {
    if (v.m() != w.m())
        throw dimension_error("masks of different dimension: " + std::to_string(v.m()) +
                              " vs " + std::to_string(w.m()));
}
}  // namespace

bool partial_geq(const Mask& v, const Mask& w) {
    require_same_m(v, w);
    return (w.bits() & ~v.bits()) == 0;
}

bool partial_gt(const Mask& v, const Mask& w) {
    return partial_geq(v, w) && v.bits() != w.bits();
}

bool total_less(const Mask& v, const Mask& w) {
    require_same_m(v, w);
    if (v.bits() == w.bits()) return false;
    const int wv = v.weight(), ww = w.weight();
    if (wv != ww) return wv < ww;
    // Equal weight: smaller is the mask holding a 1 at the first coordinate
    // where the two differ.
    const int j = std::countr_zero(v.bits() ^ w.bits());
    return (v.bits() >> j) & 1u;
}

std::vector<Mask> enumerate_masks(int m) {
    if (m < 1 || m > kMaxVariables)
        throw dimension_error("mask dimension " + std::to_string(m) + " outside [1, " +
                              std::to_string(kMaxVariables) + "]");
    std::vector<Mask> all;
    all.reserve(std::size_t{1} << m);
    for (std::uint32_t b = 0; b < (1u << m); ++b) all.emplace_back(m, b);
    std::sort(all.begin(), all.end(),
              [](const Mask& x, const Mask& y) { return total_less(x, y); });
    return all;
}

MaskBasis make_basis(int m) {
    MaskBasis basis;
    basis.m = m;
    basis.order = enumerate_masks(m);
    basis.position.assign(std::size_t{1} << m, -1);
    for (int i = 0; i < basis.dim(); ++i) basis.position[basis.order[i].bits()] = i;
    return basis;
}

cplx a_coefficient(const Mask& w, const ParameterSet& p) {
    if (w.m() != p.m()) throw dimension_error("mask and parameters disagree on m");
    const std::uint32_t wb = w.bits();
    // Submasks of w in increasing integer order; clearing a bit always lowers
    // the integer, so dependencies are ready when needed.
    std::vector<cplx> A(wb + 1, cplx(0.0));
    A[0] = cplx(1.0);
    for (std::uint32_t s = 1; s <= wb; ++s) {
        if (s & ~wb) continue;
        const Mask ms(w.m(), s);
        const cplx g = gamma_v(p, ms);
        if (g == cplx(0.0))
            throw singular_parameter_error("gamma vanishes at " + ms.str() +
                                           "; chain coefficient undefined");
        cplx acc(0.0);
        for (std::uint32_t rest = s; rest;) {
            const std::uint32_t low = rest & (~rest + 1u);
            acc += A[s ^ low];
            rest ^= low;
        }
        A[s] = acc / g;
    }
    return A[wb];
}

}  // namespace lfa
