#pragma once

#include "qsim/gates.hpp"

#include <complex>
#include <cstdint>

namespace qsim::detail {

/// Gate matrix narrowed to the working precision with components split out.
/// Kernels use explicit real arithmetic so no libcall is emitted for complex
/// multiplication and both halves of a pair update share one expression.
template <class T>
struct Mat2 {
    T a_re, a_im, b_re, b_im; // row 0: (a b)
    T c_re, c_im, d_re, d_im; // row 1: (c d)

    static Mat2 from(const GateMatrix& g) {
        return {static_cast<T>(g.m00.real()), static_cast<T>(g.m00.imag()),
                static_cast<T>(g.m01.real()), static_cast<T>(g.m01.imag()),
                static_cast<T>(g.m10.real()), static_cast<T>(g.m10.imag()),
                static_cast<T>(g.m11.real()), static_cast<T>(g.m11.imag())};
    }
};

/// New low element of a pair: a*lo + b*hi. The distributed engine computes
/// exactly one side of each pair per rank; local kernels compute both via the
/// same two functions, which keeps results bit-identical across worker and
/// rank counts.
template <class T>
inline std::complex<T> pair_lo_out(std::complex<T> lo, std::complex<T> hi,
                                   const Mat2<T>& m) {
    const T lr = lo.real(), li = lo.imag(), hr = hi.real(), hi_ = hi.imag();
    return {m.a_re * lr - m.a_im * li + m.b_re * hr - m.b_im * hi_,
            m.a_re * li + m.a_im * lr + m.b_re * hi_ + m.b_im * hr};
}

/// New high element of a pair: c*lo + d*hi.
template <class T>
inline std::complex<T> pair_hi_out(std::complex<T> lo, std::complex<T> hi,
                                   const Mat2<T>& m) {
    const T lr = lo.real(), li = lo.imag(), hr = hi.real(), hi_ = hi.imag();
    return {m.c_re * lr - m.c_im * li + m.d_re * hr - m.d_im * hi_,
            m.c_re * li + m.c_im * lr + m.d_re * hi_ + m.d_im * hr};
}

template <class T>
inline void update_pair(std::complex<T>& lo, std::complex<T>& hi,
                        const Mat2<T>& m) {
    const std::complex<T> new_lo = pair_lo_out(lo, hi, m);
    const std::complex<T> new_hi = pair_hi_out(lo, hi, m);
    lo = new_lo;
    hi = new_hi;
}

/// Base index of pair i for a gate on `target`:
/// floor(i / 2^t) * 2^(t+1) + (i mod 2^t). Its target bit is 0.
inline std::uint64_t pair_base_index(std::uint64_t i, int target) {
    const std::uint64_t low_mask = (std::uint64_t{1} << target) - 1;
    return ((i & ~low_mask) << 1) | (i & low_mask);
}

} // namespace qsim::detail
