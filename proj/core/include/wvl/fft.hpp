#ifndef WVL_FFT_HPP
#define WVL_FFT_HPP

#include <complex>
#include <cstddef>

namespace wvl {

// Unnormalized complex DFT of a contiguous line:
//   forward:  out[m] = sum_j in[j] e^{-2 pi i j m / n}
//   backward: out[j] = sum_m in[m] e^{+2 pi i j m / n}
// Backed by cached FFTW plans executed on internal aligned scratch, so the
// algorithm (and hence the rounding) depends only on n and the direction;
// reruns are bit-identical. Thread-safe.
void dft_line(const std::complex<double>* in, std::complex<double>* out, int n, bool forward);

} // namespace wvl

#endif
