// SPDX-License-Identifier: Apache-2.0
//
// Thin FFTW wrapper. Forward uses exp(-i...), unnormalized; inverse uses
// exp(+i...) and divides by the length, matching the usual FFT/IFFT pair.
// Plans are cached per (length, direction) behind a mutex; execution on
// caller-owned buffers is safe from any thread.

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mimo::fft {

/// In-place forward transform X[k] = sum_j x[j] exp(-2 pi i j k / N).
void forward(std::span<std::complex<double>> data);

/// In-place inverse transform x[j] = (1/N) sum_k X[k] exp(2 pi i j k / N).
void inverse(std::span<std::complex<double>> data);

}  // namespace mimo::fft
