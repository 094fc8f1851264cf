// Copyright 2026 The mlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Mixed-radix discrete Fourier transform.
//   out[k] = sum_j in[j] * exp(sign * 2 pi i j k / n)

#ifndef MLAB_FFT_HPP_
#define MLAB_FFT_HPP_

#include <complex>
#include <cstddef>
#include <vector>

namespace mlab {

void Dft(std::vector<std::complex<double>>& data, int sign);

// In-place transform along every axis. Element (i_0, i_1, ...) is stored at
// i_0 + shape[0] * (i_1 + shape[1] * (...)).
void DftMulti(std::vector<std::complex<double>>& data, const std::vector<std::size_t>& shape,
              int sign);

}  // namespace mlab

#endif  // MLAB_FFT_HPP_
