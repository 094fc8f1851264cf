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

#include "mlab/fft.hpp"

#include "mlab/localfield.hpp"

namespace mlab {

namespace {

using C = std::complex<double>;

// Plain product; operator* on std::complex goes through the Annex G path.
inline C Mul(const C& a, const C& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

std::size_t SmallestFactor(std::size_t n) {
  for (std::size_t r = 2; r * r <= n; ++r) {
    if (n % r == 0) return r;
  }
  return n;
}

// tw[j] = exp(sign 2 pi i j / N); a size-n subproblem uses tw[j * (N / n)].
// factors[f..] multiply to n.
void Rec(const C* in, std::size_t stride, C* out, std::size_t n, const std::vector<C>& tw,
         std::size_t step, const std::vector<std::size_t>& factors, std::size_t f,
         std::vector<C>& scratch) {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t r = factors[f];
  if (r == n) {
    for (std::size_t k = 0; k < n; ++k) {
      C s = 0;
      std::size_t e = 0;
      for (std::size_t j = 0; j < n; ++j) {
        s += Mul(in[j * stride], tw[e * step]);
        e += k;
        if (e >= n) e -= n;
      }
      scratch[k] = s;
    }
    std::copy(scratch.begin(), scratch.begin() + n, out);
    return;
  }
  const std::size_t m = n / r;
  for (std::size_t q = 0; q < r; ++q) {
    Rec(in + q * stride, stride * r, out + q * m, m, tw, step * r, factors, f + 1, scratch);
  }
  C t[64];
  C* tv = r <= 64 ? t : scratch.data() + n;
  for (std::size_t k1 = 0; k1 < m; ++k1) {
    for (std::size_t q = 0; q < r; ++q) tv[q] = Mul(out[q * m + k1], tw[q * k1 * step]);
    for (std::size_t k2 = 0; k2 < r; ++k2) {
      C s = 0;
      std::size_t e = 0;
      for (std::size_t q = 0; q < r; ++q) {
        s += Mul(tv[q], tw[e * m * step]);
        e += k2;
        if (e >= r) e -= r;
      }
      scratch[k1 + m * k2] = s;
    }
  }
  std::copy(scratch.begin(), scratch.begin() + n, out);
}

std::vector<std::size_t> Factors(std::size_t n) {
  std::vector<std::size_t> out;
  while (n > 1) {
    const std::size_t r = SmallestFactor(n);
    out.push_back(r);
    n /= r;
  }
  return out;
}

std::vector<C> Twiddles(std::size_t n, int sign) {
  std::vector<C> tw(n);
  for (std::size_t j = 0; j < n; ++j) {
    tw[j] = RootOfUnity(sign > 0 ? static_cast<std::int64_t>(j) : -static_cast<std::int64_t>(j),
                        static_cast<std::int64_t>(n));
  }
  return tw;
}

}  // namespace

void Dft(std::vector<C>& data, int sign) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  const auto tw = Twiddles(n, sign);
  std::vector<C> out(n), scratch(2 * n);
  Rec(data.data(), 1, out.data(), n, tw, 1, Factors(n), 0, scratch);
  data.swap(out);
}

void DftMulti(std::vector<C>& data, const std::vector<std::size_t>& shape, int sign) {
  std::size_t total = 1;
  for (auto s : shape) total *= s;
  if (total != data.size()) Fail(ErrorKind::kDimensionMismatch, "DftMulti: shape");
  std::size_t inner = 1;
  std::vector<C> line, out, scratch;
  for (std::size_t axis = 0; axis < shape.size(); ++axis) {
    const std::size_t n = shape[axis];
    const std::size_t outer = total / (inner * n);
    if (n > 1) {
      const auto tw = Twiddles(n, sign);
      const auto factors = Factors(n);
      line.resize(n);
      out.resize(n);
      scratch.resize(2 * n);
      for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < inner; ++i) {
          const std::size_t base = o * inner * n + i;
          for (std::size_t k = 0; k < n; ++k) line[k] = data[base + k * inner];
          Rec(line.data(), 1, out.data(), n, tw, 1, factors, 0, scratch);
          for (std::size_t k = 0; k < n; ++k) data[base + k * inner] = out[k];
        }
      }
    }
    inner *= n;
  }
}

}  // namespace mlab
