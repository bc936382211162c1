// Copyright 2026 The conceft-oae Authors
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

#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace conceft {

using cplx = std::complex<double>;

// Thin wrapper over a cached FFTW plan of one size.
//
// Plans are created once per size under a lock; transforms use FFTW's
// new-array execute interface and are safe to call concurrently from
// OpenMP workers. No normalization is applied in either direction.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }

  // out[k] = sum_n in[n] exp(-i 2 pi k n / N). in and out may alias.
  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  // out[n] = sum_k in[k] exp(+i 2 pi k n / N). in and out may alias.
  void inverse(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  std::size_t n_;
  void* forward_plan_;
  void* inverse_plan_;
};

// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace conceft
