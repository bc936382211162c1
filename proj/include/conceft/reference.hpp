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

// Serial reference implementations. They share no code paths with the
// parallel kernels beyond the pure per-cell rules, evaluate transforms by
// direct summation, and exist to cross-check the fast versions in tests and
// benchmarks.

#include "conceft/signal.hpp"
#include "conceft/sst.hpp"
#include "conceft/stft.hpp"
#include "conceft/windows.hpp"

#include <vector>

namespace conceft::reference {

// Direct DFT per frame and bin: V(t_m, nu_k) = sum_u f[c+u] h[u] exp(-i 2 pi k u / n_fft) / fs.
ComplexGrid stft_direct(const Signal& signal, const std::vector<cplx>& window, const StftConfig& cfg);

StftFamily stft_family_direct(const Signal& signal, const WindowFamily& window, const StftConfig& cfg);

// Single-threaded ConceFT over explicit sphere samples using the direct STFT.
RealGrid conceft_serial(const Signal& signal, const WindowFamily& family, const std::vector<SphereSample>& samples,
                        const SstConfig& sst_cfg, Averaging averaging, const StftConfig& lattice);

}  // namespace conceft::reference
