// SPDX-License-Identifier: Apache-2.0
//
// pointscat: identification of point-like acoustic objects from multi-frequency sparse data
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef POINTSCAT_RNG_HPP
#define POINTSCAT_RNG_HPP

#include "pointscat/types.hpp"

#include <cstdint>

// Counter-based noise generator ("SplitMix64-CB").
//
// The n-th 64-bit output for a seed s is the SplitMix64 finalizer applied to
//     s + (n + 1) * 0x9E3779B97F4A7C15   (mod 2^64)
// which is exactly the n-th output of a SplitMix64 stream started at state s,
// but addressable at random. Uniforms take the top 53 bits: (x >> 11) * 2^-53.
// A standard complex Gaussian sample number i uses outputs 2i and 2i+1 through
// the Box-Muller transform with u1 = 1 - uniform(2i), u2 = uniform(2i+1):
//     re = sqrt(-2 ln u1) cos(2 pi u2),  im = sqrt(-2 ln u1) sin(2 pi u2)
// Everything is integer arithmetic plus libm, so other implementations can
// reproduce the noise realizations.
namespace pointscat::rng
{
    std::uint64_t bits(std::uint64_t seed, std::uint64_t counter) noexcept;

    // Uniform in [0, 1)
    double uniform(std::uint64_t seed, std::uint64_t counter) noexcept;

    // Complex sample with independent N(0,1) real and imaginary parts
    Complex complex_normal(std::uint64_t seed, std::uint64_t index) noexcept;
}

#endif
