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

#include "pointscat/rng.hpp"

#include <cmath>

namespace pointscat::rng
{
    std::uint64_t bits(std::uint64_t seed, std::uint64_t counter) noexcept
    {
        std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform(std::uint64_t seed, std::uint64_t counter) noexcept
    {
        return double(bits(seed, counter) >> 11) * 0x1.0p-53;
    }

    Complex complex_normal(std::uint64_t seed, std::uint64_t index) noexcept
    {
        const double u1 = 1.0 - uniform(seed, 2 * index); // (0, 1]
        const double u2 = uniform(seed, 2 * index + 1);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }
}
