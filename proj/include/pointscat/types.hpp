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

#ifndef POINTSCAT_TYPES_HPP
#define POINTSCAT_TYPES_HPP

#include "pointscat/error.hpp"

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <initializer_list>
#include <numbers>
#include <string>

namespace pointscat
{
    using Complex = std::complex<double>;

    // Point or direction in R^2 / R^3. Storage is inline (max 3 entries), no heap.
    using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

    inline Vec vec(std::initializer_list<double> c)
    {
        Vec v(static_cast<Eigen::Index>(c.size()));
        Eigen::Index i = 0;
        for (double x : c)
            v(i++) = x;
        return v;
    }

    // Unit direction (cos a, sin a) in the plane
    inline Vec planar_direction(double angle)
    {
        return vec({std::cos(angle), std::sin(angle)});
    }

    // Spatial dimension, restricted to 2 or 3
    class Dimension
    {
    public:
        explicit Dimension(int value) : value_(value)
        {
            if (value != 2 && value != 3)
                throw Error(Errc::validation, "dimension must be 2 or 3, got " + std::to_string(value));
        }
        int value() const noexcept { return value_; }
        friend bool operator==(Dimension a, Dimension b) noexcept { return a.value_ == b.value_; }

    private:
        int value_;
    };

    inline constexpr double pi = std::numbers::pi;
    inline constexpr Complex imag_unit{0.0, 1.0};
}

#endif
