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

#ifndef POINTSCAT_SPECFUN_HPP
#define POINTSCAT_SPECFUN_HPP

#include "pointscat/types.hpp"

namespace pointscat::specfun
{
    // Below this argument the ascending series is summed in extended precision,
    // above it the Hankel asymptotic expansion is used.
    inline constexpr double series_switch = 14.0;

    struct BesselJY01
    {
        double j0, y0, j1, y1;
    };

    // J0, Y0, J1, Y1 at t > 0. Throws Errc::domain for t <= 0 or non-finite t.
    BesselJY01 bessel_jy01(double t);

    // H0^(1)(t) = J0(t) + i Y0(t), t > 0
    Complex hankel1_0(double t);

    // Helmholtz fundamental solution Phi_k(x, y):
    //   3D: exp(ik|x-y|) / (4 pi |x-y|)
    //   2D: (i/4) H0^(1)(k |x-y|)
    // Depends only on |x - y|, so it is exactly symmetric in (x, y).
    // Throws Errc::singularity for x == y, Errc::validation for k <= 0 or mismatched sizes.
    Complex fundamental_solution(const Vec &x, const Vec &y, double k, Dimension dim);

    // Same kernel as a function of the distance r = |x - y| > 0
    Complex fundamental_solution_r(double r, double k, Dimension dim);
}

#endif
