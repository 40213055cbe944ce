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

#ifndef POINTSCAT_GEOMETRY_HPP
#define POINTSCAT_GEOMETRY_HPP

#include "pointscat/types.hpp"

#include <array>
#include <span>
#include <vector>

namespace pointscat::geometry
{
    // Sphere |z - center| = radius in R^3, radius > 0
    struct SphereObservation
    {
        SphereObservation(Vec center, double radius);
        Vec center;
        double radius;
    };

    // Plane normal.z = offset with |normal| = 1
    struct Hyperplane
    {
        Hyperplane(Vec normal, double offset);
        Vec normal;
        double offset;
        double signed_distance(const Vec &z) const { return normal.dot(z) - offset; }
    };

    struct TrilaterationOptions
    {
        // Slack for triangle inequalities and for clamping slightly negative
        // square-root arguments (factors of length: -tol, squared lengths: -tol^2).
        double tol_geo = 1e-6;
        // Minimum tetrahedron volume relative to diameter^3
        double min_relative_volume = 1e-9;
    };

    // Locate z in R^3 from its distances to four non-coplanar centers using the
    // constructive four-step scheme:
    //   1. foot O12 of the perpendicular from z onto line x1x2 (Heron area + Pythagoras),
    //   2. projection x3' of x3 onto the plane through O12 normal to x1x2, height h2,
    //   3. foot O of the perpendicular from z onto line O12 x3' (step 1 again, in that plane),
    //   4. z = O +- t2 l with l normal to plane x1x2x3; the sign is fixed by |z - x4| = r4.
    //      When t2 <= sqrt(tol_geo) the offset along l is solved from |z - x4| = r4 directly.
    // Errors: degenerate_geometry (coplanar centers), infeasible_distances,
    // ambiguous_solution (both signs match r4 equally well).
    Vec trilaterate4(std::span<const SphereObservation, 4> obs, const TrilaterationOptions &opt = {});

    // Linearized least-squares fit for noisy radii. Differencing |z-x_j|^2 = r_j^2
    // against the first sensor gives a linear system in z. This is an alternative
    // solver and not the four-step construction above. Needs >= 4 sensors in 3D
    // (or >= 3 in 2D) in general position.
    Vec trilaterate_least_squares(std::span<const SphereObservation> obs);

    // f(z) = #{(l, m) : |xhat_l.(z - z_m)| <= tol}
    int hyperplane_count(const Vec &z, std::span<const Vec> directions, std::span<const Vec> locations, double tol);

    // Solve xhat_j.z = p_j for n linearly independent directions in R^n.
    // Throws singular_system when the direction matrix has condition number >= 1e8.
    Vec locate_from_projections(std::span<const Vec> directions, std::span<const double> projections);
}

#endif
