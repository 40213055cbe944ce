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

#include "pointscat/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace pointscat::geometry
{
    SphereObservation::SphereObservation(Vec c, double r) : center(std::move(c)), radius(r)
    {
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw Error(Errc::validation, "sphere radius must be positive");
        if (!center.allFinite())
            throw Error(Errc::validation, "sphere center must be finite");
    }

    Hyperplane::Hyperplane(Vec n, double off) : normal(std::move(n)), offset(off)
    {
        if (std::abs(normal.norm() - 1.0) > 1e-12)
            throw Error(Errc::validation, "hyperplane normal must have unit norm");
    }

    namespace
    {
        using V3 = Eigen::Vector3d;

        // sqrt of a squared length, clamping roundoff-sized negatives
        double clamped_sqrt(double value, double tol, const char *what)
        {
            if (value >= 0.0)
                return std::sqrt(value);
            if (value >= -tol * tol)
                return 0.0;
            throw Error(Errc::infeasible_distances, std::string("negative argument under square root in ") + what);
        }

        // Clamp a factor of the Heron product (a length)
        double clamped_factor(double value, double tol)
        {
            if (value >= 0.0)
                return value;
            if (value >= -tol)
                return 0.0;
            throw Error(Errc::infeasible_distances, "distances violate the triangle inequality");
        }

        struct Foot
        {
            V3 point;      // foot of the perpendicular from z onto line (a, b)
            double height; // |z - foot|
        };

        // Given |z - a| = ra and |z - b| = rb, locate the foot of the perpendicular
        // from z onto the line through a and b.
        Foot perpendicular_foot(const V3 &a, double ra, const V3 &b, double rb, double tol)
        {
            const double d = (a - b).norm();
            // Heron's formula for the area of triangle (z, a, b), arranged as in
            // Kahan's note so that needle-shaped triangles keep their accuracy.
            std::array<double, 3> s{ra, rb, d};
            std::sort(s.begin(), s.end(), std::greater<>());
            const double A = s[0], B = s[1], C = s[2];
            const double f1 = A + (B + C);
            const double f2 = clamped_factor(C - (A - B), tol);
            const double f3 = C + (A - B);
            const double f4 = clamped_factor(A + (B - C), tol);
            const double area = 0.25 * std::sqrt(f1 * f2 * f3 * f4);

            const double height = 2.0 * area / d;
            // Pythagoras: |a - foot| = sqrt(ra^2 - h^2)
            const double along = clamped_sqrt(ra * ra - height * height, tol, "foot distance");
            const double t = along / d;
            const V3 point = (ra * ra + d * d >= rb * rb) ? V3(a + t * (b - a)) : V3(a - t * (b - a));
            return {point, height};
        }

        V3 to3(const Vec &v)
        {
            if (v.size() != 3)
                throw Error(Errc::validation, "four-sphere localization requires points in R^3");
            return V3(v(0), v(1), v(2));
        }
    }

    Vec trilaterate4(std::span<const SphereObservation, 4> obs, const TrilaterationOptions &opt)
    {
        const double tol = opt.tol_geo;
        std::array<V3, 4> x;
        std::array<double, 4> r;
        for (int j = 0; j < 4; ++j)
        {
            x[j] = to3(obs[j].center);
            r[j] = obs[j].radius;
        }

        double diameter = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                diameter = std::max(diameter, (x[i] - x[j]).norm());
        const double volume = std::abs((x[1] - x[0]).cross(x[2] - x[0]).dot(x[3] - x[0])) / 6.0;
        if (!(diameter > 0.0) || volume <= opt.min_relative_volume * diameter * diameter * diameter)
            throw Error(Errc::degenerate_geometry, "sensor centers are coplanar");

        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
            {
                const double d = (x[i] - x[j]).norm();
                if (std::abs(r[i] - r[j]) > d + tol || d > r[i] + r[j] + tol)
                    throw Error(Errc::infeasible_distances, "radii of sensors " + std::to_string(i + 1) + " and " +
                                                                std::to_string(j + 1) + " violate the triangle inequality");
            }

        // (1) foot O12 and h1 = |z - O12|
        const Foot f12 = perpendicular_foot(x[0], r[0], x[1], r[1], tol);
        const V3 &o12 = f12.point;
        const double h1 = f12.height;

        // (2) x3' = x3 + t (x1 - x2) with (x3' - O12).(x1 - x2) = 0, h2 = |z - x3'|
        const V3 axis = x[0] - x[1];
        const double t = -(x[2] - o12).dot(axis) / axis.squaredNorm();
        const V3 x3p = x[2] + t * axis;
        const double h2 = clamped_sqrt(r[2] * r[2] - (x[2] - x3p).squaredNorm(), tol, "h2");

        // (3) foot O of z on line O12 x3', inside the plane normal to x1x2
        const Foot fo = perpendicular_foot(o12, h1, x3p, h2, tol);
        const V3 &o = fo.point;

        // (4) z = O +- t2 l
        const V3 normal = axis.cross(x3p - o12);
        const V3 l = normal / normal.norm();
        const double t2_sq = h1 * h1 - (o - o12).squaredNorm();
        const double t2 = clamped_sqrt(t2_sq, tol, "t2");

        // Near the plane x1x2x3 the square root amplifies roundoff in t2^2 to
        // sqrt(eps). There the offset along l follows from |z - x4| = r4 instead,
        // which is linear in the offset once t2^2 is known.
        const double lever = l.dot(x[3] - o);
        if (t2 <= std::sqrt(tol) && std::abs(lever) > std::sqrt(tol))
        {
            const double s = ((o - x[3]).squaredNorm() + std::max(t2_sq, 0.0) - r[3] * r[3]) / (2.0 * lever);
            const V3 z = o + s * l;
            return vec({z(0), z(1), z(2)});
        }

        const V3 plus = o + t2 * l;
        const V3 minus = o - t2 * l;
        const double score_plus = std::abs((plus - x[3]).norm() - r[3]);
        const double score_minus = std::abs((minus - x[3]).norm() - r[3]);
        if (2.0 * t2 > tol && std::abs(score_plus - score_minus) < tol)
            throw Error(Errc::ambiguous_solution, "both candidate points match the fourth distance");
        const V3 z = (score_plus <= score_minus) ? plus : minus;
        return vec({z(0), z(1), z(2)});
    }

    Vec trilaterate_least_squares(std::span<const SphereObservation> obs)
    {
        if (obs.empty())
            throw Error(Errc::validation, "no sphere observations");
        const Eigen::Index n = obs[0].center.size();
        if (Eigen::Index(obs.size()) < n + 1)
            throw Error(Errc::validation, "least-squares localization needs at least n + 1 spheres");
        // 2 (x_j - x_0).z = r_0^2 - r_j^2 + |x_j|^2 - |x_0|^2
        Eigen::MatrixXd a(Eigen::Index(obs.size()) - 1, n);
        Eigen::VectorXd b(Eigen::Index(obs.size()) - 1);
        const Vec &x0 = obs[0].center;
        for (std::size_t j = 1; j < obs.size(); ++j)
        {
            if (obs[j].center.size() != n)
                throw Error(Errc::validation, "sphere centers have mixed dimensions");
            const Vec &xj = obs[j].center;
            a.row(Eigen::Index(j) - 1) = 2.0 * (xj - x0).transpose();
            b(Eigen::Index(j) - 1) = obs[0].radius * obs[0].radius - obs[j].radius * obs[j].radius + xj.squaredNorm() -
                                     x0.squaredNorm();
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto &sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 1e-12 * sv(0))
            throw Error(Errc::degenerate_geometry, "sensor centers do not span the space");
        const Eigen::VectorXd z = svd.solve(b);
        Vec out(n);
        for (Eigen::Index i = 0; i < n; ++i)
            out(i) = z(i);
        return out;
    }

    int hyperplane_count(const Vec &z, std::span<const Vec> directions, std::span<const Vec> locations, double tol)
    {
        if (!(tol > 0.0))
            throw Error(Errc::validation, "hyperplane tolerance must be positive");
        int count = 0;
        for (const Vec &d : directions)
            for (const Vec &zm : locations)
                if (std::abs(d.dot(z - zm)) <= tol)
                    ++count;
        return count;
    }

    Vec locate_from_projections(std::span<const Vec> directions, std::span<const double> projections)
    {
        const auto n = Eigen::Index(directions.size());
        if (n < 2 || n > 3 || projections.size() != directions.size())
            throw Error(Errc::validation, "need n directions and n projections with n in {2, 3}");
        Eigen::MatrixXd a(n, n);
        Eigen::VectorXd p(n);
        for (Eigen::Index j = 0; j < n; ++j)
        {
            if (directions[j].size() != n)
                throw Error(Errc::validation, "direction dimension does not match the number of directions");
            a.row(j) = directions[j].transpose();
            p(j) = projections[j];
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto &sv = svd.singularValues();
        if (!(sv(n - 1) > 0.0) || sv(0) / sv(n - 1) >= 1e8)
            throw Error(Errc::singular_system, "observation directions are (nearly) linearly dependent");
        const Eigen::VectorXd z = svd.solve(p);
        Vec out(n);
        for (Eigen::Index i = 0; i < n; ++i)
            out(i) = z(i);
        return out;
    }
}
