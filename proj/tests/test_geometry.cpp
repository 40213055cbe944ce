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


#include <catch2/catch_amalgamated.hpp>

#include "pointscat/geometry.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <random>

using namespace pointscat;
using namespace pointscat::geometry;

namespace
{
    const std::array<Vec, 4> table_sensors = {vec({2.0, 0.0, 0.0}), vec({0.0, 2.0, 0.0}), vec({0.0, 0.0, 2.0}),
                                              vec({-2.0, -2.0, -2.0})};

    std::vector<SphereObservation> spheres(const std::array<Vec, 4> &centers, const Vec &z)
    {
        std::vector<SphereObservation> obs;
        for (const Vec &c : centers)
            obs.emplace_back(c, (c - z).norm());
        return obs;
    }

    Vec solve4(const std::vector<SphereObservation> &obs, const TrilaterationOptions &opt = {})
    {
        return trilaterate4(std::span<const SphereObservation, 4>(obs.data(), 4), opt);
    }

    Eigen::Vector3d v3(const Vec &v)
    {
        return Eigen::Vector3d(v(0), v(1), v(2));
    }

    double volume6(const std::array<Vec, 4> &c)
    {
        return std::abs(v3(c[1] - c[0]).cross(v3(c[2] - c[0])).dot(v3(c[3] - c[0])));
    }

    Vec random_point(std::mt19937_64 &gen, int dim, double scale)
    {
        std::uniform_real_distribution<double> u(-scale, scale);
        Vec v(dim);
        for (int a = 0; a < dim; ++a)
            v(a) = u(gen);
        return v;
    }
}

TEST_CASE("Geometry - Four-sphere scheme on the sensor layout of the tables")
{
    for (const Vec &z : {vec({1.0, 1.0, 1.0}), vec({1.0, 0.0, 1.0}), vec({0.0, 1.0, 1.0})})
    {
        const Vec found = solve4(spheres(table_sensors, z));
        CHECK((found - z).lpNorm<Eigen::Infinity>() <= 1e-9);
    }
}

TEST_CASE("Geometry - Regular tetrahedron with circumradius gives the centroid")
{
    const std::array<Vec, 4> t = {vec({1.0, 1.0, 1.0}), vec({1.0, -1.0, -1.0}), vec({-1.0, 1.0, -1.0}),
                                  vec({-1.0, -1.0, 1.0})};
    std::vector<SphereObservation> obs;
    for (const Vec &c : t)
        obs.emplace_back(c, std::sqrt(3.0));
    CHECK(solve4(obs).norm() <= 1e-9);
}

TEST_CASE("Geometry - Random quadruples roundtrip")
{
    std::mt19937_64 gen(21);
    int done = 0;
    while (done < 100)
    {
        std::array<Vec, 4> c;
        for (auto &x : c)
            x = random_point(gen, 3, 3.0);
        const double vol = volume6(c);
        if (vol < 1.0)
            continue;
        const Vec z = random_point(gen, 3, 2.0);
        const auto obs = spheres(c, z);
        const Vec found = solve4(obs);
        CHECK((found - z).norm() <= 1e-9);
        for (const auto &o : obs)
            CHECK(std::abs((found - o.center).norm() - o.radius) <= 1e-9);
        ++done;
    }
}

TEST_CASE("Geometry - Relabeling x3 and x4 gives the same point")
{
    std::mt19937_64 gen(22);
    for (int trial = 0; trial < 20; ++trial)
    {
        std::array<Vec, 4> c;
        for (auto &x : c)
            x = random_point(gen, 3, 3.0);
        if (volume6(c) < 1.0)
            continue;
        const Vec z = random_point(gen, 3, 2.0);
        auto obs = spheres(c, z);
        const Vec a = solve4(obs);
        std::swap(obs[2], obs[3]);
        const Vec b = solve4(obs);
        CHECK((a - b).norm() <= 1e-6);
    }
}

TEST_CASE("Geometry - Four-sphere errors")
{
    const std::array<Vec, 4> flat = {vec({0.0, 0.0, 0.0}), vec({1.0, 0.0, 0.0}), vec({0.0, 1.0, 0.0}),
                                     vec({1.0, 1.0, 0.0})};
    try
    {
        solve4(spheres(flat, vec({0.2, 0.3, 0.5})));
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::degenerate_geometry);
    }

    auto obs = spheres(table_sensors, vec({1.0, 1.0, 1.0}));
    obs[1].radius = 10.0; // |r1 - r2| > |x1 - x2|
    try
    {
        solve4(obs);
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::infeasible_distances);
    }

    // r4 halfway between the distances of the two mirror candidates
    const Vec z = vec({1.0, 1.0, 1.0});
    obs = spheres(table_sensors, z);
    const Eigen::Vector3d n =
        v3(table_sensors[1] - table_sensors[0]).cross(v3(table_sensors[2] - table_sensors[0])).normalized();
    const double h = n.dot(v3(z - table_sensors[0]));
    const Eigen::Vector3d m3 = v3(z) - 2.0 * h * n;
    const Vec mirror = vec({m3(0), m3(1), m3(2)});
    obs[3].radius = 0.5 * ((z - table_sensors[3]).norm() + (mirror - table_sensors[3]).norm());
    try
    {
        solve4(obs);
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::ambiguous_solution);
    }

    CHECK_THROWS_AS(SphereObservation(vec({0.0, 0.0, 0.0}), 0.0), Error);
}

TEST_CASE("Geometry - Slightly inconsistent radii are clamped")
{
    // z on the segment x1x2: the Heron factor vanishes and roundoff may push it negative
    const Vec z = vec({1.0, 1.0, 0.0});
    auto obs = spheres(table_sensors, z);
    obs[0].radius += 1e-9;
    const Vec found = solve4(obs);
    CHECK((found - z).norm() < 1e-4);
}

TEST_CASE("Geometry - Least-squares sphere fit")
{
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 20; ++trial)
    {
        const Vec z = random_point(gen, 3, 2.0);
        const Vec found = trilaterate_least_squares(spheres(table_sensors, z));
        CHECK((found - z).norm() < 1e-10);
    }
    const std::array<Vec, 4> flat = {vec({0.0, 0.0, 0.0}), vec({1.0, 0.0, 0.0}), vec({0.0, 1.0, 0.0}),
                                     vec({1.0, 1.0, 0.0})};
    CHECK_THROWS_AS(trilaterate_least_squares(spheres(flat, vec({0.1, 0.1, 0.1}))), Error);
}

TEST_CASE("Geometry - Hyperplane counting in 2D")
{
    const std::vector<Vec> locs = {vec({1.0, 0.0}), vec({0.0, 1.0}), vec({-0.7, -0.4})};
    std::vector<Vec> dirs;
    for (int l = 0; l < 4; ++l)
        dirs.push_back(planar_direction(0.3 + pi * l / 4.0));
    for (const Vec &z : locs)
        CHECK(hyperplane_count(z, dirs, locs, 1e-9) == 4);
    const double h = 0.01;
    for (int i = -200; i <= 200; ++i)
        for (int j = -200; j <= 200; ++j)
        {
            const Vec z = vec({i * h, j * h});
            bool source = false;
            for (const Vec &s : locs)
                source = source || (z - s).norm() < 1e-12;
            const int f = hyperplane_count(z, dirs, locs, 1e-9);
            CHECK(f <= int(dirs.size() * locs.size()));
            if (!source)
                CHECK(f <= int(locs.size()));
        }
}

TEST_CASE("Geometry - Hyperplane counting in 3D")
{
    std::mt19937_64 gen(24);
    const int m = 3;
    std::vector<Vec> locs;
    for (int i = 0; i < m; ++i)
        locs.push_back(random_point(gen, 3, 1.0));
    std::vector<Vec> dirs;
    for (int l = 0; l < 2 * m + 1; ++l)
    {
        Vec d = random_point(gen, 3, 1.0);
        dirs.push_back(d / d.norm());
    }
    for (const Vec &z : locs)
        CHECK(hyperplane_count(z, dirs, locs, 1e-9) == 2 * m + 1);
    // points on the intersection line of two planes of different sources
    for (int trial = 0; trial < 200; ++trial)
    {
        const Eigen::Vector3d a = v3(dirs[std::size_t(trial % 7)]);
        const Eigen::Vector3d b = v3(dirs[std::size_t((trial + 3) % 7)]);
        const Eigen::Vector3d za = v3(locs[0]);
        const Eigen::Vector3d zb = v3(locs[1]);
        // solve a.z = a.za, b.z = b.zb, c.z = t for a third free coordinate
        Eigen::Matrix3d mat;
        const Eigen::Vector3d c = a.cross(b).normalized();
        mat.row(0) = a.transpose();
        mat.row(1) = b.transpose();
        mat.row(2) = c.transpose();
        const Eigen::Vector3d rhs(a.dot(za), b.dot(zb), 0.1 * trial - 10.0);
        const Eigen::Vector3d s = mat.colPivHouseholderQr().solve(rhs);
        const Vec z = vec({s(0), s(1), s(2)});
        CHECK(hyperplane_count(z, dirs, locs, 1e-9) <= 2 * m);
    }
    for (int trial = 0; trial < 1000; ++trial)
        CHECK(hyperplane_count(random_point(gen, 3, 2.0), dirs, locs, 1e-9) <= 2 * m);
}

TEST_CASE("Geometry - Locate from projections")
{
    const std::vector<Vec> axes = {vec({1.0, 0.0, 0.0}), vec({0.0, 1.0, 0.0}), vec({0.0, 0.0, 1.0})};
    const std::vector<double> p = {0.4, -1.2, 2.5};
    CHECK((locate_from_projections(axes, p) - vec({0.4, -1.2, 2.5})).norm() < 1e-15);

    const std::vector<Vec> d2 = {vec({1.0, 0.0}), vec({std::sqrt(0.5), std::sqrt(0.5)})};
    const std::vector<double> p2 = {1.0, 3.0 * std::sqrt(2.0) / 2.0};
    CHECK((locate_from_projections(d2, p2) - vec({1.0, 2.0})).norm() < 1e-12);

    std::mt19937_64 gen(25);
    for (int trial = 0; trial < 50; ++trial)
    {
        std::vector<Vec> dirs;
        for (int l = 0; l < 3; ++l)
        {
            Vec d = random_point(gen, 3, 1.0);
            dirs.push_back(d / d.norm());
        }
        Eigen::Matrix3d a;
        for (int l = 0; l < 3; ++l)
            a.row(l) = dirs[std::size_t(l)].transpose();
        Eigen::JacobiSVD<Eigen::Matrix3d> svd(a);
        if (svd.singularValues()(0) / svd.singularValues()(2) > 100.0)
            continue;
        const Vec z = random_point(gen, 3, 2.0);
        std::vector<double> proj;
        for (const Vec &d : dirs)
            proj.push_back(d.dot(z));
        CHECK((locate_from_projections(dirs, proj) - z).norm() < 1e-10);
    }

    const std::vector<Vec> dependent = {vec({1.0, 0.0}), vec({-1.0, 0.0})};
    try
    {
        locate_from_projections(dependent, std::vector<double>{1.0, -1.0});
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::singular_system);
    }
}

TEST_CASE("Geometry - Four-sphere scheme runtime")
{
    const auto obs = spheres(table_sensors, vec({1.0, 1.0, 1.0}));
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 1000; ++i)
        solve4(obs);
    const double per_call = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 1000.0;
    CHECK(per_call < 1e-3);
}
