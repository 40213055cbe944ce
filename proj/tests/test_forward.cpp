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

#include "pointscat/forward.hpp"
#include "pointscat/specfun.hpp"

#include <cmath>
#include <random>

using namespace pointscat;

namespace
{
    PointConfiguration random_config(std::mt19937_64 &gen, int dim, int count)
    {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<PointObject> pts;
        for (int m = 0; m < count; ++m)
        {
            Vec z(dim);
            for (int a = 0; a < dim; ++a)
                z(a) = u(gen);
            pts.push_back({z, Complex(u(gen), u(gen)) + Complex(0.0, 2.0)});
        }
        return PointConfiguration(Dimension(dim), pts);
    }

    Vec random_unit(std::mt19937_64 &gen, int dim)
    {
        std::normal_distribution<double> n;
        Vec v(dim);
        for (int a = 0; a < dim; ++a)
            v(a) = n(gen);
        return v / v.norm();
    }

    // sum_m tau_m exp(-i k d.z_m) in long double, one term at a time
    std::complex<long double> brute_far(const PointConfiguration &cfg, const Vec &d, long double k)
    {
        std::complex<long double> sum = 0.0L;
        for (const auto &p : cfg.points())
        {
            long double dot = 0.0L;
            for (Eigen::Index a = 0; a < d.size(); ++a)
                dot += static_cast<long double>(d(a)) * static_cast<long double>(p.location(a));
            const std::complex<long double> tau(p.strength.real(), p.strength.imag());
            sum += tau * std::polar(1.0L, -k * dot);
        }
        return sum;
    }
}

TEST_CASE("Forward - Configuration invariants")
{
    CHECK_THROWS_AS(PointConfiguration(Dimension(2), {{vec({0.0, 0.0}), Complex(0.0)}}), Error);
    CHECK_THROWS_AS(PointConfiguration(Dimension(2), {{vec({0.0, 0.0}), 1.0}, {vec({0.0, 0.0}), 2.0}}), Error);
    CHECK_THROWS_AS(PointConfiguration(Dimension(3), {{vec({0.0, 0.0}), 1.0}}), Error);
    CHECK_NOTHROW(PointConfiguration(Dimension(2), {}));
    CHECK_THROWS_AS(SensorSet(SensorKind::far, Dimension(2), {vec({1.0, 1e-5})}), Error);
    CHECK_NOTHROW(SensorSet(SensorKind::far, Dimension(2), {planar_direction(0.3)}));
}

TEST_CASE("Forward - Frequency grids")
{
    const auto g = FrequencyGrid::band(1.0, 100.0, 0.005);
    CHECK(g.size() == 19801);
    CHECK(g.nodes().front() == 1.0);
    CHECK(g.nodes().back() == 100.0);
    CHECK(FrequencyGrid::band(40.0, 200.0, 1.0).size() == 161);
    CHECK_THROWS_AS(FrequencyGrid::band(1.0, 2.0, 0.3), Error);
    CHECK_THROWS_AS(FrequencyGrid::band(2.0, 1.0, 0.1), Error);
    const auto e = FrequencyGrid::equidistant(0.5, 4);
    CHECK(e.nodes() == std::vector<double>{0.5, 1.0, 1.5, 2.0});
    CHECK_THROWS_AS(FrequencyGrid::equidistant(0.5, 0), Error);
}

TEST_CASE("Forward - Scattered field of sources")
{
    const Vec z = vec({1.0, 1.0, 1.0});
    const Vec x = vec({2.0, 0.0, 0.0});
    const PointConfiguration one(Dimension(3), {{z, 1.0}});
    CHECK(forward::scattered_field_sources(one, x, 2.5) == specfun::fundamental_solution(x, z, 2.5, Dimension(3)));

    const PointConfiguration none(Dimension(3), {});
    CHECK(forward::scattered_field_sources(none, x, 2.5) == Complex(0.0));

    // tau (1+i) at distance sqrt(3), k = 1: (1+i) e^{i sqrt3} / (4 pi sqrt3)
    const PointConfiguration single(Dimension(3), {{z, Complex(1.0, 1.0)}});
    const double r = std::sqrt(3.0);
    const Complex expected = Complex(1.0, 1.0) * std::polar(1.0 / (4.0 * pi * r), r);
    CHECK(std::abs(forward::scattered_field_sources(single, x, 1.0) - expected) < 1e-15);

    CHECK_THROWS_AS(forward::scattered_field_sources(single, z, 1.0), Error);
}

TEST_CASE("Forward - Far field of sources")
{
    std::mt19937_64 gen(11);
    const PointConfiguration centered(Dimension(3), {{vec({0.0, 0.0, 0.0}), Complex(0.3, -0.2)}});
    CHECK(forward::farfield_sources(centered, random_unit(gen, 3), 7.3) == Complex(0.3, -0.2));

    const PointConfiguration one(Dimension(3), {{vec({1.0, 1.0, 1.0}), Complex(0.5, 2.0)}});
    const Complex v = forward::farfield_sources(one, vec({1.0, 0.0, 0.0}), pi);
    CHECK(std::abs(v - Complex(-0.5, -2.0)) < 1e-15);

    CHECK_THROWS_AS(forward::farfield_sources(one, vec({1.0, 1.0, 0.0}), 1.0), Error);
}

TEST_CASE("Forward - Sign convention of the far-field phase")
{
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 50; ++trial)
    {
        const auto cfg = random_config(gen, 3, 1);
        const Vec d = random_unit(gen, 3);
        const double k = 0.5 + trial;
        const Complex u = forward::farfield_sources(cfg, d, k);
        const auto &p = cfg.points()[0];
        const double expected = std::arg(p.strength) - k * d.dot(p.location);
        const double diff = std::remainder(std::arg(u) - expected, 2.0 * pi);
        CHECK(std::abs(diff) < 1e-12);
    }
}

TEST_CASE("Forward - Near-to-far consistency in 3D")
{
    std::mt19937_64 gen(13);
    const auto cfg = random_config(gen, 3, 3);
    for (int trial = 0; trial < 5; ++trial)
    {
        const Vec d = random_unit(gen, 3);
        const double k = 2.0 + trial;
        const double r = 1e3;
        const Complex near = forward::scattered_field_sources(cfg, r * d, k);
        const Complex far = forward::farfield_sources(cfg, d, k);
        const Complex scaled = r * std::polar(1.0, -k * r) * near * 4.0 * pi;
        CHECK(std::abs(scaled - far) / std::abs(far) < 1e-2);
    }
}

TEST_CASE("Forward - Scatterer fields")
{
    std::mt19937_64 gen(14);
    const auto cfg = random_config(gen, 2, 4);
    const Vec theta = random_unit(gen, 2);
    const Vec x = vec({3.0, -2.5});
    const double k = 4.2;

    std::vector<PointObject> shifted;
    for (const auto &p : cfg.points())
        shifted.push_back({p.location, p.strength * std::polar(1.0, k * p.location.dot(theta))});
    const PointConfiguration equivalent(Dimension(2), shifted);
    CHECK(std::abs(forward::scattered_field_scatterers(cfg, x, theta, k) -
                   forward::scattered_field_sources(equivalent, x, k)) < 1e-14);

    const PointConfiguration at_origin(Dimension(2), {{vec({0.0, 0.0}), Complex(1.0, 0.5)}});
    CHECK(std::abs(forward::scattered_field_scatterers(at_origin, x, theta, k) -
                   Complex(1.0, 0.5) * specfun::fundamental_solution(x, vec({0.0, 0.0}), k, Dimension(2))) < 1e-15);

    Complex total = 0.0;
    for (const auto &p : cfg.points())
        total += p.strength;
    CHECK(std::abs(forward::farfield_scatterers(cfg, theta, theta, k) - total) < 1e-14);

    for (int trial = 0; trial < 20; ++trial)
    {
        const Vec d = random_unit(gen, 2);
        const double kk = 0.7 + 3.1 * trial;
        CHECK(std::abs(forward::farfield_scatterers(cfg, d, -d, kk) - forward::farfield_sources(cfg, d, 2.0 * kk)) <
              1e-12);
        const auto ref = brute_far(cfg, d - theta, kk);
        const Complex v = forward::farfield_scatterers(cfg, d, theta, kk);
        CHECK(std::abs(std::complex<long double>(v.real(), v.imag()) - ref) < 1e-12L);
    }
}

TEST_CASE("Forward - Linearity over disjoint configurations")
{
    std::mt19937_64 gen(15);
    const auto a = random_config(gen, 3, 3);
    const auto b = random_config(gen, 3, 2);
    auto pts = a.points();
    pts.insert(pts.end(), b.points().begin(), b.points().end());
    const PointConfiguration both(Dimension(3), pts);
    const Vec x = vec({4.0, 1.0, -3.0});
    const Vec d = random_unit(gen, 3);
    for (double k : {0.3, 5.0, 77.0})
    {
        const Complex sum = forward::scattered_field_sources(a, x, k) + forward::scattered_field_sources(b, x, k);
        CHECK(std::abs(forward::scattered_field_sources(both, x, k) - sum) <= 1e-15 * (1.0 + std::abs(sum)));
        const Complex fsum = forward::farfield_sources(a, d, k) + forward::farfield_sources(b, d, k);
        CHECK(std::abs(forward::farfield_sources(both, d, k) - fsum) <= 1e-14);
    }
}

TEST_CASE("Forward - Refined grid agrees with the analytic far field at midpoints")
{
    std::mt19937_64 gen(16);
    const auto cfg = random_config(gen, 2, 3);
    const SensorSet dirs(SensorKind::far, Dimension(2), {planar_direction(0.4)});
    const auto coarse = forward::simulate(cfg, dirs, FrequencyGrid::band(1.0, 11.0, 0.5), MeasurementKind::far);
    const auto fine = forward::simulate(cfg, dirs, FrequencyGrid::band(1.0, 11.0, 0.25), MeasurementKind::far);
    for (Eigen::Index j = 0; j < coarse.values().cols(); ++j)
        CHECK(std::abs(fine.values()(0, 2 * j) - coarse.values()(0, j)) < 1e-14);
    for (Eigen::Index j = 0; j + 1 < coarse.values().cols(); ++j)
    {
        const long double k = 1.0L + 0.5L * j + 0.25L;
        const auto ref = brute_far(cfg, dirs.entries()[0], k);
        const Complex v = fine.values()(0, 2 * j + 1);
        CHECK(std::abs(std::complex<long double>(v.real(), v.imag()) - ref) < 1e-13L);
    }
}

TEST_CASE("Forward - Simulation shapes")
{
    const PointConfiguration cfg(Dimension(3), {{vec({1.0, 1.0, 1.0}), Complex(1.0, 1.0)}});
    const SensorSet near(SensorKind::near, Dimension(3),
                         {vec({2.0, 0.0, 0.0}), vec({0.0, 2.0, 0.0}), vec({0.0, 0.0, 2.0}), vec({-2.0, -2.0, -2.0})});
    const auto m = forward::simulate(cfg, near, FrequencyGrid::band(1.0, 100.0, 0.005), MeasurementKind::near);
    CHECK(m.values().rows() == 4);
    CHECK(m.values().cols() == 19801);
    CHECK(m.noise_level() == 0.0);

    const SensorSet one(SensorKind::near, Dimension(3), {vec({2.0, 0.0, 0.0})});
    const auto single = forward::simulate(cfg, one, FrequencyGrid::equidistant(3.0, 1), MeasurementKind::near);
    CHECK(single.values()(0, 0) == forward::scattered_field_sources(cfg, vec({2.0, 0.0, 0.0}), 3.0));

    std::vector<Vec> dirs;
    for (int j = 0; j < 8; ++j)
        dirs.push_back(planar_direction(2.0 * pi * j / 8.0));
    const PointConfiguration five(Dimension(2), {{vec({1.0, 0.0}), 1.0}, {vec({0.0, 0.0}), 2.0}});
    const auto f = forward::simulate(five, SensorSet(SensorKind::far, Dimension(2), dirs),
                                     FrequencyGrid::band(40.0, 200.0, 1.0), MeasurementKind::far);
    CHECK(f.values().rows() == 8);
    CHECK(f.values().cols() == 161);

    CHECK_THROWS_AS(MeasurementSet(MeasurementKind::far, near, FrequencyGrid::equidistant(1.0, 1),
                                   Eigen::MatrixXcd::Zero(4, 1)),
                    Error);
}

TEST_CASE("Forward - Noise model")
{
    std::mt19937_64 gen(17);
    const auto cfg = random_config(gen, 2, 3);
    std::vector<Vec> dirs;
    for (int j = 0; j < 6; ++j)
        dirs.push_back(planar_direction(j));
    const auto clean = forward::simulate(cfg, SensorSet(SensorKind::far, Dimension(2), dirs),
                                         FrequencyGrid::band(1.0, 20.0, 0.5), MeasurementKind::far);

    const auto zero = forward::add_noise(clean, 0.0, 99);
    CHECK(zero.values() == clean.values());

    const auto a = forward::add_noise(clean, 0.1, 1);
    const auto b = forward::add_noise(clean, 0.1, 2);
    const auto a2 = forward::add_noise(clean, 0.1, 1);
    CHECK(a.noise_level() == 0.1);
    CHECK(a.seed() == 1);
    CHECK(a.values() == a2.values());
    CHECK(a.values() != b.values());
    const double ra = (a.values() - clean.values()).norm() / clean.values().norm();
    const double rb = (b.values() - clean.values()).norm() / clean.values().norm();
    CHECK(std::abs(ra - 0.1) < 1e-12);
    CHECK(std::abs(rb - 0.1) < 1e-12);
    CHECK_THROWS_AS(forward::add_noise(clean, -0.1, 1), Error);
}

TEST_CASE("Forward - Canonical order")
{
    const PointConfiguration cfg(Dimension(2), {{vec({0.3, 0.1}), 1.0}});
    const SensorSet s(SensorKind::far, Dimension(2), {planar_direction(2.0), planar_direction(0.0), planar_direction(1.0)});
    const auto m = forward::simulate(cfg, s, FrequencyGrid::band(1.0, 3.0, 1.0), MeasurementKind::far);
    const auto c = m.canonical();
    const auto &e = c.sensors().entries();
    for (std::size_t l = 0; l + 1 < e.size(); ++l)
        CHECK(std::lexicographical_compare(e[l].begin(), e[l].end(), e[l + 1].begin(), e[l + 1].end()));
    for (std::size_t l = 0; l < e.size(); ++l)
        CHECK(c.values().row(Eigen::Index(l)) == m.values().row(Eigen::Index(*m.sensors().find(e[l]))));
}
