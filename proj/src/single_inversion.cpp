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

#include "pointscat/single_inversion.hpp"
#include "pointscat/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace pointscat::single
{
    BandSlice::BandSlice(Vec sensor, std::vector<double> ks, std::vector<Complex> values)
        : sensor_(std::move(sensor)), ks_(std::move(ks)), values_(std::move(values))
    {
        if (ks_.size() != values_.size())
            throw Error(Errc::validation, "band slice: node and value counts differ");
        if (ks_.size() < 2)
            throw Error(Errc::validation, "band slice needs at least two nodes");
        for (std::size_t j = 1; j < ks_.size(); ++j)
            if (!(ks_[j] > ks_[j - 1]))
                throw Error(Errc::validation, "band slice nodes must be strictly increasing");
    }

    BandSlice BandSlice::from_measurements(const MeasurementSet &m, std::size_t row)
    {
        if (row >= m.sensors().size())
            throw Error(Errc::incomplete_data, "sensor row out of range");
        const auto r = m.values().row(Eigen::Index(row));
        return BandSlice(m.sensors().entries()[row], m.freqs().nodes(), std::vector<Complex>(r.begin(), r.end()));
    }

    Complex trapezoid(std::span<const double> ks, std::span<const Complex> values)
    {
        Complex sum = 0.0;
        for (std::size_t j = 1; j < ks.size(); ++j)
            sum += 0.5 * (ks[j] - ks[j - 1]) * (values[j] + values[j - 1]);
        return sum;
    }

    namespace
    {
        // i * sign * (u(k+)/u(k-) - 1) / int u/u(k-) dk, checked to be real
        double band_quotient(const BandSlice &slice, const BandOptions &opt, double sign)
        {
            const auto &v = slice.values();
            const auto &ks = slice.ks();
            double vmax = 0.0;
            for (const Complex &c : v)
                vmax = std::max(vmax, std::abs(c));
            if (!(std::abs(v.front()) > opt.eps_den * vmax))
                throw Error(Errc::invalid_measurement, "first value of the band slice vanishes");

            std::vector<Complex> ratio(v.size());
            for (std::size_t j = 0; j < v.size(); ++j)
                ratio[j] = v[j] / v.front();
            const Complex numerator = ratio.back() - 1.0;
            const Complex integral = trapezoid(ks, ratio);
            const double width = ks.back() - ks.front();

            if (std::abs(numerator) <= opt.eps_num)
                throw Error(Errc::resonant_band, "u(k+) = u(k-) on the band: the quotient numerator vanishes");
            if (std::abs(integral) <= opt.eps_num * width)
                throw Error(Errc::resonant_band, "band integral of u(k)/u(k-) vanishes");

            const Complex q = sign * imag_unit * numerator / integral;
            const double noise_allowance =
                3.0 * opt.noise_rel * std::abs(q) * std::sqrt(2.0 / std::norm(numerator) + 1.0);
            if (std::abs(q.imag()) > opt.tol_imag * std::abs(q.real()) + noise_allowance)
                throw Error(Errc::inconsistent_data, "band quotient has imaginary part " + std::to_string(q.imag()) +
                                                         " against modulus " + std::to_string(std::abs(q)));
            return q.real();
        }
    }

    double distance_from_band(const BandSlice &slice, const BandOptions &opt)
    {
        const double r = band_quotient(slice, opt, -1.0);
        if (!(r > 0.0))
            throw Error(Errc::inconsistent_data, "band formula produced a non-positive distance");
        return r;
    }

    bool is_constant(const BandSlice &slice, double rel_tol)
    {
        const Complex first = slice.values().front();
        for (const Complex &v : slice.values())
            if (std::abs(v - first) > rel_tol * std::abs(first))
                return false;
        return true;
    }

    double projection_from_band(const BandSlice &slice, const BandOptions &opt)
    {
        return band_quotient(slice, opt, 1.0);
    }

    Complex strength_from_location_far(Complex u_inf, const Vec &xhat, double k, const Vec &z)
    {
        if (xhat.size() != z.size())
            throw Error(Errc::validation, "direction and location dimensions differ");
        return u_inf * std::polar(1.0, k * xhat.dot(z));
    }

    Complex strength_from_location_far(const BandSlice &slice, const Vec &z)
    {
        Complex sum = 0.0;
        for (std::size_t j = 0; j < slice.ks().size(); ++j)
            sum += strength_from_location_far(slice.values()[j], slice.sensor(), slice.ks()[j], z);
        return sum / double(slice.ks().size());
    }

    Complex strength_from_location_near(Complex u_s, const Vec &x, double k, const Vec &z, Dimension dim)
    {
        return u_s / specfun::fundamental_solution(x, z, k, dim);
    }

    Complex strength_from_location_near(const BandSlice &slice, const Vec &z, Dimension dim)
    {
        Complex sum = 0.0;
        for (std::size_t j = 0; j < slice.ks().size(); ++j)
            sum += strength_from_location_near(slice.values()[j], slice.sensor(), slice.ks()[j], z, dim);
        return sum / double(slice.ks().size());
    }

    PhaselessValue indicator_phaseless(const Vec &z, std::span<const Vec, 4> sensors, std::span<const double, 4> moduli,
                                       double tau_modulus)
    {
        if (z.size() != 3)
            throw Error(Errc::validation, "phaseless indicator is defined in R^3");
        if (!(tau_modulus > 0.0))
            throw Error(Errc::validation, "|tau1| must be positive");
        double denominator = 0.0;
        for (int j = 0; j < 4; ++j)
        {
            if (!(moduli[j] > 0.0))
                throw Error(Errc::invalid_measurement, "phaseless indicator needs positive field moduli");
            if (sensors[j].size() != 3)
                throw Error(Errc::validation, "phaseless indicator sensors must be in R^3");
            denominator += std::abs((sensors[j] - z).norm() / tau_modulus - 1.0 / (4.0 * pi * moduli[j]));
        }
        if (denominator * phaseless_cap <= 1.0)
            return {phaseless_cap, true};
        return {1.0 / denominator, false};
    }
}
