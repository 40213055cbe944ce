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

#ifndef POINTSCAT_SINGLE_INVERSION_HPP
#define POINTSCAT_SINGLE_INVERSION_HPP

#include "pointscat/forward.hpp"

#include <span>
#include <vector>

namespace pointscat::single
{
    // Data of one sensor over a wavenumber band
    class BandSlice
    {
    public:
        // Throws validation unless nodes are strictly increasing, sizes match and n >= 2.
        BandSlice(Vec sensor, std::vector<double> ks, std::vector<Complex> values);

        // Row `row` of a band-mode measurement set
        static BandSlice from_measurements(const MeasurementSet &m, std::size_t row);

        const Vec &sensor() const noexcept { return sensor_; }
        const std::vector<double> &ks() const noexcept { return ks_; }
        const std::vector<Complex> &values() const noexcept { return values_; }

    private:
        Vec sensor_;
        std::vector<double> ks_;
        std::vector<Complex> values_;
    };

    struct BandOptions
    {
        double tol_imag = 0.1; // max |Im q| / |Re q| of the band quotient q
        // Relative noise per entry of the slice (0 for exact data). With noise the
        // check also admits 3 standard deviations of the noise-induced residual,
        // sigma |q| sqrt(2 / |u(k+)/u(k-) - 1|^2 + 1) to first order.
        double noise_rel = 0.0;
        double eps_num = 1e-8; // 0/0 guard on the quotient numerator / denominator
        double eps_den = 1e-12; // |u(k_-)| must exceed eps_den * max |u|
    };

    // Composite trapezoid rule on the (possibly non-uniform) nodes
    Complex trapezoid(std::span<const double> ks, std::span<const Complex> values);

    // |x - z1| from 3D near-field data of one source:
    //   -i (u(k+)/u(k-) - 1) / int u(k)/u(k-) dk
    double distance_from_band(const BandSlice &slice, const BandOptions &opt = {});

    // Slice values equal to their first value within rel_tol (relative to |u(k-)|)
    bool is_constant(const BandSlice &slice, double rel_tol);

    // xhat.z1 from far-field data of one source:
    //   i (u(k+)/u(k-) - 1) / int u(k)/u(k-) dk
    // May be negative.
    double projection_from_band(const BandSlice &slice, const BandOptions &opt = {});

    // tau1 = u_inf(xhat, k) exp(i k xhat.z)
    Complex strength_from_location_far(Complex u_inf, const Vec &xhat, double k, const Vec &z);

    // Average of the per-node estimates over a far-field slice
    Complex strength_from_location_far(const BandSlice &slice, const Vec &z);

    // tau1 = u^s(x, k) / Phi_k(x, z)
    Complex strength_from_location_near(Complex u_s, const Vec &x, double k, const Vec &z, Dimension dim);

    // Average of the per-node estimates over a near-field slice
    Complex strength_from_location_near(const BandSlice &slice, const Vec &z, Dimension dim);

    inline constexpr double phaseless_cap = 1e12;

    struct PhaselessValue
    {
        double value;  // I1(z), capped at phaseless_cap
        bool exact_hit; // denominator vanished (or value reached the cap)
    };

    // I1(z) = 1 / sum_j | |x_j - z| / |tau1| - 1 / (4 pi |u^s(x_j, k)|) |  (3D, four sensors)
    PhaselessValue indicator_phaseless(const Vec &z, std::span<const Vec, 4> sensors, std::span<const double, 4> moduli,
                                       double tau_modulus);
}

#endif
