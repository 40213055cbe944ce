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

#include "pointscat/specfun.hpp"

#include <cmath>
#include <limits>

namespace pointscat::specfun
{
    namespace
    {
        using real = long double;

        constexpr real euler_gamma = 0.577215664901532860606512090082402431L;
        constexpr real pi_l = 3.141592653589793238462643383279502884L;

        // Ascending series. Terms grow to about exp(t)/t before they decay, so the
        // sums are carried in extended precision to keep ~1e-15 absolute accuracy
        // up to the switch point.
        BesselJY01 series(double t_in)
        {
            const real t = t_in;
            const real q = t * t / 4;
            const real eps = std::numeric_limits<real>::epsilon();

            real j0 = 1, sy0 = 0;    // order 0: sum q^k/(k!)^2 and harmonic-weighted sum
            real j1 = 1, sy1 = 1;    // order 1: sum q^k/(k!(k+1)!) and (H_k + H_{k+1}) weighted sum
            real term0 = 1, term1 = 1; // (-1)^k q^k/(k!)^2 and (-1)^k q^k/(k!(k+1)!)
            real harmonic = 0;         // H_k

            for (int k = 1; k < 400; ++k)
            {
                term0 *= -q / (real(k) * real(k));
                term1 *= -q / (real(k) * real(k + 1));
                const real h_next = harmonic + 1 / real(k);      // H_k
                const real h_next1 = h_next + 1 / real(k + 1);   // H_{k+1}
                harmonic = h_next;

                j0 += term0;
                sy0 -= h_next * term0;
                j1 += term1;
                sy1 += (h_next + h_next1) * term1;

                if (real(k) > q && std::abs(term0) * harmonic < eps * 1e-3L && std::abs(term1) * h_next1 < eps * 1e-3L)
                    break;
            }

            const real log_term = std::log(t / 2) + euler_gamma;
            const real half_t = t / 2;
            BesselJY01 r{};
            r.j0 = double(j0);
            r.y0 = double((2 / pi_l) * (log_term * j0 + sy0));
            const real j1v = half_t * j1;
            r.j1 = double(j1v);
            r.y1 = double((2 / pi_l) * log_term * j1v - 2 / (pi_l * t) - half_t * sy1 / pi_l);
            return r;
        }

        // Hankel asymptotic expansion for order nu in {0, 1}; returns (J, Y).
        std::pair<real, real> asymptotic(int nu, double t_in)
        {
            const real t = t_in;
            const real mu = 4.0L * nu * nu;
            real p = 1, q = 0;
            real a = 1;          // a_k(nu) / t^k
            real prev = a;
            for (int k = 1; k < 200; ++k)
            {
                const real odd = real(2 * k - 1);
                a *= (mu - odd * odd) / (real(k) * 8 * t);
                if (std::abs(a) > prev) // series has started to diverge
                    break;
                prev = std::abs(a);
                const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
                if (k % 2 == 0)
                    p += sign * a;
                else
                    q += sign * a;
                if (std::abs(a) < std::numeric_limits<real>::epsilon() * 1e-2L)
                    break;
            }
            const real chi = t - (real(nu) / 2 + 0.25L) * pi_l;
            const real amp = std::sqrt(2 / (pi_l * t));
            const real c = std::cos(chi), s = std::sin(chi);
            return {amp * (p * c - q * s), amp * (p * s + q * c)};
        }
    }

    BesselJY01 bessel_jy01(double t)
    {
        if (!(t > 0.0) || !std::isfinite(t))
            throw Error(Errc::domain, "Bessel argument must be positive and finite, got " + std::to_string(t));
        if (t < series_switch)
            return series(t);
        const auto [j0, y0] = asymptotic(0, t);
        const auto [j1, y1] = asymptotic(1, t);
        return {double(j0), double(y0), double(j1), double(y1)};
    }

    Complex hankel1_0(double t)
    {
        const BesselJY01 b = bessel_jy01(t);
        return {b.j0, b.y0};
    }

    Complex fundamental_solution_r(double r, double k, Dimension dim)
    {
        if (!(k > 0.0))
            throw Error(Errc::validation, "wavenumber must be positive");
        if (!(r > 0.0))
            throw Error(Errc::singularity, "fundamental solution evaluated at coincident points");
        if (dim.value() == 3)
            return std::polar(1.0 / (4.0 * pi * r), k * r);
        return 0.25 * imag_unit * hankel1_0(k * r);
    }

    Complex fundamental_solution(const Vec &x, const Vec &y, double k, Dimension dim)
    {
        if (x.size() != dim.value() || y.size() != dim.value())
            throw Error(Errc::validation, "point dimension does not match the requested dimension");
        return fundamental_solution_r((x - y).norm(), k, dim);
    }
}
