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

#ifndef POINTSCAT_ERROR_HPP
#define POINTSCAT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace pointscat
{
    // Failure categories shared by all modules. The CLI maps validation-type
    // codes to exit status 2 and everything else to 3.
    enum class Errc
    {
        validation,               // malformed input, precondition on argument values
        parse,                    // config or measurement file could not be read
        domain,                   // special function argument out of range
        singularity,              // field evaluated at a source location
        degenerate_geometry,      // coplanar / collinear sensors
        infeasible_distances,     // radii inconsistent with any point
        ambiguous_solution,       // two candidate points equally plausible
        resonant_band,            // band formula quotient is 0/0
        inconsistent_data,        // imaginary residual of a band quotient too large
        invalid_measurement,      // zero modulus where a positive one is needed
        incomplete_data,          // required sensor row missing
        direction_degenerate,     // direction does not separate the projections
        insufficient_frequencies, // J <= 2 M_bound
        empty_signal,             // numerical rank zero
        degenerate_projection,    // Vandermonde system numerically rank deficient
        singular_system           // linear system without a unique solution
    };

    std::string_view to_string(Errc code) noexcept;

    // True for the codes that indicate bad user input rather than a failed pipeline.
    bool is_input_error(Errc code) noexcept;

    class Error : public std::runtime_error
    {
    public:
        Error(Errc code, const std::string &what);
        Errc code() const noexcept { return code_; }

    private:
        Errc code_;
    };
}

#endif
