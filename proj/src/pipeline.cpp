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


#include "pointscat/pipeline.hpp"
#include "pointscat/spectral.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

namespace pointscat::pipeline
{
    using io::Json;

    std::string to_string(Method m)
    {
        switch (m)
        {
        case Method::single_near:
            return "single-near";
        case Method::single_far:
            return "single-far";
        case Method::phaseless:
            return "phaseless";
        case Method::trilaterate:
            return "trilaterate";
        case Method::multi_indicator:
            return "multi-indicator";
        case Method::music:
            return "music";
        }
        return "unknown";
    }

    namespace
    {
        [[noreturn]] void invalid(const std::string &path, const std::string &what)
        {
            throw Error(Errc::validation, path + ": " + what);
        }

        Method parse_method(const std::string &name, const std::string &path)
        {
            for (Method m : {Method::single_near, Method::single_far, Method::phaseless, Method::trilaterate,
                             Method::multi_indicator, Method::music})
                if (to_string(m) == name)
                    return m;
            invalid(path, "unknown method '" + name +
                              "' (single-near, single-far, phaseless, trilaterate, multi-indicator, music)");
        }

        void check_version(const Json &doc)
        {
            const int version = io::integer(io::field(doc, "schema_version", "$"), "$.schema_version");
            if (version != io::schema_version)
                invalid("$.schema_version", "unsupported version " + std::to_string(version));
        }

        Dimension parse_dim(const Json &doc)
        {
            const int d = io::integer(io::field(doc, "dim", "$"), "$.dim");
            if (d != 2 && d != 3)
                invalid("$.dim", "dimension must be 2 or 3");
            return Dimension(d);
        }

        MethodParameters parse_parameters(const Json &j, Dimension dim, const std::string &path)
        {
            MethodParameters p;
            if (!j.is_object())
                invalid(path, "expected an object");
            for (auto it = j.begin(); it != j.end(); ++it)
            {
                const std::string &key = it.key();
                const std::string at = path + "." + key;
                const Json &v = it.value();
                auto positive = [&](double x) {
                    if (!(x > 0.0))
                        invalid(at, "must be positive");
                    return x;
                };
                if (key == "tol_imag")
                    p.band.tol_imag = positive(io::number(v, at));
                else if (key == "noise_aware")
                {
                    if (!v.is_boolean())
                        invalid(at, "expected true or false");
                    p.noise_aware = v.get<bool>();
                }
                else if (key == "eps_num")
                    p.band.eps_num = positive(io::number(v, at));
                else if (key == "eps_den")
                    p.band.eps_den = positive(io::number(v, at));
                else if (key == "tol_geo")
                    p.geo.tol_geo = positive(io::number(v, at));
                else if (key == "least_squares")
                {
                    if (!v.is_boolean())
                        invalid(at, "expected true or false");
                    p.least_squares = v.get<bool>();
                }
                else if (key == "threshold_ratio")
                {
                    p.threshold_ratio = io::number(v, at);
                    if (!(p.threshold_ratio > 0.0 && p.threshold_ratio < 1.0))
                        invalid(at, "must lie in (0, 1)");
                }
                else if (key == "min_separation")
                    p.min_separation = positive(io::number(v, at));
                else if (key == "eps_sep")
                    p.eps_sep = positive(io::number(v, at));
                else if (key == "strength_direction")
                {
                    Vec d = io::point(v, at);
                    if (d.size() != dim.value())
                        invalid(at, "expected " + std::to_string(dim.value()) + " coordinates");
                    if (!(d.norm() > 0.0))
                        invalid(at, "must be nonzero");
                    p.strength_direction = d / d.norm();
                }
                else if (key == "assume_real_strengths")
                {
                    if (!v.is_boolean())
                        invalid(at, "expected true or false");
                    p.assume_real_strengths = v.get<bool>();
                }
                else if (key == "m_bound")
                {
                    p.m_bound = io::integer(v, at);
                    if (p.m_bound < 1)
                        invalid(at, "must be at least 1");
                }
                else if (key == "search_radius")
                    p.search_radius = positive(io::number(v, at));
                else if (key == "rel_tol")
                {
                    const double r = io::number(v, at);
                    if (!(r > 0.0 && r < 1.0))
                        invalid(at, "must lie in (0, 1)");
                    p.rel_tol = r;
                }
                else if (key == "tau_modulus")
                    p.tau_modulus = positive(io::number(v, at));
                else if (key == "phaseless_k")
                    p.phaseless_k = positive(io::number(v, at));
                else
                    invalid(at, "unknown parameter");
            }
            return p;
        }

        std::vector<Vec> parse_sensor_entries(const Json &j, Dimension dim, const std::string &path)
        {
            std::vector<Vec> entries;
            const bool has_entries = j.contains("entries");
            const bool has_angles = j.contains("angles");
            if (has_entries == has_angles)
                invalid(path, "give exactly one of 'entries' or 'angles'");
            if (has_entries)
            {
                const Json &e = j["entries"];
                if (!e.is_array())
                    invalid(path + ".entries", "expected an array");
                for (std::size_t l = 0; l < e.size(); ++l)
                {
                    const std::string at = path + ".entries[" + std::to_string(l) + "]";
                    entries.push_back(io::point(e[l], at));
                    if (entries.back().size() != dim.value())
                        invalid(at, "expected " + std::to_string(dim.value()) + " coordinates");
                }
            }
            else
            {
                if (dim.value() != 2)
                    invalid(path + ".angles", "angles describe directions in the plane only");
                const Json &a = j["angles"];
                if (!a.is_array())
                    invalid(path + ".angles", "expected an array");
                for (std::size_t l = 0; l < a.size(); ++l)
                    entries.push_back(planar_direction(io::number(a[l], path + ".angles[" + std::to_string(l) + "]")));
            }
            return entries;
        }

        SensorSet parse_sensors(const Json &doc, Dimension dim)
        {
            const Json &j = io::field(doc, "sensors", "$");
            const std::string kind = io::text(io::field(j, "kind", "$.sensors"), "$.sensors.kind");
            SensorKind sk;
            if (kind == "near")
                sk = SensorKind::near;
            else if (kind == "far")
                sk = SensorKind::far;
            else
                invalid("$.sensors.kind", "unknown sensor kind '" + kind + "' (near, far)");
            auto entries = parse_sensor_entries(j, dim, "$.sensors");
            try
            {
                return SensorSet(sk, dim, std::move(entries));
            }
            catch (const Error &e)
            {
                invalid("$.sensors", e.what());
            }
        }

        PointConfiguration parse_points(const Json &doc, Dimension dim)
        {
            const Json &j = io::field(doc, "points", "$");
            if (!j.is_array())
                invalid("$.points", "expected an array");
            std::vector<PointObject> points;
            for (std::size_t m = 0; m < j.size(); ++m)
            {
                const std::string at = "$.points[" + std::to_string(m) + "]";
                Vec loc = io::point(io::field(j[m], "location", at), at + ".location");
                if (loc.size() != dim.value())
                    invalid(at + ".location", "expected " + std::to_string(dim.value()) + " coordinates");
                points.push_back({loc, io::complex(io::field(j[m], "strength", at), at + ".strength")});
            }
            try
            {
                return PointConfiguration(dim, std::move(points));
            }
            catch (const Error &e)
            {
                invalid("$.points", e.what());
            }
        }

        Problem parse_problem(const Json &doc)
        {
            if (!doc.contains("problem"))
                return Problem::sources;
            const std::string p = io::text(doc["problem"], "$.problem");
            if (p == "sources")
                return Problem::sources;
            if (p == "scatterers-backscatter")
                return Problem::scatterers_backscatter;
            invalid("$.problem", "unknown problem '" + p + "' (sources, scatterers-backscatter)");
        }

        bool needs_grid(Method m)
        {
            return m == Method::phaseless || m == Method::multi_indicator || m == Method::music;
        }
    }

    InversionSpec parse_inversion(const Json &doc)
    {
        if (!doc.is_object())
            throw Error(Errc::parse, "$: expected a configuration object");
        check_version(doc);
        const Dimension dim = parse_dim(doc);
        InversionSpec spec;
        spec.name = doc.contains("name") ? io::text(doc["name"], "$.name") : "experiment";
        if (spec.name.empty() || spec.name.find_first_of("/\\") != std::string::npos || spec.name == "." ||
            spec.name == "..")
            invalid("$.name", "must be a plain, non-empty file name");
        spec.method = parse_method(io::text(io::field(doc, "method", "$"), "$.method"), "$.method");
        if (doc.contains("grid"))
            spec.grid = io::sampling_grid(doc["grid"], dim, "$.grid");
        else if (needs_grid(spec.method))
            invalid("$.grid", "method '" + to_string(spec.method) + "' needs a sampling grid");
        if (doc.contains("parameters"))
            spec.params = parse_parameters(doc["parameters"], dim, "$.parameters");
        if (doc.contains("threads"))
        {
            const int t = io::integer(doc["threads"], "$.threads");
            if (t < 0)
                invalid("$.threads", "must be non-negative");
            spec.threads = unsigned(t);
        }
        if (spec.method == Method::music && spec.params.m_bound < 1)
            invalid("$.parameters.m_bound", "method 'music' needs m_bound >= 1");
        if ((spec.method == Method::phaseless || spec.method == Method::trilaterate) && !spec.params.tau_modulus)
            invalid("$.parameters.tau_modulus", "method '" + to_string(spec.method) + "' needs the prior |tau1|");
        return spec;
    }

    ExperimentConfig parse_config(const Json &doc)
    {
        InversionSpec spec = parse_inversion(doc);
        const Dimension dim = parse_dim(doc);
        const Problem problem = parse_problem(doc);
        PointConfiguration truth = parse_points(doc, dim);
        SensorSet sensors = parse_sensors(doc, dim);
        FrequencyGrid freqs = io::frequency_grid(io::field(doc, "frequencies", "$"), "$.frequencies");
        double level = 0.0;
        std::uint64_t seed = 0;
        if (doc.contains("noise"))
        {
            const Json &n = doc["noise"];
            level = io::number(io::field(n, "level", "$.noise"), "$.noise.level");
            if (!(level >= 0.0))
                invalid("$.noise.level", "must be non-negative");
            if (n.contains("seed"))
            {
                if (!n["seed"].is_number_unsigned())
                    invalid("$.noise.seed", "expected a non-negative integer");
                seed = n["seed"].get<std::uint64_t>();
            }
        }
        if (problem == Problem::scatterers_backscatter && sensors.kind() != SensorKind::far)
            invalid("$.sensors.kind", "backscatter data is recorded on far-field directions");
        if (sensors.kind() == SensorKind::near)
            for (const Vec &x : sensors.entries())
                for (const auto &p : truth.points())
                    if (x == p.location)
                        invalid("$.sensors", "a sensor coincides with a point location");
        return {spec.name, problem, std::move(truth), std::move(sensors), std::move(freqs), level, seed, spec, doc};
    }

    MeasurementKind measurement_kind(const ExperimentConfig &cfg)
    {
        if (cfg.problem == Problem::scatterers_backscatter)
            return MeasurementKind::backscatter;
        return cfg.sensors.kind() == SensorKind::near ? MeasurementKind::near : MeasurementKind::far;
    }

    MeasurementSet simulate(const ExperimentConfig &cfg)
    {
        const MeasurementSet clean = forward::simulate(cfg.truth, cfg.sensors, cfg.freqs, measurement_kind(cfg));
        return forward::add_noise(clean, cfg.noise_level, cfg.seed);
    }

    // ---------------------------------------------------------------------------------------------

    namespace
    {
        void require(bool ok, const std::string &what)
        {
            if (!ok)
                throw Error(Errc::validation, what);
        }

        void require_band_near3(const MeasurementSet &m, const std::string &method)
        {
            require(m.kind() == MeasurementKind::near, method + " needs near-field measurements");
            require(m.dim().value() == 3, method + " works in R^3");
            require(m.sensors().size() == 4, method + " needs exactly four sensors");
        }

        // Band options for one row: the declared noise level of the whole array,
        // expressed relative to the rms amplitude of that row.
        single::BandOptions row_options(const MethodParameters &p, const MeasurementSet &m, std::size_t row)
        {
            single::BandOptions opt = p.band;
            if (p.noise_aware && m.noise_level() > 0.0)
            {
                const double all = m.values().norm() / std::sqrt(double(m.values().size()));
                const auto r = m.values().row(Eigen::Index(row));
                const double mine = r.norm() / std::sqrt(double(r.size()));
                opt.noise_rel = mine > 0.0 ? m.noise_level() * all / mine : 0.0;
            }
            return opt;
        }

        Complex mean_near_strength(const MeasurementSet &m, const Vec &z)
        {
            Complex sum = 0.0;
            for (std::size_t l = 0; l < m.sensors().size(); ++l)
                sum += single::strength_from_location_near(single::BandSlice::from_measurements(m, l), z, m.dim());
            return sum / double(m.sensors().size());
        }

        std::size_t nearest_node(const FrequencyGrid &freqs, std::optional<double> k)
        {
            if (!k)
                return 0;
            const auto &nodes = freqs.nodes();
            std::size_t best = 0;
            for (std::size_t j = 1; j < nodes.size(); ++j)
                if (std::abs(nodes[j] - *k) < std::abs(nodes[best] - *k))
                    best = j;
            return best;
        }

        // |u^s(x_l, k)| at the pinned wavenumber, or averaged over every node. In R^3
        // |u^s(x, k)| = |tau1| / (4 pi |x - z1|) for every k, so the average is an
        // estimate of the same quantity.
        std::array<double, 4> phaseless_moduli(const MeasurementSet &m, const MethodParameters &p,
                                               ReconstructionResult &r)
        {
            std::array<double, 4> moduli{};
            if (p.phaseless_k)
            {
                const std::size_t node = nearest_node(m.freqs(), p.phaseless_k);
                for (std::size_t l = 0; l < 4; ++l)
                    moduli[l] = std::abs(m.values()(Eigen::Index(l), Eigen::Index(node)));
                r.diagnostics["phaseless_k"] = m.freqs().nodes()[node];
            }
            else
            {
                for (std::size_t l = 0; l < 4; ++l)
                    moduli[l] = m.values().row(Eigen::Index(l)).cwiseAbs().mean();
                r.notes.push_back("field moduli averaged over all wavenumbers");
            }
            for (std::size_t l = 0; l < 4; ++l)
                if (!(moduli[l] > 0.0))
                    throw Error(Errc::invalid_measurement, "zero field modulus at sensor " + std::to_string(l));
            return moduli;
        }

        Vec locate_spheres(const std::vector<geometry::SphereObservation> &obs, const MethodParameters &p)
        {
            if (p.least_squares)
                return geometry::trilaterate_least_squares(obs);
            return geometry::trilaterate4(std::span<const geometry::SphereObservation, 4>(obs.data(), 4), p.geo);
        }

        // Relative spread of the band distance per unit of relative noise:
        // r sqrt(2 / |u(k+)/u(k-) - 1|^2 + 1), scaled by the row's noise-to-signal ratio.
        double distance_sensitivity(const single::BandSlice &slice, double r, double noise_scale)
        {
            const Complex num = slice.values().back() / slice.values().front() - 1.0;
            return noise_scale * r * std::sqrt(2.0 / std::norm(num) + 1.0);
        }

        InversionOutput run_single_near(const InversionSpec &spec, const MeasurementSet &m)
        {
            require_band_near3(m, "single-near");
            require(m.freqs().mode() == FrequencyMode::band, "single-near needs a frequency band");
            InversionOutput out;
            const double all = m.values().norm() / std::sqrt(double(m.values().size()));
            std::vector<geometry::SphereObservation> obs;
            std::vector<double> radii, sensitivity;
            for (std::size_t l = 0; l < 4; ++l)
            {
                const auto slice = single::BandSlice::from_measurements(m, l);
                const double r = single::distance_from_band(slice, row_options(spec.params, m, l));
                const auto row = m.values().row(Eigen::Index(l));
                const double mine = row.norm() / std::sqrt(double(row.size()));
                radii.push_back(r);
                sensitivity.push_back(distance_sensitivity(slice, r, all / mine));
                obs.emplace_back(m.sensors().entries()[l], r);
            }

            // The fourth sphere only picks between two mirror points, so the least
            // reliable distance goes last. Ties keep the canonical order.
            std::size_t weakest = 0;
            for (std::size_t l = 1; l < 4; ++l)
                if (sensitivity[l] >= sensitivity[weakest])
                    weakest = l;
            std::vector<geometry::SphereObservation> ordered;
            for (std::size_t l = 0; l < 4; ++l)
                if (l != weakest)
                    ordered.push_back(obs[l]);
            ordered.push_back(obs[weakest]);
            out.result.diagnostics["fourth_sensor_row"] = double(weakest);

            MethodParameters params = spec.params;
            if (spec.params.noise_aware && m.noise_level() > 0.0)
            {
                double spread = 0.0;
                for (std::size_t l = 0; l < 4; ++l)
                    if (l != weakest)
                        spread = std::max(spread, 3.0 * m.noise_level() * sensitivity[l]);
                params.geo.tol_geo = std::max(params.geo.tol_geo, spread);
            }
            const Vec z = locate_spheres(ordered, params);
            out.result.locations.push_back(z);
            out.result.strengths.push_back(mean_near_strength(m, z));
            out.result.diagnostic_series["band_distances"] = radii;
            std::vector<double> residuals;
            for (const auto &o : obs)
                residuals.push_back((z - o.center).norm() - o.radius);
            out.result.diagnostic_series["sphere_residuals"] = residuals;
            out.result.diagnostics["tol_geo"] = params.geo.tol_geo;
            if (spec.params.least_squares)
                out.result.notes.push_back("linearized least-squares sphere fit (not the four-step scheme)");
            return out;
        }

        InversionOutput run_single_far(const InversionSpec &spec, const MeasurementSet &m)
        {
            require(m.kind() == MeasurementKind::far, "single-far needs far-field source measurements");
            require(m.freqs().mode() == FrequencyMode::band, "single-far needs a frequency band");
            require(int(m.sensors().size()) == m.dim().value(), "single-far needs exactly n directions in R^n");
            InversionOutput out;
            std::vector<double> projections;
            for (std::size_t l = 0; l < m.sensors().size(); ++l)
            {
                const auto slice = single::BandSlice::from_measurements(m, l);
                try
                {
                    projections.push_back(single::projection_from_band(slice, row_options(spec.params, m, l)));
                }
                catch (const Error &e)
                {
                    if (e.code() != Errc::resonant_band || !single::is_constant(slice, spec.params.band.eps_num))
                        throw;
                    projections.push_back(0.0);
                    out.result.notes.push_back("direction " + std::to_string(l) +
                                               ": data constant over the band, projection set to its limit 0");
                }
            }
            const Vec z = geometry::locate_from_projections(m.sensors().entries(), projections);
            Complex sum = 0.0;
            for (std::size_t l = 0; l < m.sensors().size(); ++l)
                sum += single::strength_from_location_far(single::BandSlice::from_measurements(m, l), z);
            out.result.locations.push_back(z);
            out.result.strengths.push_back(sum / double(m.sensors().size()));
            out.result.diagnostic_series["projections"] = projections;
            return out;
        }

        InversionOutput run_phaseless(const InversionSpec &spec, const MeasurementSet &m)
        {
            require_band_near3(m, "phaseless");
            InversionOutput out;
            const double tau = *spec.params.tau_modulus;
            const std::array<double, 4> moduli = phaseless_moduli(m, spec.params, out.result);
            std::array<Vec, 4> sensors;
            for (std::size_t l = 0; l < 4; ++l)
                sensors[l] = m.sensors().entries()[l];
            std::atomic<std::size_t> hits{0};
            auto values = sweep(
                *spec.grid,
                [&](const Vec &z) {
                    const auto v = single::indicator_phaseless(z, sensors, moduli, tau);
                    if (v.exact_hit)
                        ++hits;
                    return v.value;
                },
                spec.threads);
            IndicatorField field(*spec.grid, std::move(values), IndicatorSource::phaseless);
            const std::size_t best = field.argmax();
            const Vec z = field.grid.node(best);
            out.result.locations.push_back(z);
            out.result.strengths.push_back(mean_near_strength(m, z));
            out.result.diagnostics["peak_value"] = field.values[best];
            out.result.diagnostics["exact_hits"] = double(hits.load());
            out.result.diagnostics["tau_modulus_prior"] = tau;
            out.field = std::move(field);
            return out;
        }

        InversionOutput run_trilaterate(const InversionSpec &spec, const MeasurementSet &m)
        {
            require_band_near3(m, "trilaterate");
            InversionOutput out;
            const double tau = *spec.params.tau_modulus;
            const std::array<double, 4> moduli = phaseless_moduli(m, spec.params, out.result);
            std::vector<geometry::SphereObservation> obs;
            std::vector<double> radii;
            for (std::size_t l = 0; l < 4; ++l)
            {
                radii.push_back(tau / (4.0 * pi * moduli[l]));
                obs.emplace_back(m.sensors().entries()[l], radii.back());
            }
            const Vec z = locate_spheres(obs, spec.params);
            out.result.locations.push_back(z);
            out.result.strengths.push_back(mean_near_strength(m, z));
            out.result.diagnostic_series["phaseless_radii"] = radii;
            return out;
        }

        void add_peaks(ReconstructionResult &r, const std::vector<Peak> &peaks, double threshold_ratio,
                       double min_separation)
        {
            std::vector<double> values;
            for (const Peak &p : peaks)
            {
                r.locations.push_back(p.location);
                values.push_back(p.value);
            }
            r.diagnostic_series["peak_values"] = values;
            r.diagnostics["threshold_ratio"] = threshold_ratio;
            r.diagnostics["min_separation"] = min_separation;
        }

        double finite_gap(double gap)
        {
            return std::isfinite(gap) ? gap : -1.0;
        }

        InversionOutput run_multi_indicator(const InversionSpec &spec, const MeasurementSet &input)
        {
            require(input.kind() != MeasurementKind::near, "multi-indicator needs far-field or backscatter data");
            require(input.freqs().mode() == FrequencyMode::band, "multi-indicator needs a frequency band");
            const MeasurementSet m =
                spec.params.assume_real_strengths ? multi::extend_by_conjugation(input).canonical() : input;
            const SamplingGrid &grid = *spec.grid;
            const std::vector<Vec> dirs = multi::paired_directions(m);
            if (dirs.empty())
                throw Error(Errc::incomplete_data, "no direction has its antipode in the data");

            InversionOutput out;
            IndicatorField field = multi::indicator_total(grid, dirs, m, spec.threads);
            const double min_sep = spec.params.min_separation.value_or(2.0 * grid.spacing());
            const double eps_sep = spec.params.eps_sep.value_or(grid.spacing());
            const auto peaks = extract_peaks(field, min_sep, spec.params.threshold_ratio);
            add_peaks(out.result, peaks, spec.params.threshold_ratio, min_sep);
            out.result.diagnostics["eps_sep"] = eps_sep;
            out.result.diagnostics["directions"] = double(dirs.size());
            if (spec.params.assume_real_strengths)
                out.result.notes.push_back("real strengths assumed: missing antipodal rows synthesized by conjugation");

            if (!out.result.locations.empty() && spec.params.strength_direction)
            {
                const Vec &xhat = *spec.params.strength_direction;
                const double gap = multi::min_projection_gap(xhat, out.result.locations);
                out.result.diagnostic_series["strength_direction"] =
                    std::vector<double>(xhat.data(), xhat.data() + xhat.size());
                out.result.diagnostics["strength_direction_gap"] = finite_gap(gap);
                out.result.strengths = multi::strengths_at_locations(out.result.locations, xhat, m, eps_sep);
            }
            else if (!out.result.locations.empty())
            {
                try
                {
                    const auto local = multi::strengths_per_location(out.result.locations, dirs, m, eps_sep);
                    out.result.strengths = local.strengths;
                    out.result.diagnostic_series["strength_gaps"] = local.gaps;
                    out.result.notes.push_back("strengths use, per location, the data direction that best separates it");
                }
                catch (const Error &e)
                {
                    // Locations stand on their own; strengths need a separating direction.
                    if (e.code() != Errc::direction_degenerate)
                        throw;
                    out.result.notes.push_back(std::string("strengths not computed: ") + e.what());
                }
            }
            out.field = std::move(field);
            return out;
        }

        InversionOutput run_music(const InversionSpec &spec, const MeasurementSet &m)
        {
            require(m.kind() != MeasurementKind::near, "music needs far-field or backscatter data");
            require(m.freqs().mode() == FrequencyMode::equidistant, "music needs equidistant wavenumbers");
            const SamplingGrid &grid = *spec.grid;
            const double rel_tol = spec.params.rel_tol.value_or(std::max(1e-8, 3.0 * m.noise_level()));
            std::vector<spectral::HankelData> data;
            for (std::size_t l = 0; l < m.sensors().size(); ++l)
                data.push_back(spectral::HankelData::from_measurements(m, l, spec.params.m_bound));

            InversionOutput out;
            if (spec.params.search_radius)
            {
                const bool ok = data.empty() || data.front().satisfies_aliasing_bound(*spec.params.search_radius);
                out.result.diagnostics["aliasing_bound_met"] = ok ? 1.0 : 0.0;
                if (!ok)
                    out.result.notes.push_back("k_min exceeds the aliasing bound for the declared search radius");
            }
            auto sweep_out = spectral::locate_by_range_test(grid, data, rel_tol, spec.threads);
            const double min_sep = spec.params.min_separation.value_or(2.0 * grid.spacing());
            const auto peaks = extract_peaks(sweep_out.field, min_sep, spec.params.threshold_ratio);
            add_peaks(out.result, peaks, spec.params.threshold_ratio, min_sep);
            out.result.diagnostics["rel_tol"] = rel_tol;
            out.result.diagnostics["aliased_nodes"] = double(sweep_out.aliased_nodes);
            out.result.diagnostic_series["ranks"] = std::vector<double>(sweep_out.ranks.begin(), sweep_out.ranks.end());

            if (!out.result.locations.empty())
            {
                std::size_t best = 0;
                double best_gap = -1.0;
                for (std::size_t d = 0; d < data.size(); ++d)
                {
                    const double gap = multi::min_projection_gap(data[d].direction(), out.result.locations);
                    if (gap > best_gap)
                    {
                        best_gap = gap;
                        best = d;
                    }
                }
                if (spec.params.strength_direction)
                {
                    const auto row = m.sensors().find(*spec.params.strength_direction);
                    if (!row)
                        throw Error(Errc::incomplete_data, "strength direction has no data row");
                    best = *row;
                }
                const auto sol = spectral::solve_strengths_vandermonde(out.result.locations, data[best]);
                out.result.strengths = sol.strengths;
                out.result.diagnostics["vandermonde_residual"] = sol.residual;
                out.result.diagnostics["vandermonde_condition"] = sol.condition;
                const Vec &xhat = data[best].direction();
                out.result.diagnostic_series["strength_direction"] =
                    std::vector<double>(xhat.data(), xhat.data() + xhat.size());
            }
            out.field = std::move(sweep_out.field);
            return out;
        }

        std::string fmt(const char *format, double x)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, format, x);
            return buf;
        }

        std::string fmt_vec(const Vec &v)
        {
            std::string s = "(";
            for (Eigen::Index i = 0; i < v.size(); ++i)
                s += (i ? ", " : "") + fmt("%.4f", v(i));
            return s + ")";
        }

        std::string fmt_complex(Complex c)
        {
            return fmt("%.6f", c.real()) + (c.imag() < 0 ? " - " : " + ") + fmt("%.6f", std::abs(c.imag())) + "i";
        }

        std::string pad(std::string s, std::size_t width)
        {
            if (s.size() < width)
                s.append(width - s.size(), ' ');
            return s;
        }
    }

    InversionOutput invert(const InversionSpec &spec, const MeasurementSet &data)
    {
        if (spec.grid && !(spec.grid->dim() == data.dim()))
            throw Error(Errc::validation, "sampling grid dimension differs from the measurement dimension");
        const MeasurementSet m = data.canonical();
        switch (spec.method)
        {
        case Method::single_near:
            return run_single_near(spec, m);
        case Method::single_far:
            return run_single_far(spec, m);
        case Method::phaseless:
            return run_phaseless(spec, m);
        case Method::trilaterate:
            return run_trilaterate(spec, m);
        case Method::multi_indicator:
            return run_multi_indicator(spec, m);
        case Method::music:
            return run_music(spec, m);
        }
        throw Error(Errc::validation, "unknown method");
    }

    std::string report(const InversionSpec &spec, const MeasurementSet &data, const InversionOutput &out,
                       const PointConfiguration *truth)
    {
        std::string s;
        s += "experiment: " + spec.name + "\n";
        s += "method: " + to_string(spec.method) + "\n";
        s += "data: " + io::to_string(data.kind()) + ", " + std::to_string(data.sensors().size()) + " sensors x " +
             std::to_string(data.freqs().size()) + " wavenumbers, noise " + fmt("%.4g", data.noise_level()) +
             ", seed " + std::to_string(data.seed()) + "\n";
        if (data.freqs().mode() == FrequencyMode::band)
            s += "band: [" + fmt("%g", data.freqs().k_lo()) + ", " + fmt("%g", data.freqs().k_hi()) +
                 "], dk = " + fmt("%g", data.freqs().dk()) + "\n";
        else
            s += "wavenumbers: k_j = j * " + fmt("%.6g", data.freqs().k_min()) + ", J = " +
                 std::to_string(data.freqs().count()) + "\n";
        if (spec.grid)
            s += "sampling grid: " + fmt_vec(spec.grid->lower()) + " to " + fmt_vec(spec.grid->upper()) +
                 ", spacing " + fmt("%g", spec.grid->spacing()) + "\n";
        s += "\n";

        const auto &r = out.result;
        auto computed_strength = [&r](std::size_t i) {
            return i < r.strengths.size() ? fmt_complex(r.strengths[i]) : std::string("-");
        };
        if (truth)
        {
            s += pad("true location", 28) + pad("true strength", 26) + pad("computed location", 28) +
                 pad("computed strength", 26) + "error\n";
            for (const auto &p : truth->points())
            {
                std::size_t best = r.locations.size();
                double dist = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < r.locations.size(); ++i)
                    if ((r.locations[i] - p.location).norm() < dist)
                    {
                        dist = (r.locations[i] - p.location).norm();
                        best = i;
                    }
                s += pad(fmt_vec(p.location), 28) + pad(fmt_complex(p.strength), 26);
                if (best < r.locations.size())
                    s += pad(fmt_vec(r.locations[best]), 28) + pad(computed_strength(best), 26) + fmt("%.4g", dist);
                else
                    s += pad("-", 28) + pad("-", 26) + "-";
                s += "\n";
            }
            s += "\n" + std::to_string(r.locations.size()) + " reconstructed, " + std::to_string(truth->size()) +
                 " true\n";
        }
        else
        {
            s += pad("computed location", 28) + "computed strength\n";
            for (std::size_t i = 0; i < r.locations.size(); ++i)
                s += pad(fmt_vec(r.locations[i]), 28) + computed_strength(i) + "\n";
        }
        for (const auto &[k, v] : r.diagnostics)
            s += k + ": " + fmt("%.6g", v) + "\n";
        for (const auto &note : r.notes)
            s += "note: " + note + "\n";
        return s;
    }

    void write_artifacts(const std::filesystem::path &dir, const MeasurementSet &data, const InversionOutput &out,
                         const std::string &report_text)
    {
        std::filesystem::create_directories(dir);
        io::write_file(dir / "measurements.json", io::dump(io::to_json(data)));
        if (out.field)
        {
            io::write_file(dir / "indicator.csv", io::to_csv(*out.field));
            io::write_file(dir / "indicator.json", io::dump(io::to_json(*out.field)));
        }
        io::write_file(dir / "result.json", io::dump(io::to_json(out.result)));
        io::write_file(dir / "report.txt", report_text);
    }
}
