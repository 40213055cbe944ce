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


#include "pointscat/cli.hpp"
#include "pointscat/geometry.hpp"
#include "pointscat/io.hpp"
#include "pointscat/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>

namespace pointscat::cli
{
    namespace
    {
        struct Options
        {
            std::string config;
            std::string preset;
            std::string out_dir = "out";
            std::optional<std::uint64_t> seed;
            std::optional<unsigned> threads;
            std::string measurements;
            std::vector<std::string> centers;
            std::vector<double> radii;
            double tol_geo = 1e-6;
            bool least_squares = false;
            bool list = false;
        };

        io::Json load_config(const Options &o)
        {
            if (!o.config.empty() && !o.preset.empty())
                throw Error(Errc::validation, "give either a config file or --preset, not both");
            io::Json doc;
            if (!o.preset.empty())
                doc = pipeline::preset(o.preset);
            else if (!o.config.empty())
                doc = io::read_file(o.config);
            else
                throw Error(Errc::validation, "a config file or --preset is required");
            if (o.seed)
            {
                if (!doc.contains("noise") || !doc["noise"].is_object())
                    doc["noise"] = io::Json{{"level", 0.0}};
                doc["noise"]["seed"] = *o.seed;
            }
            if (o.threads)
                doc["threads"] = *o.threads;
            return doc;
        }

        int cmd_run(const Options &o, std::ostream &out)
        {
            const auto cfg = pipeline::parse_config(load_config(o));
            const MeasurementSet data = pipeline::simulate(cfg);
            const auto result = pipeline::invert(cfg.inversion, data);
            const std::string text = pipeline::report(cfg.inversion, data, result, &cfg.truth);
            pipeline::write_artifacts(std::filesystem::path(o.out_dir) / cfg.name, data, result, text);
            out << text;
            return exit_ok;
        }

        int cmd_simulate(const Options &o, std::ostream &out)
        {
            const auto cfg = pipeline::parse_config(load_config(o));
            const MeasurementSet data = pipeline::simulate(cfg);
            const auto dir = std::filesystem::path(o.out_dir) / cfg.name;
            io::write_file(dir / "measurements.json", io::dump(io::to_json(data)));
            io::write_file(dir / "measurements.csv", io::to_csv(data));
            out << "wrote " << (dir / "measurements.json").string() << "\n";
            return exit_ok;
        }

        int cmd_invert(const Options &o, std::ostream &out)
        {
            const auto spec = pipeline::parse_inversion(load_config(o));
            const MeasurementSet data = io::measurement_set(io::read_file(o.measurements));
            const auto result = pipeline::invert(spec, data);
            const std::string text = pipeline::report(spec, data, result, nullptr);
            pipeline::write_artifacts(std::filesystem::path(o.out_dir) / spec.name, data, result, text);
            out << text;
            return exit_ok;
        }

        Vec parse_center(const std::string &s)
        {
            std::vector<double> c;
            std::size_t pos = 0;
            while (pos <= s.size())
            {
                const std::size_t comma = s.find(',', pos);
                const std::string part = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
                try
                {
                    std::size_t used = 0;
                    c.push_back(std::stod(part, &used));
                    if (used != part.size())
                        throw std::invalid_argument(part);
                }
                catch (const std::exception &)
                {
                    throw Error(Errc::validation, "center '" + s + "': '" + part + "' is not a number");
                }
                if (comma == std::string::npos)
                    break;
                pos = comma + 1;
            }
            if (c.size() != 3)
                throw Error(Errc::validation, "center '" + s + "' must have three comma-separated coordinates");
            return vec({c[0], c[1], c[2]});
        }

        int cmd_trilaterate(const Options &o, std::ostream &out)
        {
            if (o.centers.size() != 4 || o.radii.size() != 4)
                throw Error(Errc::validation, "trilaterate needs four --centers and four --radii");
            std::vector<geometry::SphereObservation> obs;
            for (std::size_t j = 0; j < 4; ++j)
                obs.emplace_back(parse_center(o.centers[j]), o.radii[j]);
            geometry::TrilaterationOptions opt;
            opt.tol_geo = o.tol_geo;
            const Vec z = o.least_squares ? geometry::trilaterate_least_squares(obs)
                                          : geometry::trilaterate4(std::span<const geometry::SphereObservation, 4>(
                                                                       obs.data(), 4),
                                                                   opt);
            char buf[128];
            std::snprintf(buf, sizeof buf, "%.12f, %.12f, %.12f", z(0), z(1), z(2));
            out << buf << "\n";
            return exit_ok;
        }

        int cmd_preset(const Options &o, std::ostream &out)
        {
            if (o.list || o.preset.empty())
            {
                for (const auto &n : pipeline::preset_names())
                    out << n << "\n";
                return exit_ok;
            }
            out << io::dump(pipeline::preset(o.preset));
            return exit_ok;
        }
    }

    int main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"pointscat: locate point sources and point-like scatterers from multi-frequency sparse data"};
        app.name("pointscat");
        app.require_subcommand(1);
        Options o;

        auto add_common = [&o](CLI::App *c) {
            c->add_option("config", o.config, "experiment configuration (JSON)");
            c->add_option("--preset", o.preset, "use a built-in configuration instead of a file");
            c->add_option("--out", o.out_dir, "output root; files go to OUT/<name>/");
            c->add_option("--seed", o.seed, "override the noise seed");
        };

        auto *run = app.add_subcommand("run", "simulate, invert and write all artifacts");
        add_common(run);
        run->add_option("--threads", o.threads, "worker threads for grid sweeps (0 = all cores)");

        auto *sim = app.add_subcommand("simulate", "write measurements only");
        add_common(sim);

        auto *inv = app.add_subcommand("invert", "invert a measurement file without the true configuration");
        add_common(inv);
        inv->add_option("--measurements", o.measurements, "measurement file (JSON)")->required();
        inv->add_option("--threads", o.threads, "worker threads for grid sweeps (0 = all cores)");

        auto *tri = app.add_subcommand("trilaterate", "locate a point from four sphere observations");
        tri->add_option("--centers", o.centers, "four centers x,y,z")->required()->expected(4);
        tri->add_option("--radii", o.radii, "four radii")->required()->expected(4);
        tri->add_option("--tol", o.tol_geo, "geometric tolerance");
        tri->add_flag("--least-squares", o.least_squares, "linearized least-squares fit instead of the four-step scheme");

        auto *pre = app.add_subcommand("preset", "print a built-in configuration");
        pre->add_option("name", o.preset, "preset name");
        pre->add_flag("--list", o.list, "list preset names");

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty())
            reversed.pop_back(); // program name
        try
        {
            app.parse(reversed);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? exit_ok : exit_input;
        }

        try
        {
            if (run->parsed())
                return cmd_run(o, out);
            if (sim->parsed())
                return cmd_simulate(o, out);
            if (inv->parsed())
                return cmd_invert(o, out);
            if (tri->parsed())
                return cmd_trilaterate(o, out);
            if (pre->parsed())
                return cmd_preset(o, out);
        }
        catch (const Error &e)
        {
            err << "error: " << e.what() << "\n";
            return is_input_error(e.code()) ? exit_input : exit_pipeline;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << "\n";
            return exit_pipeline;
        }
        return exit_input;
    }
}
