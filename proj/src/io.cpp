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


#include "pointscat/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pointscat::io
{
    namespace
    {
        std::string format_double(double x)
        {
            if (!std::isfinite(x))
                throw Error(Errc::validation, "cannot serialize a non-finite number");
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            return buf;
        }

        bool is_scalar(const Json &j)
        {
            return !j.is_array() && !j.is_object();
        }

        void write_value(std::string &out, const Json &j, int depth)
        {
            const std::string pad(std::size_t(2 * (depth + 1)), ' ');
            const std::string close_pad(std::size_t(2 * depth), ' ');
            switch (j.type())
            {
            case Json::value_t::number_float:
                out += format_double(j.get<double>());
                break;
            case Json::value_t::number_integer:
                out += std::to_string(j.get<std::int64_t>());
                break;
            case Json::value_t::number_unsigned:
                out += std::to_string(j.get<std::uint64_t>());
                break;
            case Json::value_t::array:
            {
                if (j.empty())
                {
                    out += "[]";
                    break;
                }
                bool flat = true;
                for (const auto &e : j)
                    flat = flat && is_scalar(e);
                if (flat)
                {
                    out += '[';
                    for (std::size_t i = 0; i < j.size(); ++i)
                    {
                        if (i > 0)
                            out += ", ";
                        write_value(out, j[i], depth + 1);
                    }
                    out += ']';
                    break;
                }
                out += "[\n";
                for (std::size_t i = 0; i < j.size(); ++i)
                {
                    out += pad;
                    write_value(out, j[i], depth + 1);
                    out += (i + 1 < j.size()) ? ",\n" : "\n";
                }
                out += close_pad + ']';
                break;
            }
            case Json::value_t::object:
            {
                if (j.empty())
                {
                    out += "{}";
                    break;
                }
                out += "{\n";
                std::size_t i = 0;
                for (auto it = j.begin(); it != j.end(); ++it, ++i)
                {
                    out += pad + Json(it.key()).dump() + ": ";
                    write_value(out, it.value(), depth + 1);
                    out += (i + 1 < j.size()) ? ",\n" : "\n";
                }
                out += close_pad + '}';
                break;
            }
            default:
                out += j.dump();
                break;
            }
        }

        [[noreturn]] void fail(const std::string &path, const std::string &what)
        {
            throw Error(Errc::parse, path + ": " + what);
        }
    }

    std::string dump(const Json &doc)
    {
        std::string out;
        write_value(out, doc, 0);
        out += '\n';
        return out;
    }

    Json parse_text(const std::string &content, const std::string &origin)
    {
        try
        {
            return Json::parse(content);
        }
        catch (const Json::parse_error &e)
        {
            throw Error(Errc::parse, origin + ": " + e.what());
        }
    }

    std::string read_text(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Error(Errc::parse, "cannot open " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    Json read_file(const std::filesystem::path &path)
    {
        return parse_text(read_text(path), path.string());
    }

    void write_file(const std::filesystem::path &path, const std::string &content)
    {
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw Error(Errc::validation, "cannot write " + path.string());
        out << content;
        if (!out)
            throw Error(Errc::validation, "failed writing " + path.string());
    }

    const Json &field(const Json &obj, const std::string &key, const std::string &path)
    {
        if (!obj.is_object())
            fail(path, "expected an object");
        const auto it = obj.find(key);
        if (it == obj.end())
            fail(path + "." + key, "missing required field");
        return *it;
    }

    double number(const Json &j, const std::string &path)
    {
        if (!j.is_number())
            fail(path, "expected a number, got " + j.dump());
        const double x = j.get<double>();
        if (!std::isfinite(x))
            fail(path, "expected a finite number");
        return x;
    }

    int integer(const Json &j, const std::string &path)
    {
        if (!j.is_number_integer())
            fail(path, "expected an integer, got " + j.dump());
        return j.get<int>();
    }

    std::string text(const Json &j, const std::string &path)
    {
        if (!j.is_string())
            fail(path, "expected a string, got " + j.dump());
        return j.get<std::string>();
    }

    Vec point(const Json &j, const std::string &path)
    {
        if (!j.is_array() || j.size() < 1 || j.size() > 3)
            fail(path, "expected an array of 1 to 3 coordinates, got " + j.dump());
        Vec v(Eigen::Index(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i)
            v(Eigen::Index(i)) = number(j[i], path + "[" + std::to_string(i) + "]");
        return v;
    }

    Complex complex(const Json &j, const std::string &path)
    {
        if (!j.is_array() || j.size() != 2)
            fail(path, "expected a complex pair [re, im], got " + j.dump());
        return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
    }

    Json to_json(const Vec &v)
    {
        Json out = Json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i)
            out.push_back(v(i));
        return out;
    }

    Json to_json(Complex c)
    {
        return Json::array({c.real(), c.imag()});
    }

    std::string to_string(MeasurementKind kind)
    {
        switch (kind)
        {
        case MeasurementKind::near:
            return "near";
        case MeasurementKind::far:
            return "far";
        case MeasurementKind::backscatter:
            return "backscatter";
        }
        return "unknown";
    }

    MeasurementKind measurement_kind(const std::string &name, const std::string &path)
    {
        if (name == "near")
            return MeasurementKind::near;
        if (name == "far")
            return MeasurementKind::far;
        if (name == "backscatter")
            return MeasurementKind::backscatter;
        fail(path, "unknown measurement kind '" + name + "' (near, far, backscatter)");
    }

    Json to_json(const FrequencyGrid &freqs)
    {
        Json out = Json::object();
        if (freqs.mode() == FrequencyMode::band)
        {
            out["mode"] = "band";
            out["k_lo"] = freqs.k_lo();
            out["k_hi"] = freqs.k_hi();
            out["dk"] = freqs.dk();
        }
        else
        {
            out["mode"] = "equidistant";
            out["k_min"] = freqs.k_min();
            out["count"] = freqs.count();
        }
        return out;
    }

    FrequencyGrid frequency_grid(const Json &j, const std::string &path)
    {
        const std::string mode = text(field(j, "mode", path), path + ".mode");
        try
        {
            if (mode == "band")
                return FrequencyGrid::band(number(field(j, "k_lo", path), path + ".k_lo"),
                                           number(field(j, "k_hi", path), path + ".k_hi"),
                                           number(field(j, "dk", path), path + ".dk"));
            if (mode == "equidistant")
                return FrequencyGrid::equidistant(number(field(j, "k_min", path), path + ".k_min"),
                                                  integer(field(j, "count", path), path + ".count"));
        }
        catch (const Error &e)
        {
            if (e.code() == Errc::validation)
                throw Error(Errc::validation, path + ": " + e.what());
            throw;
        }
        fail(path + ".mode", "unknown frequency mode '" + mode + "' (band, equidistant)");
    }

    Json to_json(const MeasurementSet &m)
    {
        Json out = Json::object();
        out["schema_version"] = schema_version;
        out["kind"] = to_string(m.kind());
        out["dim"] = m.dim().value();
        Json sensors = Json::array();
        for (const Vec &s : m.sensors().entries())
            sensors.push_back(to_json(s));
        out["sensors"] = std::move(sensors);
        out["freqs"] = to_json(m.freqs());
        out["noise_level"] = m.noise_level();
        out["seed"] = m.seed();
        Json values = Json::array();
        for (Eigen::Index l = 0; l < m.values().rows(); ++l)
            for (Eigen::Index j = 0; j < m.values().cols(); ++j)
                values.push_back(to_json(m.values()(l, j)));
        out["values"] = std::move(values);
        return out;
    }

    MeasurementSet measurement_set(const Json &j, const std::string &path)
    {
        if (!j.is_object())
            fail(path, "expected a measurement object");
        const int version = integer(field(j, "schema_version", path), path + ".schema_version");
        if (version != schema_version)
            fail(path + ".schema_version", "unsupported version " + std::to_string(version));
        const MeasurementKind kind = measurement_kind(text(field(j, "kind", path), path + ".kind"), path + ".kind");
        const Dimension dim(integer(field(j, "dim", path), path + ".dim"));

        const Json &js = field(j, "sensors", path);
        if (!js.is_array())
            fail(path + ".sensors", "expected an array");
        std::vector<Vec> entries;
        for (std::size_t l = 0; l < js.size(); ++l)
        {
            const std::string p = path + ".sensors[" + std::to_string(l) + "]";
            entries.push_back(point(js[l], p));
            if (entries.back().size() != dim.value())
                fail(p, "expected " + std::to_string(dim.value()) + " coordinates");
        }
        const SensorKind sk = kind == MeasurementKind::near ? SensorKind::near : SensorKind::far;
        SensorSet sensors(sk, dim, std::move(entries));
        FrequencyGrid freqs = frequency_grid(field(j, "freqs", path), path + ".freqs");

        const double noise = number(field(j, "noise_level", path), path + ".noise_level");
        const Json &jseed = field(j, "seed", path);
        if (!jseed.is_number_integer() || (jseed.is_number_integer() && !jseed.is_number_unsigned() && jseed.get<std::int64_t>() < 0))
            fail(path + ".seed", "expected a non-negative integer");
        const std::uint64_t seed = jseed.get<std::uint64_t>();

        const Json &jv = field(j, "values", path);
        const std::size_t rows = sensors.size(), cols = freqs.size();
        if (!jv.is_array() || jv.size() != rows * cols)
            fail(path + ".values", "expected " + std::to_string(rows * cols) + " [re, im] pairs (sensors x frequencies)");
        Eigen::MatrixXcd values(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        for (std::size_t l = 0; l < rows; ++l)
            for (std::size_t c = 0; c < cols; ++c)
            {
                const std::size_t n = l * cols + c;
                values(Eigen::Index(l), Eigen::Index(c)) =
                    complex(jv[n], path + ".values[" + std::to_string(n) + "] (sensor " + std::to_string(l) +
                                       ", node " + std::to_string(c) + ")");
            }
        return MeasurementSet(kind, std::move(sensors), std::move(freqs), std::move(values), noise, seed);
    }

    std::string to_csv(const MeasurementSet &m)
    {
        std::string out = "sensor_index,k,re,im\n";
        const auto &ks = m.freqs().nodes();
        for (Eigen::Index l = 0; l < m.values().rows(); ++l)
            for (Eigen::Index j = 0; j < m.values().cols(); ++j)
            {
                const Complex v = m.values()(l, j);
                out += std::to_string(l) + "," + format_double(ks[std::size_t(j)]) + "," + format_double(v.real()) +
                       "," + format_double(v.imag()) + "\n";
            }
        return out;
    }

    Json to_json(const SamplingGrid &grid)
    {
        Json out = Json::object();
        out["lower"] = to_json(grid.lower());
        out["upper"] = to_json(grid.upper());
        out["spacing"] = grid.spacing();
        return out;
    }

    SamplingGrid sampling_grid(const Json &j, Dimension dim, const std::string &path)
    {
        const Vec lower = point(field(j, "lower", path), path + ".lower");
        const Vec upper = point(field(j, "upper", path), path + ".upper");
        const double spacing = number(field(j, "spacing", path), path + ".spacing");
        try
        {
            return SamplingGrid(dim, lower, upper, spacing);
        }
        catch (const Error &e)
        {
            throw Error(Errc::validation, path + ": " + e.what());
        }
    }

    std::string to_csv(const IndicatorField &f)
    {
        static const char *axes[] = {"x", "y", "z"};
        std::string out;
        const int dim = f.grid.dim().value();
        for (int a = 0; a < dim; ++a)
            out += std::string(axes[a]) + ",";
        out += "value\n";
        for (std::size_t n = 0; n < f.grid.size(); ++n)
        {
            const Vec z = f.grid.node(n);
            for (int a = 0; a < dim; ++a)
                out += format_double(z(a)) + ",";
            out += format_double(f.values[n]) + "\n";
        }
        return out;
    }

    Json to_json(const IndicatorField &f)
    {
        Json out = Json::object();
        out["schema_version"] = schema_version;
        out["source"] = to_string(f.source);
        out["grid"] = to_json(f.grid);
        Json shape = Json::array();
        for (int a = 0; a < f.grid.dim().value(); ++a)
            shape.push_back(f.grid.shape()[std::size_t(a)]);
        out["shape"] = std::move(shape);
        out["values"] = f.values;
        return out;
    }

    Json to_json(const ReconstructionResult &r)
    {
        Json out = Json::object();
        out["schema_version"] = schema_version;
        Json locs = Json::array();
        for (const Vec &z : r.locations)
            locs.push_back(to_json(z));
        out["locations"] = std::move(locs);
        Json strengths = Json::array();
        for (Complex t : r.strengths)
            strengths.push_back(to_json(t));
        out["strengths"] = std::move(strengths);
        Json diag = Json::object();
        for (const auto &[k, v] : r.diagnostics)
            diag[k] = v;
        for (const auto &[k, v] : r.diagnostic_series)
            diag[k] = v;
        diag["notes"] = r.notes;
        out["diagnostics"] = std::move(diag);
        return out;
    }
}
