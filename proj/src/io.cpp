// SPDX-License-Identifier: Apache-2.0
#include "cqd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cqd::io {

namespace {

using nlohmann::json;

std::string fmt_full(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt_short(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

Distribution distribution_from_string(const std::string& s) {
    if (s == "isotropic") return Distribution::Isotropic;
    if (s == "anisotropic") return Distribution::Anisotropic;
    throw std::domain_error("distribution must be isotropic or anisotropic");
}

std::string to_string(Distribution d) {
    return d == Distribution::Isotropic ? "isotropic" : "anisotropic";
}

FlipConvention convention_from_string(const std::string& s) {
    if (s == "collapse_up_is_flip") return FlipConvention::CollapseUpIsFlip;
    if (s == "collapse_down_is_flip")
        return FlipConvention::CollapseDownIsFlip;
    throw std::domain_error(
        "flip_convention must be collapse_up_is_flip or "
        "collapse_down_is_flip");
}

std::string to_string(FlipConvention c) {
    return c == FlipConvention::CollapseUpIsFlip ? "collapse_up_is_flip"
                                                 : "collapse_down_is_flip";
}

ErrorPolicy policy_from_string(const std::string& s) {
    if (s == "abort") return ErrorPolicy::Abort;
    if (s == "skip") return ErrorPolicy::SkipAndRecord;
    throw std::domain_error("error_policy must be abort or skip");
}

std::string to_string(ErrorPolicy p) {
    return p == ErrorPolicy::Abort ? "abort" : "skip";
}

void apply_constants(const json& j, PhysicalConstants& c) {
    for (const auto& [key, value] : j.items()) {
        if (key == "mu0")
            c.mu0 = value.get<double>();
        else if (key == "R_vdw")
            c.R_vdw = value.get<double>();
        else if (key == "mu_n")
            c.mu_n = value.get<double>();
        else if (key == "mu_e")
            c.mu_e = value.get<double>();
        else if (key == "gamma_e_mag")
            c.gamma_e_mag = value.get<double>();
        else if (key == "gamma_n_mag")
            c.gamma_n_mag = value.get<double>();
        else
            throw std::domain_error("unknown constants key: " + key);
    }
}

json constants_to_json(const PhysicalConstants& c) {
    return json{{"mu0", c.mu0},
                {"R_vdw", c.R_vdw},
                {"mu_n", c.mu_n},
                {"mu_e", c.mu_e},
                {"gamma_e_mag", c.gamma_e_mag},
                {"gamma_n_mag", c.gamma_n_mag}};
}

}  // namespace

RunConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::domain_error(std::string("config is not valid JSON: ") +
                                e.what());
    }
    if (!j.is_object()) throw std::domain_error("config must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "currents")
            cfg.currents = value.get<std::vector<double>>();
        else if (key == "velocity")
            cfg.velocity = value.get<double>();
        else if (key == "z_a")
            cfg.z_a = value.get<double>();
        else if (key == "B_r")
            cfg.B_r = value.get<double>();
        else if (key == "n_samples")
            cfg.n_samples = value.get<int>();
        else if (key == "distribution")
            cfg.distribution =
                distribution_from_string(value.get<std::string>());
        else if (key == "flip_convention")
            cfg.flip_convention =
                convention_from_string(value.get<std::string>());
        else if (key == "tau_start")
            cfg.tau_start = value.get<double>();
        else if (key == "tau_end")
            cfg.tau_end = value.get<double>();
        else if (key == "tail_start")
            cfg.tail_start = value.get<double>();
        else if (key == "tail_points")
            cfg.tail_points = value.get<int>();
        else if (key == "rel_tol")
            cfg.rel_tol = value.get<double>();
        else if (key == "abs_tol")
            cfg.abs_tol = value.get<double>();
        else if (key == "max_steps")
            cfg.max_steps = value.get<long>();
        else if (key == "fixed_rk4")
            cfg.fixed_rk4 = value.get<bool>();
        else if (key == "fixed_steps")
            cfg.fixed_steps = value.get<long>();
        else if (key == "seed")
            cfg.seed = value.get<std::uint64_t>();
        else if (key == "error_policy")
            cfg.error_policy = policy_from_string(value.get<std::string>());
        else if (key == "constants")
            apply_constants(value, cfg.constants);
        else if (key == "run_info") {
            if (!value.is_object()) {
                throw std::domain_error("run_info must be an object");
            }
            // Tolerated so metadata files round-trip as configs.
        } else {
            throw std::domain_error("unknown config key: " + key);
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    return config_from_json_text(read_text_file(path));
}

namespace {

json config_to_json(const RunConfig& cfg) {
    return json{{"currents", cfg.currents},
                {"velocity", cfg.velocity},
                {"z_a", cfg.z_a},
                {"B_r", cfg.B_r},
                {"n_samples", cfg.n_samples},
                {"distribution", to_string(cfg.distribution)},
                {"flip_convention", to_string(cfg.flip_convention)},
                {"tau_start", cfg.tau_start},
                {"tau_end", cfg.tau_end},
                {"tail_start", cfg.tail_start},
                {"tail_points", cfg.tail_points},
                {"rel_tol", cfg.rel_tol},
                {"abs_tol", cfg.abs_tol},
                {"max_steps", cfg.max_steps},
                {"fixed_rk4", cfg.fixed_rk4},
                {"fixed_steps", cfg.fixed_steps},
                {"seed", cfg.seed},
                {"error_policy", to_string(cfg.error_policy)},
                {"constants", constants_to_json(cfg.constants)}};
}

}  // namespace

std::string config_to_json_text(const RunConfig& cfg) {
    return config_to_json(cfg).dump(2) + "\n";
}

std::string metadata_json_text(const RunConfig& cfg, const RunInfo& info) {
    json j = config_to_json(cfg);
    json run{{"version", info.version},
             {"compiler", info.compiler},
             {"kernel", info.kernel},
             {"threads", info.threads},
             {"wall_time_s", info.wall_time_s},
             {"n_skipped", info.n_skipped}};
    if (info.r_squared) {
        run["r_squared"] = *info.r_squared;
    } else {
        run["r_squared"] = nullptr;
    }
    j["run_info"] = run;
    return j.dump(2) + "\n";
}

void write_metadata_json(const std::string& path, const RunConfig& cfg,
                         const RunInfo& info) {
    write_text_file(path, metadata_json_text(cfg, info));
}

experiment::ExperimentDataset dataset_from_csv_text(const std::string& text) {
    experiment::ExperimentDataset ds;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "current_A,flip_fraction") {
                throw std::domain_error(
                    "dataset header must be current_A,flip_fraction");
            }
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::domain_error("dataset row missing comma: " + line);
        }
        std::size_t pos = 0;
        double current = 0, fraction = 0;
        try {
            current = std::stod(line.substr(0, comma), &pos);
            if (pos != comma) throw std::invalid_argument(line);
            fraction = std::stod(line.substr(comma + 1), &pos);
            if (pos != line.size() - comma - 1) {
                throw std::invalid_argument(line);
            }
        } catch (const std::exception&) {
            throw std::domain_error("dataset row is not numeric: " + line);
        }
        ds.currents.push_back(current);
        ds.fractions.push_back(fraction);
    }
    if (!header_seen) throw std::domain_error("dataset has no header row");
    ds.validate();
    return ds;
}

experiment::ExperimentDataset load_dataset(const std::string& path) {
    return dataset_from_csv_text(read_text_file(path));
}

std::string dataset_to_csv_text(const experiment::ExperimentDataset& ds) {
    std::string out = "current_A,flip_fraction\n";
    for (std::size_t i = 0; i < ds.currents.size(); ++i) {
        out += fmt_full(ds.currents[i]);
        out += ',';
        out += fmt_full(ds.fractions[i]);
        out += '\n';
    }
    return out;
}

std::string sweep_csv_text(const experiment::SweepResult& result) {
    std::string out = "current_A,flip_fraction,std_err,k0\n";
    for (const auto& p : result.points) {
        out += fmt_full(p.current);
        out += ',';
        out += fmt_full(p.stats.fraction);
        out += ',';
        out += fmt_full(p.stats.std_err);
        out += ',';
        out += fmt_full(p.k0);
        out += '\n';
    }
    return out;
}

void write_sweep_csv(const std::string& path,
                     const experiment::SweepResult& result) {
    write_text_file(path, sweep_csv_text(result));
}

std::string trace_csv_text(const majorana::FlightSolution& sol) {
    if (!sol.trace) {
        throw std::domain_error("solution carries no trace");
    }
    std::string out = "tau,abs_f,re_f,im_f\n";
    for (const auto& pt : *sol.trace) {
        out += fmt_full(pt.tau);
        out += ',';
        out += fmt_full(std::abs(pt.f));
        out += ',';
        out += fmt_full(pt.f.real());
        out += ',';
        out += fmt_full(pt.f.imag());
        out += '\n';
    }
    return out;
}

void write_trace_csv(const std::string& path,
                     const majorana::FlightSolution& sol) {
    write_text_file(path, trace_csv_text(sol));
}

std::string sweep_svg_text(const experiment::SweepResult& result,
                           const experiment::ExperimentDataset* dataset) {
    const double width = 640, height = 440;
    const double ml = 70, mr = 20, mt = 20, mb = 55;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double xmin = result.points.front().current;
    double xmax = result.points.back().current;
    if (dataset && !dataset->currents.empty()) {
        xmin = std::min(xmin, dataset->currents.front());
        xmax = std::max(xmax, dataset->currents.back());
    }
    double ymax = 0.5;
    for (const auto& p : result.points) {
        ymax = std::max(ymax, p.stats.fraction);
    }
    if (dataset) {
        for (double f : dataset->fractions) ymax = std::max(ymax, f);
    }
    ymax = std::ceil(ymax * 10.0 + 0.5) / 10.0;

    const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
    auto X = [&](double I) {
        return ml + (std::log10(I) - lx0) / (lx1 - lx0) * pw;
    };
    auto Y = [&](double W) { return mt + ph - W / ymax * ph; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // y grid and labels
    for (double w = 0; w <= ymax + 1e-12; w += 0.1) {
        const double y = Y(w);
        s << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw
          << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
        s << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
          << "\" font-size=\"12\" text-anchor=\"end\">" << fmt_short(w)
          << "</text>\n";
    }
    // x ticks at 1-2-5 per decade
    for (int e = -4; e <= 1; ++e) {
        for (double m : {1.0, 2.0, 5.0}) {
            const double I = m * std::pow(10.0, e);
            if (I < xmin * 0.999 || I > xmax * 1.001) continue;
            const double x = X(I);
            s << "<line x1=\"" << x << "\" y1=\"" << mt << "\" x2=\"" << x
              << "\" y2=\"" << mt + ph << "\" stroke=\"#eeeeee\"/>\n";
            s << "<text x=\"" << x << "\" y=\"" << mt + ph + 18
              << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt_short(I)
              << "</text>\n";
        }
    }
    s << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
    s << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
      << "\" font-size=\"14\" text-anchor=\"middle\">wire current (A)"
      << "</text>\n";
    s << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 "
         "18 "
      << mt + ph / 2 << ")\">fraction of spin flip</text>\n";

    // model curve
    s << "<polyline fill=\"none\" stroke=\"#1f4fd8\" stroke-width=\"2\" "
         "points=\"";
    for (const auto& p : result.points) {
        s << X(p.current) << "," << Y(p.stats.fraction) << " ";
    }
    s << "\"/>\n";
    for (const auto& p : result.points) {
        s << "<circle cx=\"" << X(p.current) << "\" cy=\""
          << Y(p.stats.fraction)
          << "\" r=\"3.5\" fill=\"#1f4fd8\"/>\n";
    }
    // dataset points
    if (dataset) {
        for (std::size_t i = 0; i < dataset->currents.size(); ++i) {
            s << "<circle cx=\"" << X(dataset->currents[i]) << "\" cy=\""
              << Y(dataset->fractions[i])
              << "\" r=\"4.5\" fill=\"none\" stroke=\"black\" "
                 "stroke-width=\"1.5\"/>\n";
        }
    }
    // legend
    const double lx = ml + 12, ly = mt + 16;
    s << "<circle cx=\"" << lx << "\" cy=\"" << ly
      << "\" r=\"3.5\" fill=\"#1f4fd8\"/>\n";
    s << "<text x=\"" << lx + 10 << "\" y=\"" << ly + 4
      << "\" font-size=\"12\">simulation ("
      << to_string(result.config_echo.distribution) << ")</text>\n";
    if (dataset) {
        s << "<circle cx=\"" << lx << "\" cy=\"" << ly + 18
          << "\" r=\"4.5\" fill=\"none\" stroke=\"black\" "
             "stroke-width=\"1.5\"/>\n";
        s << "<text x=\"" << lx + 10 << "\" y=\"" << ly + 22
          << "\" font-size=\"12\">experiment</text>\n";
    }
    if (result.r_squared) {
        s << "<text x=\"" << ml + pw - 8 << "\" y=\"" << mt + 16
          << "\" font-size=\"12\" text-anchor=\"end\">R&#178; = "
          << fmt_short(*result.r_squared) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

void write_sweep_svg(const std::string& path,
                     const experiment::SweepResult& result,
                     const experiment::ExperimentDataset* dataset) {
    write_text_file(path, sweep_svg_text(result, dataset));
}

double parse_angle(const std::string& token) {
    std::string s;
    for (char c : token) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw std::domain_error("empty angle token");

    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string::npos) {
        std::size_t pos = 0;
        double value = 0;
        try {
            value = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw std::domain_error("bad angle token: " + token);
        }
        if (pos != s.size()) {
            throw std::domain_error("bad angle token: " + token);
        }
        return value;
    }

    double coef = 1.0;
    const std::string prefix = s.substr(0, pi_pos);
    if (prefix == "-") {
        coef = -1.0;
    } else if (!prefix.empty()) {
        std::size_t pos = 0;
        try {
            coef = std::stod(prefix, &pos);
        } catch (const std::exception&) {
            throw std::domain_error("bad angle token: " + token);
        }
        if (pos != prefix.size()) {
            throw std::domain_error("bad angle token: " + token);
        }
    }

    double denom = 1.0;
    const std::string suffix = s.substr(pi_pos + 2);
    if (!suffix.empty()) {
        if (suffix[0] != '/') {
            throw std::domain_error("bad angle token: " + token);
        }
        std::size_t pos = 0;
        try {
            denom = std::stod(suffix.substr(1), &pos);
        } catch (const std::exception&) {
            throw std::domain_error("bad angle token: " + token);
        }
        if (pos != suffix.size() - 1 || denom == 0.0) {
            throw std::domain_error("bad angle token: " + token);
        }
    }
    return coef * std::numbers::pi / denom;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace cqd::io
