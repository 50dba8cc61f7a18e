#include "blab/cli_support.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "blab/kernels.hpp"

namespace blab::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_num(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (...) {
        throw std::invalid_argument("bad numeric value for '" + key + "': " + v);
    }
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_num(item, key));
    }
    if (out.empty()) throw std::invalid_argument("empty list for '" + key + "'");
    return out;
}

// "re,im;re,im;..."
std::vector<HalfPlanePoint> parse_points(const std::string& v, const std::string& key) {
    std::vector<HalfPlanePoint> out;
    std::stringstream ss(v);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
        pair = trim(pair);
        if (pair.empty()) continue;
        const auto comma = pair.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("bad point for '" + key + "': " + pair);
        const double re = parse_num(trim(pair.substr(0, comma)), key);
        const double im = parse_num(trim(pair.substr(comma + 1)), key);
        out.push_back(HalfPlanePoint(re, im));
    }
    if (out.empty()) throw std::invalid_argument("empty point list for '" + key + "'");
    return out;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line without '=': " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_overrides(const std::map<std::string, std::string>& kv, SweepSpec& sweep,
                     QuadConfig& quad, double& threshold,
                     unsigned long long& seed) {
    for (const auto& [key, val] : kv) {
        if (key == "quad.rel_tol")
            quad.rel_tol = parse_num(val, key);
        else if (key == "quad.abs_tol")
            quad.abs_tol = parse_num(val, key);
        else if (key == "quad.max_depth")
            quad.max_depth = int(parse_num(val, key));
        else if (key == "quad.truncation_radius")
            quad.truncation_radius = parse_num(val, key);
        else if (key == "quad.boundary_floor")
            quad.boundary_floor = parse_num(val, key);
        else if (key == "quad.tail_decay")
            quad.tail_decay = parse_num(val, key);
        else if (key == "quad.tail_log_power")
            quad.tail_log_power = parse_num(val, key);
        else if (key == "quad.max_cells")
            quad.max_cells = long(parse_num(val, key));
        else if (key == "sweep.lambda_grid")
            sweep.lambda_grid = parse_list(val, key);
        else if (key == "sweep.abs_zeta_grid")
            sweep.abs_zeta_grid = parse_list(val, key);
        else if (key == "sweep.k_list")
            sweep.k_list = parse_list(val, key);
        else if (key == "sweep.l_list")
            sweep.l_list = parse_list(val, key);
        else if (key == "sweep.j_list")
            sweep.j_list = parse_list(val, key);
        else if (key == "sweep.radius_grid")
            sweep.radius_grid = parse_list(val, key);
        else if (key == "sweep.w_grid")
            sweep.w_grid = parse_points(val, key);
        else if (key == "sweep.samples")
            sweep.samples = long(parse_num(val, key));
        else if (key == "seed")
            seed = (unsigned long long)(parse_num(val, key));
        else if (key == "report.threshold")
            threshold = parse_num(val, key);
        else
            throw std::invalid_argument("unknown config key: " + key);
    }
    quad.validate();
    if (!(threshold > 1.0))
        throw std::invalid_argument("report.threshold must exceed 1");
    if (sweep.samples < 10 || sweep.samples > 100000000)
        throw std::invalid_argument("sweep.samples out of range");
}

bool load_calibration(const std::string& path, Calibration& cal) {
    std::ifstream in(path);
    if (!in) return false;
    std::stringstream ss;
    ss << in.rdbuf();
    const auto kv = parse_config_text(ss.str());
    bool any = false;
    for (const auto& [key, val] : kv) {
        if (key.rfind("c_alpha.", 0) != 0) continue;
        const auto rest = key.substr(8);
        const auto dot = rest.rfind('.');
        if (dot == std::string::npos) continue;
        const double alpha = parse_num(rest.substr(0, dot), key);
        const std::string comp = rest.substr(dot + 1);
        const double x = parse_num(val, key);
        complexd* target = nullptr;
        if (alpha == 0.0) target = &cal.c0;
        else if (alpha == 1.0) target = &cal.c1;
        if (!target) continue;
        if (comp == "re")
            *target = complexd(x, target->imag());
        else if (comp == "im")
            *target = complexd(target->real(), x);
        any = true;
    }
    return any;
}

std::string calibration_text(const std::map<double, complexd>& entries) {
    std::ostringstream os;
    for (const auto& [alpha, c] : entries) {
        os << "c_alpha." << format_double(alpha) << ".re=" << format_double(c.real())
           << "\n";
        os << "c_alpha." << format_double(alpha) << ".im=" << format_double(c.imag())
           << "\n";
    }
    return os.str();
}

int run_calibrate(const std::vector<double>& alphas, const std::string& path,
                  const QuadConfig& cfg, std::ostream& log) {
    std::map<double, complexd> entries;
    // keep existing entries for other alphas
    {
        std::ifstream in(path);
        if (in) {
            std::stringstream ss;
            ss << in.rdbuf();
            try {
                for (const auto& [key, val] : parse_config_text(ss.str())) {
                    if (key.rfind("c_alpha.", 0) != 0) continue;
                    const auto rest = key.substr(8);
                    const auto dot = rest.rfind('.');
                    if (dot == std::string::npos) continue;
                    const double alpha = parse_num(rest.substr(0, dot), key);
                    const double x = parse_num(val, key);
                    auto& c = entries[alpha];
                    if (rest.substr(dot + 1) == "re")
                        c = complexd(x, c.imag());
                    else
                        c = complexd(c.real(), x);
                }
            } catch (...) {
                entries.clear();
            }
        }
    }
    try {
        for (double a : alphas) {
            const complexd c = calibrate_c_alpha(a, cfg);
            entries[a] = c;
            log << "c_alpha(" << format_double(a) << ") = (" << format_double(c.real())
                << ", " << format_double(c.imag()) << ")\n";
        }
    } catch (const CalibrationError& e) {
        log << "calibration failed: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        log << "calibration error: " << e.what() << "\n";
        return 2;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        log << "cannot write calibration file: " << path << "\n";
        return 2;
    }
    out << calibration_text(entries);
    return 0;
}

std::string list_text() {
    std::ostringstream os;
    for (const auto& e : experiment_registry())
        os << e.id << " — " << e.description << "\n";
    return os.str();
}

RunOutcome run_experiment(const RunConfig& rc, std::ostream& log) {
    RunOutcome out;
    const Experiment* exp = find_experiment(rc.experiment_id);
    if (!exp) {
        log << "unknown experiment id: " << rc.experiment_id << "\n";
        out.exit_code = 2;
        return out;
    }

    SweepSpec sweep = exp->default_sweep;
    QuadConfig quad = exp->default_quad;
    double threshold = -1.0;  // <0: keep the experiment's own default
    unsigned long long seed = sweep.seed;
    try {
        double thr = 1e9;
        bool thr_set = rc.overrides.count("report.threshold") > 0;
        apply_overrides(rc.overrides, sweep, quad, thr, seed);
        if (thr_set) threshold = thr;
    } catch (const std::exception& e) {
        log << "configuration error: " << e.what() << "\n";
        out.exit_code = 2;
        return out;
    }
    if (rc.seed_set) seed = rc.seed;
    sweep.seed = seed;

    OpConfig op;
    op.quad = quad;
    if (!load_calibration(rc.calibration_path, op.cal)) {
        // no calibration file: recover the constants in-process
        try {
            const QuadConfig cc = QuadConfig{}.with_tol(1e-6, 1e-12);
            op.cal.c0 = calibrate_c_alpha(0.0, cc);
            op.cal.c1 = calibrate_c_alpha(1.0, cc);
        } catch (const std::exception& e) {
            log << "calibration error: " << e.what() << "\n";
            out.exit_code = 2;
            return out;
        }
    }

    try {
        out.report = exp->run(sweep, op);
    } catch (const std::invalid_argument& e) {
        log << "configuration error: " << e.what() << "\n";
        out.exit_code = 2;
        return out;
    } catch (const std::exception& e) {
        log << "experiment error: " << e.what() << "\n";
        out.exit_code = 2;
        return out;
    }
    if (threshold > 0.0) {
        out.report.threshold = threshold;
        out.report.finalize();
    }
    out.table = out.report.to_csv(rc.format == "tsv" ? '\t' : ',');
    out.summary = out.report.summary();
    out.exit_code = out.report.verdict ? 0 : 1;
    return out;
}

}  // namespace blab::cli
