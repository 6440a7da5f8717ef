#include "fiberphase/io.hpp"

#include <array>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fiberphase {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& field, const std::string& where) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        throw config_error(where + ": not a number: '" + field + "'");
    }
    if (trim(field.substr(pos)) != "")
        throw config_error(where + ": trailing characters after number: '" + field + "'");
    return v;
}

} // namespace

SampledPath read_sampled_path(std::istream& in, const std::string& origin) {
    SampledPath path;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = origin + ":" + std::to_string(lineno);
        std::array<std::string, 4> fields;
        std::size_t start = 0;
        for (int f = 0; f < 4; ++f) {
            const auto comma = line.find(',', start);
            if (f < 3) {
                if (comma == std::string::npos)
                    throw config_error(where + ": expected 't,x,y,z'");
                fields[f] = line.substr(start, comma - start);
                start = comma + 1;
            } else {
                if (comma != std::string::npos)
                    throw config_error(where + ": too many fields, expected 't,x,y,z'");
                fields[f] = line.substr(start);
            }
        }
        PathPoint p;
        p.t = parse_number(fields[0], where);
        p.position = {parse_number(fields[1], where), parse_number(fields[2], where),
                      parse_number(fields[3], where)};
        if (!path.points.empty() && !(p.t > path.points.back().t))
            throw config_error(where + ": t must be strictly increasing");
        path.points.push_back(p);
    }
    path.validate();
    return path;
}

SampledPath read_sampled_path_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw config_error("cannot open path file: " + file.string());
    return read_sampled_path(in, file.string());
}

namespace {

void kv(std::string& out, const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
}

void kv(std::string& out, const std::string& key, double value) {
    kv(out, key, format_double(value));
}

void kv_int(std::string& out, const std::string& key, long long value) {
    kv(out, key, std::to_string(value));
}

void kv_bool(std::string& out, const std::string& key, bool value) {
    kv(out, key, value ? std::string("true") : std::string("false"));
}

void mode_block(std::string& out, const char* name, const ModePhase& m) {
    const std::string p = std::string("mode.") + name + ".";
    kv_int(out, p + "sigma", m.sigma);
    kv_int(out, p + "occupation", m.occupation);
    kv(out, p + "phase_quantal_rad", m.quantal_rad);
    kv(out, p + "phase_vacuum_rad", m.vacuum_rad);
    kv(out, p + "phase_total_rad", m.total_rad);
}

} // namespace

std::string phase_report_text(const PhaseReport& report) {
    std::string out;
    kv_int(out, "schema_version", 1);
    kv(out, "record", "phase_report");
    kv(out, "kernel.value_rad", report.kernel.value_rad);
    kv_bool(out, "kernel.closed", report.kernel.cyclic_solid_angle_sr.has_value());
    if (report.kernel.cyclic_solid_angle_sr)
        kv(out, "kernel.cyclic_solid_angle_sr", *report.kernel.cyclic_solid_angle_sr);
    mode_block(out, "R", report.right);
    mode_block(out, "L", report.left);
    kv(out, "multiphoton_phase_rad", report.multiphoton_rad);
    kv(out, "vacuum_sum_rad", report.vacuum_sum_rad);
    return out;
}

std::string phase_report_csv(const PhaseReport& report) {
    std::string out = "sigma,n,quantal,vacuum,total\n";
    for (const ModePhase* m : {&report.right, &report.left}) {
        out += std::to_string(m->sigma) + "," + std::to_string(m->occupation) + "," +
               format_double(m->quantal_rad) + "," + format_double(m->vacuum_rad) + "," +
               format_double(m->total_rad) + "\n";
    }
    return out;
}

std::string evolution_text(const EvolutionResult& result, int sigma) {
    std::string out;
    kv_int(out, "schema_version", 1);
    kv(out, "record", "evolution_result");
    kv_int(out, "sigma", sigma);
    kv_bool(out, "noncyclic", result.noncyclic);
    kv(out, "total_phase_rad", result.total_phase_rad);
    kv(out, "dynamical_phase_rad", result.dynamical_phase_rad);
    kv(out, "geometric_phase_rad", result.geometric_phase_rad);
    kv(out, "max_residual", result.max_residual);
    kv(out, "norm_drift", result.norm_drift);
    kv(out, "helicity_drift", result.helicity_drift);
    kv(out, "max_longitudinal", result.max_longitudinal);
    for (int i = 0; i < 3; ++i) {
        const std::string p = "final_state." + std::to_string(i) + ".";
        kv(out, p + "re", result.final_state(i).real());
        kv(out, p + "im", result.final_state(i).imag());
    }
    return out;
}

std::string evolution_trace_csv(const EvolutionResult& result) {
    std::string out = "t,re_plus,im_plus,re_zero,im_zero,re_minus,im_minus,h_expect\n";
    for (const TraceSample& s : result.trace) {
        out += format_double(s.t);
        for (int i = 0; i < 3; ++i) {
            out += "," + format_double(s.amplitudes(i).real()) + "," +
                   format_double(s.amplitudes(i).imag());
        }
        out += "," + format_double(s.h_expect) + "\n";
    }
    return out;
}

namespace {

void dispersion_block(std::string& out, const char* name, const ModeDispersion& d) {
    const std::string p = std::string("mode.") + name + ".";
    kv_int(out, p + "sigma", d.sigma);
    kv(out, p + "n_squared", d.n_squared);
    kv(out, p + "k_prop_re_rad_m", d.k_prop_rad_m.real());
    kv(out, p + "k_prop_im_rad_m", d.k_prop_rad_m.imag());
    kv(out, p + "verdict", to_string(d.verdict));
    kv(out, p + "attenuation_length_m", d.attenuation_length_m);
}

} // namespace

namespace {

void classification_body(std::string& out, const ModeClassification& cls) {
    kv(out, "omega_rad_s", cls.omega_rad_s);
    kv(out, "cutoff_eps", cls.cutoff_eps);
    dispersion_block(out, "R", cls.right);
    dispersion_block(out, "L", cls.left);
}

} // namespace

std::string classification_text(const ModeClassification& cls) {
    std::string out;
    kv_int(out, "schema_version", 1);
    kv(out, "record", "mode_classification");
    classification_body(out, cls);
    return out;
}

std::string filtered_vacuum_text(const FilteredVacuumPhase& filtered) {
    std::string out;
    kv_int(out, "schema_version", 1);
    kv(out, "record", "filtered_vacuum_phase");
    kv(out, "contribution_right_rad", filtered.contribution_right_rad);
    kv(out, "contribution_left_rad", filtered.contribution_left_rad);
    kv(out, "net_vacuum_phase_rad", filtered.net_rad);
    kv_bool(out, "observable", filtered.observable);
    kv(out, "note", filtered.note);
    classification_body(out, filtered.modes);
    return out;
}

std::string sweep_csv(const std::vector<SweepCell>& cells, const SweepGrid& grid) {
    std::string out = "eps1,eps2,mu1,mu2,n_plus_sq,n_minus_sq,verdict_R,verdict_L\n";
    for (const SweepCell& c : cells) {
        out += format_double(c.eps1) + "," + format_double(c.eps2) + "," +
               format_double(grid.mu1) + "," + format_double(grid.mu2) + "," +
               format_double(c.n_plus_sq) + "," + format_double(c.n_minus_sq) + "," +
               to_string(c.right) + "," + to_string(c.left) + "\n";
    }
    return out;
}

std::string operator_csv(const Mat& op) {
    std::string out = "row,col,re,im\n";
    for (Eigen::Index i = 0; i < op.rows(); ++i)
        for (Eigen::Index j = 0; j < op.cols(); ++j)
            out += std::to_string(i) + "," + std::to_string(j) + "," +
                   format_double(op(i, j).real()) + "," + format_double(op(i, j).imag()) +
                   "\n";
    return out;
}

void atomic_write(const std::filesystem::path& file, const std::string& content) {
    namespace fs = std::filesystem;
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    const fs::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw config_error("cannot write " + tmp.string() + ": " +
                                     std::strerror(errno));
        out << content;
        out.flush();
        if (!out) throw config_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, file);
}

} // namespace fiberphase
