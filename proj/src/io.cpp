// io.cpp: parameter documents and deterministic CSV / JSON output

#include "tisbm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tisbm/errors.hpp"

namespace tisbm::io {

using nlohmann::json;

namespace {

double number_field(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(where + ": missing field '" + key + "'");
    }
    if (!it->is_number()) {
        throw ParseError(where + ": field '" + key + "' must be a number");
    }
    return it->get<double>();
}

std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void dump_into(std::string& out, const json& j) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {  // std::map: keys already sorted
                if (!first) out += ',';
                first = false;
                out += json(key).dump();
                out += ':';
                dump_into(out, value);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& value : j) {
                if (!first) out += ',';
                first = false;
                dump_into(out, value);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_double(v) : "null";
            break;
        }
        default:
            out += j.dump();
    }
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    out += '"';
    return out;
}

}  // namespace

TisbmParams parse_params(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed JSON at " + line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("parameter document must be a JSON object");
    }

    TisbmParams p;
    p.omega1 = number_field(doc, "omega1", "params");
    p.omega2 = number_field(doc, "omega2", "params");
    p.gamma_x = number_field(doc, "gamma_x", "params");
    p.gamma_y = number_field(doc, "gamma_y", "params");
    p.gamma_z = number_field(doc, "gamma_z", "params");

    const auto bit = doc.find("bath");
    if (bit == doc.end() || !bit->is_object()) {
        throw ParseError("params: missing or non-object field 'bath'");
    }
    const auto& bath = *bit;
    const auto tit = bath.find("type");
    if (tit == bath.end() || !tit->is_string()) {
        throw ParseError("bath: missing string field 'type'");
    }
    const auto type = tit->get<std::string>();
    if (type == "discrete") {
        DiscreteBath d;
        const auto mit = bath.find("modes");
        if (mit == bath.end() || !mit->is_array()) {
            throw ParseError("bath: field 'modes' must be an array of [omega, c1, c2]");
        }
        for (std::size_t i = 0; i < mit->size(); ++i) {
            const auto& m = (*mit)[i];
            const std::string where = "bath.modes[" + std::to_string(i) + "]";
            if (!m.is_array() || m.size() != 3 || !m[0].is_number() || !m[1].is_number() || !m[2].is_number()) {
                throw ParseError(where + ": expected [omega, c1, c2] numbers");
            }
            d.modes.push_back({m[0].get<double>(), m[1].get<double>(), m[2].get<double>()});
        }
        p.bath = std::move(d);
    } else if (type == "continuum") {
        ContinuumBath c;
        c.alpha_a = number_field(bath, "alpha_a", "bath");
        c.alpha_b = number_field(bath, "alpha_b", "bath");
        c.s = number_field(bath, "s", "bath");
        c.omega_c = number_field(bath, "omega_c", "bath");
        p.bath = c;
    } else {
        throw ParseError("bath: field 'type' must be \"discrete\" or \"continuum\" (got \"" + type + "\")");
    }
    validate(p);
    return p;
}

TisbmParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open parameter file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_params(ss.str());
}

json params_to_json(const TisbmParams& p) {
    json j = {{"omega1", p.omega1}, {"omega2", p.omega2}, {"gamma_x", p.gamma_x},
              {"gamma_y", p.gamma_y}, {"gamma_z", p.gamma_z}};
    if (const auto* d = std::get_if<DiscreteBath>(&p.bath)) {
        json modes = json::array();
        for (const auto& m : d->modes) modes.push_back({m.omega, m.c1, m.c2});
        j["bath"] = {{"type", "discrete"}, {"modes", modes}};
    } else {
        const auto& c = std::get<ContinuumBath>(p.bath);
        j["bath"] = {{"type", "continuum"}, {"alpha_a", c.alpha_a}, {"alpha_b", c.alpha_b},
                     {"s", c.s}, {"omega_c", c.omega_c}};
    }
    return j;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string dump_json(const json& j) {
    std::string out;
    dump_into(out, j);
    return out;
}

json sector_to_json(const SectorParams& s) {
    json j = {{"label", to_string(s.label)},
              {"omega_eff", s.omega_eff},
              {"gamma_eff", s.gamma_eff},
              {"gamma_z_shift", s.gamma_z_shift},
              {"omega_c", s.omega_c}};
    if (s.alpha_eff) {
        j["alpha_eff"] = *s.alpha_eff;
    } else {
        j["couplings_eff"] = s.couplings_eff;
        j["mode_omegas"] = s.mode_omegas;
    }
    return j;
}

void write_trace_csv(std::ostream& os, const MagnetizationTrace& tr) {
    os << kTraceHeader << '\n';
    const char* regime = tr.regime ? to_string(*tr.regime) : "";
    for (std::size_t i = 0; i < tr.size(); ++i) {
        os << format_double(tr.times[i]) << ',' << format_double(tr.sigma1z[i]) << ','
           << format_double(tr.sigma2z[i]) << ',' << format_double(tr.sigma_total[i]) << ',' << regime << ','
           << tr.formula_id << '\n';
    }
}

void write_phase_row(std::ostream& os, const PhasePoint& pt) {
    os << format_double(pt.alpha_a) << ',' << format_double(pt.alpha_b) << ',' << format_double(pt.k) << ','
       << format_double(pt.lambda_gap) << ',' << to_string(pt.gs_sector) << ',' << format_double(pt.order_parameter)
       << ',' << pt.iter_a << ',' << pt.iter_b << ",\n";
}

void write_phase_error_row(std::ostream& os, double alpha_a, double alpha_b, double k, const std::string& error) {
    os << format_double(alpha_a) << ',' << format_double(alpha_b) << ',' << format_double(k) << ",,,,,,"
       << csv_quote(error) << '\n';
}

json transition_to_json(const TransitionReport& rep) {
    json j;
    j["transition"] = to_string(rep.kind);
    if (rep.alpha_c) {
        j["alpha_c"] = *rep.alpha_c;
        j["bracket"] = {rep.bracket_lo, rep.bracket_hi};
    } else {
        j["alpha_c"] = nullptr;
        j["bracket"] = nullptr;
    }
    if (rep.kind == TransitionKind::FirstOrder) {
        j["order_parameter_below"] = rep.order_parameter_below;
        j["order_parameter_above"] = rep.order_parameter_above;
    }
    if (!rep.localization_states.empty()) {
        j["localization_states"] = rep.localization_states;
    }
    return j;
}

void write_matrix_csv(std::ostream& os, const oracle::Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) os << ',';
            os << format_double(m(r, c));
        }
        os << '\n';
    }
}

}  // namespace tisbm::io
