#include "wgqed/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wgqed {

int SystemConfig::spacing() const {
    if (coupling_points.size() < 2) return 0;
    return coupling_points[1].x - coupling_points[0].x;
}

void SystemConfig::validate() const {
    if (J <= 0) throw ConfigError("J must be positive");
    if (N < 2) throw ConfigError("N must be at least 2");
    if (coupling_points.empty()) throw ConfigError("at least one coupling point required");
    for (const auto& cp : coupling_points) {
        if (cp.x < 0 || cp.x >= N)
            throw ConfigError("coupling point x=" + std::to_string(cp.x) +
                              " outside [0, " + std::to_string(N) + ")");
    }
    const int d = spacing();
    if (coupling_points.size() >= 2 && d < 1)
        throw ConfigError("coupling points must be strictly increasing");
    for (std::size_t j = 1; j < coupling_points.size(); ++j) {
        if (coupling_points[j].x - coupling_points[j - 1].x != d)
            throw ConfigError("coupling points must be equally spaced");
    }
}

std::string SystemConfig::canonical_string() const {
    std::ostringstream os;
    os.precision(17);
    os << "J=" << J << ";g=" << g << ";omega_a=" << omega_a << ";N=" << N
       << ";boundary=" << (boundary == Boundary::Ring ? "ring" : "open-chain") << ";cp=";
    for (const auto& cp : coupling_points) os << "(" << cp.x << "," << cp.phi << ")";
    return os.str();
}

std::string SystemConfig::hash() const {
    // FNV-1a 64
    const std::string s = canonical_string();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

DerivedConstants DerivedConstants::from(const SystemConfig& cfg) {
    DerivedConstants dc{};
    dc.k_a = std::acos(-cfg.omega_a / (2.0 * cfg.J));
    dc.v = 2.0 * cfg.J * std::sin(dc.k_a);
    dc.Gamma = 4.0 * cfg.g * cfg.g / dc.v;
    const int d = cfg.spacing();
    dc.t_d = d / dc.v;
    dc.phi_wg = dc.k_a * d;
    dc.phi_c = cfg.coupling_points.size() >= 2
                   ? cfg.coupling_points[1].phi - cfg.coupling_points[0].phi
                   : 0.0;
    return dc;
}

SystemConfig gauge_fixed(const SystemConfig& cfg) {
    SystemConfig out = cfg;
    if (out.coupling_points.empty()) return out;
    const double phi1 = out.coupling_points[0].phi;
    for (auto& cp : out.coupling_points) cp.phi -= phi1;
    return out;
}

SystemConfig make_two_leg_config(int d, double phi_c, int N) {
    return make_multi_leg_config(d, {0.0, phi_c}, N);
}

SystemConfig make_multi_leg_config(int d, const std::vector<double>& phases, int N) {
    SystemConfig cfg;
    cfg.N = N;
    cfg.coupling_points.clear();
    const int x1 = N / 2 - static_cast<int>(phases.size() - 1) * d / 2;
    for (std::size_t j = 0; j < phases.size(); ++j)
        cfg.coupling_points.push_back({x1 + static_cast<int>(j) * d, phases[j]});
    cfg.validate();
    return cfg;
}

double validity_window(const SystemConfig& cfg) {
    const auto dc = DerivedConstants::from(cfg);
    const int span = cfg.coupling_points.back().x - cfg.coupling_points.front().x;
    return 0.9 * (cfg.N - span) / dc.v;
}

namespace {

double parse_number(const std::string& t, const std::string& original) {
    try {
        std::size_t used = 0;
        const double val = std::stod(t, &used);
        if (used != t.size()) throw ConfigError("bad phase: " + original);
        return val;
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad phase: " + original);
    } catch (const std::out_of_range&) {
        throw ConfigError("bad phase: " + original);
    }
}

}  // namespace

double parse_phase(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ConfigError("empty phase string");

    const auto pos = t.find("pi");
    if (pos == std::string::npos) return parse_number(t, s);

    // forms: [p][*]pi[/q] with optional sign on p
    double p = 1.0;
    std::string head = t.substr(0, pos);
    if (!head.empty() && head.back() == '*') head.pop_back();
    if (head == "-")
        p = -1.0;
    else if (!head.empty() && head != "+")
        p = parse_number(head, s);

    double q = 1.0;
    std::string tail = t.substr(pos + 2);
    if (!tail.empty()) {
        if (tail[0] != '/') throw ConfigError("bad phase: " + s);
        q = parse_number(tail.substr(1), s);
        if (q == 0) throw ConfigError("bad phase: " + s);
    }
    return p * pi / q;
}

std::string format_phase(double phi) {
    for (int q = 1; q <= 8; ++q) {
        const double p = phi * q / pi;
        const double pr = std::round(p);
        if (std::abs(p - pr) * pi / q <= 1e-9) {
            const long ip = static_cast<long>(pr);
            if (ip == 0) return "0";
            std::ostringstream os;
            if (ip == -1)
                os << "-";
            else if (ip != 1)
                os << ip << "*";
            os << "pi";
            if (q != 1) os << "/" << q;
            return os.str();
        }
    }
    std::ostringstream os;
    os.precision(12);
    os << phi;
    return os.str();
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error: " + std::string(e.what()));
    }

    SystemConfig cfg;
    cfg.coupling_points.clear();
    if (j.contains("J")) cfg.J = j["J"].get<double>();
    if (j.contains("g")) cfg.g = j["g"].get<double>();
    if (j.contains("omega_a")) cfg.omega_a = j["omega_a"].get<double>();
    if (j.contains("N")) cfg.N = j["N"].get<int>();
    if (j.contains("boundary")) {
        const std::string b = j["boundary"].get<std::string>();
        if (b == "ring")
            cfg.boundary = Boundary::Ring;
        else if (b == "open-chain")
            cfg.boundary = Boundary::OpenChain;
        else
            throw ConfigError("boundary must be 'ring' or 'open-chain'");
    }
    if (!j.contains("coupling_points"))
        throw ConfigError("config missing coupling_points");
    for (const auto& item : j["coupling_points"]) {
        CouplingPoint cp;
        cp.x = item.at("x").get<int>();
        const auto& phi = item.at("phi");
        cp.phi = phi.is_string() ? parse_phase(phi.get<std::string>()) : phi.get<double>();
        cfg.coupling_points.push_back(cp);
    }
    cfg.validate();
    return cfg;
}

}  // namespace wgqed
