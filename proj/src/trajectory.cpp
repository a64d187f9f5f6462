#include "wgqed/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace wgqed {

std::size_t Trajectory::index_at(double t) const {
    const auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end()) return times.size() - 1;
    std::size_t i = static_cast<std::size_t>(it - times.begin());
    if (i > 0 && t - times[i - 1] < times[i] - t) --i;
    return i;
}

void Trajectory::write_csv(const std::string& path, std::optional<double> ref_rate) const {
    std::ofstream out(path);
    if (!out) throw NumericsError("cannot open output file: " + path);
    out << "t,re_eps,im_eps,pop";
    if (ref_rate) out << ",ref_exp,deviation";
    out << "\n";
    char buf[256];
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double pop = population(i);
        if (ref_rate) {
            const double ref = std::exp(-(*ref_rate) * times[i]);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          times[i], eps[i].real(), eps[i].imag(), pop, ref, pop - ref);
        } else {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n",
                          times[i], eps[i].real(), eps[i].imag(), pop);
        }
        out << buf;
    }
}

void Trajectory::write_json(const std::string& path, bool include_bins) const {
    nlohmann::json j;
    j["solver_tag"] = solver_tag;
    j["config_hash"] = config_hash;
    j["t_max_valid"] = t_max_valid;
    j["warnings"] = warnings;
    j["t"] = times;
    std::vector<double> re, im, pop;
    re.reserve(eps.size());
    im.reserve(eps.size());
    pop.reserve(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
        re.push_back(eps[i].real());
        im.push_back(eps[i].imag());
        pop.push_back(population(i));
    }
    j["re_eps"] = re;
    j["im_eps"] = im;
    j["pop"] = pop;
    if (include_bins && !snapshots.empty()) {
        const auto& last = snapshots.back();
        std::vector<double> fre, fim;
        for (const auto& c : last.field) {
            fre.push_back(c.real());
            fim.push_back(c.imag());
        }
        j["bins"] = {{"t", last.t}, {"re", fre}, {"im", fim}};
    }
    std::ofstream out(path);
    if (!out) throw NumericsError("cannot open output file: " + path);
    out << j.dump(2) << "\n";
}

double max_population_deviation(const Trajectory& a, const Trajectory& b, double t_cap) {
    double worst = 0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        const double t = a.times[i];
        if (t > t_cap) break;
        const std::size_t j = b.index_at(t);
        worst = std::max(worst, std::abs(a.population(i) - b.population(j)));
    }
    return worst;
}

}  // namespace wgqed
