#include "emit.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace shockprof::cli {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string fmt6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

const char* region_color(RegionLabel r) {
    switch (r) {
    case RegionLabel::NodeBelow: return "#4c72b0";
    case RegionLabel::Focus: return "#dd8452";
    case RegionLabel::NodeAbove: return "#55a868";
    case RegionLabel::Separatrix1:
    case RegionLabel::Separatrix2: return "#000000";
    }
    return "#ffffff";
}

void write_polyline_csv(std::ostream& os, const char* name, const Polyline& line) {
    os << "# separatrix " << name << '\n' << "eps,q_tilde\n";
    for (const auto& [e, q] : line) os << fmt17(e) << ',' << fmt17(q) << '\n';
}

} // namespace

void write_scan_csv(std::ostream& os, const ScanConfig& cfg, const std::vector<ScanRecord>& records,
                    const Separatrices& curves) {
    os << "eps,q_tilde,region,v_plus_sq,p_value";
    if (cfg.shoot) os << ",verdict,oscillatory";
    os << '\n';
    for (const auto& r : records) {
        os << fmt17(r.eps) << ',' << fmt17(r.q_tilde) << ',' << to_string(r.region) << ','
           << fmt17(r.v_plus_sq) << ',' << fmt17(r.p_value);
        if (cfg.shoot) {
            os << ',' << (r.verdict ? to_string(*r.verdict) : "") << ','
               << (r.oscillatory ? (*r.oscillatory ? "true" : "false") : "");
        }
        os << '\n';
    }
    write_polyline_csv(os, "q1", curves.q1);
    write_polyline_csv(os, "q2", curves.q2);
}

void write_scan_json(std::ostream& os, const ScanConfig& cfg, const std::vector<ScanRecord>& records,
                     const Separatrices& curves) {
    using nlohmann::json;
    auto axis = [](const Axis& a) { return json{{"lo", a.lo}, {"hi", a.hi}, {"count", a.count}}; };
    json doc;
    doc["schema"] = "shockprof.scan";
    doc["schema_version"] = 1;
    doc["meta"] = {{"eps", axis(cfg.eps)}, {"q_tilde", axis(cfg.q)}, {"shoot", cfg.shoot},
                   {"epsilon_hat", epsilon_hat()}};
    json recs = json::array();
    for (const auto& r : records) {
        json j = {{"eps", r.eps}, {"q_tilde", r.q_tilde}, {"region", to_string(r.region)},
                  {"v_plus_sq", r.v_plus_sq}, {"p_value", r.p_value}};
        if (r.verdict) j["verdict"] = to_string(*r.verdict);
        if (r.oscillatory) j["oscillatory"] = *r.oscillatory;
        recs.push_back(std::move(j));
    }
    doc["records"] = std::move(recs);
    auto line = [](const Polyline& p) {
        json a = json::array();
        for (const auto& [e, q] : p) a.push_back({e, q});
        return a;
    };
    doc["separatrices"] = {{"q1", line(curves.q1)}, {"q2", line(curves.q2)}};
    os << doc.dump(1) << '\n';
}

void write_scan_svg(std::ostream& os, const ScanConfig& cfg, const std::vector<ScanRecord>& records,
                    const Separatrices& curves) {
    constexpr double width = 640, height = 480, left = 60, right = 20, top = 20, bottom = 50;
    const double pw = width - left - right, ph = height - top - bottom;
    // Plot window: eps in [0, 1], q_tilde in [3/4, 1].
    auto sx = [&](double eps) { return left + pw * eps; };
    auto sy = [&](double q) { return top + ph * (1.0 - (q - 0.75) / 0.25); };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n<g id=\"cells\">\n";

    const double cw = pw * (cfg.eps.hi - cfg.eps.lo) / static_cast<double>(cfg.eps.count - 1);
    const double ch = ph * (cfg.q.hi - cfg.q.lo) / 0.25 / static_cast<double>(cfg.q.count - 1);
    for (const auto& r : records) {
        os << "<rect x=\"" << fmt6(sx(r.eps) - 0.5 * cw) << "\" y=\"" << fmt6(sy(r.q_tilde) - 0.5 * ch)
           << "\" width=\"" << fmt6(cw) << "\" height=\"" << fmt6(ch) << "\" fill=\"" << region_color(r.region)
           << "\" data-region=\"" << to_string(r.region) << "\"/>\n";
    }
    os << "</g>\n";

    auto polyline = [&](const char* id, const Polyline& p, const char* color) {
        os << "<polyline id=\"" << id << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < p.size(); ++i) {
            os << (i ? " " : "") << fmt6(sx(p[i].first)) << ',' << fmt6(sy(p[i].second));
        }
        os << "\"/>\n";
    };
    polyline("separatrix-q1", curves.q1, "#c00000");
    polyline("separatrix-q2", curves.q2, "#6a0dad");

    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"#000000\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double e = 0.25 * i, q = 0.75 + 0.0625 * i;
        os << "<text x=\"" << fmt6(sx(e)) << "\" y=\"" << fmt6(top + ph + 18)
           << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt6(e) << "</text>\n";
        os << "<text x=\"" << fmt6(left - 6) << "\" y=\"" << fmt6(sy(q) + 4)
           << "\" font-size=\"12\" text-anchor=\"end\">" << fmt6(q) << "</text>\n";
    }
    os << "<text x=\"" << fmt6(left + 0.5 * pw) << "\" y=\"" << fmt6(height - 8)
       << "\" font-size=\"14\" text-anchor=\"middle\">epsilon</text>\n"
       << "<text x=\"14\" y=\"" << fmt6(top + 0.5 * ph) << "\" font-size=\"14\" text-anchor=\"middle\""
       << " transform=\"rotate(-90 14 " << fmt6(top + 0.5 * ph) << ")\">q_tilde</text>\n"
       << "</svg>\n";
}

void write_trajectory_csv(std::ostream& os, const ProfileResult& result) {
    os << "pseudo_time,psi0,psi1,theta,u,v\n";
    for (const auto& s : result.samples) {
        os << fmt17(s.t) << ',' << fmt17(s.psi.psi0) << ',' << fmt17(s.psi.psi1) << ',' << fmt17(s.kin.theta)
           << ',' << fmt17(s.kin.u) << ',' << fmt17(s.kin.v) << '\n';
    }
}

void write_profile_summary(std::ostream& os, double eps, double q_tilde, const ProfileResult& result,
                           const std::string& prefix) {
    os << prefix << "eps: " << fmt17(eps) << '\n'
       << prefix << "q_tilde: " << fmt17(q_tilde) << '\n'
       << prefix << "verdict: " << to_string(result.verdict) << '\n'
       << prefix << "branch: " << (result.branch > 0 ? "preferred" : "flipped") << '\n'
       << prefix << "samples: " << result.samples.size() << '\n'
       << prefix << "final_distance: " << fmt17(result.final_distance()) << '\n'
       << prefix << "oscillatory: " << (result.oscillation.oscillatory ? "true" : "false") << '\n';
    for (const auto& sys : result.oscillation.systems) {
        if (sys.system.empty()) continue;
        os << prefix << sys.system << ":";
        for (std::size_t c = 0; c < 2; ++c) {
            os << ' ' << sys.components[c] << "(extrema=" << sys.stats[c].extrema
               << ", sign_changes=" << sys.stats[c].sign_changes << ")";
        }
        os << " oscillatory=" << (sys.oscillatory ? "true" : "false") << '\n';
    }
}

} // namespace shockprof::cli
