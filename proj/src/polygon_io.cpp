// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include "wittnp/polygon_io.hpp"

#include <sstream>

#include "wittnp/errors.hpp"

namespace wittnp {

using nlohmann::json;

namespace {

json horizon_json(long T) { return T == kUnbounded ? json("inf") : json(T); }

json vertices_json(const PLCurve& c) {
    json out = json::array();
    for (const auto& v : c.vertices()) out.push_back(json::array({v.x, to_string(v.y)}));
    return out;
}

ExtRat parse_value(const json& v) {
    if (v.is_number_integer()) return ExtRat(Rational(v.get<long>()));
    if (!v.is_string()) throw UsageError("polygon value must be a string or an integer");
    return parse_ext_rat(v.get<std::string>());
}

}  // namespace

json polygon_to_json(const NewtonPolygon& P) {
    json j;
    j["kind"] = to_string(P.kind());
    json slopes = json::array();
    for (const auto& s : P.slopes()) slopes.push_back(to_string(s));
    if (const auto& cf = P.closed()) {
        j["start"] = 0;
        json nodes = json::array();
        for (long x : P.nodes()) nodes.push_back(json::array({x, to_string(cf->value(x))}));
        j["nodes"] = nodes;
        j["slopes"] = slopes;
        j["tail"] = {{"p", cf->p}, {"n", cf->level}, {"m", cf->power}};
        j["limit"] = "0";
        j["certified_to"] = "inf";
        return j;
    }
    if (P.is_infinite()) {
        j["start"] = nullptr;
        j["nodes"] = json::array();
        j["slopes"] = json::array();
        j["tail"] = "inf";
        j["certified_to"] = "inf";
        return j;
    }
    j["start"] = P.start();
    if (P.kind() == PolygonKind::FiniteExact) {
        j["nodes"] = vertices_json(P.upper());
        j["slopes"] = slopes;
        j["tail"] = P.limit().str();
        j["certified_to"] = "inf";
        return j;
    }
    json nodes = json::array();
    for (const auto& pt : P.points()) {
        if (pt.floor) nodes.push_back(json::array({pt.index, ">=" + pt.value.str()}));
        else if (pt.value.is_finite() && P.upper().at(pt.index) == pt.value)
            nodes.push_back(json::array({pt.index, pt.value.str()}));
    }
    if (P.points().empty()) nodes = vertices_json(P.upper());
    j["nodes"] = nodes;
    j["slopes"] = slopes;
    j["tail"] = P.uncertainty().str();
    j["tail_floor"] = to_string(P.tail_floor());
    j["certified_to"] = horizon_json(P.certified_to());
    j["upper"] = vertices_json(P.upper());
    j["lower"] = vertices_json(P.lower());
    return j;
}

NewtonPolygon polygon_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw UsageError("polygon JSON needs a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "closed") {
        const json& t = j.at("tail");
        ClosedForm cf;
        cf.p = t.at("p").get<unsigned>();
        cf.level = t.at("n").get<unsigned>();
        cf.power = t.at("m").get<unsigned>();
        return NewtonPolygon::closed_form(cf);
    }
    std::vector<PolyPoint> pts;
    if (j.contains("nodes")) {
        for (const auto& node : j.at("nodes")) {
            if (!node.is_array() || node.size() != 2) throw UsageError("polygon node must be [index, value]");
            long x = node[0].get<long>();
            if (node[1].is_string()) {
                std::string s = node[1].get<std::string>();
                if (s.rfind(">=", 0) == 0) {
                    pts.push_back({x, parse_ext_rat(s.substr(2)), true});
                    continue;
                }
            }
            pts.push_back({x, parse_value(node[1]), false});
        }
    }
    if (kind == "finite") {
        if (pts.empty()) return NewtonPolygon();
        std::optional<ExtRat> terminal;
        if (j.contains("tail")) terminal = parse_value(j.at("tail"));
        else {
            for (const auto& pt : pts)
                if (pt.value.is_finite() && (!terminal || pt.value < *terminal)) terminal = pt.value;
        }
        NewtonPolygon P = np_from_points(pts, terminal);
        if (P.kind() != PolygonKind::FiniteExact) throw UsageError("finite polygon JSON has an inconsistent tail");
        return P;
    }
    if (kind == "windowed") {
        Rational floor_value = 0;
        if (j.contains("tail_floor")) floor_value = parse_value(j.at("tail_floor")).value();
        return NewtonPolygon::windowed(pts, floor_value);
    }
    throw UsageError("unknown polygon kind '" + kind + "'");
}

json legendre_to_json(const LegendreFn& F) {
    json bp = json::array();
    for (const auto& [l, v] : F.breakpoints) bp.push_back(json::array({to_string(l), to_string(v)}));
    return {{"breakpoints", bp}, {"final_slope", F.final_slope}};
}

std::string polygon_svg(const NewtonPolygon& P, const std::string& title) {
    const double W = 640, H = 400, margin = 50;
    long xmax = 8;
    std::vector<std::pair<long, double>> upper, lower;
    std::vector<std::pair<long, double>> marks;
    auto as_double = [](const Rational& q) { return q.convert_to<double>(); };
    long certified = kUnbounded;
    if (const auto& cf = P.closed()) {
        xmax = std::min<long>(8L * cf->power, cf->guard_limit());
        for (long t = 0; t <= xmax; ++t) upper.emplace_back(t, as_double(cf->value(t)));
        for (long x : P.nodes()) marks.emplace_back(x, as_double(cf->value(x)));
    } else if (!P.is_infinite()) {
        certified = P.certified_to();
        long last = 0;
        for (const auto* c : {&P.upper(), &P.lower()})
            if (!c->infinite()) last = std::max(last, c->last_x());
        for (const auto& pt : P.points()) last = std::max(last, pt.index);
        xmax = last + 2;
        for (const auto* c : {&P.upper(), &P.lower()}) {
            if (c->infinite()) continue;
            auto& out = c == &P.upper() ? upper : lower;
            for (const auto& v : c->vertices()) out.emplace_back(v.x, as_double(v.y));
            out.emplace_back(xmax, as_double(c->tail()));
        }
        for (const auto& pt : P.points())
            if (pt.value.is_finite()) marks.emplace_back(pt.index, as_double(pt.value.value()));
    }
    double ymax = 1;
    for (const auto* v : {&upper, &lower, &marks})
        for (const auto& [x, y] : *v) ymax = std::max(ymax, y);
    auto sx = [&](double x) { return margin + x / static_cast<double>(xmax) * (W - 2 * margin); };
    auto sy = [&](double y) { return H - margin - y / ymax * (H - 2 * margin); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    if (!title.empty()) os << "  <title>" << title << "</title>\n";
    if (certified != kUnbounded && certified < xmax) {
        double x0 = sx(static_cast<double>(std::max(certified, 0L)));
        os << "  <rect class=\"uncertified\" x=\"" << x0 << "\" y=\"" << margin << "\" width=\"" << (sx(xmax) - x0)
           << "\" height=\"" << (H - 2 * margin) << "\" fill=\"#ddd\"/>\n";
    }
    os << "  <line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(xmax) << "\" y2=\"" << sy(0)
       << "\" stroke=\"black\"/>\n";
    os << "  <line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(0) << "\" y2=\"" << sy(ymax)
       << "\" stroke=\"black\"/>\n";
    for (long x = 0; x <= xmax; ++x)
        os << "  <text x=\"" << sx(x) << "\" y=\"" << (sy(0) + 16) << "\" font-size=\"10\">" << x << "</text>\n";
    auto polyline = [&](const std::vector<std::pair<long, double>>& pts, const char* cls, const char* extra) {
        if (pts.empty()) return;
        os << "  <polyline class=\"" << cls << "\" fill=\"none\" stroke=\"#1f4e9c\" " << extra << " points=\"";
        for (const auto& [x, y] : pts) os << sx(x) << ',' << sy(y) << ' ';
        os << "\"/>\n";
    };
    polyline(lower, "lower", "stroke-dasharray=\"4 3\"");
    polyline(upper, "hull", "stroke-width=\"2\"");
    for (const auto& [x, y] : marks)
        os << "  <circle class=\"node\" cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"#c0392b\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace wittnp
