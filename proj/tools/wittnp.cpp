// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wittnp/arnold/certificates.hpp"
#include "wittnp/arnold/checks.hpp"
#include "wittnp/arnold/report.hpp"
#include "wittnp/carry_table.hpp"
#include "wittnp/errors.hpp"
#include "wittnp/polygon.hpp"
#include "wittnp/polygon_io.hpp"
#include "wittnp/text.hpp"

using namespace wittnp;
using nlohmann::json;

namespace {

enum class Format { Text, Json, Svg };

struct CliConfig {
    unsigned p = 2;
    unsigned digits = 4;
    std::string tcap = "4";
    std::uint64_t seed = 7;
    unsigned depth = 2;
    unsigned samples = 25;
    unsigned max_witness = 12;
    std::uint64_t ceiling = arnold::kDefaultCeiling;
    unsigned n = 1;
    long horizon = 64;
    Format format = Format::Json;
    bool format_given = false;
    bool timings = false;
    std::string output;

    PrecisionCtx ctx() const {
        PrecisionCtx c;
        c.p = p;
        c.digits = digits;
        c.tcap = parse_rational(tcap);
        c.validate();
        return c;
    }

    arnold::CheckConfig check() const { return {ceiling, max_witness}; }
};

/// Polygon JSON (starting with '{') or element text.
NewtonPolygon polygon_arg(const std::string& s, const PrecisionCtx& ctx) {
    std::size_t i = s.find_first_not_of(" \t\n");
    if (i != std::string::npos && s[i] == '{') {
        json j;
        try {
            j = json::parse(s);
        } catch (const json::parse_error& e) {
            throw ParseError("malformed polygon JSON", e.byte > 0 ? e.byte - 1 : 0);
        }
        return polygon_from_json(j);
    }
    return np_of_witt(parse_element(s, ctx));
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string polygon_text(const NewtonPolygon& P) {
    std::ostringstream os;
    if (P.is_infinite()) return "identically +inf\n";
    os << "kind: " << to_string(P.kind()) << '\n';
    json j = polygon_to_json(P);
    os << "nodes:";
    for (const auto& nd : j["nodes"]) os << " (" << nd[0].dump() << ", " << nd[1].get<std::string>() << ")";
    os << "\nslopes:";
    for (const auto& s : j["slopes"]) os << ' ' << s.get<std::string>();
    os << "\ncertified_to: " << j["certified_to"].dump() << '\n';
    return os.str();
}

int emit_polygon(const NewtonPolygon& P, const CliConfig& cfg) {
    Output out(cfg.output);
    switch (cfg.format) {
        case Format::Json: out.os() << polygon_to_json(P).dump() << '\n'; break;
        case Format::Text: out.os() << polygon_text(P); break;
        case Format::Svg: out.os() << polygon_svg(P); break;
    }
    return 0;
}

int exit_for(const arnold::Verdict& v) {
    if (v.verified()) return 0;
    if (v.refuted()) return 1;
    return 2;
}

int run_member(const std::string& cert_text, const CliConfig& cfg) {
    PrecisionCtx ctx = cfg.ctx();
    auto c = arnold::parse_cert(cert_text, ctx);
    arnold::Verdict v = arnold::s_membership(*c, cfg.n, ctx, cfg.check());
    Output out(cfg.output);
    if (cfg.format == Format::Json) {
        json j = {{"certificate", arnold::format_cert(*c)},
                  {"level", cfg.n},
                  {"verdict", to_string(v.kind)},
                  {"witness", v.witness ? json(*v.witness) : json(nullptr)},
                  {"reason", v.reason},
                  {"trace", v.trace}};
        out.os() << j.dump(2) << '\n';
    } else {
        out.os() << to_string(v.kind);
        if (v.witness) out.os() << " m=" << *v.witness;
        if (!v.reason.empty()) out.os() << ": " << v.reason;
        out.os() << '\n';
        for (const auto& s : v.trace) out.os() << "  " << s << '\n';
    }
    return exit_for(v);
}

int run_verify(const std::string& which, const CliConfig& cfg) {
    arnold::ReportConfig rc;
    rc.ctx = cfg.ctx();
    rc.depth = cfg.depth;
    rc.samples = cfg.samples;
    rc.seed = cfg.seed;
    rc.check = cfg.check();
    rc.which = which;
    arnold::Report r = arnold::verify_report(rc);
    Output out(cfg.output);
    if (cfg.format == Format::Text) out.os() << r.summary_text();
    else out.os() << r.to_json(cfg.timings).dump(2) << '\n';
    return r.exit_code();
}

int run_carry_table(const CliConfig& cfg) {
    auto table = carry_table(cfg.p, cfg.digits);
    Output out(cfg.output);
    if (cfg.format == Format::Json) {
        json rows = json::array();
        for (unsigned n = 0; n <= cfg.digits; ++n)
            rows.push_back({{"n", n}, {"w", table->integral_str(n)}, {"digit", table->digit_str(n)}});
        out.os() << json{{"p", cfg.p}, {"depth", cfg.digits}, {"polynomials", rows}}.dump(2) << '\n';
    } else {
        for (unsigned n = 0; n <= cfg.digits; ++n) {
            out.os() << "w_" << n << " = " << table->integral_str(n) << '\n';
            out.os() << "W_" << n << " = " << table->digit_str(n) << '\n';
        }
    }
    return 0;
}

int run_legendre(const std::string& arg, const CliConfig& cfg) {
    LegendreFn F = legendre(polygon_arg(arg, cfg.ctx()));
    Output out(cfg.output);
    if (cfg.format == Format::Json) {
        out.os() << legendre_to_json(F).dump(2) << '\n';
    } else {
        for (const auto& [l, v] : F.breakpoints) out.os() << to_string(l) << ' ' << to_string(v) << '\n';
        out.os() << "final_slope " << F.final_slope << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Witt vector arithmetic and Newton polygon checks over a perfect ring of characteristic p"};
    app.require_subcommand(1);
    app.fallthrough();
    CliConfig cfg;
    std::string format = "auto";
    app.add_option("--p", cfg.p, "Prime (2, 3 or 5)")->capture_default_str();
    app.add_option("--digits", cfg.digits, "Teichmuller digits 0..L")->capture_default_str();
    app.add_option("--tcap", cfg.tcap, "t-adic precision N")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--depth", cfg.depth, "Levels checked by verify")->capture_default_str();
    app.add_option("--samples", cfg.samples, "Random samples per check")->capture_default_str();
    app.add_option("--max-witness", cfg.max_witness, "Largest exponent tried by witness searches")->capture_default_str();
    app.add_option("--exponent-ceiling", cfg.ceiling, "Largest exponent i^(2^(n-1)) allowed")->capture_default_str();
    app.add_option("--format", format, "text, json or svg")->check(CLI::IsMember({"auto", "text", "json", "svg"}));
    app.add_option("-o,--output", cfg.output, "Write to a file instead of stdout");

    std::string a, b;
    auto* np = app.add_subcommand("np", "Newton polygon of an element");
    np->add_option("element", a)->required();
    auto* add = app.add_subcommand("add", "Sum of two elements");
    add->add_option("f", a)->required();
    add->add_option("g", b)->required();
    auto* mul = app.add_subcommand("mul", "Product of two elements");
    mul->add_option("f", a)->required();
    mul->add_option("g", b)->required();
    auto* leg = app.add_subcommand("legendre", "Legendre transform breakpoints");
    leg->add_option("input", a, "Element or polygon JSON")->required();
    auto* conv = app.add_subcommand("convolve", "Convolution of two polygons");
    conv->add_option("P", a, "Element or polygon JSON")->required();
    conv->add_option("Q", b, "Element or polygon JSON")->required();
    conv->add_option("--horizon", cfg.horizon, "Expansion horizon for closed forms")->capture_default_str();
    auto* mem = app.add_subcommand("member", "Check a membership certificate for S_n");
    mem->add_option("certificate", a)->required();
    mem->add_option("--n", cfg.n, "Level n")->capture_default_str();
    auto* ct = app.add_subcommand("carry-table", "Carry polynomials W_0..W_L");
    auto* ver = app.add_subcommand("verify", "Run the checks and print a report");
    a = "all";
    ver->add_option("checks", a)->check(CLI::IsMember({"hyp1", "hyp2", "hyp3", "sum-nodes", "mult-raises", "prime-p", "all"}));
    ver->add_flag("--timings", cfg.timings, "Include per-entry durations");
    auto* plot = app.add_subcommand("plot", "SVG plot of a polygon");
    plot->add_option("input", a, "Element or polygon JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto pick = [&](Format dflt) {
        if (format == "text") return Format::Text;
        if (format == "json") return Format::Json;
        if (format == "svg") return Format::Svg;
        return dflt;
    };
    try {
        if (np->parsed()) {
            cfg.format = pick(Format::Json);
            return emit_polygon(np_of_witt(parse_element(a, cfg.ctx())), cfg);
        }
        if (add->parsed() || mul->parsed()) {
            PrecisionCtx ctx = cfg.ctx();
            WittElement f = parse_element(a, ctx), g = parse_element(b, ctx);
            Output out(cfg.output);
            out.os() << format_element(add->parsed() ? witt_add(f, g) : witt_mul(f, g)) << '\n';
            return 0;
        }
        if (leg->parsed()) {
            cfg.format = pick(Format::Text);
            return run_legendre(a, cfg);
        }
        if (conv->parsed()) {
            cfg.format = pick(Format::Json);
            PrecisionCtx ctx = cfg.ctx();
            return emit_polygon(np_convolve(polygon_arg(a, ctx), polygon_arg(b, ctx), cfg.horizon), cfg);
        }
        if (mem->parsed()) {
            cfg.format = pick(Format::Text);
            return run_member(a, cfg);
        }
        if (ct->parsed()) {
            cfg.format = pick(Format::Text);
            return run_carry_table(cfg);
        }
        if (ver->parsed()) {
            cfg.format = pick(Format::Json);
            return run_verify(a, cfg);
        }
        if (plot->parsed()) {
            cfg.format = Format::Svg;
            return emit_polygon(polygon_arg(a, cfg.ctx()), cfg);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
    } catch (const SemanticError& e) {
        std::cerr << "semantic error: " << e.what() << '\n';
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
    }
    return 2;
}
