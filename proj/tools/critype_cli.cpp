// Command-line front end: angular measures in, reports / point lists / SVG out.
// JSON travels on stdin and stdout, diagnostics on stderr.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "critype/canonical_product.hpp"
#include "critype/certificate.hpp"
#include "critype/geometry.hpp"
#include "critype/json_io.hpp"
#include "critype/point_sequence.hpp"
#include "critype/svg_render.hpp"

namespace {

using critype::json;

json read_stdin_json() {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw critype::invalid_input(std::string("stdin is not valid JSON: ") + e.what());
    }
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw critype::invalid_input("cannot open output file: " + path);
    out << text;
}

void report_warnings(const std::vector<std::string>& warnings, json* out) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    if (out && !warnings.empty()) (*out)["warnings"] = warnings;
}

struct PipelineFlags {
    bool augment = false;
    bool symmetrize = false;
    double lunc_exponent = 0.5;
    CLI::Option* opt_augment = nullptr;
    CLI::Option* opt_symmetrize = nullptr;
    CLI::Option* opt_lunc = nullptr;
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags* f) {
    f->opt_augment = cmd->add_flag("--augment-ray", f->augment,
                                   "add the ray realizing the balancing atom");
    f->opt_symmetrize = cmd->add_flag("--symmetrize", f->symmetrize,
                                      "take the union with the negated set");
    f->opt_lunc = cmd->add_option("--lunc", f->lunc_exponent,
                                  "balance reciprocal sums within budget R^e");
}

// Steps compose in the order their flags appear on the command line.
critype::PointSequence run_pipeline(const CLI::App& cmd, const PipelineFlags& f,
                                    const critype::AngularMeasure& m,
                                    critype::PointSequence seq, double rmax) {
    for (const CLI::Option* opt : cmd.parse_order()) {
        if (opt == f.opt_augment) {
            seq = critype::augment_ray(seq, m, rmax);
        } else if (opt == f.opt_symmetrize) {
            seq = critype::symmetrize(seq);
        } else if (opt == f.opt_lunc) {
            const auto out = critype::lunc_balance(seq, rmax, f.lunc_exponent);
            std::cerr << "lunc: residual " << std::abs(out.residual_before) << " -> "
                      << std::abs(out.residual_after) << " with " << out.added.size()
                      << " points" << (out.budget_exhausted ? " (budget exhausted)" : "")
                      << "\n";
            seq = critype::merge(seq, out.added);
        }
    }
    return seq;
}

std::vector<double> default_radii(double rmax) {
    std::vector<double> radii;
    for (int j = 1; j <= 8; ++j) {
        const double r = 0.05 * j * rmax - 0.5;
        if (r >= 1.0) radii.push_back(r);
    }
    if (radii.empty()) radii.push_back(0.4 * rmax);
    return radii;
}

int run(int argc, char** argv) {
    CLI::App app{"Critical type of zero sets: geometry of balanced angular measures"};
    app.require_subcommand(1);
    std::string output_path;
    int grid = 720;
    double sigma = 0.0;
    double rmax = 0.0;
    std::uint64_t seed = 1;
    bool degrees = false;

    auto* analyze = app.add_subcommand("analyze", "measure -> critical type report");
    analyze->add_option("--grid", grid, "support sampling resolution")->check(CLI::Range(3, 100000000));
    analyze->add_flag("--degrees", degrees, "angles in degrees at the JSON boundary");
    analyze->add_option("--output", output_path, "write to file instead of stdout");

    auto* certify = app.add_subcommand("certify", "measure -> uniqueness margin at sigma");
    certify->add_option("--sigma", sigma, "type to test")->required();
    certify->add_option("--grid", grid, "support sampling resolution")->check(CLI::Range(3, 100000000));
    certify->add_flag("--degrees", degrees, "angles in degrees at the JSON boundary");
    certify->add_option("--output", output_path, "write to file instead of stdout");

    auto* generate = app.add_subcommand("generate", "measure -> realizing point list");
    generate->add_option("--rmax", rmax, "truncation radius")->required();
    generate->add_option("--seed", seed, "sampling seed");
    PipelineFlags gen_flags;
    add_pipeline_flags(generate, &gen_flags);
    generate->add_flag("--degrees", degrees, "angles in degrees at the JSON boundary");
    generate->add_option("--output", output_path, "write to file instead of stdout");

    auto* verify = app.add_subcommand("verify",
                                      "measure or points -> indicator estimates");
    verify->add_option("--rmax", rmax, "truncation radius")->required();
    verify->add_option("--seed", seed, "sampling seed");
    PipelineFlags ver_flags;
    add_pipeline_flags(verify, &ver_flags);
    verify->add_flag("--degrees", degrees, "angles in degrees at the JSON boundary");
    verify->add_option("--output", output_path, "write to file instead of stdout");

    auto* plot = app.add_subcommand("plot", "analyze report -> SVG diagram");
    plot->add_option("--output", output_path, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    std::vector<std::string> warnings;

    if (analyze->parsed()) {
        const auto m = critype::measure_from_json(read_stdin_json(), &warnings, degrees);
        critype::AnalysisOptions opts;
        opts.grid = grid;
        const auto rep = critype::critical_type(m, opts);
        for (const auto& w : rep.warnings) warnings.push_back(w);
        json out = critype::analysis_to_json(rep, degrees);
        out["measure"] = critype::measure_to_json(m, degrees);
        out["options"] = {{"grid", grid}, {"degrees", degrees}};
        report_warnings(warnings, &out);
        write_output(out.dump(2), output_path);
        return 0;
    }

    if (certify->parsed()) {
        const auto m = critype::measure_from_json(read_stdin_json(), &warnings, degrees);
        critype::AnalysisOptions opts;
        opts.grid = grid;
        const auto rep = critype::uniqueness_margin(m, sigma, opts);
        json out = critype::certify_to_json(rep);
        out["options"] = {{"grid", grid}, {"sigma", sigma}, {"degrees", degrees}};
        report_warnings(warnings, &out);
        write_output(out.dump(2), output_path);
        return 0;
    }

    if (generate->parsed()) {
        const auto m = critype::measure_from_json(read_stdin_json(), &warnings, degrees);
        critype::PointSequence seq;
        if (!m.is_zero()) seq = critype::from_measure(m, rmax, seed);
        seq = run_pipeline(*generate, gen_flags, m, std::move(seq), rmax);
        json out = critype::points_to_json(seq);
        out["options"] = {{"rmax", rmax}, {"seed", seed}, {"degrees", degrees}};
        report_warnings(warnings, &out);
        write_output(out.dump(2), output_path);
        return 0;
    }

    if (verify->parsed()) {
        const json request = read_stdin_json();
        int n_angles = 32;
        std::vector<double> radii;
        if (request.is_object()) {
            if (request.contains("angles")) {
                if (!request.at("angles").is_number_integer())
                    throw critype::invalid_input("verify: \"angles\" must be an integer");
                n_angles = request.at("angles").get<int>();
            }
            if (request.contains("radii")) {
                if (!request.at("radii").is_array())
                    throw critype::invalid_input("verify: \"radii\" must be an array");
                for (const auto& r : request.at("radii")) {
                    if (!r.is_number())
                        throw critype::invalid_input("verify: radii entries must be numbers");
                    radii.push_back(r.get<double>());
                }
            }
        }
        if (n_angles < 8) throw critype::invalid_input("verify: need at least 8 angles");
        if (radii.empty()) radii = default_radii(rmax);

        critype::PointSequence seq;
        std::optional<double> predicted;
        if (request.is_object() && request.contains("points")) {
            seq = critype::points_from_json(request);
        } else {
            json measure_part = request;
            if (request.is_object()) {
                measure_part = json::object();
                for (const auto& [key, value] : request.items()) {
                    if (key == "angles" || key == "radii") continue;
                    measure_part[key] = value;
                }
            }
            const auto m = critype::measure_from_json(measure_part, &warnings, degrees);
            predicted = critype::critical_type(m).sigma_u;
            if (!m.is_zero()) seq = critype::from_measure(m, rmax, seed);
            seq = run_pipeline(*verify, ver_flags, m, std::move(seq), rmax);
        }
        if (seq.empty()) throw critype::invalid_input("verify: the point sequence is empty");

        const double scale = degrees ? 180.0 / critype::pi : 1.0;
        json angle_reports = json::array();
        double best = -std::numeric_limits<double>::infinity();
        int evaluated = 0;
        for (int i = 0; i < n_angles; ++i) {
            const double t = critype::two_pi * i / n_angles;
            try {
                const auto est = critype::indicator_estimate(seq, t, radii);
                angle_reports.push_back(
                    {{"t", scale * t}, {"h", est.value}, {"spread", est.spread}});
                best = std::max(best, est.value);
                ++evaluated;
            } catch (const critype::computation_error&) {
                warnings.push_back("angle skipped, all radii in exclusion zones");
            }
        }
        if (evaluated == 0)
            throw critype::computation_error("verify: no angle could be evaluated");
        json out;
        out["angles"] = std::move(angle_reports);
        out["type_estimate"] = best;
        if (predicted) out["sigma_u_predicted"] = *predicted;
        out["options"] = {{"rmax", rmax}, {"seed", seed}, {"degrees", degrees}};
        report_warnings(warnings, &out);
        write_output(out.dump(2), output_path);
        return 0;
    }

    // plot: rebuild the drawing data from an analyze report
    const json rep_json = read_stdin_json();
    if (!rep_json.is_object()) throw critype::invalid_input("plot: expected a report object");
    for (const char* key : {"sigma_u", "radius", "case", "vertices"})
        if (!rep_json.contains(key))
            throw critype::invalid_input(std::string("plot: report lacks \"") + key + "\"");
    critype::AnalysisReport rep;
    rep.sigma_u = rep_json.at("sigma_u").get<double>();
    rep.circle = {critype::Complex{0.0, 0.0}, rep_json.at("radius").get<double>()};
    std::vector<critype::Complex> verts;
    for (const auto& v : rep_json.at("vertices")) {
        if (!v.is_array() || v.size() != 2)
            throw critype::invalid_input("plot: vertices must be [x, y] pairs");
        verts.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    if (verts.empty()) throw critype::invalid_input("plot: empty body");
    rep.body = critype::ConvexBody::from_points(verts);
    const std::string kase = rep_json.at("case").get<std::string>();
    if (kase != "degenerate") {
        critype::ContactClassification cls;
        cls.radius = rep.circle.radius;
        cls.kind = kase == "1" ? critype::ContactCase::diametral_pair
                               : critype::ContactCase::contact_triangle;
        for (const auto& a : rep_json.at("contact_args")) {
            const double mu = a.get<double>();
            cls.contact_args.push_back(mu);
            cls.contact_points.push_back(std::polar(rep.circle.radius, mu));
        }
        if (cls.kind == critype::ContactCase::contact_triangle) {
            const auto& pv = rep_json.at("polar_vertices");
            if (!pv.is_array() || pv.size() != 3)
                throw critype::invalid_input("plot: case 2 report needs 3 polar vertices");
            for (int i = 0; i < 3; ++i)
                cls.polar[i] = {pv[i][0].get<double>(), pv[i][1].get<double>()};
        }
        rep.classification = std::move(cls);
    }
    write_output(critype::render_svg(rep), output_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const critype::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const critype::computation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const critype::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
