// gdfractal: build, verify and classify graph-directed interval systems
// from exact symbolic parameter files.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gdfractal/errors.hpp"
#include "gdfractal/render.hpp"
#include "gdfractal/report.hpp"
#include "gdfractal/version.hpp"

namespace gd = gdfractal;

namespace {

struct CommonArgs {
    std::string spec_path;
    std::string vertex;
    int depth = -1;
    int precision = -1;
    std::string out_path;
    std::string format;  // json | text | svg
    bool timing = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gd::Error("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const CommonArgs& args, const std::string& payload) {
    if (args.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw gd::Error("cannot write output file: " + args.out_path);
    out << payload;
}

int effective_threads() {
    // internal parallelism is bounded by this; the current pipeline is
    // sequential, which trivially respects any cap
    if (const char* env = std::getenv("GDFRACTAL_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

gd::NumericOptions numeric_options(const gd::ProblemSpec& spec, const CommonArgs& args) {
    gd::NumericOptions opts;
    opts.precision = args.precision > 0 ? args.precision : spec.numeric.precision;
    if (opts.precision < 32)
        throw gd::ValidationError("--precision", "precision must be at least 32 bits");
    opts.max_precision = std::max<mpfr_prec_t>(1024, opts.precision);
    return opts;
}

gd::Budget budget_of(const gd::ProblemSpec& spec) {
    gd::Budget b;
    b.max_intervals = spec.numeric.max_intervals;
    return b;
}

std::vector<gd::VertexId> query_vertices(const gd::ProblemSpec& spec, const CommonArgs& args) {
    std::vector<gd::VertexId> out;
    if (!args.vertex.empty()) {
        out.push_back(gd::vertex_index(spec, args.vertex));
        return out;
    }
    if (!spec.query.empty()) {
        for (const auto& name : spec.query) out.push_back(gd::vertex_index(spec, name));
        return out;
    }
    for (size_t v = 0; v < spec.vertices.size(); ++v) out.push_back(gd::VertexId(v));
    return out;
}

std::string verdict_text(const gd::ProblemSpec& spec, const gd::Verdict& v) {
    std::string s = "vertex " + spec.vertices[size_t(v.vertex)] + ": " +
                    gd::outcome_name(v.outcome) + " (route " + v.certificate.route + ")";
    if (v.extracted) s += ", " + std::to_string(v.extracted->maps.size()) + " extracted maps";
    return s + "\n";
}

int run_command(const std::string& command, const CommonArgs& args) {
    auto started = std::chrono::steady_clock::now();
    std::string bytes = read_file(args.spec_path);
    gd::ProblemSpec spec = gd::parse_spec(bytes);
    gd::ReportMeta meta;
    meta.tool_version = gd::kToolVersion;
    meta.spec_bytes = bytes;

    auto finish_meta = [&] {
        if (args.timing) {
            auto elapsed = std::chrono::steady_clock::now() - started;
            meta.timing_seconds = std::chrono::duration<double>(elapsed).count();
        }
    };

    (void)effective_threads();

    if (command == "validate") {
        std::vector<std::string> violations;
        if (spec.family) {
            try {
                gd::build_system(spec);
            } catch (const gd::BadDelta& err) {
                violations.push_back(err.what());
            } catch (const gd::MagnitudeSumMismatch& err) {
                violations.push_back(err.what());
            }
        } else {
            gd::ParamPoint p = gd::params_of(spec);
            for (const auto& v : gd::validate_graph(p.graph))
                violations.push_back("vertex " + spec.vertices[size_t(v.vertex)] +
                                     " has out-degree " + std::to_string(v.degree));
            auto more = gd::validate_params(p, numeric_options(spec, args));
            violations.insert(violations.end(), more.begin(), more.end());
        }
        finish_meta();
        emit(args, gd::report_validate(spec, meta, violations));
        return violations.empty() ? 0 : 1;
    }

    if (command == "construct") {
        gd::NumericOptions numeric = numeric_options(spec, args);
        try {
            gd::GdIfs f = gd::build_system(spec);
            gd::SeparationReport rep = gd::verify_separation(f, numeric);
            finish_meta();
            emit(args, gd::report_construct(spec, meta, &f, &rep, nullptr));
            return 0;
        } catch (const gd::NonRationalRatios&) {
            // numeric-only mode: enclosure lengths, no exact certificates
            gd::ParamPoint p = gd::params_of(spec);
            auto lengths = gd::solve_lengths_numeric(p, numeric.precision);
            std::vector<std::pair<std::string, std::string>> rows;
            for (size_t v = 0; v < lengths.size(); ++v)
                rows.push_back({spec.vertices[v], lengths[v].to_string()});
            finish_meta();
            emit(args, gd::report_construct(spec, meta, nullptr, nullptr, &rows));
            return 0;
        }
    }

    if (command == "classify") {
        gd::GdIfs f = gd::build_system(spec);
        gd::ClassifyOptions opts;
        opts.numeric = numeric_options(spec, args);
        opts.budget = budget_of(spec);
        gd::SeparationReport rep = gd::verify_separation(f, opts.numeric);
        std::vector<gd::Verdict> verdicts;
        for (gd::VertexId v : query_vertices(spec, args))
            verdicts.push_back(gd::classify_vertex(f, v, opts));
        finish_meta();
        if (args.format == "text") {
            std::string out;
            for (const auto& v : verdicts) out += verdict_text(spec, v);
            emit(args, out);
        } else {
            emit(args, gd::report_classify(spec, meta, f, rep, verdicts));
        }
        return 0;
    }

    if (command == "gaps") {
        if (args.vertex.empty()) throw gd::Error("gaps needs --vertex");
        gd::GdIfs f = gd::build_system(spec);
        gd::VertexId v = gd::vertex_index(spec, args.vertex);
        int depth = args.depth >= 0 ? args.depth : spec.numeric.depth;
        gd::GapCatalog catalog = gd::gap_lengths_truncated(
            f, v, depth, budget_of(spec), numeric_options(spec, args));
        finish_meta();
        emit(args, gd::report_gaps(spec, meta, f, args.vertex, catalog));
        return 0;
    }

    if (command == "render") {
        if (args.vertex.empty()) throw gd::Error("render needs --vertex");
        gd::GdIfs f = gd::build_system(spec);
        gd::VertexId v = gd::vertex_index(spec, args.vertex);
        int depth = args.depth >= 0 ? args.depth : 3;
        gd::RenderOptions opts;
        opts.precision = numeric_options(spec, args).precision;
        opts.budget = budget_of(spec);
        emit(args, gd::render_svg(f, v, depth, opts));
        return 0;
    }

    if (command == "extract") {
        if (args.vertex.empty()) throw gd::Error("extract needs --vertex");
        gd::GdIfs f = gd::build_system(spec);
        gd::VertexId v = gd::vertex_index(spec, args.vertex);
        gd::StandardIfs phi = gd::extract_standard_ifs(f, v);
        finish_meta();
        emit(args, gd::report_extract(spec, meta, f, args.vertex, phi));
        return 0;
    }

    throw gd::Error("unknown command: " + command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-directed interval system constructor and classifier"};
    app.require_subcommand(1);

    CommonArgs args;
    std::vector<std::string> names = {"validate", "construct", "classify",
                                      "gaps",     "render",    "extract"};
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("spec", args.spec_path, "problem spec (JSON)")->required();
        sub->add_option("--vertex", args.vertex, "vertex to operate on");
        sub->add_option("--depth", args.depth, "path depth / render levels");
        sub->add_option("--precision", args.precision, "enclosure precision in bits");
        sub->add_option("--out", args.out_path, "write output to this path");
        sub->add_option("--format", args.format, "json|text|svg");
        sub->add_flag("--timing", args.timing, "include timing in the report");
    }

    CLI11_PARSE(app, argc, argv);
    std::string command = app.get_subcommands().front()->get_name();

    try {
        return run_command(command, args);
    } catch (const gd::ParseError& err) {
        std::cerr << gd::error_json("parse", err.what());
        return 1;
    } catch (const gd::ValidationError& err) {
        std::cerr << gd::error_json("validation", err.what());
        return 1;
    } catch (const gd::Error& err) {
        std::cerr << gd::error_json("error", err.what());
        return 1;
    } catch (const std::exception& err) {
        std::cerr << gd::error_json("internal", err.what());
        return 2;
    }
}
