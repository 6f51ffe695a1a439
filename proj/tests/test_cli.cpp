#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "gdfractal/errors.hpp"
#include "gdfractal/render.hpp"
#include "gdfractal/report.hpp"
#include "gdfractal/version.hpp"
#include "test_util.hpp"

using namespace gdfractal;
using namespace testutil;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string out_path = std::string(BUILD_DIR) + "/cli_test_output.tmp";
    std::string cmd = std::string(GDFRACTAL_BIN) + " " + args + " >" + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream in(out_path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::remove(out_path.c_str());
    return {WEXITSTATUS(status), buf.str()};
}

}  // namespace

TEST_CASE("fixture specs parse to the expected shapes") {
    auto spec = load_fixture("example47.json");
    CHECK(spec.vertices.size() == 2);
    CHECK(spec.edges.size() == 4);
    REQUIRE(spec.generators.size() == 1);
    CHECK(spec.generators[0].name == "lam");
    CHECK(spec.generators[0].kind == "abstract");

    auto fam = load_fixture("t2_equalgap.json");
    REQUIRE(fam.family.has_value());
    CHECK(fam.family->delta == "1/5");
}

TEST_CASE("expression parsing") {
    std::map<std::string, Generator> gens;
    gens.emplace("lam", abstract_gen("lam", "1.0"));

    SignedMonomial neg_third = parse_ratio_expression("-1/3", gens);
    CHECK(neg_third.sign == -1);
    CHECK(neg_third.magnitude == mono("1/3"));

    SignedMonomial root = parse_ratio_expression("11^(-1/2)*lam", gens);
    CHECK(root.sign == 1);
    CHECK(root.magnitude ==
          mono("11").pow(rq("-1/2")).times(Monomial::generator(gens.at("lam"))));

    CHECK_FALSE(parse_gap_expression("0", gens).has_value());
    CHECK(parse_gap_expression("11*lam", gens).has_value());
    CHECK_THROWS_AS(parse_ratio_expression("2 +", gens), ParseError);
    CHECK_THROWS_AS(parse_ratio_expression("mu", gens), ParseError);

    MonomialSum sum = parse_sum_expression("1/2 + lam - 1/4", gens);
    CHECK(sum == MonomialSum::of(rq("1/4")) +
                     MonomialSum::of(Monomial::generator(gens.at("lam"))));
}

TEST_CASE("spec validation failures carry paths") {
    std::string bad_ratio = R"({
      "schema": "gdfractal/1",
      "vertices": ["1"],
      "edges": [
        {"from": "1", "to": "1", "ratio": "3/2"},
        {"from": "1", "to": "1", "ratio": "1/3"}
      ],
      "gaps": {"1": ["1/3"]}
    })";
    CHECK_THROWS_AS(parse_spec(bad_ratio), ValidationError);

    std::string low_degree = R"({
      "schema": "gdfractal/1",
      "vertices": ["1", "2"],
      "edges": [
        {"from": "1", "to": "2", "ratio": "1/2"},
        {"from": "2", "to": "1", "ratio": "1/3"},
        {"from": "2", "to": "2", "ratio": "1/4"}
      ],
      "gaps": {"2": ["1/9"]}
    })";
    try {
        parse_spec(low_degree);
        FAIL("expected a validation error");
    } catch (const ValidationError& err) {
        CHECK(std::string(err.what()).find("out-degree") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_spec("{not json"), ParseError);
    CHECK_THROWS_AS(parse_spec(R"({"schema": "other/9", "vertices": ["1"], "edges": []})"),
                    ValidationError);
}

TEST_CASE("spec round-trips through its serialization") {
    for (const char* name :
         {"cantor.json", "example47.json", "example43.json", "fig2.json", "t2_equalgap.json"}) {
        CAPTURE(name);
        ProblemSpec spec = load_fixture(name);
        ProblemSpec again = parse_spec(serialize_spec(spec));
        CHECK(spec == again);
    }
}

TEST_CASE("reports are byte-stable across repeated assembly") {
    for (const char* name : {"example47.json", "fig2.json"}) {
        CAPTURE(name);
        std::string bytes = read_file(fixture_path(name));
        auto render_once = [&]() {
            ProblemSpec spec = parse_spec(bytes);
            GdIfs f = build_system(spec);
            SeparationReport rep = verify_separation(f);
            std::vector<Verdict> verdicts;
            for (const auto& q : spec.query)
                verdicts.push_back(classify_vertex(f, vertex_index(spec, q)));
            ReportMeta meta{kToolVersion, bytes, std::nullopt};
            return report_classify(spec, meta, f, rep, verdicts);
        };
        std::string a = render_once();
        std::string b = render_once();
        CHECK(a == b);
        CHECK(a.find("spec_sha256") != std::string::npos);
    }
}

TEST_CASE("certificates replay from the serialized report alone") {
    // every recorded membership/cone check must be re-runnable using only
    // the strings in the report
    for (const char* name : {"example47.json", "example43.json"}) {
        CAPTURE(name);
        std::string bytes = read_file(fixture_path(name));
        ProblemSpec spec = parse_spec(bytes);
        GdIfs f = build_system(spec);
        SeparationReport rep = verify_separation(f);
        std::vector<Verdict> verdicts;
        for (const auto& q : spec.query)
            verdicts.push_back(classify_vertex(f, vertex_index(spec, q)));
        ReportMeta meta{kToolVersion, bytes, std::nullopt};
        auto doc = nlohmann::json::parse(report_classify(spec, meta, f, rep, verdicts));

        auto gens = generator_table(spec);
        auto parse_mono = [&](const std::string& s) {
            return parse_ratio_expression(s, gens).magnitude;
        };
        auto parse_cone = [](const std::string& s) {
            if (s == "Q") return Cone::Q;
            if (s == "Qstar") return Cone::Qstar;
            if (s == "Qplus") return Cone::Qplus;
            return Cone::QplusStar;
        };

        size_t replayed = 0;
        for (const auto& verdict : doc["verdicts"]) {
            for (const auto& check : verdict["certificate"]["checks"]) {
                std::string kind = check["kind"].get<std::string>();
                std::vector<Monomial> base1;
                if (check.contains("base1"))
                    for (const auto& s : check["base1"])
                        base1.push_back(parse_mono(s.get<std::string>()));
                if (kind == "membership") {
                    Monomial target = parse_mono(check["target"].get<std::string>());
                    Cone cone = parse_cone(check["cone"].get<std::string>());
                    auto mem = membership(target, base1, cone);
                    CHECK(mem.member == check["answer"].get<bool>());
                    if (check.contains("witness1")) {
                        std::vector<Rational> w;
                        for (const auto& s : check["witness1"])
                            w.push_back(rational_from_string(s.get<std::string>()));
                        CHECK(power_product(base1, w) == target);
                    }
                    ++replayed;
                } else if (kind == "cone_intersection") {
                    std::vector<Monomial> base2;
                    if (check.contains("base2"))
                        for (const auto& s : check["base2"])
                            base2.push_back(parse_mono(s.get<std::string>()));
                    auto ci = cone_intersection(base1, base2);
                    CHECK(ci.empty != check["answer"].get<bool>());
                    ++replayed;
                }
            }
        }
        CHECK(replayed > 0);
    }
}

TEST_CASE("sha256 known answers") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("svg rendering is deterministic and shaped as rows") {
    GdIfs f = build_gdifs(cantor_params());
    RenderOptions opts;
    std::string svg = render_svg(f, 0, 3, opts);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("viewBox") != std::string::npos);
    size_t rows = 0;
    for (size_t pos = 0; (pos = svg.find("<g>", pos)) != std::string::npos; ++pos) ++rows;
    CHECK(rows == 4);  // levels 0..3
    CHECK(svg == render_svg(f, 0, 3, opts));

    std::string single = render_svg(f, 0, 0, opts);
    size_t bars = 0;
    for (size_t pos = 0; (pos = single.find("<rect", pos)) != std::string::npos; ++pos) ++bars;
    CHECK(bars == 2);  // background plus the hull bar

    // abstract generator without an approximation cannot be rendered
    GdIfs g;
    g.graph = Digraph::make(1, {{0, 0}, {0, 0}});
    Monomial mu = Monomial::generator(Generator::abstract("mu"));
    g.maps = {{SignedMonomial::positive(mono("1/3")), MonomialSum::zero()},
              {SignedMonomial::positive(mono("1/3")), MonomialSum::of(mu, rq("2/3"))}};
    g.lengths = {MonomialSum::of(mu)};
    g.anchors = {{MonomialSum::zero(), MonomialSum::of(mu, rq("2/3"))}};
    CHECK_THROWS_AS(render_svg(g, 0, 1, opts), AbstractWithoutApprox);
}

TEST_CASE("command line surface") {
    std::string fix = fixture_path("example47.json");

    auto validate = run_cli("validate " + fix);
    CHECK(validate.exit_code == 0);
    CHECK(validate.output.find("\"ok\": true") != std::string::npos);

    auto classify = run_cli("classify " + fix);
    CHECK(classify.exit_code == 0);
    CHECK(classify.output.find("NotCoscSelfSimilar") != std::string::npos);

    auto classify_again = run_cli("classify " + fix);
    CHECK(classify.output == classify_again.output);

    auto text = run_cli("classify --format text " + fix);
    CHECK(text.exit_code == 0);
    CHECK(text.output.find("vertex 1: NotCoscSelfSimilar") != std::string::npos);

    auto gaps = run_cli("gaps --vertex 1 --depth 1 " + fix);
    CHECK(gaps.exit_code == 0);
    CHECK(gaps.output.find("11*3^-1*lam") != std::string::npos);

    auto extract = run_cli("extract --vertex 3 " + fixture_path("fig2.json"));
    CHECK(extract.exit_code == 0);
    CHECK(extract.output.find("standard_ifs") != std::string::npos);

    auto render = run_cli("render --vertex 1 --depth 2 " + fixture_path("cantor.json"));
    CHECK(render.exit_code == 0);
    CHECK(render.output.find("<svg") != std::string::npos);

    // abstract generators render through their declared approximations
    auto render47 = run_cli("render --vertex 1 --depth 2 " + fix);
    CHECK(render47.exit_code == 0);
    CHECK(render47.output.find("<svg") != std::string::npos);

    auto validate_family = run_cli("validate " + fixture_path("t2_equalgap.json"));
    CHECK(validate_family.exit_code == 0);

    auto extract_bad = run_cli("extract --vertex 1 " + fix);
    CHECK(extract_bad.exit_code == 1);
    CHECK(extract_bad.output.find("error") != std::string::npos);

    auto missing = run_cli("classify /nonexistent/path.json");
    CHECK(missing.exit_code == 1);

    std::string bad_path = std::string(BUILD_DIR) + "/bad_spec.json";
    {
        std::ofstream out(bad_path);
        out << R"({"schema": "gdfractal/1", "vertices": ["1"], "edges": [{"from": "1", "to": "1", "ratio": "3/2"}, {"from": "1", "to": "1", "ratio": "1/3"}], "gaps": {"1": ["1/3"]}})";
    }
    auto invalid = run_cli("classify " + bad_path);
    CHECK(invalid.exit_code == 1);
    CHECK(invalid.output.find("validation") != std::string::npos);
    std::remove(bad_path.c_str());
}
