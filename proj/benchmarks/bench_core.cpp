#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "gdfractal/classify.hpp"
#include "gdfractal/gaps.hpp"
#include "gdfractal/spec_io.hpp"

using namespace gdfractal;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ProblemSpec fixture(const std::string& name) {
    return parse_spec(read_file(std::string(FIXTURE_DIR) + "/" + name));
}

Monomial mono(const std::string& s) { return factor_rational(rational_from_string(s)); }

}  // namespace

static void BM_SolveLengths(benchmark::State& state) {
    ParamPoint p = params_of(fixture("example43.json"));
    for (auto _ : state) benchmark::DoNotOptimize(solve_lengths(p));
}
BENCHMARK(BM_SolveLengths);

static void BM_BuildSystem(benchmark::State& state) {
    ProblemSpec spec = fixture("example43.json");
    for (auto _ : state) benchmark::DoNotOptimize(build_system(spec));
}
BENCHMARK(BM_BuildSystem);

static void BM_GapCatalog(benchmark::State& state) {
    GdIfs f = build_system(fixture("example47.json"));
    const int depth = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gap_lengths_truncated(f, 0, depth));
}
BENCHMARK(BM_GapCatalog)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

static void BM_LevelApprox(benchmark::State& state) {
    GdIfs f = build_system(fixture("cantor.json"));
    const int m = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(level_approx(f, 0, m));
}
BENCHMARK(BM_LevelApprox)->Arg(4)->Arg(8)->Arg(12);

static void BM_Membership(benchmark::State& state) {
    std::vector<Monomial> a = {mono("1/2"), mono("1/3"), mono("1/5"), mono("1/7")};
    Monomial target = mono("11");
    for (auto _ : state) benchmark::DoNotOptimize(membership(target, a, Cone::Q));
}
BENCHMARK(BM_Membership);

static void BM_ConeIntersection(benchmark::State& state) {
    std::vector<Monomial> a1 = {mono("1/2")};
    std::vector<Monomial> a2 = {mono("1/3"), mono("1/5"), mono("1/7")};
    for (auto _ : state) benchmark::DoNotOptimize(cone_intersection(a1, a2));
}
BENCHMARK(BM_ConeIntersection);

static void BM_ClassifyVertex(benchmark::State& state) {
    GdIfs f = build_system(fixture("example43.json"));
    for (auto _ : state) benchmark::DoNotOptimize(classify_vertex(f, 2));
}
BENCHMARK(BM_ClassifyVertex);

BENCHMARK_MAIN();
