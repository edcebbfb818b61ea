#include <benchmark/benchmark.h>

#include "relqm/opalg/series.hpp"

using namespace relqm::opalg;

namespace {

struct Fixture {
    std::shared_ptr<SymbolTable> t;
    OpId X, P, H0;
    ScalarId hbar, M;
};

Fixture make_fixture() {
    Fixture f;
    f.t = SymbolTable::create();
    f.X = f.t->declare_operator("X");
    f.P = f.t->declare_operator("P");
    f.H0 = f.t->declare_operator("Hrel0");
    f.hbar = f.t->declare_scalar("hbar");
    f.M = f.t->declare_scalar("M");
    ScalarPoly ihbar = ScalarPoly::imaginary_unit() * ScalarPoly::symbol(f.hbar);
    f.t->set_commutator(f.X, f.P, ihbar);
    f.t->set_commute(f.X, f.H0);
    f.t->set_commute(f.P, f.H0);
    return f;
}

void bench_normal_order_word(benchmark::State& state) {
    Fixture f = make_fixture();
    std::vector<std::pair<OpId, int>> word;
    for (int k = 0; k < state.range(0); ++k) {
        word.emplace_back(f.P, 2);
        word.emplace_back(f.X, 1);
    }
    for (auto _ : state) {
        OperatorSeries s(f.t);
        s.add_word(ScalarPoly::one(), 0, word);
        benchmark::DoNotOptimize(s);
    }
}

void bench_nested_commutator(benchmark::State& state) {
    Fixture f = make_fixture();
    OperatorSeries x = OperatorSeries::op(f.t, f.X);
    OperatorSeries h = OperatorSeries::op(f.t, f.P, 2).times(
                           ScalarPoly(GaussianRational(make_rational(1, 2))) *
                           ScalarPoly::symbol(f.M, -1)) +
                       OperatorSeries::op(f.t, f.H0);
    for (auto _ : state) {
        OperatorSeries c = commutator(commutator(x, h), anticommutator(x, h));
        benchmark::DoNotOptimize(c);
    }
}

void bench_series_sqrt(benchmark::State& state) {
    Fixture f = make_fixture();
    OperatorSeries hrel = OperatorSeries::scalar(f.t, ScalarPoly::symbol(f.M), -1) +
                          OperatorSeries::op(f.t, f.H0);
    OperatorSeries arg = OperatorSeries::op(f.t, f.P, 2).shifted_eps(-1) + hrel * hrel;
    for (auto _ : state) {
        OperatorSeries r = series_sqrt(arg, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(r);
    }
}

}  // namespace

BENCHMARK(bench_normal_order_word)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(bench_nested_commutator);
BENCHMARK(bench_series_sqrt)->Arg(1)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
