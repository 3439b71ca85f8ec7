#include <benchmark/benchmark.h>

#include "wiretap/clustering.hpp"
#include "wiretap/eval.hpp"
#include "wiretap/training.hpp"

using namespace wiretap;

namespace {

WiretapModel make_model(std::size_t m, std::size_t n) {
    RngStream rng(1);
    return make_wiretap_model({m, n, Normalization::batch_average}, rng);
}

void BM_dense_forward_batch(benchmark::State& state) {
    const auto batch = static_cast<std::size_t>(state.range(0));
    RngStream rng(2);
    const DenseLayer layer = make_dense(16, 16, Activation::relu, rng);
    Matrix x(batch, 16);
    for (double& v : x.storage()) v = rng.gaussian();
    for (auto _ : state) benchmark::DoNotOptimize(dense_forward_batch(layer, x));
}
BENCHMARK(BM_dense_forward_batch)->Arg(25)->Arg(300);

void BM_stack_backward(benchmark::State& state) {
    const auto batch = static_cast<std::size_t>(state.range(0));
    WiretapModel model = make_model(16, 2);
    RngStream rng(3);
    Matrix x(batch, 2);
    for (double& v : x.storage()) v = rng.gaussian();
    for (auto _ : state) {
        Tape tape;
        const Matrix probs = softmax_rows(stack_forward(model.bob, x, tape));
        StackGrads grads;
        benchmark::DoNotOptimize(stack_backward(model.bob, tape, probs, grads));
    }
}
BENCHMARK(BM_stack_backward)->Arg(25)->Arg(300);

void BM_softmax_rows(benchmark::State& state) {
    RngStream rng(4);
    Matrix logits(300, 16);
    for (double& v : logits.storage()) v = 10.0 * rng.gaussian();
    for (auto _ : state) benchmark::DoNotOptimize(softmax_rows(logits));
}
BENCHMARK(BM_softmax_rows);

void BM_awgn_batch(benchmark::State& state) {
    RngStream rng(5);
    Matrix x(300, 2);
    for (auto _ : state) benchmark::DoNotOptimize(bob_channel(x, 0.1, rng));
}
BENCHMARK(BM_awgn_batch);

void BM_balanced_kmeans(benchmark::State& state) {
    const auto points = static_cast<std::size_t>(state.range(0));
    RngStream rng(6);
    Matrix constellation(points, 2);
    for (double& v : constellation.storage()) v = rng.gaussian();
    for (auto _ : state) {
        RngStream krng(7);
        benchmark::DoNotOptimize(balanced_kmeans(constellation, 4, krng));
    }
}
BENCHMARK(BM_balanced_kmeans)->Arg(16)->Arg(64);

void BM_training_phase1_step(benchmark::State& state) {
    // one phase-1 step at the largest batch size in the schedule
    for (auto _ : state) {
        state.PauseTiming();
        RngStream init(8);
        Trainer trainer(make_wiretap_model({16, 2, Normalization::batch_average}, init));
        Schedule schedule;
        schedule.batch_start = schedule.batch_end = 300;
        RngStream rng(9);
        state.ResumeTiming();
        trainer.run_phase(make_phase_config(1, 1, 0.7, 12.0, 5.0), schedule, rng);
    }
}
BENCHMARK(BM_training_phase1_step)->Unit(benchmark::kMillisecond);

void BM_ser_point(benchmark::State& state) {
    const WiretapModel model = make_model(16, 2);
    for (auto _ : state) {
        RngStream rng(10);
        benchmark::DoNotOptimize(estimate_ser(model, nullptr, {10.0}, 7.0, 5000, rng));
    }
}
BENCHMARK(BM_ser_point)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
