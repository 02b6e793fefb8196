// Compares the OpenMP pair-scoring and ablation kernels against their serial
// reference implementations and reports timings plus agreement.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "skg/harness.hpp"
#include "skg/mapping.hpp"

using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 300;
    skg::SyntheticSpec spec;
    spec.seed = 42;
    spec.n_etypes = n;
    spec.edge_density = 0.02;
    spec.is_a_depth = 2;
    spec.overlap_fraction = 0.5;
    skg::SyntheticPair pair = skg::generate_synthetic(spec);
    std::printf("pair: %zu + %zu etypes, %zu + %zu properties\n",
                pair.x.etypes.size(), pair.y.etypes.size(),
                pair.x.object_properties.size(), pair.y.object_properties.size());

    skg::SimilarityConfig cfg;
    skg::SimilarityEngine engine(cfg);
    std::vector<const skg::Skg*> schemas{&pair.x, &pair.y};
    skg::MappingOptions opts;

    auto t0 = Clock::now();
    auto serial = skg::score_pairs_serial(schemas, engine, opts);
    double t_serial = ms_since(t0);
    t0 = Clock::now();
    auto parallel = skg::score_pairs_parallel(schemas, engine, opts);
    double t_parallel = ms_since(t0);

    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i)
        same = serial[i].a == parallel[i].a && serial[i].b == parallel[i].b &&
               serial[i].decision.score == parallel[i].decision.score;
    std::printf("pair scoring: serial %.1f ms, parallel %.1f ms, speedup %.2fx, %s\n",
                t_serial, t_parallel, t_serial / t_parallel,
                same ? "results identical" : "RESULTS DIFFER");

    t0 = Clock::now();
    auto ab_serial = skg::ablate_serial(pair.x, pair.y, pair.truth, {1, 2, 3});
    double ta_serial = ms_since(t0);
    t0 = Clock::now();
    auto ab_parallel = skg::ablate(pair.x, pair.y, pair.truth, {1, 2, 3}, true);
    double ta_parallel = ms_since(t0);

    bool ab_same = ab_serial.removals.size() == ab_parallel.removals.size();
    for (std::size_t i = 0; ab_same && i < ab_serial.removals.size(); ++i)
        ab_same = ab_serial.removals[i].etype_id == ab_parallel.removals[i].etype_id &&
                  ab_serial.removals[i].coverage == ab_parallel.removals[i].coverage &&
                  ab_serial.removals[i].flexibility == ab_parallel.removals[i].flexibility;
    std::printf("ablation: serial %.1f ms, parallel %.1f ms, speedup %.2fx, %s\n",
                ta_serial, ta_parallel, ta_serial / ta_parallel,
                ab_same ? "results identical" : "RESULTS DIFFER");
    return (same && ab_same) ? 0 : 1;
}
