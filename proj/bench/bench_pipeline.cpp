// Serial vs OpenMP timing for the per-pool kernels: replay, movement
// detection and the analysis pass, on a generated log.
//
//   bench_pipeline [approx_events]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "poolscope/movement.hpp"
#include "poolscope/parallel.hpp"
#include "poolscope/replay.hpp"
#include "poolscope/reports.hpp"
#include "poolscope/scenario.hpp"

using namespace poolscope;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <class F>
double timed(const char* name, F&& fn) {
    const auto t0 = clock_type::now();
    fn();
    const double s = seconds_since(t0);
    std::printf("  %-28s %8.3f s\n", name, s);
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    const std::uint64_t approx_events =
        argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 300000ull;

    std::printf("generating ~%llu events (%d threads available)\n",
                static_cast<unsigned long long>(approx_events), max_threads());
    GeneratedData data;
    timed("generate", [&] { data = generate_scenario(large_scenario(approx_events)); });
    std::printf("  events: %zu, pools: %zu\n", data.events.size(), data.directory.pools().size());

    ReplayResult serial_result, parallel_result;
    const double t_serial =
        timed("replay (serial)", [&] {
            serial_result = replay(data.events, ReplayMode::derive, &data.directory, Exec::serial);
        });
    const double t_parallel =
        timed("replay (openmp)", [&] {
            parallel_result =
                replay(data.events, ReplayMode::derive, &data.directory, Exec::parallel);
        });
    std::printf("  replay speedup: %.2fx\n", t_serial / t_parallel);

    // both paths must agree bit for bit
    for (const auto& [pool_id, series] : serial_result.pools) {
        const PoolSnapshotSeries& other = parallel_result.pools.at(pool_id);
        if (series.rows.size() != other.rows.size() ||
            series.rows.back().reserve0 != other.rows.back().reserve0 ||
            series.rows.back().liquidity != other.rows.back().liquidity) {
            std::fprintf(stderr, "serial/parallel mismatch in %s\n", pool_id.c_str());
            return 2;
        }
    }

    std::vector<MovementRecord> moves_serial, moves_parallel;
    const double m_serial = timed("movements (serial)", [&] {
        moves_serial = detect_movements(data.events, 6000, MatchMode::injective, Exec::serial);
    });
    const double m_parallel = timed("movements (openmp)", [&] {
        moves_parallel = detect_movements(data.events, 6000, MatchMode::injective, Exec::parallel);
    });
    std::printf("  movement records: %zu, speedup: %.2fx\n", moves_serial.size(),
                m_serial / m_parallel);
    if (moves_serial.size() != moves_parallel.size()) {
        std::fprintf(stderr, "serial/parallel movement mismatch\n");
        return 2;
    }

    const auto tmp = std::filesystem::temp_directory_path() / "poolscope_bench";
    RunConfig config;
    config.min_risk_days = 5;
    const double a_serial = timed("analyze (serial)", [&] {
        config.exec = Exec::serial;
        write_analysis_reports(tmp / "serial", data.events, serial_result, data.directory,
                               data.numeraire_usd, config);
    });
    const double a_parallel = timed("analyze (openmp)", [&] {
        config.exec = Exec::parallel;
        write_analysis_reports(tmp / "parallel", data.events, parallel_result, data.directory,
                               data.numeraire_usd, config);
    });
    std::printf("  analyze speedup: %.2fx\n", a_serial / a_parallel);
    std::filesystem::remove_all(tmp);
    return 0;
}
