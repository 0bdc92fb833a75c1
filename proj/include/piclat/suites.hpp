#pragma once

#include <functional>
#include <string>
#include <vector>

#include "piclat/oracle7.hpp"
#include "piclat/report.hpp"

namespace piclat {

// PICLAT_THREADS if set, else the hardware concurrency (at least 1)
unsigned worker_threads();
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

struct TableOptions {
    std::string family;  // A, BC, D, E, FG, tori
    int nmin = 2, nmax = 6;  // A
    int lmin = 0, lmax = 0;  // BC, D (0 = family default)
    int dim = 1, g = 3, dmax = 4;  // tori
};

struct TableCell {
    std::string quantity;
    std::string engine;
    std::string oracle;
    bool ok = true;
};

struct TableRow {
    std::string group;
    std::string delta;  // lift or family shorthand
    std::vector<TableCell> cells;
    bool ok = true;
};

std::vector<TableRow> family_table(const TableOptions& opt, unsigned threads);
Json table_json(const std::string& family, const std::vector<TableRow>& rows);
std::string table_markdown(const std::string& family, const std::vector<TableRow>& rows);

// torus sweep without materializing rows; returns (rows, mismatches) and keeps the first failures
struct SweepCount {
    long rows = 0;
    long failed = 0;
    std::vector<std::string> failures;
};
SweepCount torus_sweep(int dim_max, int g_min, int g_max, int dmax, unsigned threads);

struct SuiteResult {
    std::string name;
    long passed = 0;
    long failed = 0;
    std::vector<std::string> failures;  // first few
    double seconds = 0;
    bool ok() const { return failed == 0 && passed > 0; }
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, unsigned threads);

// mixed data (tori x simple factors) used by the identity suites
struct MixedDatum {
    std::string spec;
    long delta;  // multiple of the shorthand unit (0 when the group has none)
};
const std::vector<MixedDatum>& mixed_data();

}  // namespace piclat
