// Regenerates data/tw2_cdf.csv from the Painleve-II reference integrator.
// The output is deterministic; the committed table's checksum is frozen in
// the test suite, so regeneration should be byte-identical.

#include <cstdio>
#include <string>
#include <vector>

#include "../tests/oracle/painleve_tw2.hpp"

int main(int argc, char** argv) {
    const std::string out_path = argc > 1 ? argv[1] : "data/tw2_cdf.csv";
    const double s_min = -10.0, s_max = 6.0, step = 0.01;
    const int count = static_cast<int>((s_max - s_min) / step + 0.5) + 1;

    std::vector<double> grid(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) grid[static_cast<size_t>(i)] = s_min + step * i;

    tw2_oracle::Options opts;
    opts.s_start = 10.0;
    opts.max_step = 2.5e-4;
    const std::vector<double> cdf = tw2_oracle::f2_cdf(grid, opts);

    std::FILE* out = std::fopen(out_path.c_str(), "wb");
    if (!out) {
        std::perror(out_path.c_str());
        return 1;
    }
    std::fprintf(out, "# tw2-table v1\n");
    std::fprintf(out, "# Tracy-Widom order-2 CDF, uniform grid, columns: s,F2(s)\n");
    std::fprintf(out, "# generated by tw2_table_gen (Painleve II / Hastings-McLeod, RK4 h=%g, s0=%g)\n",
                 opts.max_step, opts.s_start);
    for (int i = 0; i < count; ++i)
        std::fprintf(out, "%.17g,%.17g\n", grid[static_cast<size_t>(i)],
                     cdf[static_cast<size_t>(i)]);
    std::fclose(out);
    std::printf("wrote %d rows to %s\n", count, out_path.c_str());
    return 0;
}
