// Runs every acceptance criterion at its stated tolerance and prints one
// line per criterion. Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <string>
#include <vector>

#include <ncgasket/ncgasket.hpp>

using namespace ncgasket;

namespace {

struct Criterion {
  int id;
  const char* suite;
  const char* what;
  double max_seconds;  // 0 = no runtime limit
};

const std::vector<Criterion> kCriteria{
    {1, "dense-oracle", "blockwise ops and norm formula vs dense, 200 pairs per level n <= 4", 60.0},
    {2, "eigenform", "E_{n+1}[harmonic b] / E_n[b] = 0.6, n <= 5", 0.0},
    {3, "fiber-minimization", "fiber minimum and argmin vs harmonic extension, n in {0,1}", 0.0},
    {4, "self-similarity", "energy splits over first-factor slices, n <= 4", 0.0},
    {5, "oscillation", "osc contraction and extension distance, t in {0.5,0.6,0.8}", 0.0},
    {6, "commutator", "dense commutator norm = osc, n <= 3", 0.0},
    {7, "lip-norm", "affine Lip-norm stationarity and approximation bound", 0.0},
    {8, "metric-dimension", "slope of log N(T) over T = 2^0..2^20 vs log3/log2", 1.0},
    {9, "connes-trace", "trace residue closed form, extrapolation, Hilbert trace factor", 0.0},
    {10, "energy-residue", "energy residue = E_inf / log 2, dense path, extrapolation", 0.0},
    {11, "traces", "tracial and unital traces, omega = (chi_1 + chi_3)/2", 0.0},
    {12, "norm-energy", "per-level norm-energy inequality on harmonic chains, n <= 5", 0.0},
    {13, "classical-bridge", "vertex counts and classical/quantum commutation", 0.0},
};

}  // namespace

int main() {
  SuiteOptions opt;
  opt.seed = resolve_seed(std::nullopt);
  int failed = 0;
  for (const auto& c : kCriteria) {
    const VerificationReport r = run_suite(c.suite, opt);
    bool ok = r.passed();
    std::string detail;
    int bad = 0;
    for (const auto& cs : r.cases)
      if (!cs.pass) {
        if (bad++ == 0)
          detail = "; " + cs.name + ": measured " + format_double(cs.measured) + ", expected " +
                   format_double(cs.expected) + " +/- " + format_double(cs.tolerance);
      }
    if (bad > 1) detail += " (+" + std::to_string(bad - 1) + " more)";
    if (c.max_seconds > 0 && r.elapsed >= c.max_seconds) {
      ok = false;
      detail += "; runtime " + format_double(r.elapsed) + " s exceeds " + format_double(c.max_seconds) + " s";
    }
    std::printf("[%s] criterion %2d %-18s %zu cases, %.2f s: %s%s\n", ok ? "PASS" : "FAIL", c.id, c.suite,
                r.cases.size(), r.elapsed, c.what, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(kCriteria.size()) - failed, kCriteria.size());
  return failed == 0 ? 0 : 1;
}
