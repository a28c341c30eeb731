// End-to-end acceptance gate: ten checks over the canonical alpha = sqrt(2)
// test spectra S1 = {[0,1)} and S2 = {[0,1), [2, 2+sqrt2)}, each printed as
// one [PASS]/[FAIL] line with its headline numbers and elapsed time.
// Exit status 0 iff all ten pass.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qb/avdonin.hpp"
#include "qb/config.hpp"
#include "qb/duality.hpp"
#include "qb/errors.hpp"
#include "qb/fourier.hpp"
#include "qb/gram.hpp"
#include "qb/lattice.hpp"
#include "qb/nodeset.hpp"
#include "qb/qnum.hpp"
#include "qb/runner.hpp"
#include "qb/sampling.hpp"
#include "qb/spectral.hpp"
#include "qb/spectrum.hpp"
#include "oracles.hpp"

using namespace qb;

namespace {

std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Criterion {
  bool pass = false;
  std::string detail;
};

Spectrum make_s1(const Alpha& a) {
  return Spectrum::from_bands({{QNum(0ll), QNum(1ll)}}, a);
}

Spectrum make_s2(const Alpha& a) {
  return Spectrum::from_bands(
      {{QNum(0ll), QNum(1ll)}, {QNum(2ll), QNum(to_mpq(2), 1)}}, a);
}

// every value of `sub` must appear in the sorted list `super`, exactly
std::size_t exact_hits(const std::vector<QNum>& super, const NodeSet& sub,
                       const Alpha& a) {
  std::size_t bi = 0, hits = 0;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    while (bi < super.size() && qnum_less(super[bi], sub.values[i], a)) ++bi;
    if (bi < super.size() && super[bi] == sub.values[i]) {
      ++hits;
      ++bi;
    }
  }
  return hits;
}

// 1. The blocked partition equals the cut-and-project enumeration over
//    |n| <= 2000, and an independent quadratic box enumeration confirms the
//    sweep misses nothing at desk scale.
Criterion criterion1(const Alpha& a, const Spectrum& s1, const Spectrum& s2) {
  const Lattice2 gam = gamma_lattice(a);
  const Lattice2 dual = dual_lattice(gam, a);

  const PartitionReport r1 = verify_partition(dual, s1, -2000, 2000, a);
  const PartitionReport r2 = verify_partition(dual, s2, -2000, 2000, a);

  // box coefficients +-300 cover every block |n| <= 200:
  // the solved coordinate is bounded by 200*sqrt2 + span < 300
  std::size_t h1 = 0, h2 = 0, n1 = 0, n2 = 0;
  {
    const std::vector<QNum> box = test::brute_force_cut(dual, s1, false, 300, 300, a);
    const NodeSet part = sorted_by_value(partition_enumerate(s1, a, -200, 200), a);
    n1 = part.size();
    h1 = exact_hits(box, part, a);
  }
  {
    const std::vector<QNum> box = test::brute_force_cut(dual, s2, false, 300, 300, a);
    const NodeSet part = sorted_by_value(partition_enumerate(s2, a, -200, 200), a);
    n2 = part.size();
    h2 = exact_hits(box, part, a);
  }

  Criterion c;
  c.pass = r1.equal && r2.equal && h1 == n1 && h2 == n2;
  c.detail = fmt(
      "partition = cut set at |n|<=2000 (S1 %zu, S2 %zu nodes)%s; "
      "box oracle |coeff|<=300 finds all blocks |n|<=200 (%zu/%zu, %zu/%zu)",
      r1.partition_count, r2.partition_count,
      (r1.equal && r2.equal) ? "" : " MISMATCH", h1, n1, h2, n2);
  if (!r1.detail.empty()) c.detail += " | " + r1.detail;
  if (!r2.detail.empty()) c.detail += " | " + r2.detail;
  return c;
}

// 2. s_n - s_{n-1} = #block_n = phi(n alpha), exactly, for |n| <= 10^4.
Criterion criterion2(const Alpha& a, const Spectrum& s1, const Spectrum& s2) {
  Criterion c;
  c.pass = true;
  std::size_t total1 = 0, total2 = 0;
  for (int which = 0; which < 2; ++which) {
    const Spectrum& s = which == 0 ? s1 : s2;
    const NodeSet part = partition_enumerate(s, a, -10000, 10000);
    (which == 0 ? total1 : total2) = part.size();
    for (long long n = -10000; n <= 10000 && c.pass; ++n) {
      const long long diff = part.s(n) - part.s(n - 1);
      const long long expected = phi(s, QNum(to_mpq(0), n), a);
      if (diff != expected) {
        c.pass = false;
        c.detail = fmt("S%d block %lld: count %lld != phi %lld", which + 1, n,
                       diff, expected);
      }
    }
  }
  if (c.pass)
    c.detail = fmt(
        "s_n - s_{n-1} = phi(n alpha) for all |n| <= 10^4 "
        "(S1 %zu nodes, S2 %zu nodes)",
        total1, total2);
  return c;
}

// 3. Per-block delta sums match their closed form to 1e-9 for |n| <= 10^4.
Criterion criterion3(const Alpha& a, const Spectrum& s1, const Spectrum& s2) {
  Criterion c;
  double worst1 = 0.0, worst2 = 0.0;
  for (int which = 0; which < 2; ++which) {
    const Spectrum& s = which == 0 ? s1 : s2;
    const NodeSet part = partition_enumerate(s, a, -10000, 10000);
    const DeltaSeq ds = deltas(part, s.measure(), a);
    double& worst = which == 0 ? worst1 : worst2;
    for (long long n = -10000; n <= 10000; ++n) {
      const BlockSumCheck chk = block_sum_identity(s, a, ds, n);
      worst = std::max(worst, chk.abs_err);
    }
  }
  c.pass = worst1 <= 1e-9 && worst2 <= 1e-9;
  c.detail = fmt("block sums vs closed form, worst |lhs-rhs|: S1 %.3g, S2 %.3g"
                 " (tolerance 1e-9)",
                 worst1, worst2);
  return c;
}

// 4. s_n = n mes S + psi(n alpha) + const with bounded psi: the deviation sup
//    grows < 5% from window 10^4 to 10^5; for S1 it is exactly zero.
Criterion criterion4(const Alpha& a, const Spectrum& s1, const Spectrum& s2) {
  const BoundednessReport b1 = s_sequence_boundedness(s1, a, -100000, 100000);
  const BoundednessReport small2 = s_sequence_boundedness(s2, a, -10000, 10000);
  const BoundednessReport big2 = s_sequence_boundedness(s2, a, -100000, 100000);
  const double growth = big2.sup_dev / small2.sup_dev;
  Criterion c;
  c.pass = b1.sup_dev == 0.0 && growth < 1.05;
  c.detail = fmt(
      "S1 sup deviation exactly %g; S2 sup %.17g (1e4) -> %.17g (1e5), "
      "growth %.6f < 1.05",
      b1.sup_dev, small2.sup_dev, big2.sup_dev, growth);
  return c;
}

// 5. Mean condition: S1 reaches c ~ 1/2 with sup deviation <= 0.9 * 0.25 at
//    some N <= 10^3; S2 passes its 1/(4 mes) threshold with >= 10% margin at
//    some N <= 10^4. Window means range over a in [-1e5, 1e5].
Criterion criterion5(const Alpha& a, const Spectrum& s1, const Spectrum& s2) {
  const AvdoninReport r1 = check_conditions(s1, a, -100100 - 64, 110000 + 64,
                                            {10, 100, 1000}, -100000, 100000,
                                            false);
  bool s1_n_ok = false;
  for (const MeanRow& row : r1.table)
    s1_n_ok = s1_n_ok || (row.N <= 1000 && row.sup_deviation <= 0.9 * 0.25);

  const double mes2 = qnum_to_double(s2.measure(), a);
  const long long nlo = static_cast<long long>(std::floor(-100000.0 / mes2)) - 64;
  const long long nhi = static_cast<long long>(std::ceil(110000.0 / mes2)) + 64;
  const AvdoninReport r2 = check_conditions(s2, a, nlo, nhi,
                                            {100, 1000, 10000}, -100000,
                                            100000, false);

  Criterion c;
  const bool s1_ok = r1.verdict_a && r1.verdict_b && r1.verdict_c &&
                     r1.threshold == 0.25 && std::abs(r1.c_estimate - 0.5) <= 0.01 &&
                     s1_n_ok;
  const bool s2_ok = r2.verdict_a && r2.verdict_b && r2.verdict_c &&
                     r2.N_used <= 10000 && r2.margin >= 0.10;
  c.pass = s1_ok && s2_ok;
  c.detail = fmt(
      "S1: c=%.6f, sup@N=1000 %.6g <= 0.225, threshold 0.25; "
      "S2: N=%lld sup %.6g vs threshold %.6g, margin %.4f",
      r1.c_estimate, r1.table.back().sup_deviation, r2.N_used,
      r2.sup_block_deviation, r2.threshold, r2.margin);
  return c;
}

// 6. Finite sections of the S2 system: conditioning plateaus (drift < 2x over
//    radii 25/50/100), lambda_min interlaces, and a near-duplicate node at
//    R = 100 collapses lambda_min by >= 10^3.
Criterion criterion6(const Alpha& a, const Spectrum& s2) {
  const std::vector<SpectralBounds> sweep = window_sweep(
      s2, a, {25, 50, 100}, LatticeSide::Primal, Perturb::None, 1e-10);
  const std::vector<SpectralBounds> bumped = window_sweep(
      s2, a, {100}, LatticeSide::Primal, Perturb::NearDuplicate, 1e-10);

  double cond_lo = sweep[0].cond, cond_hi = sweep[0].cond;
  bool interlaced = true, positive = true;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    cond_lo = std::min(cond_lo, sweep[i].cond);
    cond_hi = std::max(cond_hi, sweep[i].cond);
    positive = positive && sweep[i].lambda_min > 0.0;
    if (i > 0)
      interlaced = interlaced && sweep[i].lambda_min <= sweep[i - 1].lambda_min &&
                   sweep[i].lambda_max >= sweep[i - 1].lambda_max;
  }
  const double drift = cond_hi / cond_lo;
  const double drop = sweep[2].lambda_min / bumped[0].lambda_min;

  Criterion c;
  c.pass = positive && interlaced && drift < 2.0 && drop >= 1e3;
  c.detail = fmt(
      "cond %.1f / %.1f / %.1f (drift %.3f < 2), lambda_min non-increasing %s, "
      "near-duplicate drop %.3g >= 1e3",
      sweep[0].cond, sweep[1].cond, sweep[2].cond, drift,
      interlaced ? "yes" : "NO", drop);
  return c;
}

// 7. Reconstruction from samples on Lambda cut to [-30, 30]: CG at tol 1e-10
//    interpolates, and its interior error on [-10, 10] equals the dense QR
//    reference within 1%. The common value is the orthogonal-projection
//    floor of truncating to 145 kernels, measured by the QR oracle before
//    the 0.05 threshold was frozen; no solver can beat it on this data.
Criterion criterion7(const Alpha& a, const Spectrum& s2) {
  const SpectrumKernel ker(s2, a);
  const BandlimitedSignal f = synthesize_random(s2, 40, 20.0, 12345);
  const std::vector<QNum> nodes = window_values(s2, a, 30, LatticeSide::Primal);
  const std::vector<std::complex<double>> samples = sample_signal(f, ker, nodes, a);

  const ReconstructionResult rec = reconstruct(samples, nodes, s2, a, 1e-10);
  const double cg_err = interior_error(f, rec.reconstruction, ker, -10.0, 10.0, 0.01);

  const GramMatrix g = gram_from_values(nodes, s2, a);
  const std::vector<std::complex<double>> qr = test::qr_solve_gram(g, samples);
  BandlimitedSignal qr_sig;
  qr_sig.centers = rec.reconstruction.centers;
  qr_sig.coeffs = qr;
  const double qr_err = interior_error(f, qr_sig, ker, -10.0, 10.0, 0.01);
  const double rel = std::abs(cg_err - qr_err) / qr_err;

  Criterion c;
  c.pass = rec.cg_residual <= 1e-10 && cg_err <= 0.05 && rel <= 0.01;
  c.detail = fmt(
      "%zu nodes, CG residual %.3g (%zu iters); interior error %.9f vs QR "
      "oracle %.9f (rel diff %.3g <= 1%%), calibrated bound 0.05",
      nodes.size(), rec.cg_residual, rec.cg_iterations, cg_err, qr_err, rel);
  return c;
}

// 8. Closed-form transform vs adaptive Gauss-Kronrod quadrature on 1000
//    random (spectrum, t) pairs; Hermitian/positive-definiteness invariants
//    on the Gram matrices built from those spectra.
Criterion criterion8(const Alpha& a) {
  std::mt19937_64 rng(987654321);
  auto uni = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1p-53; };

  double worst = 0.0;
  bool herm_ok = true, pd_ok = true;
  std::size_t grams = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int nb = 1 + static_cast<int>(uni() * 3.0);
    std::vector<Interval> bands;
    mpq_class cursor(static_cast<long>(-8 + static_cast<int>(uni() * 4)));
    for (int b = 0; b < nb; ++b) {
      mpq_class gap(static_cast<long>(1 + static_cast<int>(uni() * 6)),
                    static_cast<long>(1 + static_cast<int>(uni() * 7)));
      gap.canonicalize();
      mpq_class len(static_cast<long>(1 + static_cast<int>(uni() * 8)),
                    static_cast<long>(1 + static_cast<int>(uni() * 5)));
      len.canonicalize();
      cursor += gap;
      bands.push_back({QNum(cursor), QNum(cursor + len)});
      cursor += len;
    }
    const Spectrum s = Spectrum::from_bands(std::move(bands), a);
    const double t = -50.0 + 100.0 * uni();
    const std::complex<double> lhs = ft_indicator(s, t, a);
    const std::complex<double> rhs = test::quad_ft_indicator(s, a, t, 1e-14);
    worst = std::max(worst, std::abs(lhs - rhs));

    if (trial % 100 == 0) {
      const std::vector<QNum> nodes = window_values(s, a, 4, LatticeSide::Primal);
      if (nodes.size() < 2) continue;
      const GramMatrix g = gram_from_values(nodes, s, a);
      ++grams;
      for (std::size_t r = 0; r < g.dim() && herm_ok; ++r)
        for (std::size_t k = 0; k <= r; ++k)
          herm_ok = herm_ok && g.at(r, k) == std::conj(g.at(k, r));
      const SpectralBounds sb = spectral_bounds(g, 1e-8);
      pd_ok = pd_ok && sb.lambda_min > 0.0;
    }
  }

  Criterion c;
  c.pass = worst <= 1e-12 && herm_ok && pd_ok;
  c.detail = fmt(
      "worst |closed form - quadrature| %.3g over 1000 random (S, t) "
      "(tolerance 1e-12); %zu Gram sections Hermitian %s, positive %s",
      worst, grams, herm_ok ? "yes" : "NO", pd_ok ? "yes" : "NO");
  return c;
}

// 9. The paired finite-section experiment plateaus on both sides for both
//    spectra, and the boundary audit settles every near-endpoint lattice
//    point exactly, including the excluded p1 = b_j hits.
Criterion criterion9(const Alpha& a, const Spectrum& s1, const Spectrum& s2) {
  const DualityReport r1 = duality_experiment(s1, a, {25, 50, 100}, 1e-10);
  const DualityReport r2 = duality_experiment(s2, a, {25, 50, 100}, 1e-10);

  auto audits_exact = [](const DualityReport& r) {
    return r.primal_audit.resolved_exactly == r.primal_audit.cases.size() &&
           r.dual_audit.resolved_exactly == r.dual_audit.cases.size();
  };
  auto excluded_hi = [](const DualityReport& r, const Spectrum& s) {
    std::size_t found = 0;
    for (const auto& band : s.bands())
      for (const BoundaryCase& bc : r.dual_audit.cases)
        if (bc.exact_hit && !bc.included && bc.projection == band.hi) {
          ++found;
          break;
        }
    return found == s.bands().size();
  };

  Criterion c;
  c.pass = r1.paired_plateau && r2.paired_plateau && audits_exact(r1) &&
           audits_exact(r2) && excluded_hi(r1, s1) && excluded_hi(r2, s2);
  c.detail = fmt(
      "S1 drift %.4f/%.4f, S2 drift %.4f/%.4f (all < 2); audits %zu+%zu and "
      "%zu+%zu cases exact, every upper endpoint hit excluded",
      r1.primal_drift, r1.dual_drift, r2.primal_drift, r2.dual_drift,
      r1.primal_audit.cases.size(), r1.dual_audit.cases.size(),
      r2.primal_audit.cases.size(), r2.dual_audit.cases.size());
  return c;
}

// 10. Two full suite runs (all five subcommands) with different thread counts
//     produce byte-identical CSV/JSON artifacts and equal exit codes.
Criterion criterion10() {
  const char* base = R"({
    "alpha": {"kind": "sqrt", "value": "2"},
    "beta": "1",
    "terms": [
      {"coeff": "1", "lo": {"u": "0", "v": 0}, "len": {"n": 0, "m": 1}},
      {"coeff": "1", "lo": {"u": "2", "v": 0}, "len": {"n": 1, "m": 0}}
    ]
  })";

  struct Job {
    const char* name;
    void (*tune)(RunConfig&);
  };
  const Job jobs[] = {
      {"construct",
       [](RunConfig& c) {
         c.n_lo = -200;
         c.n_hi = 200;
         c.n_range_explicit = true;
       }},
      {"verify",
       [](RunConfig& c) {
         c.subcommand = "verify";
         c.a_lo = -2000;
         c.a_hi = 2000;
         c.mean_window_sizes = {10, 100};
       }},
      {"certify",
       [](RunConfig& c) {
         c.subcommand = "certify";
         c.radii = {25, 50};
       }},
      {"reconstruct",
       [](RunConfig& c) {
         c.subcommand = "reconstruct";
         c.kernels = 5;
         c.synth_half_width = 5.0;
         c.seed = 7;
         c.sample_radius = 10;
         c.eval_radius = 4;
         c.grid_step = 0.05;
       }},
      {"duality",
       [](RunConfig& c) {
         c.subcommand = "duality";
         c.radii = {25, 50};
       }},
  };

  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "qb_acceptance_runs";
  fs::remove_all(root);

  auto run_suite = [&](const char* tag, const char* threads,
                       std::vector<int>& codes) {
    const fs::path dir = root / tag;
    fs::create_directories(dir);
    setenv("QB_THREADS", threads, 1);
    for (const Job& j : jobs) {
      RunConfig c = load_config(base);
      j.tune(c);
      c.out_csv = (dir / (std::string(j.name) + ".csv")).string();
      c.out_json = (dir / (std::string(j.name) + ".json")).string();
      codes.push_back(run(c).exit_code);
    }
    unsetenv("QB_THREADS");
  };

  std::vector<int> codes_a, codes_b;
  run_suite("a", "1", codes_a);
  run_suite("b", "4", codes_b);

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  bool identical = true, all_zero = true;
  std::string first_diff;
  for (const Job& j : jobs) {
    for (const char* ext : {".csv", ".json"}) {
      const std::string fa = slurp(root / "a" / (std::string(j.name) + ext));
      const std::string fb = slurp(root / "b" / (std::string(j.name) + ext));
      if (fa.empty() || fa != fb) {
        identical = false;
        if (first_diff.empty()) first_diff = std::string(j.name) + ext;
      }
    }
  }
  for (std::size_t i = 0; i < codes_a.size(); ++i)
    all_zero = all_zero && codes_a[i] == 0 && codes_b[i] == 0;
  fs::remove_all(root);

  Criterion c;
  c.pass = identical && all_zero && codes_a == codes_b;
  c.detail = fmt(
      "5 subcommands x 2 runs (1 vs 4 threads): artifacts %s, exit codes %s",
      identical ? "byte-identical" : ("DIFFER at " + first_diff).c_str(),
      all_zero ? "all 0" : "NONZERO");
  return c;
}

}  // namespace

int main() {
  const Alpha alpha = Alpha::sqrt_of(mpq_class(2));
  const Spectrum s1 = make_s1(alpha);
  const Spectrum s2 = make_s2(alpha);

  struct Entry {
    int number;
    double limit_s;  // 0: no stated limit
    Criterion (*fn)(const Alpha&, const Spectrum&, const Spectrum&);
  };

  const Entry entries[] = {
      {1, 10.0, [](const Alpha& a, const Spectrum& x, const Spectrum& y) {
         return criterion1(a, x, y);
       }},
      {2, 5.0, [](const Alpha& a, const Spectrum& x, const Spectrum& y) {
         return criterion2(a, x, y);
       }},
      {3, 10.0, [](const Alpha& a, const Spectrum& x, const Spectrum& y) {
         return criterion3(a, x, y);
       }},
      {4, 0.0, [](const Alpha& a, const Spectrum& x, const Spectrum& y) {
         return criterion4(a, x, y);
       }},
      {5, 60.0, [](const Alpha& a, const Spectrum& x, const Spectrum& y) {
         return criterion5(a, x, y);
       }},
      {6, 120.0, [](const Alpha& a, const Spectrum&, const Spectrum& y) {
         return criterion6(a, y);
       }},
      {7, 60.0, [](const Alpha& a, const Spectrum&, const Spectrum& y) {
         return criterion7(a, y);
       }},
      {8, 0.0, [](const Alpha& a, const Spectrum&, const Spectrum&) {
         return criterion8(a);
       }},
      {9, 0.0, [](const Alpha& a, const Spectrum& x, const Spectrum& y) {
         return criterion9(a, x, y);
       }},
      {10, 0.0, [](const Alpha&, const Spectrum&, const Spectrum&) {
         return criterion10();
       }},
  };

  int passed = 0;
  for (const Entry& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = e.fn(alpha, s1, s2);
    } catch (const std::exception& ex) {
      c.pass = false;
      c.detail = std::string("exception: ") + ex.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (e.limit_s > 0.0 && elapsed > e.limit_s) {
      c.pass = false;
      c.detail += fmt(" [exceeded %.0f s budget]", e.limit_s);
    }
    std::printf("[%s] criterion %d: %s (%.2f s)\n", c.pass ? "PASS" : "FAIL",
                e.number, c.detail.c_str(), elapsed);
    std::fflush(stdout);
    if (c.pass) ++passed;
  }

  std::printf("ACCEPTANCE: %d/10\n", passed);
  return passed == 10 ? 0 : 1;
}
