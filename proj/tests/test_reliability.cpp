#include <doctest.h>

#include <cmath>

#include "core/codes.hpp"
#include "core/quadrature.hpp"
#include "core/reliability.hpp"
#include "core/rng.hpp"

using namespace raidlab;

TEST_CASE("afr: one-year mttf, long mttf, and the 1e6-hour example") {
  auto one_year = afr_from_mttf(kHoursPerYear);
  CHECK(one_year.exact == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(afr_from_mttf(1e12).exact == doctest::Approx(0.0).epsilon(1e-6));
  auto typical = afr_from_mttf(1e6);
  CHECK(typical.approx == doctest::Approx(0.008766));
  CHECK(std::abs(typical.exact - typical.approx) < 5e-5);  // 4-digit agreement
  CHECK_THROWS_AS(afr_from_mttf(0.0), std::invalid_argument);
}

TEST_CASE("drive params from an annual failure rate") {
  DriveParams d = DriveParams::from_afr(0.02, 24.0);
  CHECK(afr_from_mttf(d.mttf_hours).exact == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(d.mttr_hours == 24.0);
  CHECK_THROWS_AS(DriveParams::from_afr(1.5, 1.0), std::invalid_argument);
}

TEST_CASE("kofn no-repair: limits and the brute-force oracle") {
  CHECK(kofn_no_repair(5, 0, 0.9) == doctest::Approx(std::pow(0.9, 5)));
  CHECK(kofn_no_repair(7, 2, 1.0) == doctest::Approx(1.0));
  // n=4, k=1 at r=0.9 against enumeration of all 2^4 failure vectors.
  double oracle = 0.0;
  for (int mask = 0; mask < 16; ++mask) {
    int failed = __builtin_popcount(unsigned(mask));
    if (failed <= 1)
      oracle += std::pow(0.9, 4 - failed) * std::pow(0.1, failed);
  }
  CHECK(oracle == doctest::Approx(0.9477));
  CHECK(kofn_no_repair(4, 1, 0.9) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("raid5 transient: t=0, no-repair limit, and the MTTDL integral") {
  DriveParams d;
  d.mttf_hours = 4.0e4;
  d.mttr_hours = 24.0;
  const int n = 7;
  CHECK(raid5_transient(n, d, 0.0) == doctest::Approx(1.0));

  DriveParams norepair = d;
  norepair.mttr_hours = 1e18;  // mu -> 0
  for (double t : {100.0, 2000.0, 30000.0}) {
    double expect = kofn_no_repair(n + 1, 1, std::exp(-norepair.delta() * t));
    CHECK(raid5_transient(n, norepair, t) == doctest::Approx(expect).epsilon(1e-9));
  }

  // Adaptive-quadrature integral of R(t) vs the closed-form MTTDL.
  double zeta, eta;
  raid5_roots(n, d.delta(), d.mu(), &zeta, &eta);
  double slow = std::min(std::abs(zeta), std::abs(eta));
  double integral = integrate_to_infinity(
      [&](double t) { return raid5_transient(n, d, t); }, 1.0 / slow, 1e-10);
  double closed = mttdl_closed_form(MttdlMethod::Raid5, n, 0, 0, d);
  CHECK(integral == doctest::Approx(closed).epsilon(1e-6));
}

TEST_CASE("chen and angus closed forms reproduce the validation table") {
  DriveParams d;
  d.mttr_hours = 1.0;
  d.mttf_hours = 2000.0;
  CHECK(mttdl_closed_form(MttdlMethod::Chen, 10, 10, 1, d) ==
        doctest::Approx(4.4444444e4).epsilon(1e-6));
  d.mttf_hours = 1500.0;
  CHECK(mttdl_closed_form(MttdlMethod::Chen, 10, 10, 2, d) ==
        doctest::Approx(4.6875e6).epsilon(1e-9));
  d.mttf_hours = 2000.0;
  CHECK(mttdl_closed_form(MttdlMethod::Angus, 10, 0, 0, d) ==
        doctest::Approx(200.0).epsilon(1e-9));
  CHECK(mttdl_closed_form(MttdlMethod::Angus, 10, 0, 1, d) ==
        doctest::Approx(4.467e4).epsilon(2e-4));
  d.mttf_hours = 1500.0;
  CHECK(mttdl_closed_form(MttdlMethod::Angus, 10, 0, 2, d) ==
        doctest::Approx(9.438e6).epsilon(1e-3));
}

TEST_CASE("pseg reproduces the published independent-model table") {
  LSEParams p;  // 512 B sectors, l=128, m=8, P_bit=1e-14
  CHECK(p.ps() == doctest::Approx(4.096e-11).epsilon(1e-6));
  CHECK(pseg(IdrScheme::None, ErrorModel::Independent, p) ==
        doctest::Approx(5.2e-9).epsilon(0.02));
  CHECK(pseg(IdrScheme::RS, ErrorModel::Independent, p) ==
        doctest::Approx(6.2e-81).epsilon(0.03));
  CHECK(pseg(IdrScheme::SPC, ErrorModel::Independent, p) ==
        doctest::Approx(1.3e-17).epsilon(0.05));
  CHECK(pseg(IdrScheme::IPC, ErrorModel::Independent, p) ==
        doctest::Approx(1.6e-18).epsilon(0.05));
}

TEST_CASE("pseg correlated model with the default burst vector") {
  LSEParams p;
  CHECK(p.mean_burst() == doctest::Approx(1.0291).epsilon(1e-9));
  double sum = 0.0;
  for (double b : LSEParams::default_burst_pmf()) sum += b;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pseg(IdrScheme::None, ErrorModel::Correlated, p) ==
        doctest::Approx(5.0e-9).epsilon(0.05));
  CHECK(pseg(IdrScheme::RS, ErrorModel::Correlated, p) ==
        doctest::Approx(2.5e-12).epsilon(0.05));
  CHECK(pseg(IdrScheme::IPC, ErrorModel::Correlated, p) ==
        doctest::Approx(2.5e-12).epsilon(0.05));
  // The published rebuild-failure table pins SPC correlated at 3.1e-3,
  // which implies P_seg ~ 9.6e-11.
  CHECK(pseg(IdrScheme::SPC, ErrorModel::Correlated, p) ==
        doctest::Approx(9.6e-11).epsilon(0.05));
}

TEST_CASE("pseg independent equals high-precision direct summation") {
  // Oracle: long-double term-by-term sum of the binomial tails.
  auto oracle_tail = [](int l, int j0, long double ps) {
    long double sum = 0.0L;
    for (int j = j0; j <= l; ++j) {
      long double t = 1.0L;
      for (int i = 1; i <= j; ++i) t *= (long double)(l - j + i) / i;
      t *= std::pow(ps, (long double)j) * std::pow(1.0L - ps, (long double)(l - j));
      sum += t;
    }
    return (double)sum;
  };
  for (int l : {16, 64, 128, 256}) {
    LSEParams p;
    p.segment_len = l;
    p.interleaves = 8;
    if (l % p.interleaves != 0) continue;
    double ps = p.ps();
    CHECK(pseg(IdrScheme::SPC, ErrorModel::Independent, p) ==
          doctest::Approx(oracle_tail(l, 2, ps)).epsilon(1e-9));
    CHECK(pseg(IdrScheme::RS, ErrorModel::Independent, p) ==
          doctest::Approx(oracle_tail(l, 9, ps)).epsilon(1e-9));
  }
}

TEST_CASE("puf reproduces the published RAID5 column") {
  LSEParams p;
  DriveParams d;
  d.capacity_bytes = 300e9;
  d.sector_bytes = 512;
  double ps_none = pseg(IdrScheme::None, ErrorModel::Independent, p);
  CHECK(puf(8, 1, ps_none, p, d) == doctest::Approx(1.5e-1).epsilon(0.05));
  double ps_ipc = pseg(IdrScheme::IPC, ErrorModel::Independent, p);
  CHECK(puf(8, 1, ps_ipc, p, d) == doctest::Approx(6.1e-11).epsilon(0.20));
  CHECK(puf(8, 1, 0.0, p, d) == 0.0);
}

TEST_CASE("lse mttdl: limits and monotonicity") {
  DriveParams d;
  d.mttf_hours = 5e5;
  d.mttr_hours = 17.8;
  const int n = 8;
  // P_uf = 0 reduces to the N-disk-convention RAID5 closed form.
  double base = mttdl_lse_raid5(n, d, 0.0);
  double plain = ((2.0 * n - 1.0) * d.delta() + d.mu()) /
                 (n * d.delta() * (n - 1.0) * d.delta());
  CHECK(base == doctest::Approx(plain).epsilon(1e-12));
  double prev = base;
  for (double puf1 : {1e-11, 1e-8, 1e-5, 1e-2}) {
    double v = mttdl_lse_raid5(n, d, puf1);
    CHECK(v < prev);
    prev = v;
  }
  // RAID5 + IPC-level P_uf lands within a decade of RAID6 with no IDR
  // (RAID6 in degraded mode still corrects single sector errors, so its
  // rebuild-failure exposure uses the two-error bound).
  LSEParams p;
  double ps_ipc = pseg(IdrScheme::IPC, ErrorModel::Independent, p);
  double ps_none = pseg(IdrScheme::None, ErrorModel::Independent, p);
  double raid5_idr = mttdl_lse_raid5(8, d, puf(8, 1, ps_ipc, p, d));
  double raid6_plain =
      mttdl_lse_raid6(16, d.delta(), d.mu(), d.mu(),
                      puf_raid6_degraded(16, ps_none, p, d),
                      puf(16, 2, ps_none, p, d));
  double ratio = raid5_idr / raid6_plain;
  CHECK(ratio > 0.1);
  CHECK(ratio < 10.0);
}

TEST_CASE("scrubbing: exact forms, asymptotics, and the renewal integral") {
  const double pe = 1e-5;
  // hTs -> 0: exponential/deterministic ratio -> 2.
  auto tiny = scrub_error_prob(pe, 1e-7, 1.0);
  CHECK(tiny.exponential / tiny.deterministic == doctest::Approx(2.0).epsilon(1e-4));
  // Ts -> inf: both approach Pe.
  auto huge = scrub_error_prob(pe, 1.0, 1e9);
  CHECK(huge.deterministic == doctest::Approx(pe).epsilon(1e-6));
  CHECK(huge.exponential == doctest::Approx(pe).epsilon(1e-6));
  // hTs = 1: deterministic form equals the renewal-argument integral
  // (1/Ts) int_0^Ts (1 - e^{-h u}) du * Pe = (1 - (1-e^-1)) * Pe ... exactly.
  auto unit = scrub_error_prob(pe, 1.0, 1.0);
  double integral =
      adaptive_simpson([&](double u) { return 1.0 - std::exp(-u); }, 0.0, 1.0, 1e-12) * pe;
  CHECK(unit.deterministic == doctest::Approx(integral).epsilon(1e-9));
  CHECK(unit.deterministic == doctest::Approx((1.0 / std::exp(1.0)) * pe).epsilon(1e-9));
}

TEST_CASE("scrub minimum period: pole, zero load, and G_S monotonicity") {
  ScrubPeriodParams p;
  p.sigma_per_hour = 0.0;
  double at_zero = scrub_min_period(p);
  CHECK(at_zero > 0.0);
  double smax = scrub_sigma_max(p);
  p.sigma_per_hour = 0.999 * smax;
  CHECK(scrub_min_period(p) > 100.0 * at_zero);
  p.sigma_per_hour = smax;
  CHECK_THROWS_AS(scrub_min_period(p), std::domain_error);
  // Doubling the scrub granularity lowers T* while IOE grows sublinearly.
  ScrubPeriodParams a = ScrubPeriodParams{};
  ScrubPeriodParams b = a;
  b.scrub_kb = 2.0 * a.scrub_kb;
  CHECK(scrub_min_period(b) < scrub_min_period(a));
}

TEST_CASE("mirror polynomials: published two-failure coefficients") {
  CHECK(mirror_poly(MirrorOrg::BM, 8).coeffs[2] == 24);
  CHECK(mirror_poly(MirrorOrg::CD, 8).coeffs[2] == 20);  // C(5,1)+C(6,2)
  CHECK(mirror_poly(MirrorOrg::ID, 8, 2).coeffs[2] == 16);
  CHECK(mirror_poly(MirrorOrg::GRD, 8).coeffs[2] == 12);
}

TEST_CASE("enumerate_poly equals mirror_poly for all four organizations") {
  for (int n = 4; n <= 12; n += 2) {
    for (MirrorOrg org : {MirrorOrg::BM, MirrorOrg::GRD, MirrorOrg::CD}) {
      MirrorMap map = mirror_map(org, n);
      auto enumerated = enumerate_poly(
          [&](const std::vector<int>& failed) { return map.survives(failed); }, n);
      auto closed = mirror_poly(org, n);
      CHECK(enumerated.coeffs == closed.coeffs);
    }
    for (int c : {2, n / 2}) {
      if (n % c != 0 || n / c < 2) continue;
      MirrorMap map = mirror_map(MirrorOrg::ID, n, c);
      auto enumerated = enumerate_poly(
          [&](const std::vector<int>& failed) { return map.survives(failed); }, n);
      CHECK(enumerated.coeffs == mirror_poly(MirrorOrg::ID, n, c).coeffs);
    }
  }
  // CD at odd sizes as well
  for (int n : {5, 7, 9, 11}) {
    MirrorMap map = mirror_map(MirrorOrg::CD, n);
    auto enumerated = enumerate_poly(
        [&](const std::vector<int>& failed) { return map.survives(failed); }, n);
    CHECK(enumerated.coeffs == mirror_poly(MirrorOrg::CD, n).coeffs);
  }
}

TEST_CASE("shortcut terms match the comparison table") {
  const int n = 8;
  CHECK(shortcut_term(mirror_poly(MirrorOrg::BM, n)).coeff.value() ==
        doctest::Approx(n / 2.0));
  CHECK(shortcut_term(mirror_poly(MirrorOrg::CD, n)).coeff.value() ==
        doctest::Approx(double(n)));
  CHECK(shortcut_term(mirror_poly(MirrorOrg::ID, n, 2)).coeff.value() ==
        doctest::Approx(n * (n - 2) / (2.0 * 2)));
  // GRD: the derivation gives N^2/4, not the table's N(N-1)/4.
  auto grd = shortcut_term(mirror_poly(MirrorOrg::GRD, n));
  CHECK(grd.power == 2);
  CHECK(grd.coeff.value() == doctest::Approx(n * n / 4.0));
  CHECK(shortcut_named("grd", n).coeff.value() == doctest::Approx(16.0));
  CHECK(shortcut_named("raid5", n).coeff.value() == doctest::Approx(28.0));
  CHECK(shortcut_named("raid6", n).power == 3);
}

TEST_CASE("hybrid arrays: LSI and SSPiRAL leading terms via enumeration") {
  StripeLayout lsi = lsi_layout(8);
  auto lsi_poly = enumerate_poly(
      [&](const std::vector<int>& failed) {
        ErasurePattern e;
        for (int d : failed) e.cells.insert({0, d});
        return xor_recoverable(lsi, e);
      },
      8);
  auto lsi_term = shortcut_term(lsi_poly);
  CHECK(lsi_term.power == 3);
  // Only the N/2 data-between-both-parities triples are fatal; the
  // published asymptotic entry C(N,3)-N/2 is the survivable count.
  CHECK(lsi_term.coeff.value() ==
        doctest::Approx(shortcut_named("lsi", 8).coeff.value()));  // N/2
  CHECK(lsi_poly.coeffs[3] == binomial_ll(8, 3) - 4);
  // The no-repair MTTDL column pins the convention: LSI is 82/105 / delta.
  auto lsi_mttdl = poly_norepair_mttdl(lsi_poly);
  CHECK(lsi_mttdl.num == 82);
  CHECK(lsi_mttdl.den == 105);

  StripeLayout ssp = sspiral_layout();
  auto ssp_poly = enumerate_poly(
      [&](const std::vector<int>& failed) {
        ErasurePattern e;
        for (int d : failed) e.cells.insert({0, d});
        return xor_recoverable(ssp, e);
      },
      8);
  auto ssp_term = shortcut_term(ssp_poly);
  CHECK(ssp_term.power == 4);
  CHECK(ssp_term.coeff.value() == doctest::Approx(70.0 / 5.0));  // C(8,4)/5
  auto ssp_mttdl = poly_norepair_mttdl(ssp_poly);
  CHECK(ssp_mttdl.num == 701);
  CHECK(ssp_mttdl.den == 840);
}

TEST_CASE("no-repair MTTDL fractions reproduce the comparison table") {
  // The published fractions, aligned with their own decimal row:
  // BM 163/280, CD 379/840, GRD 3/8, ID 61/168, RAID6 73/168 (and RAID5
  // evaluates to 15/56 = 0.268).
  auto frac = [](const ReliabilityPolynomial& poly) {
    return poly_norepair_mttdl(poly);
  };
  auto bm = frac(mirror_poly(MirrorOrg::BM, 8));
  CHECK(bm.num == 163);
  CHECK(bm.den == 280);
  auto cd = frac(mirror_poly(MirrorOrg::CD, 8));
  CHECK(cd.num == 379);
  CHECK(cd.den == 840);
  auto grd = frac(mirror_poly(MirrorOrg::GRD, 8));
  CHECK(grd.num == 3);
  CHECK(grd.den == 8);
  auto id = frac(mirror_poly(MirrorOrg::ID, 8, 2));
  CHECK(id.num == 61);
  CHECK(id.den == 168);
  ReliabilityPolynomial raid6;
  raid6.n = 8;
  raid6.coeffs = {1, 8, 28};
  auto r6 = frac(raid6);
  CHECK(r6.num == 73);
  CHECK(r6.den == 168);
  ReliabilityPolynomial raid5;
  raid5.n = 8;
  raid5.coeffs = {1, 8};
  auto r5 = frac(raid5);
  CHECK(r5.num == 15);
  CHECK(r5.den == 56);  // the table's 0.268
}

TEST_CASE("shortcut term matches the numeric slope at eps = 1e-4") {
  const double eps = 1e-4;
  for (auto poly : {mirror_poly(MirrorOrg::BM, 8), mirror_poly(MirrorOrg::CD, 10),
                    mirror_poly(MirrorOrg::GRD, 8)}) {
    auto term = shortcut_term(poly);
    double unreliability = 1.0 - poly.eval(1.0 - eps);
    double predicted = term.coeff.value() * std::pow(eps, term.power);
    CHECK(unreliability / predicted == doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("multilevel: RAID5/1 beats RAID1/5 and the N=3 identity holds") {
  // Leading terms: RAID1/5 ~ N^2(N-1)/4 eps^4 vs RAID5/1 ~ N(N-1)/2 eps^4.
  for (int n = 3; n <= 20; ++n) {
    CHECK(shortcut_named("raid15", n).coeff.value() >
          shortcut_named("raid51", n).coeff.value());
  }
  const double r = 0.9;
  double diff = raid51_reliability(3, r) - raid15_reliability(3, r);
  double expect = 6.0 * r * r * std::pow(1.0 - r, 4);
  CHECK(diff == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("multilevel mttdl closed forms") {
  DriveParams d;
  d.mttf_hours = 1e6;
  d.mttr_hours = 10.0;
  const int D = 8;
  auto r51 = multilevel_mttdl(MultilevelKind::Raid51Path, D, d);
  const double delta = d.delta(), mu = d.mu();
  CHECK(r51.p_upper ==
        doctest::Approx((D - 1) * std::pow(delta, 3) / (2 * std::pow(mu, 3))));
  CHECK(r51.p_lower == doctest::Approx(2.0 * r51.p_upper));
  CHECK(r51.mttdl_hours ==
        doctest::Approx(std::pow(mu, 3) / (3.0 * D * (D - 1) * std::pow(delta, 4))));

  auto r15 = multilevel_mttdl(MultilevelKind::Raid15Approx, 8, d);
  CHECK(r15.mttdl_hours ==
        doctest::Approx(1.5 * mu / (8.0 * 9.0 * delta * delta)));
  DriveParams quick = d;
  quick.mttr_hours = 1e-9;
  CHECK(multilevel_mttdl(MultilevelKind::Raid15Approx, 8, quick).mttdl_hours >
        1e6 * r15.mttdl_hours);

  // RAID5/1 dominates for delta << mu.
  DriveParams sep;
  sep.mttf_hours = 1e6;
  sep.mttr_hours = 10.0;
  CHECK(multilevel_mttdl(MultilevelKind::Raid51Path, 4, sep).mttdl_hours >
        100.0 * multilevel_mttdl(MultilevelKind::Raid15Approx, 8, sep).mttdl_hours);
}

TEST_CASE("placement metrics: closed forms and the EAFDL identity") {
  const int n = 100, r = 2;
  const double c = 1e13, b = 1e8, delta = 1e-6;
  auto cp = placement_metrics(Placement::Clustered, n, c, r, b, delta);
  CHECK(cp.mttdl_hours == doctest::Approx((b / (delta * c)) / (n * delta)));
  // EAFDL * MTTDL * U recovers the expected loss magnitude c/r.
  CHECK(cp.eafdl_per_hour * cp.mttdl_hours * cp.user_data ==
        doctest::Approx(c / r).epsilon(1e-9));
  // Declustered placement dominates for r = 3 at these parameters.
  auto cp3 = placement_metrics(Placement::Clustered, n, c, 3, b, delta);
  auto dp3 = placement_metrics(Placement::Declustered, n, c, 3, b, delta);
  CHECK(dp3.mttdl_hours / cp3.mttdl_hours > 1.0);
  CHECK(dp3.eafdl_per_hour < cp3.eafdl_per_hour);
}

TEST_CASE("hda comparison: exact at r=1, leading terms 16 and 32") {
  auto perfect = hda_compare(0.0);
  CHECK(perfect.r_c1 == doctest::Approx(1.0));
  CHECK(perfect.r_c2 == doctest::Approx(1.0));
  const double eps = 1e-6;
  auto tiny = hda_compare(eps);
  CHECK((1.0 - tiny.r_c1) / (eps * eps) == doctest::Approx(16.0).epsilon(1e-3));
  CHECK((1.0 - tiny.r_c2) / (eps * eps) == doctest::Approx(32.0).epsilon(1e-3));
  for (double e = 0.001; e < 0.1; e += 0.004) {
    auto cmp = hda_compare(e);
    CHECK(cmp.r_c1 > cmp.r_c2);
  }
}

TEST_CASE("diff-raid aging ratios") {
  auto a = diffraid_aging({70, 10, 10, 10}, 4);
  CHECK(a[0][1] == doctest::Approx(2.0));  // 240/120
  auto uniform = diffraid_aging({25, 25, 25, 25}, 4);
  for (const auto& row : uniform)
    for (double v : row) CHECK(v == doctest::Approx(1.0));
  // multiplicative: a_ij * a_jk = a_ik
  auto m = diffraid_aging({40, 30, 20, 10}, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        CHECK(m[size_t(i)][size_t(j)] * m[size_t(j)][size_t(k)] ==
              doctest::Approx(m[size_t(i)][size_t(k)]));
}

TEST_CASE("exponential mixtures: single term, raid5 recast, empty") {
  ExpMixture single;
  single.terms.push_back({1.0, 1e-5});
  CHECK(single.mttf() == doctest::Approx(1e5));
  DriveParams d;
  d.mttf_hours = 3e4;
  d.mttr_hours = 12.0;
  ExpMixture mix = raid5_exp_mixture(9, d);
  CHECK(mix.reliability(0.0) == doctest::Approx(1.0));
  CHECK(mix.mttf() ==
        doctest::Approx(mttdl_closed_form(MttdlMethod::Raid5, 9, 0, 0, d))
            .epsilon(1e-10));
  for (double t : {10.0, 1000.0, 1e5})
    CHECK(mix.reliability(t) == doctest::Approx(raid5_transient(9, d, t)).epsilon(1e-10));
  ExpMixture empty;
  CHECK(empty.mttf() == 0.0);
}
