// Registered claim list run by `reproduce`: each claim is an exact check on a
// finite range (or a full period), reported with its parameters and timing.
#pragma once

#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ramsey/colorings.hpp"
#include "ramsey/construct.hpp"
#include "ramsey/gapsets.hpp"
#include "ramsey/search.hpp"
#include "ramsey/verify.hpp"

namespace ramsey {

enum class Scale { quick, full };

inline Scale parse_scale(std::string_view s) {
  if (s == "quick") return Scale::quick;
  if (s == "full") return Scale::full;
  throw InputError("scale must be 'quick' or 'full'");
}

struct ReproOptions {
  Scale scale = Scale::quick;
  // replaces a named preset alpha, e.g. for a negative control
  std::map<std::string, Q5Number> alpha_overrides;
  unsigned threads = 1;
  // restrict to these claim ids; empty runs all
  std::vector<std::string> only;
};

struct ClaimResult {
  std::string id;
  std::string statement;
  json parameters = json::object();
  bool pass = false;
  json detail = json::object();
  double elapsed_ms = 0;
};

struct ReproReport {
  Scale scale = Scale::quick;
  std::vector<ClaimResult> claims;

  bool pass() const {
    for (const auto& c : claims) {
      if (!c.pass) return false;
    }
    return !claims.empty();
  }
};

inline json to_json(const ClaimResult& c) {
  return {{"id", c.id},
          {"statement", c.statement},
          {"parameters", c.parameters},
          {"verdict", c.pass ? "pass" : "fail"},
          {"detail", c.detail},
          {"elapsed_ms", c.elapsed_ms}};
}

inline json to_json(const ReproReport& r) {
  json claims = json::array();
  for (const auto& c : r.claims) claims.push_back(to_json(c));
  return {{"scale", r.scale == Scale::quick ? "quick" : "full"}, {"pass", r.pass()}, {"claims", claims}};
}

inline std::string to_table(const ReproReport& r) {
  std::ostringstream out;
  std::size_t width = 5;
  for (const auto& c : r.claims) width = std::max(width, c.id.size());
  for (const auto& c : r.claims) {
    out << (c.pass ? "PASS  " : "FAIL  ") << c.id << std::string(width - c.id.size() + 2, ' ');
    out << std::setw(7) << static_cast<long>(c.elapsed_ms) << " ms  " << c.statement << '\n';
  }
  out << (r.pass() ? "all claims pass" : "some claims FAILED") << '\n';
  return out.str();
}

namespace detail {

struct ReproScale {
  std::size_t n;            // coloring length
  unsigned long fib_terms;  // prefixes to f_{fib_terms}
  std::size_t pipeline_n;
};

inline ReproScale scale_params(Scale s) {
  if (s == Scale::quick) return {10'000, 100, 10'000};
  return {50'000, 200, 20'000};
}

inline Q5Number pick_alpha(const ReproOptions& opts, const std::string& name) {
  auto it = opts.alpha_overrides.find(name);
  return it == opts.alpha_overrides.end() ? preset_alpha(name) : it->second;
}

// Exhaustive 2-coloring check used by the search cross-check: the least n
// (<= budget) at which every word of length n has a monochromatic k-term
// chain, or 0 when none.
inline std::size_t exhaustive_delta_two(const std::vector<std::uint64_t>& gaps, int k, std::size_t budget) {
  for (std::size_t n = 1; n <= budget; ++n) {
    bool avoider = false;
    std::vector<std::uint32_t> len(n);
    for (std::uint32_t w = 0; w < (1U << n) && !avoider; ++w) {
      bool bad = false;
      for (std::size_t x = 0; x < n && !bad; ++x) {
        len[x] = 1;
        for (auto d : gaps) {
          if (d > x) break;
          if (((w >> x) & 1U) == ((w >> (x - d)) & 1U)) len[x] = std::max(len[x], len[x - d] + 1);
        }
        bad = len[x] >= static_cast<std::uint32_t>(k);
      }
      avoider = !bad;
    }
    if (!avoider) return n;
  }
  return 0;
}

}  // namespace detail

using ClaimFn = std::function<ClaimResult(const ReproOptions&)>;

struct RegisteredClaim {
  std::string id;
  ClaimFn run;
};

inline const std::vector<RegisteredClaim>& registered_claims() {
  static const std::vector<RegisteredClaim> claims = {
      {"dist_sqrt5_fib",
       [](const ReproOptions& o) {
         const auto sc = detail::scale_params(o.scale);
         const Q5Number alpha = detail::pick_alpha(o, "sqrt5over8");
         ClaimResult c{"dist_sqrt5_fib", "||sqrt5 f_n / 8|| > 1/10 for n <= M and > 16/100 for n <= 4"};
         auto terms = fibonacci_terms(1, sc.fib_terms);
         auto all = frac_bound_scan(alpha, terms, FracMode::dist_nearest, BigRational(BigInt(1), BigInt(10)));
         auto head = frac_bound_scan(alpha, fibonacci_terms(1, 4), FracMode::dist_nearest,
                                     BigRational(BigInt(16), BigInt(100)));
         c.parameters = {{"alpha", to_json(alpha)}, {"M", sc.fib_terms}};
         c.pass = all.pass && head.pass;
         c.detail = {{"all", to_json(all)}, {"first_four", to_json(head)}};
         return c;
       }},
      {"fib_ap_sqrt5",
       [](const ReproOptions& o) {
         const auto sc = detail::scale_params(o.scale);
         const Q5Number alpha = detail::pick_alpha(o, "sqrt5over8");
         ClaimResult c{"fib_ap_sqrt5", "frac coloring by sqrt5/8 has no monochromatic 6-term F-AP on [1..N]"};
         auto scan = longest_mono_AP(frac_coloring(alpha, 2, sc.n), enumerate(GapSetSpec::fibonacci(), std::uint64_t{sc.n}));
         c.parameters = {{"alpha", to_json(alpha)}, {"N", sc.n}, {"max_length", 5}};
         c.pass = scan.length <= 5;
         c.detail = to_json(scan);
         return c;
       }},
      {"window_even_fib",
       [](const ReproOptions& o) {
         const auto sc = detail::scale_params(o.scale);
         const Q5Number alpha = detail::pick_alpha(o, "oneplusphiover4");
         ClaimResult c{"window_even_fib", "21/100 < frac((1 + phi) f_{3n} / 4) < 31/100 for n <= M"};
         auto cert = frac_bound_scan(alpha, fibonacci_terms(3, sc.fib_terms, 3), FracMode::frac_window,
                                     BigRational(BigInt(21), BigInt(100)), BigRational(BigInt(31), BigInt(100)));
         c.parameters = {{"alpha", to_json(alpha)}, {"M", sc.fib_terms}};
         c.pass = cert.pass;
         c.detail = to_json(cert);
         return c;
       }},
      {"even_fib_diffseq",
       [](const ReproOptions& o) {
         const auto sc = detail::scale_params(o.scale);
         const Q5Number alpha = detail::pick_alpha(o, "oneplusphiover4");
         ClaimResult c{"even_fib_diffseq",
                       "frac coloring by (3 + sqrt5)/8 has no monochromatic 4-term F_E-diffsequence on [1..N]"};
         auto scan = longest_mono_diffseq(frac_coloring(alpha, 2, sc.n),
                                          enumerate(GapSetSpec::even_fibonacci(), std::uint64_t{sc.n}));
         c.parameters = {{"alpha", to_json(alpha)}, {"N", sc.n}, {"max_length", 3}};
         c.pass = scan.length <= 3;
         c.detail = to_json(scan);
         return c;
       }},
      {"modular_facts",
       [](const ReproOptions& o) {
         const auto sc = detail::scale_params(o.scale);
         ClaimResult c{"modular_facts", "Pisano period 12 mod 8; f_{n-1} + f_{n+1} != 0 mod 8; f_{3n} + f_{3n+1} = 1 mod 4"};
         c.pass = true;
         c.detail = json::array();
         for (const char* id : {"pisano8", "mod8_nonzero", "shift6_mod4", "mod4_one"}) {
           auto cert = check_fib_fact(id, sc.fib_terms);
           c.pass = c.pass && cert.pass && cert.status == ProofStatus::periodic_complete;
           c.detail.push_back(to_json(cert));
         }
         c.parameters = {{"range", sc.fib_terms}};
         return c;
       }},
      {"binet_identities",
       [](const ReproOptions& o) {
         const auto sc = detail::scale_params(o.scale);
         ClaimResult c{"binet_identities", "sqrt5 f_n = f_{n-1} + f_{n+1} - 2 phibar^n and (1 + phi) f_n = f_n + f_{n+1} - phibar^n"};
         auto a = check_fib_fact("binet_sqrt5", sc.fib_terms);
         auto b = check_fib_fact("binet_one_plus_phi", sc.fib_terms);
         c.parameters = {{"range", sc.fib_terms}};
         c.pass = a.pass && b.pass;
         c.detail = {to_json(a), to_json(b)};
         return c;
       }},
      {"even_fib_structure",
       [](const ReproOptions&) {
         ClaimResult c{"even_fib_structure", "e_n = 4 e_{n-1} + e_{n-2} and filter(F, 2) = F_E up to 10^6"};
         auto rec = check_fib_fact("even_fib_recurrence", 100);
         const std::uint64_t bound = 1'000'000;
         auto filtered = enumerate(filter_multiples(GapSetSpec::fibonacci(), 2), bound);
         auto direct = enumerate(GapSetSpec::even_fibonacci(), bound);
         const bool same = filtered.elements == direct.elements;
         c.parameters = {{"terms", 100}, {"bound", bound}};
         c.pass = rec.pass && same;
         c.detail = {{"recurrence", to_json(rec)}, {"filter_matches", same}, {"count", direct.size()}};
         return c;
       }},
      {"pipeline_geometric4",
       [](const ReproOptions& o) {
         const auto sc = detail::scale_params(o.scale);
         ClaimResult c{"pipeline_geometric4",
                       "geometric(4), r = 2, delta = 1: nested intervals give alpha whose coloring has no 6-term chain"};
         const std::size_t steps = 20;
         auto big = enumerate<BigInt>(GapSetSpec::geometric(4), BigInt(1) << 62);
         auto cert = build_alpha_for(big, 2, BigRational(1), steps);
         const std::vector<BigInt> z_prefix{0, 1, 5, 21};
         const bool trace_ok = std::equal(z_prefix.begin(), z_prefix.end(), cert.z.begin()) &&
                               cert.intervals.at(3).lo == BigRational(BigInt(169), BigInt(512)) &&
                               cert.intervals.at(3).hi == BigRational(BigInt(43), BigInt(128));
         const auto covered = covered_prefix(big, cert);
         auto fracs = certify_fracs(Q5Number(cert.alpha), covered, cert.eps1, 2);
         auto view = enumerate(GapSetSpec::geometric(4), std::uint64_t{sc.pipeline_n});
         // the scan may only use gaps the certificate covers
         const bool gaps_covered = view.empty() || BigInt(view.elements.back()) <= covered.bound;
         auto scan = longest_mono_diffseq(frac_coloring(Q5Number(cert.alpha), 2, sc.pipeline_n), view);
         const BigInt bound = diffseq_bound_from_eps(2, cert.eps1);
         c.parameters = {{"r", 2}, {"delta", "1"}, {"steps", steps}, {"N", sc.pipeline_n}};
         c.pass = trace_ok && gaps_covered && cert.all_pass() && fracs.pass && scan.length < 6 &&
                  BigInt(static_cast<unsigned long>(scan.length)) < bound;
         c.detail = {{"alpha", to_json(cert)},
                     {"certify", to_json(fracs)},
                     {"trace_prefix_matches", trace_ok},
                     {"scan_gaps_covered", gaps_covered},
                     {"bound", to_json(bound)},
                     {"scan", to_json(scan)}};
         return c;
       }},
      {"delta_exhaustive",
       [](const ReproOptions& o) {
         ClaimResult c{"delta_exhaustive", "backtracking Delta(D, k; 2) matches full 2^N enumeration on 50 random instances"};
         std::mt19937_64 gen(20240611);
         std::bernoulli_distribution keep(0.5);
         const std::size_t budget = 18;
         c.pass = true;
         json mismatches = json::array();
         for (int trial = 0; trial < 50; ++trial) {
           std::vector<std::uint64_t> gaps;
           for (std::uint64_t d = 1; d <= 6; ++d) {
             if (keep(gen)) gaps.push_back(d);
           }
           if (gaps.empty()) gaps.push_back(1 + gen() % 6);
           const int k = 2 + trial % 2;
           auto view = finite_set(gaps);
           view.bound = budget;
           auto res = delta(view, k, 2, budget, {o.threads, true});
           const std::size_t expected = detail::exhaustive_delta_two(gaps, k, budget);
           const std::size_t got = res.found ? res.delta : 0;
           if (got != expected) {
             c.pass = false;
             mismatches.push_back({{"gaps", gaps}, {"k", k}, {"search", got}, {"exhaustive", expected}});
           }
         }
         c.parameters = {{"instances", 50}, {"budget", budget}, {"r", 2}};
         c.detail = {{"mismatches", mismatches}};
         return c;
       }},
      {"delta_small_values",
       [](const ReproOptions& o) {
         ClaimResult c{"delta_small_values", "Delta(V_3, 2; 2) = 3; Delta(N, 2; r) = r + 1 for r = 2..5; D = {1} avoidable"};
         auto v3 = delta(enumerate(GapSetSpec::nonmultiples(3), std::uint64_t{10}), 2, 2, 10, {o.threads, true});
         bool ok = v3.found && v3.delta == 3;
         json nat = json::array();
         for (int r = 2; r <= 5; ++r) {
           auto d = delta(enumerate(GapSetSpec::naturals(), std::uint64_t{10}), 2, r, 10, {o.threads, true});
           ok = ok && d.found && d.delta == static_cast<std::size_t>(r + 1);
           nat.push_back({{"r", r}, {"delta", d.found ? json(d.delta) : json("unknown")}});
         }
         auto one_view = finite_set(std::vector<std::uint64_t>{1});
         one_view.bound = 50;
         auto one = delta(one_view, 2, 2, 50, {o.threads, true});
         bool alternating = !one.found && one.witness.size() == 50;
         for (std::size_t x = 1; alternating && x <= 50; ++x) alternating = one.witness(x) == (x % 2 == 1 ? 1 : 2);
         c.pass = ok && alternating;
         c.detail = {{"v3", v3.found ? json(v3.delta) : json("unknown")}, {"naturals", nat},
                     {"one_unknown_alternating", alternating}};
         return c;
       }},
      {"chromatic_prefix",
       [](const ReproOptions&) {
         ClaimResult c{"chromatic_prefix", "powers of 2: odd cycle {1, 3, 5} gives chi >= 3; V_3 prefix on [1..12] has chi = 3"};
         auto pow2 = chromatic_number_prefix(enumerate(GapSetSpec::geometric(2), std::uint64_t{5}), 5, 5);
         auto v3 = chromatic_number_prefix(enumerate(GapSetSpec::nonmultiples(3), std::uint64_t{12}), 12, 12);
         bool residue_shape = true;
         const auto residue = residue_coloring(3, 12);
         for (std::size_t x = 1; x <= 12; ++x) {
           for (std::size_t y = x + 1; y <= 12; ++y) {
             residue_shape = residue_shape && ((v3.coloring(x) == v3.coloring(y)) == (residue(x) == residue(y)));
           }
         }
         c.pass = pow2.lower >= 3 && v3.exact && v3.upper == 3 && residue_shape;
         c.detail = {{"powers_of_two", to_json(pow2)}, {"v3", to_json(v3)}, {"residue_witness", residue_shape}};
         return c;
       }},
      {"coloring_families",
       [](const ReproOptions&) {
         ClaimResult c{"coloring_families", "block coloring(m) has no (m+1)-term structure for gaps <= m; golden word has p(n) = n + 1"};
         c.pass = true;
         json blocks = json::array();
         for (std::size_t m = 1; m <= 6; ++m) {
           auto chi = block_coloring(m, 5000);
           std::vector<std::uint64_t> all;
           for (std::uint64_t d = 1; d <= m; ++d) all.push_back(d);
           auto view = finite_set(all);
           view.bound = 5000;
           auto ds = longest_mono_diffseq(chi, view);
           auto ap = longest_mono_AP(chi, view);
           c.pass = c.pass && ds.length <= m && ap.length <= m;
           blocks.push_back({{"m", m}, {"diffseq", ds.length}, {"ap", ap.length}});
         }
         auto word = golden_rotation_word(10'000);
         json comp = json::array();
         for (std::size_t n = 1; n <= 12; ++n) {
           const auto p = complexity(word, n);
           c.pass = c.pass && p == n + 1;
           comp.push_back(p);
         }
         c.detail = {{"blocks", blocks}, {"golden_complexity", comp}};
         return c;
       }},
  };
  return claims;
}

inline ReproReport run_reproduce(const ReproOptions& opts) {
  ReproReport report;
  report.scale = opts.scale;
  for (const auto& id : opts.only) {
    const auto& all = registered_claims();
    if (std::none_of(all.begin(), all.end(), [&](const RegisteredClaim& c) { return c.id == id; })) {
      throw InputError("unknown claim id '" + id + "'");
    }
  }
  for (const auto& claim : registered_claims()) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), claim.id) == opts.only.end()) continue;
    const auto started = std::chrono::steady_clock::now();
    ClaimResult r = claim.run(opts);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    report.claims.push_back(std::move(r));
  }
  return report;
}

}  // namespace ramsey
